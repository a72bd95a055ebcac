#pragma once

// Batch engine: per-point revelation classification, filtered-locality
// checks, parameter sweeps with CSV/JSONL output, and revelation-interval
// detection.

#include <array>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "gtnl/bellineq.hpp"
#include "gtnl/entangle.hpp"
#include "gtnl/optimize.hpp"
#include "gtnl/protocol.hpp"
#include "gtnl/states.hpp"

namespace gtnl::scan {

using states::StateFamily;
using states::StateFamilyParams;

enum class Verdict { HiddenS2Revealed, HiddenNS2Revealed, NoRevelation, InitialNotLocal };

const char* to_string(Verdict v);

struct InitialStateReport {
  double svet_max = 0.0;  // closed-form Svetlichny maximum
  double cgm = 0.0;
  std::vector<int> facets_violated;  // raw state, ids within the checked set
  std::optional<std::vector<int>> facets_violated_filtered;  // after best filtering
};

struct RevelationReport {
  StateFamilyParams params;
  std::array<InitialStateReport, 3> initial;
  double final_svet = 0.0;  // closed-form B4
  double final_cgm = 0.0;
  double sel_prob = 0.0;  // probability of the (psi-,psi-,psi-) outcome
  std::vector<int> final_facets_violated;
  bool initial_local = false;
  std::optional<bool> filtered_local;  // set when the filter check ran
  bool partial_facet_coverage = false;  // only built-in facets were checked
  Verdict verdict = Verdict::NoRevelation;
};

// Verdict as a pure function of the report's numeric fields, so a row can be
// re-derived from its CSV columns alone.
Verdict derive_verdict(bool initial_local, double final_svet,
                       std::span<const int> final_facets_violated);

struct ClassifyConfig {
  optimize::OptimizerConfig optimizer{};
  bool filter_check = false;
};

// Thread-safe memo for optimizer-backed facet checks, keyed by facet id and
// the scalars that actually determine each family state (rho1: theta1, p1;
// rho2: p2; rho3: theta3, p3; the swapped state: theta1, theta3, p3). Lets
// sweeps skip re-optimizing states that do not move with the swept
// parameter. One cache assumes one optimizer config; id-0 facets bypass it.
class FacetCheckCache {
 public:
  bool violated(StateFamily family, const StateFamilyParams& params,
                const qlin::DensityMatrix& state, const bellineq::FacetInequality& f,
                const optimize::OptimizerConfig& cfg);

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, double, double, double>, bool> memo_;
};

// Runs the full pipeline at one parameter point: build the three inputs,
// check their locality against every facet in scope (closed forms for the
// Svetlichny facet, the optimizer otherwise), optionally the filtered
// check, run the preparation stage, and check the final state. A cache, when
// given, memoizes the optimizer-backed facet checks across points.
RevelationReport classify_point(const StateFamilyParams& params,
                                std::span<const bellineq::FacetInequality> facets,
                                const ClassifyConfig& cfg = {},
                                FacetCheckCache* cache = nullptr);

struct FilteredLocalityResult {
  bool local = true;
  double worst_value = 0.0;
  int worst_facet_id = 0;
  protocol::FilterParams worst_eps{};
  std::vector<int> facets_violated;
};

// sup over eps in [0,1]^3 (11^3 grid plus local refinement around the best
// cell) of the per-facet maximum for the filtered state; `local` when every
// facet stays at or below its bound plus the violation margin.
FilteredLocalityResult filtered_locality_check(
    StateFamily family, const StateFamilyParams& params,
    std::span<const bellineq::FacetInequality> facets,
    const optimize::OptimizerConfig& cfg = {});

// One grid axis: a fixed value or a sweep.
struct GridAxis {
  std::vector<double> values;

  static GridAxis fixed(double v) { return {{v}}; }
  static GridAxis range(double lo, double hi, double step);
};

enum class FacetSet { SvetlichnyOnly, Builtin, File };

struct ScanSpec {
  GridAxis theta1{{0.0}}, p1{{0.0}}, p2{{0.0}}, theta3{{0.0}}, p3{{0.0}};
  FacetSet facet_set = FacetSet::Builtin;
  std::string facet_file;  // used when facet_set == File
  bool filter_check = false;
  bool jsonl = false;
  optimize::OptimizerConfig optimizer{};
  std::string output;

  void validate() const;
};

// Parse a JSON config mirroring the ScanSpec field names (see README).
ScanSpec load_scan_spec(const std::filesystem::path& path);
ScanSpec parse_scan_spec(std::string_view text);

struct RevelationInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_refined = false;  // endpoint sharpened by bisection
  bool hi_refined = false;
};

struct ScanSummary {
  std::size_t rows = 0;
  std::string swept_parameter;  // empty when zero or several axes sweep
  std::vector<RevelationInterval> intervals;
  std::string facet_coverage;  // which facet set produced the verdicts
};

// One report row per grid point, written incrementally to CSV (and JSONL
// when requested); returns the summary, which is also written next to the
// output as <output>.summary.txt.
ScanSummary run_scan(const ScanSpec& spec);

std::string csv_header();
std::string csv_row(const RevelationReport& r);

}  // namespace gtnl::scan
