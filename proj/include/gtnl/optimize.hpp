#pragma once

// Derivative-free maximization of a facet functional over the 12 measurement
// angles (multistart Nelder-Mead), and bisection for violation thresholds in
// a state parameter.

#include <cstdint>
#include <functional>
#include <span>

#include "gtnl/bellineq.hpp"
#include "gtnl/measure.hpp"

namespace gtnl::optimize {

using measure::MeasurementSetting;
using qlin::DensityMatrix;

// A value must clear the bound by this much to count as a violation;
// separates true violations from optimizer noise at the 1e-8 tolerance scale.
inline constexpr double violation_margin = 1e-7;

struct OptimizerConfig {
  int starts = 64;              // quasi-random initial angle vectors
  int max_iterations = 2000;    // per start
  double step_tolerance = 1e-8;    // simplex diameter
  double function_tolerance = 1e-10;
  std::uint64_t seed = 20240917;

  void validate() const;
};

struct OptResult {
  double best_value = 0.0;
  MeasurementSetting best_setting;
  int starts_converged = 0;
  bool violated = false;  // best_value > bound + violation_margin
};

// Maximize evaluate(f, correlators(rho, .)) over all settings. Deterministic
// given the seed; the best over all starts is returned, ties broken by
// start index.
OptResult maximize_facet(const DensityMatrix& rho, const bellineq::FacetInequality& f,
                         const OptimizerConfig& cfg = {});

struct ThresholdResult {
  double threshold = 0.0;
  int non_monotone_events = 0;  // midpoints that broke the bracket ordering
};

// Bisection on t to width 1e-4 of the first crossing of `bound` by
// max_value_at(t). Requires max_value_at(lo) <= bound < max_value_at(hi);
// throws BracketError otherwise. A midpoint value outside [value(lo),
// value(hi)] is counted as a non-monotone event and bisection continues on
// the sub-bracket containing the sign change.
ThresholdResult threshold_of(const std::function<double(double)>& max_value_at,
                             double bound, double lo, double hi);

// threshold_of with max_value_at = maximize_facet over the state built at t.
ThresholdResult violation_threshold(
    const std::function<DensityMatrix(double)>& family_builder,
    const bellineq::FacetInequality& f, double lo, double hi,
    const OptimizerConfig& cfg = {});

// Generic Nelder-Mead minimizer used by the facet maximizer and the
// filtered-locality refinement.
struct NelderMeadOptions {
  int max_iterations = 2000;
  double step_tolerance = 1e-8;
  double function_tolerance = 1e-10;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> start, const NelderMeadOptions& opt);

// Deterministic quasi-random points in [0,1)^dim (Weyl sequence with a
// seed-dependent offset); start index n gives the n-th point.
std::vector<double> quasi_random_point(std::uint64_t seed, int index, int dim);

}  // namespace gtnl::optimize
