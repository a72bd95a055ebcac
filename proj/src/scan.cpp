#include "gtnl/scan.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace gtnl::scan {

namespace {

using bellineq::FacetInequality;
using measure::BellOutcome;
using optimize::violation_margin;

constexpr std::array<StateFamily, 3> kInitialFamilies{
    StateFamily::Rho1, StateFamily::Rho2, StateFamily::Rho3};

constexpr int kSvetlichnyId = 185;

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string join_ids(std::span<const int> ids) {
  std::string s;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(ids[i]);
  }
  return s;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Svetlichny maximum of a filtered family state, in closed form; -inf when
// the filters annihilate the state.
double filtered_svetlichny_value(const qlin::DensityMatrix& state,
                                 const protocol::FilterParams& eps) {
  try {
    auto [filtered, prob] = protocol::apply_filters(state, eps);
    return bellineq::svetlichny_xstate_bound(states::extract_x_params(filtered)).value();
  } catch (const NullOutcome&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::HiddenS2Revealed: return "HiddenS2Revealed";
    case Verdict::HiddenNS2Revealed: return "HiddenNS2Revealed";
    case Verdict::NoRevelation: return "NoRevelation";
    case Verdict::InitialNotLocal: return "InitialNotLocal";
  }
  return "?";
}

Verdict derive_verdict(bool initial_local, double final_svet,
                       std::span<const int> final_facets_violated) {
  if (!initial_local) return Verdict::InitialNotLocal;
  if (final_svet > 4.0 + violation_margin) return Verdict::HiddenS2Revealed;
  if (!final_facets_violated.empty()) return Verdict::HiddenNS2Revealed;
  return Verdict::NoRevelation;
}

bool FacetCheckCache::violated(StateFamily family, const StateFamilyParams& params,
                               const qlin::DensityMatrix& state,
                               const bellineq::FacetInequality& f,
                               const optimize::OptimizerConfig& cfg) {
  // id 0 marks user-defined facets and need not be unique; don't key on it.
  if (f.id == 0) return optimize::maximize_facet(state, f, cfg).violated;
  std::tuple<int, int, double, double, double> key;
  switch (family) {
    case StateFamily::Rho1:
      key = {0, f.id, params.theta1, params.p1, 0.0};
      break;
    case StateFamily::Rho2:
      key = {1, f.id, params.p2, 0.0, 0.0};
      break;
    case StateFamily::Rho3:
      key = {2, f.id, params.theta3, params.p3, 0.0};
      break;
    case StateFamily::Rho4:
      // the swapped state depends on p1, p2 only through the (checked)
      // post-selection probability, not through the state itself
      key = {3, f.id, params.theta1, params.theta3, params.p3};
      break;
  }
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const bool result = optimize::maximize_facet(state, f, cfg).violated;
  std::lock_guard lock(mu_);
  memo_.emplace(key, result);
  return result;
}

RevelationReport classify_point(const StateFamilyParams& params,
                                std::span<const FacetInequality> facets,
                                const ClassifyConfig& cfg, FacetCheckCache* cache) {
  params.validate();
  cfg.optimizer.validate();

  RevelationReport r;
  r.params = params;
  r.partial_facet_coverage = facets.size() < 185;

  std::array<bellineq::ClosedFormBound, 4> bounds;
  for (int i = 0; i < 4; ++i)
    bounds[size_t(i)] = bellineq::closed_form_B(static_cast<StateFamily>(i), params);
  for (int i = 0; i < 3; ++i) {
    r.initial[size_t(i)].svet_max = bounds[size_t(i)].value();
    r.initial[size_t(i)].cgm =
        entangle::cgm_family(static_cast<StateFamily>(i), params);
  }
  r.final_svet = bounds[3].value();
  r.final_cgm = entangle::cgm_family(StateFamily::Rho4, params);

  const auto rho1 = states::make_rho1(params.theta1, params.p1);
  const auto rho2 = states::make_rho2(params.p2);
  const auto rho3 = states::make_rho3(params.theta3, params.p3);
  const std::array<const qlin::DensityMatrix*, 3> initial_states{&rho1, &rho2, &rho3};

  auto [rho4, prob] = protocol::smp_prepare(
      rho1, rho2, rho3,
      {BellOutcome::PsiMinus, BellOutcome::PsiMinus, BellOutcome::PsiMinus});
  r.sel_prob = prob;

  // Locality per facet: closed forms carry the Svetlichny facet, the
  // optimizer everything else.
  auto optimizer_violated = [&](StateFamily fam, const qlin::DensityMatrix& state,
                                const FacetInequality& f) {
    if (cache) return cache->violated(fam, params, state, f, cfg.optimizer);
    return optimize::maximize_facet(state, f, cfg.optimizer).violated;
  };
  for (const FacetInequality& f : facets) {
    if (f.id == kSvetlichnyId) {
      for (int i = 0; i < 3; ++i)
        if (bounds[size_t(i)].value() > f.bound + violation_margin)
          r.initial[size_t(i)].facets_violated.push_back(f.id);
      if (bounds[3].value() > f.bound + violation_margin)
        r.final_facets_violated.push_back(f.id);
    } else {
      for (int i = 0; i < 3; ++i)
        if (optimizer_violated(kInitialFamilies[size_t(i)], *initial_states[size_t(i)], f))
          r.initial[size_t(i)].facets_violated.push_back(f.id);
      if (optimizer_violated(StateFamily::Rho4, rho4, f))
        r.final_facets_violated.push_back(f.id);
    }
  }

  r.initial_local = std::all_of(r.initial.begin(), r.initial.end(),
                                [](const auto& s) { return s.facets_violated.empty(); });

  if (cfg.filter_check) {
    bool all_local = true;
    for (int i = 0; i < 3; ++i) {
      auto fr = filtered_locality_check(kInitialFamilies[size_t(i)], params, facets,
                                        cfg.optimizer);
      r.initial[size_t(i)].facets_violated_filtered = fr.facets_violated;
      all_local = all_local && fr.local;
    }
    r.filtered_local = all_local;
  }

  r.verdict = derive_verdict(r.initial_local, r.final_svet, r.final_facets_violated);
  return r;
}

FilteredLocalityResult filtered_locality_check(StateFamily family,
                                               const StateFamilyParams& params,
                                               std::span<const FacetInequality> facets,
                                               const optimize::OptimizerConfig& cfg) {
  params.validate();
  cfg.validate();
  const auto state = states::make_family(family, params);

  optimize::OptimizerConfig grid_cfg = cfg;  // cheaper inner search per cell
  grid_cfg.starts = std::clamp(cfg.starts / 16, 2, cfg.starts);
  grid_cfg.max_iterations = std::clamp(cfg.max_iterations / 4, 200, cfg.max_iterations);

  FilteredLocalityResult out;
  out.worst_value = -std::numeric_limits<double>::infinity();
  double worst_excess = -std::numeric_limits<double>::infinity();

  for (const FacetInequality& f : facets) {
    const bool closed_form = f.id == kSvetlichnyId;

    double best = -std::numeric_limits<double>::infinity();
    protocol::FilterParams best_eps;
    measure::MeasurementSetting best_setting;

    for (int i1 = 0; i1 <= 10; ++i1)
      for (int i2 = 0; i2 <= 10; ++i2)
        for (int i3 = 0; i3 <= 10; ++i3) {
          const protocol::FilterParams eps{i1 / 10.0, i2 / 10.0, i3 / 10.0};
          double v;
          measure::MeasurementSetting setting;
          if (closed_form) {
            v = filtered_svetlichny_value(state, eps);
          } else {
            try {
              auto [filtered, prob] = protocol::apply_filters(state, eps);
              auto opt = optimize::maximize_facet(filtered, f, grid_cfg);
              v = opt.best_value;
              setting = opt.best_setting;
            } catch (const NullOutcome&) {
              continue;
            }
          }
          if (v > best) {
            best = v;
            best_eps = eps;
            best_setting = setting;
          }
        }

    // Local refinement around the best cell.
    optimize::NelderMeadOptions nm;
    nm.max_iterations = cfg.max_iterations;
    nm.step_tolerance = cfg.step_tolerance;
    nm.function_tolerance = cfg.function_tolerance;
    nm.initial_step = 0.05;

    if (closed_form) {
      auto objective = [&](std::span<const double> v) {
        return -filtered_svetlichny_value(
            state, {clamp01(v[0]), clamp01(v[1]), clamp01(v[2])});
      };
      const std::array<double, 3> start{best_eps.eps1, best_eps.eps2, best_eps.eps3};
      const auto ref = optimize::nelder_mead_minimize(objective, start, nm);
      if (-ref.value > best) {
        best = -ref.value;
        best_eps = {clamp01(ref.x[0]), clamp01(ref.x[1]), clamp01(ref.x[2])};
      }
    } else {
      // Joint search over filters and settings, seeded at the grid optimum.
      auto objective = [&](std::span<const double> v) {
        const protocol::FilterParams eps{clamp01(v[0]), clamp01(v[1]), clamp01(v[2])};
        try {
          auto [filtered, prob] = protocol::apply_filters(state, eps);
          std::array<double, 12> angles{};
          std::copy(v.begin() + 3, v.end(), angles.begin());
          return -bellineq::evaluate(
              f, measure::correlators(filtered, measure::MeasurementSetting(angles)));
        } catch (const NullOutcome&) {
          return std::numeric_limits<double>::infinity();
        }
      };
      std::vector<double> start{best_eps.eps1, best_eps.eps2, best_eps.eps3};
      const auto setting_angles = best_setting.to_array();
      start.insert(start.end(), setting_angles.begin(), setting_angles.end());
      nm.initial_step = 0.2;
      auto ref = optimize::nelder_mead_minimize(objective, start, nm);
      if (-ref.value > best) {
        best = -ref.value;
        best_eps = {clamp01(ref.x[0]), clamp01(ref.x[1]), clamp01(ref.x[2])};
      }
      for (int s = 0; s < 8; ++s) {  // a few fresh joint starts
        std::vector<double> p = optimize::quasi_random_point(cfg.seed + 1, s, 15);
        for (int d = 3; d < 15; ++d) p[size_t(d)] *= 2.0 * std::numbers::pi;
        ref = optimize::nelder_mead_minimize(objective, p, nm);
        if (-ref.value > best) {
          best = -ref.value;
          best_eps = {clamp01(ref.x[0]), clamp01(ref.x[1]), clamp01(ref.x[2])};
        }
      }
    }

    if (best > f.bound + violation_margin) out.facets_violated.push_back(f.id);
    if (best - f.bound > worst_excess) {  // facet closest to (or past) violation
      worst_excess = best - f.bound;
      out.worst_value = best;
      out.worst_facet_id = f.id;
      out.worst_eps = best_eps;
    }
  }
  out.local = out.facets_violated.empty();
  return out;
}

GridAxis GridAxis::range(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("GridAxis: step must be positive");
  if (hi < lo) throw std::invalid_argument("GridAxis: hi < lo");
  GridAxis axis;
  for (double v = lo; v <= hi + step * 1e-9; v += step) axis.values.push_back(std::min(v, hi));
  return axis;
}

void ScanSpec::validate() const {
  const std::array<const GridAxis*, 5> axes{&theta1, &p1, &p2, &theta3, &p3};
  const std::array<const char*, 5> names{"theta1", "p1", "p2", "theta3", "p3"};
  constexpr double kQuarterPi = std::numbers::pi / 4.0;
  for (size_t i = 0; i < axes.size(); ++i) {
    if (axes[i]->values.empty())
      throw std::invalid_argument(std::string("ScanSpec: empty grid for ") + names[i]);
    const double hi = (i == 0 || i == 3) ? kQuarterPi : 1.0;
    for (double v : axes[i]->values)
      if (!(v >= 0.0 && v <= hi))
        throw std::invalid_argument(std::string("ScanSpec: ") + names[i] + " value " +
                                    std::to_string(v) + " outside [0, " +
                                    std::to_string(hi) + "]");
  }
  if (output.empty()) throw std::invalid_argument("ScanSpec: no output path");
  if (facet_set == FacetSet::File && facet_file.empty())
    throw std::invalid_argument("ScanSpec: facet_set is 'file' but no facet_file given");
  optimizer.validate();
}

namespace {

using nlohmann::json;

GridAxis parse_axis(const json& j, const char* name) {
  if (j.is_number()) return GridAxis::fixed(j.get<double>());
  if (j.is_array()) {
    GridAxis a;
    for (const json& v : j) {
      if (!v.is_number())
        throw ParseError(std::string("scan config: non-numeric value in '") + name + "'");
      a.values.push_back(v.get<double>());
    }
    return a;
  }
  if (j.is_object()) {
    for (const auto& [key, _] : j.items())
      if (key != "lo" && key != "hi" && key != "step")
        throw ParseError(std::string("scan config: unknown field '") + key + "' in '" +
                         name + "'");
    for (const char* req : {"lo", "hi", "step"})
      if (!j.contains(req) || !j.at(req).is_number())
        throw ParseError(std::string("scan config: '") + name +
                         "' range needs numeric lo/hi/step");
    return GridAxis::range(j.at("lo").get<double>(), j.at("hi").get<double>(),
                           j.at("step").get<double>());
  }
  throw ParseError(std::string("scan config: '") + name +
                   "' must be a number, list, or {lo,hi,step}");
}

}  // namespace

ScanSpec parse_scan_spec(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scan config: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("scan config: expected a JSON object");

  ScanSpec spec;
  for (const auto& [key, value] : root.items()) {
    if (key == "theta1") spec.theta1 = parse_axis(value, "theta1");
    else if (key == "p1") spec.p1 = parse_axis(value, "p1");
    else if (key == "p2") spec.p2 = parse_axis(value, "p2");
    else if (key == "theta3") spec.theta3 = parse_axis(value, "theta3");
    else if (key == "p3") spec.p3 = parse_axis(value, "p3");
    else if (key == "facet_set") {
      const std::string s = value.get<std::string>();
      if (s == "svetlichny") spec.facet_set = FacetSet::SvetlichnyOnly;
      else if (s == "builtin") spec.facet_set = FacetSet::Builtin;
      else if (s == "file") spec.facet_set = FacetSet::File;
      else throw ParseError("scan config: facet_set must be 'svetlichny', 'builtin' or 'file'");
    } else if (key == "facet_file") spec.facet_file = value.get<std::string>();
    else if (key == "filter_check") spec.filter_check = value.get<bool>();
    else if (key == "jsonl") spec.jsonl = value.get<bool>();
    else if (key == "output") spec.output = value.get<std::string>();
    else if (key == "optimizer") {
      for (const auto& [okey, ovalue] : value.items()) {
        if (okey == "starts") spec.optimizer.starts = ovalue.get<int>();
        else if (okey == "max_iterations") spec.optimizer.max_iterations = ovalue.get<int>();
        else if (okey == "step_tolerance") spec.optimizer.step_tolerance = ovalue.get<double>();
        else if (okey == "function_tolerance")
          spec.optimizer.function_tolerance = ovalue.get<double>();
        else if (okey == "seed") spec.optimizer.seed = ovalue.get<std::uint64_t>();
        else throw ParseError("scan config: unknown optimizer field '" + okey + "'");
      }
    } else {
      throw ParseError("scan config: unknown field '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

ScanSpec load_scan_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scan config: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scan_spec(buf.str());
}

std::string csv_header() {
  return "theta1,p1,p2,theta3,p3,B1,B2,B3,B4,cgm1,cgm2,cgm3,cgm4,sel_prob,"
         "initial_local,filtered_local,final_svet,facets_violated,verdict";
}

std::string csv_row(const RevelationReport& r) {
  const auto& p = r.params;
  std::string row;
  for (double v : {p.theta1, p.p1, p.p2, p.theta3, p.p3}) row += fmt9(v) + ",";
  for (const auto& s : r.initial) row += fmt9(s.svet_max) + ",";
  row += fmt9(r.final_svet) + ",";
  for (const auto& s : r.initial) row += fmt9(s.cgm) + ",";
  row += fmt9(r.final_cgm) + ",";
  row += fmt9(r.sel_prob) + ",";
  row += std::string(r.initial_local ? "1" : "0") + ",";
  row += (r.filtered_local.has_value() ? (*r.filtered_local ? "1" : "0") : "") + std::string(",");
  row += fmt9(r.final_svet) + ",";
  row += join_ids(r.final_facets_violated) + ",";
  row += to_string(r.verdict);
  return row;
}

namespace {

json jsonl_row(const RevelationReport& r) {
  const auto& p = r.params;
  json j;
  j["theta1"] = p.theta1;
  j["p1"] = p.p1;
  j["p2"] = p.p2;
  j["theta3"] = p.theta3;
  j["p3"] = p.p3;
  j["B1"] = r.initial[0].svet_max;
  j["B2"] = r.initial[1].svet_max;
  j["B3"] = r.initial[2].svet_max;
  j["B4"] = r.final_svet;
  j["cgm1"] = r.initial[0].cgm;
  j["cgm2"] = r.initial[1].cgm;
  j["cgm3"] = r.initial[2].cgm;
  j["cgm4"] = r.final_cgm;
  j["sel_prob"] = r.sel_prob;
  j["initial_local"] = r.initial_local;
  j["filtered_local"] = r.filtered_local.has_value() ? json(*r.filtered_local) : json(nullptr);
  j["final_svet"] = r.final_svet;
  j["facets_violated"] = r.final_facets_violated;
  j["verdict"] = to_string(r.verdict);
  return j;
}

std::vector<FacetInequality> resolve_facets(const ScanSpec& spec) {
  switch (spec.facet_set) {
    case FacetSet::SvetlichnyOnly: return {bellineq::svetlichny_facet()};
    case FacetSet::Builtin: return {bellineq::ns3_facet(), bellineq::svetlichny_facet()};
    case FacetSet::File: return bellineq::load_facets_file(spec.facet_file);
  }
  throw std::logic_error("resolve_facets: bad enum");
}

std::string coverage_label(const ScanSpec& spec, size_t n_facets) {
  switch (spec.facet_set) {
    case FacetSet::SvetlichnyOnly: return "svetlichny-only (facet 185)";
    case FacetSet::Builtin: return "builtin (facets 3, 185)";
    case FacetSet::File:
      return "file:" + spec.facet_file + " (" + std::to_string(n_facets) + " facets)";
  }
  return "?";
}

// Largest excess over the bound across the facet set for the swapped state
// at the given parameters; drives interval-endpoint refinement.
double final_excess(const StateFamilyParams& p, std::span<const FacetInequality> facets,
                    const optimize::OptimizerConfig& cfg) {
  double excess = -std::numeric_limits<double>::infinity();
  const auto b4 = bellineq::closed_form_B(StateFamily::Rho4, p);
  std::optional<qlin::DensityMatrix> rho4;
  for (const FacetInequality& f : facets) {
    if (f.id == kSvetlichnyId) {
      excess = std::max(excess, b4.value() - f.bound);
    } else {
      if (!rho4) {
        auto [state, prob] = protocol::smp_prepare(
            states::make_rho1(p.theta1, p.p1), states::make_rho2(p.p2),
            states::make_rho3(p.theta3, p.p3),
            {BellOutcome::PsiMinus, BellOutcome::PsiMinus, BellOutcome::PsiMinus});
        rho4 = state;
      }
      excess = std::max(excess, optimize::maximize_facet(*rho4, f, cfg).best_value - f.bound);
    }
  }
  return excess;
}

}  // namespace

ScanSummary run_scan(const ScanSpec& spec) {
  spec.validate();
  const std::vector<FacetInequality> facets = resolve_facets(spec);

  std::vector<StateFamilyParams> points;
  for (double t1 : spec.theta1.values)
    for (double q1 : spec.p1.values)
      for (double q2 : spec.p2.values)
        for (double t3 : spec.theta3.values)
          for (double q3 : spec.p3.values)
            points.push_back({t1, q1, q2, t3, q3});

  std::ofstream csv(spec.output);
  if (!csv) throw std::runtime_error("cannot open output file: " + spec.output);
  std::ofstream jsonl;
  if (spec.jsonl) {
    std::filesystem::path jp(spec.output);
    jp.replace_extension(".jsonl");
    jsonl.open(jp);
    if (!jsonl) throw std::runtime_error("cannot open output file: " + jp.string());
  }
  csv << csv_header() << "\n";
  csv.flush();

  const ClassifyConfig ccfg{spec.optimizer, spec.filter_check};
  FacetCheckCache cache;

  // Worker pool; the writer is the only serialized resource and emits rows
  // in grid order regardless of completion order.
  const size_t n = points.size();
  std::vector<std::optional<RevelationReport>> results(n);
  std::vector<char> done(n, 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> abort{false};

  unsigned n_workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(n)));
  if (const char* env = std::getenv("GTNL_SCAN_WORKERS")) {
    const long forced = std::strtol(env, nullptr, 10);
    if (forced >= 1 && forced <= 64)
      n_workers = std::min<unsigned>(static_cast<unsigned>(forced),
                                     std::max<unsigned>(1, static_cast<unsigned>(n)));
  }
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      while (!abort.load()) {
        const size_t i = next.fetch_add(1);
        if (i >= n) break;
        try {
          RevelationReport r = classify_point(points[i], facets, ccfg, &cache);
          std::lock_guard lock(mu);
          results[i] = std::move(r);
          done[i] = 1;
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
          abort.store(true);
          done[i] = 1;
        }
        cv.notify_all();
      }
      cv.notify_all();
    });
  }

  std::vector<Verdict> verdicts(n, Verdict::NoRevelation);
  size_t written = 0;
  {
    std::unique_lock lock(mu);
    for (size_t i = 0; i < n; ++i) {
      cv.wait(lock, [&] { return done[i] || abort.load(); });
      if (!results[i]) break;
      verdicts[i] = results[i]->verdict;
      csv << csv_row(*results[i]) << "\n";
      csv.flush();
      if (spec.jsonl) {
        jsonl << jsonl_row(*results[i]).dump() << "\n";
        jsonl.flush();
      }
      results[i].reset();  // keep memory flat on large grids
      ++written;
    }
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);

  ScanSummary summary;
  summary.rows = written;
  summary.facet_coverage = coverage_label(spec, facets.size());

  // Interval detection when exactly one axis sweeps.
  const std::array<const GridAxis*, 5> axes{&spec.theta1, &spec.p1, &spec.p2,
                                            &spec.theta3, &spec.p3};
  const std::array<const char*, 5> names{"theta1", "p1", "p2", "theta3", "p3"};
  int swept = -1;
  int n_swept = 0;
  for (int i = 0; i < 5; ++i)
    if (axes[size_t(i)]->values.size() > 1) {
      swept = i;
      ++n_swept;
    }
  if (n_swept == 1) {
    summary.swept_parameter = names[size_t(swept)];
    const std::vector<double>& sweep = axes[size_t(swept)]->values;
    auto revealing = [&](size_t i) {
      return verdicts[i] == Verdict::HiddenS2Revealed ||
             verdicts[i] == Verdict::HiddenNS2Revealed;
    };
    auto params_at = [&](double t) {
      StateFamilyParams p = points[0];
      switch (swept) {
        case 0: p.theta1 = t; break;
        case 1: p.p1 = t; break;
        case 2: p.p2 = t; break;
        case 3: p.theta3 = t; break;
        case 4: p.p3 = t; break;
      }
      return p;
    };
    auto refine = [&](double t_quiet, double t_violating) -> std::optional<double> {
      try {
        double a = t_quiet, b = t_violating;
        while (std::abs(b - a) > 1e-4) {
          const double mid = 0.5 * (a + b);
          if (final_excess(params_at(mid), facets, spec.optimizer) > violation_margin)
            b = mid;
          else
            a = mid;
        }
        return 0.5 * (a + b);
      } catch (const std::exception&) {
        return std::nullopt;
      }
    };

    for (size_t i = 0; i < n;) {
      if (!revealing(i)) {
        ++i;
        continue;
      }
      size_t j = i;
      while (j + 1 < n && revealing(j + 1)) ++j;
      RevelationInterval iv{sweep[i], sweep[j], false, false};
      if (i > 0 && verdicts[i - 1] == Verdict::NoRevelation) {
        if (auto t = refine(sweep[i - 1], sweep[i])) {
          iv.lo = *t;
          iv.lo_refined = true;
        }
      }
      if (j + 1 < n && verdicts[j + 1] == Verdict::NoRevelation) {
        if (auto t = refine(sweep[j + 1], sweep[j])) {
          iv.hi = *t;
          iv.hi_refined = true;
        }
      }
      summary.intervals.push_back(iv);
      i = j + 1;
    }
  }

  std::ofstream sum(spec.output + ".summary.txt");
  if (sum) {
    sum << "rows: " << summary.rows << "\n";
    sum << "facet coverage: " << summary.facet_coverage << "\n";
    if (!summary.swept_parameter.empty()) {
      sum << "swept parameter: " << summary.swept_parameter << "\n";
      for (const auto& iv : summary.intervals)
        sum << "revelation interval: [" << fmt9(iv.lo) << ", " << fmt9(iv.hi) << "]"
            << (iv.lo_refined || iv.hi_refined ? " (refined)" : "") << "\n";
      if (summary.intervals.empty()) sum << "revelation interval: none\n";
    }
  }
  return summary;
}

}  // namespace gtnl::scan
