#include "gtnl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace gtnl::optimize {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) { return x - std::floor(x); }

}  // namespace

void OptimizerConfig::validate() const {
  if (starts < 1) throw std::invalid_argument("OptimizerConfig: starts < 1");
  if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations < 1");
  if (!(step_tolerance > 0.0) || !(function_tolerance > 0.0))
    throw std::invalid_argument("OptimizerConfig: tolerances must be positive");
}

std::vector<double> quasi_random_point(std::uint64_t seed, int index, int dim) {
  static constexpr int primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                   23, 29, 31, 37, 41, 43, 47, 53};
  if (dim > 16) throw std::invalid_argument("quasi_random_point: dim > 16");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> p(static_cast<size_t>(dim));
  for (int d = 0; d < dim; ++d) {
    const double offset = uni(rng);
    const double alpha = frac(std::sqrt(double(primes[d])));
    p[static_cast<size_t>(d)] = frac(offset + (index + 1) * alpha);
  }
  return p;
}

NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> start, const NelderMeadOptions& opt) {
  const int n = static_cast<int>(start.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<std::vector<double>> x(static_cast<size_t>(n) + 1,
                                     std::vector<double>(start.begin(), start.end()));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i) + 1][static_cast<size_t>(i)] += opt.initial_step;
  std::vector<double> fx(static_cast<size_t>(n) + 1);
  for (size_t v = 0; v <= static_cast<size_t>(n); ++v) fx[v] = f(x[v]);

  std::vector<size_t> order(static_cast<size_t>(n) + 1);
  auto sort_simplex = [&] {
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fx[a] < fx[b]; });
    std::vector<std::vector<double>> x2(order.size());
    std::vector<double> fx2(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
      x2[i] = std::move(x[order[i]]);
      fx2[i] = fx[order[i]];
    }
    x.swap(x2);
    fx.swap(fx2);
  };

  NelderMeadResult res;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    sort_simplex();

    double diameter = 0.0;
    for (size_t v = 1; v < x.size(); ++v)
      for (int i = 0; i < n; ++i)
        diameter = std::max(diameter, std::abs(x[v][size_t(i)] - x[0][size_t(i)]));
    if (diameter < opt.step_tolerance ||
        std::abs(fx.back() - fx.front()) < opt.function_tolerance) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(static_cast<size_t>(n), 0.0);
    for (size_t v = 0; v < static_cast<size_t>(n); ++v)
      for (int i = 0; i < n; ++i) centroid[size_t(i)] += x[v][size_t(i)];
    for (double& c : centroid) c /= n;

    auto blend = [&](const std::vector<double>& to, double t) {
      std::vector<double> p(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        p[size_t(i)] = centroid[size_t(i)] + t * (to[size_t(i)] - centroid[size_t(i)]);
      return p;
    };

    const std::vector<double> xr = blend(x.back(), -alpha);
    const double fr = f(xr);

    if (fr < fx[0]) {
      const std::vector<double> xe = blend(xr, gamma);
      const double fe = f(xe);
      if (fe < fr) { x.back() = xe; fx.back() = fe; }
      else { x.back() = xr; fx.back() = fr; }
    } else if (fr < fx[fx.size() - 2]) {
      x.back() = xr;
      fx.back() = fr;
    } else {
      const bool outside = fr < fx.back();
      const std::vector<double> xc = blend(outside ? xr : x.back(), rho);
      const double fc = f(xc);
      if (fc < (outside ? fr : fx.back())) {
        x.back() = xc;
        fx.back() = fc;
      } else {
        for (size_t v = 1; v < x.size(); ++v) {
          for (int i = 0; i < n; ++i)
            x[v][size_t(i)] = x[0][size_t(i)] + sigma * (x[v][size_t(i)] - x[0][size_t(i)]);
          fx[v] = f(x[v]);
        }
      }
    }
  }

  sort_simplex();
  res.x = x[0];
  res.value = fx[0];
  res.iterations = iter;
  return res;
}

OptResult maximize_facet(const DensityMatrix& rho, const bellineq::FacetInequality& f,
                         const OptimizerConfig& cfg) {
  cfg.validate();
  f.validate();
  const measure::CorrelatorEvaluator eval(rho);

  auto objective = [&](std::span<const double> v) {
    std::array<double, 12> angles{};
    std::copy(v.begin(), v.end(), angles.begin());
    return -bellineq::evaluate(f, eval.table(MeasurementSetting(angles)));
  };

  NelderMeadOptions nm;
  nm.max_iterations = cfg.max_iterations;
  nm.step_tolerance = cfg.step_tolerance;
  nm.function_tolerance = cfg.function_tolerance;

  OptResult out;
  out.best_value = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < cfg.starts; ++s) {
    std::vector<double> start = quasi_random_point(cfg.seed, s, 12);
    for (double& a : start) a *= kTwoPi;
    const NelderMeadResult r = nelder_mead_minimize(objective, start, nm);
    if (r.converged) ++out.starts_converged;
    if (-r.value > out.best_value) {
      out.best_value = -r.value;
      std::array<double, 12> angles{};
      std::copy(r.x.begin(), r.x.end(), angles.begin());
      out.best_setting = MeasurementSetting(angles);
    }
  }
  out.violated = out.best_value > f.bound + violation_margin;
  return out;
}

ThresholdResult threshold_of(const std::function<double(double)>& max_value_at,
                             double bound, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("threshold_of: empty bracket");
  const double v_lo = max_value_at(lo);
  const double v_hi = max_value_at(hi);
  if (v_lo > bound)
    throw BracketError("threshold_of: value " + std::to_string(v_lo) +
                       " at lower endpoint already exceeds the bound");
  if (v_hi <= bound)
    throw BracketError("threshold_of: value " + std::to_string(v_hi) +
                       " at upper endpoint does not exceed the bound");

  ThresholdResult res;
  double a = lo, b = hi, va = v_lo, vb = v_hi;
  while (b - a > 1e-4) {
    const double mid = 0.5 * (a + b);
    const double vm = max_value_at(mid);
    if (vm < std::min(va, vb) || vm > std::max(va, vb)) ++res.non_monotone_events;
    if (vm > bound) {
      b = mid;
      vb = vm;
    } else {
      a = mid;
      va = vm;
    }
  }
  res.threshold = 0.5 * (a + b);
  return res;
}

ThresholdResult violation_threshold(
    const std::function<DensityMatrix(double)>& family_builder,
    const bellineq::FacetInequality& f, double lo, double hi,
    const OptimizerConfig& cfg) {
  return threshold_of(
      [&](double t) { return maximize_facet(family_builder(t), f, cfg).best_value; },
      f.bound, lo, hi);
}

}  // namespace gtnl::optimize
