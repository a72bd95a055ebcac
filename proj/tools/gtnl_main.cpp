// Command-line front end: state diagnostics, the preparation-stage
// simulation, facet maximization, violation thresholds, filtered-locality
// checks, and batch scans.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "gtnl/bellineq.hpp"
#include "gtnl/entangle.hpp"
#include "gtnl/optimize.hpp"
#include "gtnl/protocol.hpp"
#include "gtnl/scan.hpp"
#include "gtnl/states.hpp"

namespace {

using namespace gtnl;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBracket = 3;
constexpr int kExitIo = 4;

states::StateFamily parse_family(const std::string& s) {
  if (s == "rho1") return states::StateFamily::Rho1;
  if (s == "rho2") return states::StateFamily::Rho2;
  if (s == "rho3") return states::StateFamily::Rho3;
  if (s == "rho4") return states::StateFamily::Rho4;
  throw std::invalid_argument("unknown family '" + s + "' (expected rho1..rho4)");
}

measure::BellOutcome parse_outcome(const std::string& s) {
  if (s == "phi+") return measure::BellOutcome::PhiPlus;
  if (s == "phi-") return measure::BellOutcome::PhiMinus;
  if (s == "psi+") return measure::BellOutcome::PsiPlus;
  if (s == "psi-") return measure::BellOutcome::PsiMinus;
  throw std::invalid_argument("unknown Bell outcome '" + s +
                              "' (expected phi+, phi-, psi+ or psi-)");
}

struct FacetChoice {
  int id = 185;
  std::string file;

  bellineq::FacetInequality resolve() const {
    if (!file.empty()) {
      for (auto& f : bellineq::load_facets_file(file))
        if (f.id == id) return f;
      throw std::invalid_argument("facet id " + std::to_string(id) + " not found in " + file);
    }
    if (id == 185) return bellineq::svetlichny_facet();
    if (id == 3) return bellineq::ns3_facet();
    throw std::invalid_argument("facet id " + std::to_string(id) +
                                " is not built in; pass --facet-file");
  }
};

void print_bound(const char* name, const bellineq::ClosedFormBound& b, double cgm) {
  std::printf("%s: max S = %.9g  (sine %.9g, diagonal %.9g, %s branch)  C_GM = %.9g\n",
              name, b.value(), b.sine, b.diagonal,
              b.branch() == bellineq::Branch::Sine ? "sine" : "diagonal", cgm);
}

int run(int argc, char** argv) {
  CLI::App app{"genuine tripartite nonlocality toolkit"};
  app.require_subcommand(1);

  states::StateFamilyParams params;
  auto add_param_options = [&](CLI::App* cmd) {
    cmd->add_option("--theta1", params.theta1, "rho1 angle, [0, pi/4]");
    cmd->add_option("--p1", params.p1, "rho1 mixing weight");
    cmd->add_option("--p2", params.p2, "rho2 mixing weight");
    cmd->add_option("--theta3", params.theta3, "rho3 angle, [0, pi/4]");
    cmd->add_option("--p3", params.p3, "rho3 mixing weight");
  };

  optimize::OptimizerConfig opt_cfg;
  auto add_optimizer_options = [&](CLI::App* cmd) {
    cmd->add_option("--starts", opt_cfg.starts, "multistart count");
    cmd->add_option("--iterations", opt_cfg.max_iterations, "iterations per start");
    cmd->add_option("--seed", opt_cfg.seed, "optimizer seed");
  };

  // state-info
  std::string family_name = "rho1";
  auto* info = app.add_subcommand("state-info", "closed-form bounds and concurrence");
  add_param_options(info);
  info->add_option("--family", family_name, "rho1|rho2|rho3|rho4 (default: all)");
  bool info_all = true;
  info->callback([&] {
    if (info->count("--family")) info_all = false;
  });

  // smp
  auto* smp = app.add_subcommand("smp", "run the preparation stage");
  add_param_options(smp);
  std::vector<std::string> outcome_names{"psi-", "psi-", "psi-"};
  smp->add_option("--outcomes", outcome_names, "three Bell outcomes")->expected(3);

  // maximize
  auto* maxi = app.add_subcommand("maximize", "maximize a facet over settings");
  add_param_options(maxi);
  FacetChoice facet;
  maxi->add_option("--family", family_name, "state family")->required();
  maxi->add_option("--facet", facet.id, "facet id (built in: 3, 185)");
  maxi->add_option("--facet-file", facet.file, "facet file for non-builtin ids");
  add_optimizer_options(maxi);

  // threshold
  auto* thr = app.add_subcommand("threshold", "bisect a violation threshold");
  add_param_options(thr);
  std::string sweep = "p3";
  double lo = 0.0, hi = 1.0;
  thr->add_option("--family", family_name, "state family")->required();
  thr->add_option("--facet", facet.id, "facet id");
  thr->add_option("--facet-file", facet.file, "facet file");
  thr->add_option("--sweep", sweep, "parameter to bisect: theta1|p1|p2|theta3|p3");
  thr->add_option("--lo", lo, "bracket lower end");
  thr->add_option("--hi", hi, "bracket upper end");
  add_optimizer_options(thr);

  // filters
  auto* filt = app.add_subcommand("filters", "filtered-locality check");
  add_param_options(filt);
  filt->add_option("--family", family_name, "state family")->required();
  filt->add_option("--facet", facet.id, "facet id");
  filt->add_option("--facet-file", facet.file, "facet file");
  add_optimizer_options(filt);

  // scan
  auto* scn = app.add_subcommand("scan", "batch scan from a config file");
  std::string config_path;
  scn->add_option("config", config_path, "scan config (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (*info) {
    params.validate();
    using states::StateFamily;
    const std::array<std::pair<StateFamily, const char*>, 4> fams{
        std::pair{StateFamily::Rho1, "rho1"}, std::pair{StateFamily::Rho2, "rho2"},
        std::pair{StateFamily::Rho3, "rho3"}, std::pair{StateFamily::Rho4, "rho4"}};
    for (const auto& [fam, name] : fams) {
      if (!info_all && name != family_name) continue;
      print_bound(name, bellineq::closed_form_B(fam, params),
                  entangle::cgm_family(fam, params));
    }
    return kExitOk;
  }

  if (*smp) {
    params.validate();
    std::array<measure::BellOutcome, 3> outcomes{parse_outcome(outcome_names[0]),
                                                 parse_outcome(outcome_names[1]),
                                                 parse_outcome(outcome_names[2])};
    auto [state, prob] = protocol::smp_prepare(
        states::make_rho1(params.theta1, params.p1), states::make_rho2(params.p2),
        states::make_rho3(params.theta3, params.p3), outcomes);
    std::printf("outcome probability: %.9g\n", prob);
    std::cout << "post-selected state:\n" << state.matrix() << "\n";
    const bool canonical = outcomes == std::array{measure::BellOutcome::PsiMinus,
                                                  measure::BellOutcome::PsiMinus,
                                                  measure::BellOutcome::PsiMinus};
    if (canonical) {
      const auto closed =
          states::make_rho4_closed_form(params.theta1, params.theta3, params.p3);
      std::printf("closed-form residual (trace distance): %.3g\n",
                  qlin::trace_distance(state, closed));
    }
    return kExitOk;
  }

  if (*maxi) {
    params.validate();
    const auto f = facet.resolve();
    const auto state = states::make_family(parse_family(family_name), params);
    const auto res = optimize::maximize_facet(state, f, opt_cfg);
    std::printf("facet %d: best value %.9g (bound %.9g)  violated: %s\n", f.id,
                res.best_value, f.bound, res.violated ? "yes" : "no");
    std::printf("starts converged: %d/%d\n", res.starts_converged, opt_cfg.starts);
    const auto a = res.best_setting.to_array();
    std::printf("best setting:");
    for (double v : a) std::printf(" %.6g", v);
    std::printf("\n");
    return kExitOk;
  }

  if (*thr) {
    const auto f = facet.resolve();
    const auto fam = parse_family(family_name);
    auto builder = [&](double t) {
      states::StateFamilyParams p = params;
      if (sweep == "theta1") p.theta1 = t;
      else if (sweep == "p1") p.p1 = t;
      else if (sweep == "p2") p.p2 = t;
      else if (sweep == "theta3") p.theta3 = t;
      else if (sweep == "p3") p.p3 = t;
      else throw std::invalid_argument("unknown sweep parameter '" + sweep + "'");
      return states::make_family(fam, p);
    };
    const auto res = optimize::violation_threshold(builder, f, lo, hi, opt_cfg);
    std::printf("threshold in %s: %.6g\n", sweep.c_str(), res.threshold);
    if (res.non_monotone_events > 0)
      std::printf("warning: %d midpoint(s) broke the bracket ordering\n",
                  res.non_monotone_events);
    return kExitOk;
  }

  if (*filt) {
    params.validate();
    std::vector<bellineq::FacetInequality> facets;
    if (!facet.file.empty())
      facets = bellineq::load_facets_file(facet.file);
    else
      facets.push_back(facet.resolve());
    const auto res = scan::filtered_locality_check(parse_family(family_name), params,
                                                   facets, opt_cfg);
    std::printf("filtered-local: %s\n", res.local ? "yes" : "no");
    std::printf("worst facet %d: value %.9g at eps = (%.4g, %.4g, %.4g)\n",
                res.worst_facet_id, res.worst_value, res.worst_eps.eps1,
                res.worst_eps.eps2, res.worst_eps.eps3);
    return kExitOk;
  }

  if (*scn) {
    const auto spec = scan::load_scan_spec(config_path);
    const auto summary = scan::run_scan(spec);
    std::printf("rows: %zu\n", summary.rows);
    std::printf("facet coverage: %s\n", summary.facet_coverage.c_str());
    if (!summary.swept_parameter.empty()) {
      for (const auto& iv : summary.intervals)
        std::printf("revelation interval in %s: [%.6g, %.6g]%s\n",
                    summary.swept_parameter.c_str(), iv.lo, iv.hi,
                    iv.lo_refined || iv.hi_refined ? " (refined)" : "");
      if (summary.intervals.empty())
        std::printf("no revelation interval in %s\n", summary.swept_parameter.c_str());
    }
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gtnl::BracketError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBracket;
  } catch (const gtnl::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const gtnl::DuplicateId& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
}
