#include "gtnl/bellineq.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gtnl::bellineq {

namespace {

constexpr double kRoot2 = 1.4142135623730951;
const std::int8_t A = Monomial::absent;

FacetInequality make_facet(int id, double bound,
                           std::vector<std::pair<Monomial, double>> terms) {
  FacetInequality f{id, bound, std::move(terms)};
  f.validate();
  return f;
}

}  // namespace

void FacetInequality::validate() const {
  if (id < 0 || id > 185)
    throw std::invalid_argument("FacetInequality: id " + std::to_string(id) +
                                " outside 0..185");
  if (terms.empty()) throw std::invalid_argument("FacetInequality: no terms");
  if (!std::isfinite(bound))
    throw std::invalid_argument("FacetInequality: non-finite bound");
  std::set<Monomial> seen;
  for (const auto& [m, coef] : terms) {
    if (m.empty())
      throw std::invalid_argument("FacetInequality: empty monomial in facet " +
                                  std::to_string(id));
    if (!std::isfinite(coef))
      throw std::invalid_argument("FacetInequality: non-finite coefficient in facet " +
                                  std::to_string(id));
    if (!seen.insert(m).second)
      throw std::invalid_argument("FacetInequality: duplicate monomial " +
                                  measure::to_string(m) + " in facet " +
                                  std::to_string(id));
  }
}

double evaluate(const FacetInequality& f, const CorrelatorTable& t) {
  double acc = 0.0;
  for (const auto& [m, coef] : f.terms) acc += coef * t.at(m);
  return acc;
}

const FacetInequality& svetlichny_facet() {
  static const FacetInequality f = make_facet(
      185, 4.0,
      {
          {{0, 0, 0}, 1.0},
          {{1, 0, 0}, 1.0},
          {{0, 1, 0}, -1.0},
          {{1, 1, 0}, 1.0},
          {{0, 0, 1}, 1.0},
          {{1, 0, 1}, -1.0},
          {{0, 1, 1}, 1.0},
          {{1, 1, 1}, 1.0},
      });
  return f;
}

const FacetInequality& ns3_facet() {
  static const FacetInequality f = make_facet(
      3, 4.0,
      {
          {{0, A, A}, -1.0},
          {{1, A, A}, -1.0},
          {{0, 0, A}, -1.0},
          {{A, 1, A}, -2.0},
          {{A, A, 0}, -1.0},
          {{1, 0, A}, 1.0},
          {{0, A, 0}, -1.0},
          {{A, 0, 0}, 1.0},
          {{1, 0, 0}, 1.0},
          {{0, 1, 0}, -1.0},
          {{1, 1, 0}, 1.0},
          {{A, A, 1}, -1.0},
          {{1, A, 1}, 1.0},
          {{A, 0, 1}, -1.0},
          {{0, 0, 1}, -1.0},
          {{0, 1, 1}, 1.0},
          {{1, 1, 1}, 1.0},
      });
  return f;
}

ClosedFormBound closed_form_B(states::StateFamily family,
                              const states::StateFamilyParams& p) {
  p.validate();
  switch (family) {
    case states::StateFamily::Rho1:
      return {4.0 * kRoot2 * p.p1 * std::sin(2.0 * p.theta1),
              4.0 * std::abs(1.0 - p.p1 - p.p1 * std::cos(2.0 * p.theta1))};
    case states::StateFamily::Rho2:
      return {4.0 * kRoot2 * p.p2, 4.0 * (1.0 - p.p2)};
    case states::StateFamily::Rho3:
      // The diagonal branch carries +p3 cos(2 theta3): the pure part of
      // rho_3 has sin(theta3) on |000>, which flips the sign relative to
      // the rho_1 pattern.
      return {4.0 * kRoot2 * p.p3 * std::sin(2.0 * p.theta3),
              4.0 * std::abs(1.0 - p.p3 + p.p3 * std::cos(2.0 * p.theta3))};
    case states::StateFamily::Rho4: {
      const double s1sq = std::pow(std::sin(p.theta1), 2);
      const double s3sq = std::pow(std::sin(p.theta3), 2);
      const double denom = s1sq + p.p3 * std::cos(2.0 * p.theta1) * s3sq;
      if (denom < 1e-14)
        throw DegenerateOutcome("closed_form_B(rho4): vanishing denominator");
      return {2.0 * kRoot2 * p.p3 * std::sin(2.0 * p.theta1) *
                  std::sin(2.0 * p.theta3) / denom,
              2.0 * std::abs(1.0 - 2.0 * p.p3 * s3sq - std::cos(2.0 * p.theta1)) / denom};
    }
  }
  throw std::logic_error("closed_form_B: bad enum");
}

ClosedFormBound svetlichny_xstate_bound(const states::XStateParams& x) {
  x.validate();
  int live = 0;
  double gamma = 0.0;
  for (const auto& g : x.gamma) {
    const double mag = std::abs(g);
    if (mag > 1e-12) ++live;
    gamma = std::max(gamma, mag);
  }
  if (live > 1)
    throw std::invalid_argument(
        "svetlichny_xstate_bound: exact only for a single nonzero coherence, got " +
        std::to_string(live));
  // <zzz> is the parity-signed diagonal sum; the sign pattern is invariant
  // under the bit flips that move any single coherence to the (000,111) pair.
  const double zzz = (x.a[0] - x.b[0]) - (x.a[1] - x.b[1]) - (x.a[2] - x.b[2]) +
                     (x.a[3] - x.b[3]);
  return {8.0 * kRoot2 * gamma, 4.0 * std::abs(zzz)};
}

ClosedFormBound filtered_svetlichny_bound(double theta1, double p1,
                                          const protocol::FilterParams& f) {
  if (!(theta1 >= 0.0 && theta1 <= std::atan(1.0)))  // pi/4
    throw std::domain_error("filtered_svetlichny_bound: theta1 outside [0, pi/4]");
  if (!(p1 >= 0.0 && p1 <= 1.0))
    throw std::domain_error("filtered_svetlichny_bound: p1 outside [0, 1]");
  f.validate();

  const double e1 = f.eps1, e2 = f.eps2, e3 = f.eps3;
  const double c1sq = std::pow(std::cos(theta1), 2);
  const double s1sq = std::pow(std::sin(theta1), 2);
  // F rho_1 F^dag: the separable part |001><001| picks up eps1^2 eps2^2 and
  // the pure part becomes eps1 eps2 eps3 cos(theta1)|000> + sin(theta1)|111>.
  const double sep = (1.0 - p1) * e1 * e1 * e2 * e2;
  const double coh = p1 * e1 * e2 * e3;
  const double norm = sep + coh * e1 * e2 * e3 * c1sq + p1 * s1sq;
  if (norm < 1e-14)
    throw DegenerateOutcome("filtered_svetlichny_bound: filters annihilate rho1");
  return {4.0 * kRoot2 * coh * std::sin(2.0 * theta1) / norm,
          4.0 * std::abs(sep - coh * e1 * e2 * e3 * c1sq + p1 * s1sq) / norm};
}

namespace {

using nlohmann::json;

std::int8_t parse_slot(const json& j, const char* name, int facet_idx, int term_idx) {
  if (!j.contains(name))
    throw ParseError("facet " + std::to_string(facet_idx) + ", term " +
                     std::to_string(term_idx) + ": missing field '" + name + "'");
  const json& v = j.at(name);
  if (v.is_null()) return Monomial::absent;
  if (v.is_number_integer()) {
    const int i = v.get<int>();
    if (i == 0 || i == 1) return static_cast<std::int8_t>(i);
  }
  throw ParseError("facet " + std::to_string(facet_idx) + ", term " +
                   std::to_string(term_idx) + ": field '" + name +
                   "' must be 0, 1 or null");
}

}  // namespace

std::vector<FacetInequality> load_facets(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("facet file: ") + e.what());
  }

  if (!root.is_object() || !root.contains("facets"))
    throw ParseError("facet file: expected a top-level object with a 'facets' list");
  for (const auto& [key, _] : root.items())
    if (key != "facets") throw ParseError("facet file: unknown top-level field '" + key + "'");
  const json& list = root.at("facets");
  if (!list.is_array()) throw ParseError("facet file: 'facets' is not a list");

  std::vector<FacetInequality> out;
  std::set<int> ids;
  int facet_idx = 0;
  for (const json& rec : list) {
    if (!rec.is_object())
      throw ParseError("facet " + std::to_string(facet_idx) + ": not an object");
    for (const auto& [key, _] : rec.items())
      if (key != "id" && key != "bound" && key != "terms")
        throw ParseError("facet " + std::to_string(facet_idx) + ": unknown field '" +
                         key + "'");
    for (const char* req : {"id", "bound", "terms"})
      if (!rec.contains(req))
        throw ParseError("facet " + std::to_string(facet_idx) + ": missing field '" +
                         std::string(req) + "'");
    if (!rec.at("id").is_number_integer())
      throw ParseError("facet " + std::to_string(facet_idx) + ": 'id' is not an integer");
    if (!rec.at("bound").is_number())
      throw ParseError("facet " + std::to_string(facet_idx) + ": 'bound' is not a number");

    FacetInequality f;
    f.id = rec.at("id").get<int>();
    f.bound = rec.at("bound").get<double>();

    const json& terms = rec.at("terms");
    if (!terms.is_array())
      throw ParseError("facet " + std::to_string(facet_idx) + ": 'terms' is not a list");
    int term_idx = 0;
    for (const json& t : terms) {
      if (!t.is_object())
        throw ParseError("facet " + std::to_string(facet_idx) + ", term " +
                         std::to_string(term_idx) + ": not an object");
      for (const auto& [key, _] : t.items())
        if (key != "x" && key != "y" && key != "z" && key != "coef")
          throw ParseError("facet " + std::to_string(facet_idx) + ", term " +
                           std::to_string(term_idx) + ": unknown field '" + key + "'");
      Monomial m;
      m.x = parse_slot(t, "x", facet_idx, term_idx);
      m.y = parse_slot(t, "y", facet_idx, term_idx);
      m.z = parse_slot(t, "z", facet_idx, term_idx);
      if (m.empty())
        throw ParseError("facet " + std::to_string(facet_idx) + ", term " +
                         std::to_string(term_idx) + ": all party slots are null");
      if (!t.contains("coef") || !t.at("coef").is_number())
        throw ParseError("facet " + std::to_string(facet_idx) + ", term " +
                         std::to_string(term_idx) + ": missing or non-numeric 'coef'");
      f.terms.emplace_back(m, t.at("coef").get<double>());
      ++term_idx;
    }

    try {
      f.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError("facet " + std::to_string(facet_idx) + ": " + e.what());
    }
    if (f.id != 0 && !ids.insert(f.id).second)
      throw DuplicateId("facet file: id " + std::to_string(f.id) +
                        " appears more than once");
    out.push_back(std::move(f));
    ++facet_idx;
  }
  return out;
}

std::vector<FacetInequality> load_facets_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open facet file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_facets(buf.str());
}

std::string facets_to_json(std::span<const FacetInequality> facets) {
  json list = json::array();
  for (const FacetInequality& f : facets) {
    json terms = json::array();
    for (const auto& [m, coef] : f.terms) {
      json t;
      t["x"] = m.x == Monomial::absent ? json(nullptr) : json(int(m.x));
      t["y"] = m.y == Monomial::absent ? json(nullptr) : json(int(m.y));
      t["z"] = m.z == Monomial::absent ? json(nullptr) : json(int(m.z));
      t["coef"] = coef;
      terms.push_back(std::move(t));
    }
    list.push_back(json{{"id", f.id}, {"bound", f.bound}, {"terms", std::move(terms)}});
  }
  return json{{"facets", std::move(list)}}.dump(2) + "\n";
}

}  // namespace gtnl::bellineq
