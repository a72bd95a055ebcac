#pragma once

// Facet inequalities of the genuine-3-way-nonsignalling polytope in
// correlator form: representation, evaluation, the two facets built in from
// their printed coefficient tables (3 and the Svetlichny facet, 185),
// closed-form Svetlichny maxima over projective measurements for the four
// state families and for filtered states, and facet-file ingestion.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gtnl/measure.hpp"
#include "gtnl/protocol.hpp"
#include "gtnl/states.hpp"

namespace gtnl::bellineq {

using measure::CorrelatorTable;
using measure::Monomial;

// Signed coefficients over correlator monomials with a classical bound.
struct FacetInequality {
  int id = 0;  // 1..185, or 0 for user-defined
  double bound = 4.0;
  std::vector<std::pair<Monomial, double>> terms;

  void validate() const;
};

enum class Branch { Sine, Diagonal };

// Result of a two-branch closed-form maximum; records which argument of the
// max dominated.
struct ClosedFormBound {
  double sine = 0.0;
  double diagonal = 0.0;

  double value() const { return sine >= diagonal ? sine : diagonal; }
  Branch branch() const { return sine >= diagonal ? Branch::Sine : Branch::Diagonal; }
};

// Sum of coefficient * correlator. Throws MissingMonomial when the table
// lacks a referenced monomial.
double evaluate(const FacetInequality& f, const CorrelatorTable& t);

// The Svetlichny facet (id 185): eight three-party terms, coefficients +-1.
const FacetInequality& svetlichny_facet();

// The 3rd facet: 17 terms including coefficient -2 on <y1>.
const FacetInequality& ns3_facet();

// Maximum Svetlichny value over projective measurements for one family.
ClosedFormBound closed_form_B(states::StateFamily family,
                              const states::StateFamilyParams& p);

// Same maximum for any X state with at most one nonzero coherence:
// max[ 8 sqrt2 |gamma|, 4 |<zzz>| ]. Throws std::invalid_argument when more
// than one coherence is nonzero (the two-branch form is exact only then).
ClosedFormBound svetlichny_xstate_bound(const states::XStateParams& x);

// Svetlichny maximum of the filtered rho_1 family at the given epsilons, in
// closed form. Throws DegenerateOutcome on a vanishing normalization.
ClosedFormBound filtered_svetlichny_bound(double theta1, double p1,
                                          const protocol::FilterParams& f);

// Parse a facet file (see README for the schema). Nonzero ids must be
// unique; unknown fields are rejected. An empty facet list is valid.
std::vector<FacetInequality> load_facets(std::string_view text);
std::vector<FacetInequality> load_facets_file(const std::filesystem::path& path);

// Serialize in the same schema (round-trips through load_facets).
std::string facets_to_json(std::span<const FacetInequality> facets);

}  // namespace gtnl::bellineq
