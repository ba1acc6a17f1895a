#pragma once

#include <cstdint>
#include <vector>

#include "chiral/atlas.hpp"
#include "chiral/equivariant.hpp"
#include "chiral/gamma_chiral.hpp"
#include "chiral/report.hpp"

namespace chiral {

struct SuiteOptions {
  int max_weight = 2;
  int max_poly_degree = 2;
  int min_degree = 0;
  int max_degree = 2;
  int jobs = 1;
  std::uint64_t seed = 7;
  int samples = 3;   // random polynomials per identity family
  int max_level = 3; // mode levels |n| <= max_level for the free-field relations
};

// Every pair of modes with |level| <= max_level satisfies the canonical supercommutator
// on all window states; super-Jacobi on sampled composite triples.
Report verify_free_fields(const Model& model, const SuiteOptions& opt);

// Mode identities of the chiral coefficient fields f(z) for random polynomials.
Report verify_gamma_relations(const GammaChiralModel& gm, const SuiteOptions& opt);

// d^2 = 0, the Theta / c / gamma relations and the sg[t] relations on window states.
Report verify_weil(const WeilSystem& w, const SuiteOptions& opt);

// Blockwise cohomology of <c, gamma>: K at weight 0 degree 0, zero elsewhere.
Report verify_wprime_acyclicity(const WeilSystem& w, const SuiteOptions& opt);

// D^2 = 0, agreement with the classical complex at weight 0, and the Cartan relations for
// every pair of the given sections.
Report verify_algebroid(const AlgebroidSystem& sys, const std::vector<Section>& sections, const SuiteOptions& opt);

// Sections used by the algebroid suite: the frame, plus x_1 e_1 when m, r > 0.
std::vector<Section> sample_sections(const AlgebroidData& data);

// Conjugation identities for W(g) (x) B, where B is the second factor of the setup.
Report verify_cartan(const EquivariantSetup& s, const SuiteOptions& opt);

// W*-module construction on the second factor of the setup (a W(g) copy or a
// transformation algebroid).
Report verify_wstar(const EquivariantSetup& s, const SuiteOptions& opt);

// Cocycle and intertwining checks, then global sections against the first chart.
Report verify_atlas(const AtlasSystem& sys, const SuiteOptions& opt);

// Exact basis of {v in block : op v = 0 for all ops}.
std::vector<State> commutant_subspace(const std::vector<OpExpr>& ops, const Model& model, const Sector& sector,
                                      const BlockKey& key);

}  // namespace chiral
