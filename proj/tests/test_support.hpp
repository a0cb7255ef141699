#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hyperspectra/hypergraph.hpp"

namespace hyperspectra::testing {

// Random s-uniform hypergraph on n vertices, each potential edge kept with
// probability p, drawn from `rng`.
Hypergraph random_hypergraph(int s, std::size_t n, double p, std::mt19937_64& rng);

// All s-subsets of {0..n-1} in lexicographic order.
std::vector<Edge> all_subsets(std::size_t n, int s);

// Brute-force number of injective maps sending every pattern edge to a host edge
// (and, when `induced`, every non-edge to a non-edge).
std::uint64_t brute_force_embeddings(const Hypergraph& pattern, const Hypergraph& host,
                                     bool induced);

}  // namespace hyperspectra::testing

#include "hyperspectra/folio.hpp"

namespace hyperspectra::testing {

// Random formula over variables from `pool` with at most `max_depth` nested
// quantifiers and at most `levels` nested connectives.
Formula random_formula(std::mt19937_64& rng, int s, int max_depth, int levels,
                       const std::vector<std::string>& pool);

// Deliberately plain evaluator: explicit environment list, no short-circuiting.
bool naive_evaluate(const Hypergraph& g, const Formula& f,
                    std::vector<std::pair<std::string, Vertex>>& env);

}  // namespace hyperspectra::testing

#include "hyperspectra/extlab.hpp"

namespace hyperspectra::testing {

// Definition-by-definition (K,T)-maximality: every ordered T~, every injective
// placement of the new vertices outside G~, then the strict-extension and
// cross-edge conditions over explicit s-subsets.
bool brute_force_kt_maximal(const Hypergraph& host, const std::vector<Vertex>& g_tilde,
                            const std::vector<Vertex>& h_tilde, const RootedPair& k_pair);

// Grows random members of H_m by random cyclic extensions (built from the three
// shapes) and random extra edges, keeping each step under the density bound.
// Returns every distinct accepted hypergraph with at least two vertices.
std::vector<Hypergraph> random_hm_members(int s, int m, std::size_t max_vertices, std::size_t count,
                                          std::mt19937_64& rng);

// G = H + one cyclic extension of the given case with fresh vertices n.., or
// nullopt when the random parameters do not fit H.
std::optional<Hypergraph> random_cyclic_extension(const Hypergraph& h, int m, CyclicCase shape,
                                                  std::mt19937_64& rng);

}  // namespace hyperspectra::testing

#include "hyperspectra/efgame.hpp"
#include "hyperspectra/rational.hpp"

namespace hyperspectra::testing {

// Maximum of e/v over every nonempty vertex subset (v(G) <= 20).
Rational brute_force_max_density(const Hypergraph& g);

// Plays every Spoiler line of k rounds and checks the induced-isomorphism
// condition only at the end; no memo, no pruning.
Winner reference_solve(const Hypergraph& g1, const Hypergraph& g2, int k);

}  // namespace hyperspectra::testing
