#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "hyperspectra/hypergraph.hpp"
#include "hyperspectra/limits.hpp"
#include "hyperspectra/rational.hpp"

namespace hyperspectra {

// Parameters of one draw from G^s(n, p). Exactly one of `p` and `alpha` is set;
// with `alpha`, p = n^-alpha.
struct ModelParams {
  int s = 3;
  std::size_t n = 0;
  std::optional<double> p;
  std::optional<Rational> alpha;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;

  // Validates the parameters and resolves p.
  double edge_probability() const;
};

// n^-alpha via exp(-alpha ln n) in extended precision.
double p_from_alpha(std::size_t n, const Rational& alpha);

// The uniform in [0, 1) attached to the potential edge with colex rank `rank` in
// trial (seed, trial_index). An edge is present iff its uniform is below p, so
// draws at p1 < p2 from the same stream are nested.
double edge_uniform(std::uint64_t seed, std::uint64_t trial_index, std::uint64_t rank);

// Colex rank of a sorted s-subset: sum over i of C(edge[i], i + 1).
std::uint64_t colex_rank(std::span<const Vertex> sorted_edge);

// Draws G^s(n, p). Throws BudgetExceeded when C(n, s) exceeds the sample budget
// and DomainError for n < s or p outside [0, 1].
Hypergraph sample(const ModelParams& params, const Limits& limits = default_limits());

}  // namespace hyperspectra
