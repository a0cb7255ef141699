#include "hyperspectra/sampler.hpp"

#include <cmath>

#include "hyperspectra/errors.hpp"

namespace hyperspectra {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial_index) {
  return mix64(mix64(seed + kGolden) ^ (trial_index * 0xD1B54A32D192ED03ull + kGolden));
}

double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

double ModelParams::edge_probability() const {
  if (s < 2) throw DomainError("uniformity must be at least 2");
  if (p.has_value() == alpha.has_value()) throw DomainError("set exactly one of p and alpha");
  if (p) {
    if (!(*p >= 0.0 && *p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    return *p;
  }
  return p_from_alpha(n, *alpha);
}

double p_from_alpha(std::size_t n, const Rational& alpha) {
  if (n < 2) throw DomainError("n^-alpha needs n >= 2");
  if (alpha.sign() <= 0) throw DomainError("alpha must be positive");
  long double a = alpha.to_long_double();
  return static_cast<double>(std::exp(-a * std::log(static_cast<long double>(n))));
}

double edge_uniform(std::uint64_t seed, std::uint64_t trial_index, std::uint64_t rank) {
  return to_unit(mix64(stream_key(seed, trial_index) + (rank + 1) * kGolden));
}

std::uint64_t colex_rank(std::span<const Vertex> sorted_edge) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < sorted_edge.size(); ++i) {
    rank += static_cast<std::uint64_t>(binomial(sorted_edge[i], i + 1));
  }
  return rank;
}

Hypergraph sample(const ModelParams& params, const Limits& limits) {
  const double p = params.edge_probability();
  const int s = params.s;
  const std::size_t n = params.n;
  if (n < static_cast<std::size_t>(s)) throw DomainError("sampling needs n >= s");
  BigInt total = binomial(static_cast<long long>(n), s);
  if (total > limits.sample_budget) {
    throw BudgetExceeded("C(n, s) = " + total.str() + " potential edges exceed the sample budget");
  }
  const std::uint64_t key = stream_key(params.seed, params.trial_index);
  const auto count = static_cast<std::uint64_t>(total);
  std::vector<Edge> edges;
  if (p > 0.0) {
    // Walk s-subsets in colex order; the rank is the loop counter.
    std::vector<Vertex> c(s);
    for (int i = 0; i < s; ++i) c[i] = static_cast<Vertex>(i);
    for (std::uint64_t rank = 0; rank < count; ++rank) {
      if (to_unit(mix64(key + (rank + 1) * kGolden)) < p) edges.emplace_back(c.begin(), c.end());
      int j = 0;
      while (j + 1 < s && c[j] + 1 == c[j + 1]) ++j;
      ++c[j];
      for (int i = 0; i < j; ++i) c[i] = static_cast<Vertex>(i);
    }
  }
  return Hypergraph(s, n, std::move(edges));
}

}  // namespace hyperspectra
