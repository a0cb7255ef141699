#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hyperspectra/folio.hpp"
#include "hyperspectra/hypergraph.hpp"
#include "hyperspectra/limits.hpp"

namespace hyperspectra {

enum class Winner { kDuplicator, kSpoiler };
const char* to_string(Winner winner);

struct GamePosition {
  const Hypergraph* g1 = nullptr;
  const Hypergraph* g2 = nullptr;
  std::vector<Vertex> chosen1;
  std::vector<Vertex> chosen2;
  int rounds_left = 0;
};

struct SpoilerMove {
  int side = 1;  // 1: Spoiler picks in G1 and Duplicator answers in G2; 2: the reverse
  Vertex vertex = 0;
};

// Duplicator's reply in the opposite board; nullopt signals that no reply exists.
using Strategy = std::function<std::optional<Vertex>(const GamePosition&, const SpoilerMove&)>;

// Whether adding the pair (x, y) to the chosen tuples keeps them a partial
// isomorphism: equal positions stay equal and each s-set of distinct chosen
// vertices is an edge in G1 exactly when its partner is an edge in G2.
bool extends_partial_isomorphism(const Hypergraph& g1, const Hypergraph& g2,
                                 const std::vector<Vertex>& chosen1,
                                 const std::vector<Vertex>& chosen2, Vertex x, Vertex y);

struct SolveOptions {
  unsigned jobs = 1;           // workers over Spoiler's first move
  bool use_symmetry = true;    // canonicalize positions under board automorphisms
};

// Winner of the k-round game under optimal play. Throws BudgetExceeded once more
// than limits.game_budget positions are expanded.
Winner solve(const Hypergraph& g1, const Hypergraph& g2, int k,
             const Limits& limits = default_limits(), const SolveOptions& options = {});

// True iff Duplicator following `strategy` survives every Spoiler line of k moves.
bool verify_strategy(const Hypergraph& g1, const Hypergraph& g2, int k, const Strategy& strategy,
                     const Limits& limits = default_limits());

// Replies with the vertex of the same id (nullopt when out of range).
Strategy mirror_strategy();
// Always replies with `vertex` (nullopt when out of range).
Strategy constant_strategy(Vertex vertex);
// Repeats a chosen vertex's partner; otherwise the smallest unchosen vertex whose
// edges to the chosen vertices realize the same pattern, or nullopt.
Strategy extension_strategy(int k);

struct AgreementReport {
  Winner winner = Winner::kSpoiler;
  std::vector<Formula> counterexamples;  // sentences separating boards Duplicator wins on
};

// Solves the game and, when Duplicator wins, checks that every corpus sentence
// has the same truth value on both boards. Throws InvalidInput for a sentence
// with free variables or quantifier depth above k.
AgreementReport agreement_check(const Hypergraph& g1, const Hypergraph& g2, int k,
                                const std::vector<Formula>& corpus,
                                const Limits& limits = default_limits());

}  // namespace hyperspectra
