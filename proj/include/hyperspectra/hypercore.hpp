#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hyperspectra/hypergraph.hpp"
#include "hyperspectra/limits.hpp"
#include "hyperspectra/rational.hpp"

namespace hyperspectra {

// e(G)/v(G).
Rational density(const Hypergraph& g);

struct MaxDensity {
  Rational value;
  std::vector<Vertex> witness;  // ascending vertex set attaining `value`
};

// Densest subhypergraph by parametric min-cut. Starting from the density of G,
// each round solves a max-closure problem on the edge/vertex network for the
// current guess and jumps to the density of the closure it finds; the loop
// stops when no vertex set beats the guess. Edgeless input gives 0 with a
// single-vertex witness.
MaxDensity max_density(const Hypergraph& g);

// True iff every proper nonempty vertex subset is strictly sparser than G.
bool is_strictly_balanced(const Hypergraph& g);

// Subhypergraph on `vertices` (any order, duplicates ignored), relabeled in
// ascending order. Throws InvalidInput on an empty or out-of-range set.
Hypergraph induced(const Hypergraph& g, std::span<const Vertex> vertices);

// Length of a shortest path (in edges) between x and y; nullopt if unreachable.
std::optional<std::size_t> distance(const Hypergraph& g, Vertex x, Vertex y);
// BFS distances from `source`; unreachable vertices hold nullopt.
std::vector<std::optional<std::size_t>> distances_from(const Hypergraph& g, Vertex source);

// Injective maps of pattern vertices into host vertices.
struct EmbeddingQuery {
  // Images fixed in advance, as (pattern vertex, host vertex).
  std::vector<std::pair<Vertex, Vertex>> fixed;
  // Every s-subset containing at least one unfixed pattern vertex must be a host
  // edge exactly when it is a pattern edge (plain mode only requires "if").
  bool induced = false;
  // Require the pattern edges lying entirely among fixed vertices to be host edges.
  bool check_fixed_edges = true;
  // Host vertices unavailable to unfixed pattern vertices (indexed by host vertex).
  std::vector<char> forbidden;
};

// Visits each embedding as a VertexMap (entry u is the image of pattern vertex u);
// the visitor returns false to stop. Returns the number of embeddings visited.
std::uint64_t for_each_embedding(const Hypergraph& pattern, const Hypergraph& host,
                                 const EmbeddingQuery& query,
                                 const std::function<bool(const VertexMap&)>& visit);

// Number of injective edge-preserving maps (plain or induced).
std::uint64_t count_embeddings(const Hypergraph& pattern, const Hypergraph& host,
                               bool induced = false);

// Vertex permutations mapping E(G) onto E(G). Throws CapExceeded when v(G) > cap.
std::uint64_t automorphism_count(const Hypergraph& g,
                                 std::size_t cap = default_limits().enumeration_cap);
std::vector<VertexMap> automorphisms(const Hypergraph& g,
                                     std::size_t cap = default_limits().enumeration_cap);

enum class CopyMode { kSubgraph, kInduced };

// Distinct subhypergraphs of `host` isomorphic to `pattern` (embeddings divided
// by the pattern's automorphism count). Throws CapExceeded when v(pattern) > cap.
std::uint64_t count_copies(const Hypergraph& host, const Hypergraph& pattern,
                           CopyMode mode = CopyMode::kSubgraph,
                           std::size_t cap = default_limits().enumeration_cap);

// Whether `host` contains at least one copy; stops at the first embedding.
bool contains_copy(const Hypergraph& host, const Hypergraph& pattern,
                   CopyMode mode = CopyMode::kSubgraph,
                   std::size_t cap = default_limits().enumeration_cap);

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b,
                    std::size_t cap = default_limits().enumeration_cap);

}  // namespace hyperspectra
