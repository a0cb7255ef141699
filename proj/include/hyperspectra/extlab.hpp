#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "hyperspectra/hypercore.hpp"
#include "hyperspectra/hypergraph.hpp"
#include "hyperspectra/limits.hpp"
#include "hyperspectra/rational.hpp"

namespace hyperspectra {

// A pair (G, H): vertices 0..roots-1 of G are x_1..x_l and H is the hypergraph on
// them with edge set `h_edges` (a subset of the edges of G inside the roots).
struct RootedPair {
  Hypergraph g;
  std::size_t roots = 0;
  std::vector<Edge> h_edges;

  // H = induced(G, roots). Throws InvalidInput when roots > v(G).
  static RootedPair induced_roots(Hypergraph g, std::size_t roots);
  // Validates that every H edge is an edge of G inside the roots.
  RootedPair(Hypergraph g, std::size_t roots, std::vector<Edge> h_edges);

  std::size_t extra_vertices() const { return g.num_vertices() - roots; }  // v(G, H)
  std::size_t extra_edges() const { return g.num_edges() - h_edges.size(); }  // e(G, H)
  Hypergraph h() const;
};

// {"g": hypergraph, "roots": int, "h_edges": [[...], ...]}; h_edges may be omitted,
// meaning the edges induced on the roots.
RootedPair pair_from_json(const nlohmann::json& doc);
nlohmann::json pair_to_json(const RootedPair& pair);

// e(G,H)/v(G,H). Throws DomainError when V(G) = V(H).
Rational pair_density(const RootedPair& pair);
// Maximum of rho(K, H) over K = G[V(H) + S] for nonempty S. CapExceeded when
// v(G, H) exceeds the pair cap.
Rational pair_max_density(const RootedPair& pair, const Limits& limits = default_limits());
// rho(G,H) > rho(K,H) for every K strictly between H and G.
bool is_strictly_balanced_pair(const RootedPair& pair, const Limits& limits = default_limits());

// v(G,H) - alpha e(G,H).
Rational f_alpha(const RootedPair& pair, const Rational& alpha);

enum class PairKind { kSafe, kRigid, kNeutral, kNone };
const char* to_string(PairKind kind);

struct PairClass {
  PairKind kind;
  // Non-root vertices of the intermediate K that decides the class: the minimizer
  // of f(K, H) for safe/neutral/none, the maximizer of f(G, K) for rigid.
  std::vector<Vertex> witness;
  Rational witness_value;  // f(K, H) or f(G, K) at the witness
};

// Safe: f(K,H) > 0 for all H < K <= G. Rigid: f(G,K) < 0 for all H <= K < G.
// Neutral: f(G,H) = 0 and f(K,H) > 0 for all H < K < G. K ranges over induced
// subhypergraphs on V(H) plus a subset of the other vertices.
PairClass classify_pair(const RootedPair& pair, const Rational& alpha,
                        const Limits& limits = default_limits());

// Maps of V(G) into the host fixing root i at root_tuple[i] such that every s-set
// with a non-root vertex is an edge of G exactly when its image is a host edge.
// Sorted lexicographically. CapExceeded when v(G,H) exceeds the extension cap.
std::vector<VertexMap> strict_extensions(const Hypergraph& host, std::span<const Vertex> root_tuple,
                                         const RootedPair& pair,
                                         const Limits& limits = default_limits());

// (K,T)-maximality of (G~, H~) in the host. For every ordered tuple T~ of distinct
// G~ vertices with |T~| = |V(T)| not inside H~, there is no strict (K,T)-extension
// of T~ avoiding the vertices G~ \ T~ whose new vertices share no host edge with
// G~ \ T~ (an edge inside new(K~) + (G~ \ T~) meeting both sides).
bool is_kt_maximal(const Hypergraph& host, std::span<const Vertex> g_tilde,
                   std::span<const Vertex> h_tilde, const RootedPair& k_pair,
                   const Limits& limits = default_limits());

// The alpha-rigid and alpha-neutral pairs (K, T) with 1 <= |V(T)| <= max_roots and
// 1 <= |V(K) \ V(T)| <= r, one per class under permutations of the new vertices.
// Edges inside V(T) are omitted: they do not affect f or strict extensions.
// Memoized per (s, alpha, max_roots, r). CapExceeded when a class has more than
// 20 candidate edges.
const std::vector<RootedPair>& rigid_and_neutral_pairs(int s, const Rational& alpha,
                                                       std::size_t max_roots, std::size_t r);

// Number of strict (G,H)-extensions of the root tuple that are (K,T)-maximal for
// every pair in K_r (built with |V(T)| <= v(G)). r = 0 gives the empty family.
std::uint64_t count_maximal_extensions(const Hypergraph& host, std::span<const Vertex> root_tuple,
                                       const RootedPair& pair, std::size_t r, const Rational& alpha,
                                       const Limits& limits = default_limits());

// Cyclic m-extension shapes over H.
enum class CyclicCase {
  kPathToFresh = 1,       // loose path from x1 closed by an edge back onto the path
  kPathBetweenRoots = 2,  // loose path from x1 closed by an edge through a root x2
  kSingleEdge = 3,        // one edge through 2..s-1 roots and s-l new vertices
};

struct CyclicExtension {
  CyclicCase shape;
  std::vector<Vertex> new_vertices;  // ascending
  std::vector<Edge> new_edges;       // ascending
};

// m / (m(s-1) - 1). DomainError when m(s-1) <= 1.
Rational cyclic_density_bound(int s, int m);

// The shape G \ H takes, if any, where H = G[h_vertices] and every edge of G
// meeting another vertex counts as new. Ignores the density clause.
std::optional<CyclicCase> match_cyclic_shape(const Hypergraph& g, std::span<const Vertex> h_vertices,
                                             int m);
// Shape plus rho^max(G) < m/(m(s-1)-1).
bool is_cyclic_m_extension(const Hypergraph& g, std::span<const Vertex> h_vertices, int m);

// Every subhypergraph G = host[h_vertices] + (new vertices, new edges) of the host
// that is a cyclic m-extension, with at most `max_new_vertices` new vertices.
// Deduplicated and sorted. CapExceeded past `max_results`.
std::vector<CyclicExtension> cyclic_extensions_in(const Hypergraph& host,
                                                  std::span<const Vertex> h_vertices, int m,
                                                  std::size_t max_new_vertices,
                                                  std::size_t max_results = 100000);

struct DecompositionStep {
  CyclicCase shape;
  std::vector<Vertex> vertices;  // V(G_{i+1}), ascending
  std::vector<Edge> new_edges;   // edges of the cyclic extension G_{i+1} \ G_i
};

struct MDecomposition {
  bool member = false;
  Vertex start = 0;                      // the vertex x of G_0 = ({x}, {})
  std::vector<DecompositionStep> steps;  // empty for a single vertex
};

// Shortest chain ({x}, {}) = G_0 < G_1 < ... < G_t of cyclic m-extensions inside G
// with V(G_t) = V(G); edges of G not used by any step are edge-only augmentations.
// member = false when G is not in H_m. CapExceeded when v(G) exceeds the
// decomposition cap.
MDecomposition m_decomposition(const Hypergraph& g, int m, const Limits& limits = default_limits());

}  // namespace hyperspectra
