#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace hyperspectra {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;

// Ordered list of target vertex ids, one per source vertex.
using VertexMap = std::vector<Vertex>;

// An s-uniform hypergraph on vertices 0..n-1. Edges are stored sorted ascending
// and the edge list is kept in lexicographic order without duplicates. Values are
// immutable after construction.
class Hypergraph {
 public:
  // Normalizes each edge (sorts it) and deduplicates the edge list. Throws
  // InvalidInput when an edge has the wrong size, a repeated vertex, or a vertex
  // outside 0..n-1.
  Hypergraph(int s, std::size_t n, std::vector<Edge> edges = {});

  static Hypergraph edgeless(int s, std::size_t n);
  static Hypergraph complete(int s, std::size_t n);

  int s() const { return s_; }
  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  // Indices into edges() of the edges containing v.
  std::span<const std::uint32_t> incident(Vertex v) const;
  // Vertices sharing at least one edge with v, ascending, v excluded.
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return incident(v).size(); }

  // `sorted_edge` must be ascending; repeated vertices give false.
  bool has_edge(std::span<const Vertex> sorted_edge) const;
  // Accepts any order; sorts a copy.
  bool contains(std::span<const Vertex> vertices) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.s_ == b.s_ && a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::uint64_t pack(std::span<const Vertex> sorted_edge) const;

  int s_;
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> incidence_offsets_;
  std::vector<std::uint32_t> incidence_;
  std::vector<std::uint32_t> neighbor_offsets_;
  std::vector<Vertex> neighbors_;
  // Exact 64-bit packing of edges, used when s * ceil(log2 n) <= 64.
  bool packed_ = false;
  unsigned bits_ = 0;
  std::unordered_set<std::uint64_t> edge_keys_;
};

// Loose path: consecutive edges share exactly one vertex. Vertices are numbered
// along the path, so the endpoints are 0 and edges*(s-1).
Hypergraph loose_path(int s, std::size_t edges);
// Loose cycle of `edges` >= 2 edges on edges*(s-1) vertices; edge i holds
// vertices i*(s-1) .. i*(s-1)+s-1 (mod the vertex count).
Hypergraph loose_cycle(int s, std::size_t edges);
// Vertex-disjoint union; vertices of `b` are shifted by v(a).
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);
// Image of `g` under the vertex permutation `perm` (new id of vertex v is perm[v]).
Hypergraph relabel(const Hypergraph& g, const VertexMap& perm);

std::string to_string(const Hypergraph& g);

}  // namespace hyperspectra
