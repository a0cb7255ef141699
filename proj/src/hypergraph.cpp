#include "hyperspectra/hypergraph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

#include "hyperspectra/errors.hpp"

namespace hyperspectra {

Hypergraph::Hypergraph(int s, std::size_t n, std::vector<Edge> edges)
    : s_(s), n_(n), edges_(std::move(edges)) {
  if (s < 1) throw InvalidInput("uniformity must be positive");
  if (n < 1) throw InvalidInput("hypergraph needs at least one vertex");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.size() != static_cast<std::size_t>(s)) {
      throw InvalidInput("edge " + std::to_string(i) + " has " + std::to_string(e.size()) +
                         " vertices, expected " + std::to_string(s));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InvalidInput("edge " + std::to_string(i) + " repeats a vertex");
    }
    if (e.back() >= n) {
      throw InvalidInput("edge " + std::to_string(i) + " uses vertex " +
                         std::to_string(e.back()) + " outside 0.." + std::to_string(n - 1));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  incidence_offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    for (Vertex v : e) ++incidence_offsets_[v + 1];
  }
  for (std::size_t v = 0; v < n_; ++v) incidence_offsets_[v + 1] += incidence_offsets_[v];
  incidence_.resize(incidence_offsets_[n_]);
  std::vector<std::uint32_t> fill(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    for (Vertex v : edges_[i]) incidence_[fill[v]++] = i;
  }

  neighbor_offsets_.assign(n_ + 1, 0);
  std::vector<Vertex> scratch;
  for (Vertex v = 0; v < n_; ++v) {
    scratch.clear();
    for (std::uint32_t ei : incident(v)) {
      for (Vertex w : edges_[ei]) {
        if (w != v) scratch.push_back(w);
      }
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    neighbors_.insert(neighbors_.end(), scratch.begin(), scratch.end());
    neighbor_offsets_[v + 1] = static_cast<std::uint32_t>(neighbors_.size());
  }

  bits_ = std::max(1u, static_cast<unsigned>(std::bit_width(n_ - 1)));
  packed_ = static_cast<unsigned>(s_) * bits_ <= 64;
  if (packed_) {
    edge_keys_.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) edge_keys_.insert(pack(e));
  }
}

Hypergraph Hypergraph::edgeless(int s, std::size_t n) { return Hypergraph(s, n); }

Hypergraph Hypergraph::complete(int s, std::size_t n) {
  std::vector<Edge> edges;
  if (n >= static_cast<std::size_t>(s)) {
    Edge comb(s);
    for (int i = 0; i < s; ++i) comb[i] = i;
    while (true) {
      edges.push_back(comb);
      int i = s - 1;
      while (i >= 0 && comb[i] == n - s + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return Hypergraph(s, n, std::move(edges));
}

std::span<const std::uint32_t> Hypergraph::incident(Vertex v) const {
  return {incidence_.data() + incidence_offsets_[v],
          incidence_offsets_[v + 1] - incidence_offsets_[v]};
}

std::span<const Vertex> Hypergraph::neighbors(Vertex v) const {
  return {neighbors_.data() + neighbor_offsets_[v],
          neighbor_offsets_[v + 1] - neighbor_offsets_[v]};
}

std::uint64_t Hypergraph::pack(std::span<const Vertex> sorted_edge) const {
  std::uint64_t key = 0;
  for (Vertex v : sorted_edge) key = (key << bits_) | v;
  return key;
}

bool Hypergraph::has_edge(std::span<const Vertex> sorted_edge) const {
  if (sorted_edge.size() != static_cast<std::size_t>(s_)) return false;
  for (std::size_t i = 0; i < sorted_edge.size(); ++i) {
    if (sorted_edge[i] >= n_) return false;
    if (i > 0 && sorted_edge[i] <= sorted_edge[i - 1]) return false;
  }
  if (packed_) return edge_keys_.count(pack(sorted_edge)) > 0;
  // Scan the incidence list of the lowest-degree vertex.
  Vertex pivot = *std::min_element(sorted_edge.begin(), sorted_edge.end(),
                                   [&](Vertex a, Vertex b) { return degree(a) < degree(b); });
  for (std::uint32_t ei : incident(pivot)) {
    if (std::equal(edges_[ei].begin(), edges_[ei].end(), sorted_edge.begin())) return true;
  }
  return false;
}

bool Hypergraph::contains(std::span<const Vertex> vertices) const {
  if (vertices.size() <= 16) {
    std::array<Vertex, 16> buffer;
    std::copy(vertices.begin(), vertices.end(), buffer.begin());
    std::sort(buffer.begin(), buffer.begin() + vertices.size());
    return has_edge(std::span<const Vertex>(buffer.data(), vertices.size()));
  }
  Edge copy(vertices.begin(), vertices.end());
  std::sort(copy.begin(), copy.end());
  return has_edge(copy);
}

Hypergraph loose_path(int s, std::size_t edges) {
  std::size_t n = edges * (s - 1) + 1;
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges; ++i) {
    Edge e;
    for (int j = 0; j < s; ++j) e.push_back(static_cast<Vertex>(i * (s - 1) + j));
    out.push_back(std::move(e));
  }
  return Hypergraph(s, n, std::move(out));
}

Hypergraph loose_cycle(int s, std::size_t edges) {
  if (edges < 2) throw DomainError("a loose cycle needs at least two edges");
  std::size_t n = edges * (s - 1);
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges; ++i) {
    Edge e;
    for (int j = 0; j < s; ++j) e.push_back(static_cast<Vertex>((i * (s - 1) + j) % n));
    out.push_back(std::move(e));
  }
  return Hypergraph(s, n, std::move(out));
}

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
  if (a.s() != b.s()) throw InvalidInput("disjoint union of different uniformities");
  std::vector<Edge> edges = a.edges();
  auto shift = static_cast<Vertex>(a.num_vertices());
  for (Edge e : b.edges()) {
    for (Vertex& v : e) v += shift;
    edges.push_back(std::move(e));
  }
  return Hypergraph(a.s(), a.num_vertices() + b.num_vertices(), std::move(edges));
}

Hypergraph relabel(const Hypergraph& g, const VertexMap& perm) {
  if (perm.size() != g.num_vertices()) throw InvalidInput("relabeling has wrong length");
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    Edge mapped;
    for (Vertex v : e) mapped.push_back(perm[v]);
    edges.push_back(std::move(mapped));
  }
  return Hypergraph(g.s(), g.num_vertices(), std::move(edges));
}

std::string to_string(const Hypergraph& g) {
  std::ostringstream out;
  out << "H(s=" << g.s() << ", n=" << g.num_vertices() << ", {";
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (i) out << ' ';
    out << '{';
    for (std::size_t j = 0; j < g.edge(i).size(); ++j) {
      if (j) out << ',';
      out << g.edge(i)[j];
    }
    out << '}';
  }
  out << "})";
  return out.str();
}

}  // namespace hyperspectra
