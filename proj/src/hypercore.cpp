#include "hyperspectra/hypercore.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>

#include "hyperspectra/errors.hpp"

namespace hyperspectra {

namespace {

// Dinic max-flow on a small dense-ish network with int64 capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  void add_edge(std::size_t from, std::size_t to, std::int64_t cap) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0});
  }

  std::int64_t run(std::size_t source, std::size_t sink) {
    std::int64_t flow = 0;
    while (bfs(source, sink)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t pushed = dfs(source, sink, kInf)) flow += pushed;
    }
    return flow;
  }

  // Nodes reachable from `source` in the residual network after run().
  std::vector<char> source_side(std::size_t source) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<std::size_t> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t a : adj_[u]) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

 private:
  struct Arc {
    std::size_t to;
    std::int64_t cap;
  };

  bool bfs(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (std::size_t a : adj_[u]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          queue.push(arcs_[a].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  std::int64_t dfs(std::size_t u, std::size_t sink, std::int64_t limit) {
    if (u == sink) return limit;
    for (std::size_t& i = it_[u]; i < adj_[u].size(); ++i) {
      std::size_t a = adj_[u][i];
      Arc& arc = arcs_[a];
      if (arc.cap > 0 && level_[arc.to] == level_[u] + 1) {
        if (std::int64_t got = dfs(arc.to, sink, std::min(limit, arc.cap))) {
          arc.cap -= got;
          arcs_[a ^ 1].cap += got;
          return got;
        }
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

std::size_t edges_inside(const Hypergraph& g, const std::vector<char>& in_set) {
  std::size_t count = 0;
  for (const Edge& e : g.edges()) {
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in_set[v]; })) ++count;
  }
  return count;
}

// Vertex set of the maximum closure for guess num/den, or empty if no set W has
// den*e(W) - num*|W| > 0.
std::vector<Vertex> densest_closure(const Hypergraph& g, std::int64_t num, std::int64_t den) {
  const std::size_t e = g.num_edges();
  const std::size_t n = g.num_vertices();
  const std::size_t source = 0, sink = 1, edge_base = 2, vertex_base = 2 + e;
  MaxFlow flow(2 + e + n);
  for (std::size_t i = 0; i < e; ++i) {
    flow.add_edge(source, edge_base + i, den);
    for (Vertex v : g.edge(i)) flow.add_edge(edge_base + i, vertex_base + v, MaxFlow::kInf);
  }
  for (std::size_t v = 0; v < n; ++v) flow.add_edge(vertex_base + v, sink, num);
  std::int64_t cut = flow.run(source, sink);
  if (den * static_cast<std::int64_t>(e) - cut <= 0) return {};
  auto side = flow.source_side(source);
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (side[vertex_base + v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

class EmbeddingSearch {
 public:
  EmbeddingSearch(const Hypergraph& pattern, const Hypergraph& host, const EmbeddingQuery& query,
                  const std::function<bool(const VertexMap&)>& visit)
      : pattern_(pattern), host_(host), query_(query), visit_(visit) {
    if (pattern.s() != host.s()) throw InvalidInput("pattern and host differ in uniformity");
    const std::size_t pn = pattern.num_vertices();
    image_.assign(pn, 0);
    position_.assign(pn, -1);
    used_.assign(host.num_vertices(), 0);
    for (auto [u, h] : query.fixed) {
      if (u >= pn || h >= host.num_vertices()) throw InvalidInput("fixed image out of range");
      if (position_[u] >= 0) throw InvalidInput("pattern vertex fixed twice");
      if (used_[h]) {
        valid_ = false;  // two pattern vertices fixed to one host vertex
      }
      used_[h] = 1;
      image_[u] = h;
      position_[u] = static_cast<int>(order_.size());
      order_.push_back(u);
    }
    fixed_count_ = order_.size();
    if (valid_ && query.check_fixed_edges) {
      for (const Edge& e : pattern.edges()) {
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return position_[v] >= 0; })) {
          Edge img;
          for (Vertex v : e) img.push_back(image_[v]);
          if (!host.contains(img)) valid_ = false;
        }
      }
    }
    plan_order();
    plan_checks();
  }

  std::uint64_t run() {
    if (!valid_) return 0;
    recurse(fixed_count_);
    return visited_;
  }

 private:
  void plan_order() {
    const std::size_t pn = pattern_.num_vertices();
    std::vector<int> links(pn, 0);
    auto bump = [&](Vertex u) {
      for (Vertex w : pattern_.neighbors(u)) ++links[w];
    };
    for (Vertex u : order_) bump(u);
    while (order_.size() < pn) {
      Vertex best = 0;
      bool found = false;
      for (Vertex u = 0; u < pn; ++u) {
        if (position_[u] >= 0) continue;
        if (!found || links[u] > links[best] ||
            (links[u] == links[best] && pattern_.degree(u) > pattern_.degree(best))) {
          best = u;
          found = true;
        }
      }
      position_[best] = static_cast<int>(order_.size());
      order_.push_back(best);
      bump(best);
    }
  }

  void plan_checks() {
    const std::size_t pn = pattern_.num_vertices();
    const int s = pattern_.s();
    anchor_.assign(pn, -1);
    checks_.assign(pn, {});
    for (std::size_t pos = fixed_count_; pos < pn; ++pos) {
      Vertex u = order_[pos];
      for (Vertex w : pattern_.neighbors(u)) {
        if (position_[w] < static_cast<int>(pos)) {
          if (anchor_[pos] < 0 || position_[w] < anchor_[pos]) anchor_[pos] = position_[w];
        }
      }
      if (query_.induced) {
        // Every (s-1)-subset of earlier positions, with its expected status.
        std::vector<int> comb(s - 1);
        std::function<void(int, int)> gen = [&](int start, int depth) {
          if (depth == s - 1) {
            Edge e{u};
            for (int p : comb) e.push_back(order_[p]);
            checks_[pos].push_back({comb, pattern_.contains(e)});
            return;
          }
          for (int p = start; p < static_cast<int>(pos); ++p) {
            comb[depth] = p;
            gen(p + 1, depth + 1);
          }
        };
        gen(0, 0);
      } else {
        for (std::uint32_t ei : pattern_.incident(u)) {
          const Edge& e = pattern_.edge(ei);
          std::vector<int> others;
          bool last = true;
          for (Vertex w : e) {
            if (w == u) continue;
            if (position_[w] > static_cast<int>(pos)) last = false;
            others.push_back(position_[w]);
          }
          if (last) checks_[pos].push_back({others, true});
        }
      }
    }
  }

  bool consistent(std::size_t pos, Vertex candidate) {
    scratch_.resize(pattern_.s());
    for (const Check& check : checks_[pos]) {
      scratch_[0] = candidate;
      for (std::size_t i = 0; i < check.positions.size(); ++i) {
        scratch_[i + 1] = image_[order_[check.positions[i]]];
      }
      std::sort(scratch_.begin(), scratch_.end());
      if (host_.has_edge(scratch_) != check.expect_edge) return false;
    }
    return true;
  }

  bool allowed(Vertex h, Vertex u) const {
    if (used_[h]) return false;
    if (!query_.forbidden.empty() && query_.forbidden[h]) return false;
    return host_.degree(h) >= pattern_.degree(u);
  }

  bool try_candidate(std::size_t pos, Vertex u, Vertex h) {
    if (!allowed(h, u)) return true;
    image_[u] = h;
    if (!consistent(pos, h)) return true;
    used_[h] = 1;
    bool keep_going = recurse(pos + 1);
    used_[h] = 0;
    return keep_going;
  }

  // Returns false once the visitor asks to stop.
  bool recurse(std::size_t pos) {
    if (pos == order_.size()) {
      ++visited_;
      return visit_(image_);
    }
    Vertex u = order_[pos];
    if (anchor_[pos] >= 0) {
      Vertex base = image_[order_[anchor_[pos]]];
      for (Vertex h : host_.neighbors(base)) {
        if (!try_candidate(pos, u, h)) return false;
      }
    } else {
      for (Vertex h = 0; h < host_.num_vertices(); ++h) {
        if (!try_candidate(pos, u, h)) return false;
      }
    }
    return true;
  }

  struct Check {
    std::vector<int> positions;
    bool expect_edge;
  };

  const Hypergraph& pattern_;
  const Hypergraph& host_;
  const EmbeddingQuery& query_;
  const std::function<bool(const VertexMap&)>& visit_;
  VertexMap image_;
  std::vector<int> position_;
  std::vector<Vertex> order_;
  std::size_t fixed_count_ = 0;
  std::vector<int> anchor_;
  std::vector<std::vector<Check>> checks_;
  std::vector<char> used_;
  std::vector<Vertex> scratch_;
  std::uint64_t visited_ = 0;
  bool valid_ = true;
};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw CapExceeded("embedding count overflows 64 bits");
  return out;
}

}  // namespace

Rational density(const Hypergraph& g) {
  return Rational(BigInt(g.num_edges()), BigInt(g.num_vertices()));
}

MaxDensity max_density(const Hypergraph& g) {
  const std::size_t n = g.num_vertices();
  if (g.num_edges() == 0) return {Rational(0), {0}};
  std::vector<Vertex> best(n);
  std::iota(best.begin(), best.end(), 0);
  Rational guess = density(g);
  while (true) {
    auto num = static_cast<std::int64_t>(guess.numerator());
    auto den = static_cast<std::int64_t>(guess.denominator());
    std::vector<Vertex> closure = densest_closure(g, num, den);
    if (closure.empty()) break;
    std::vector<char> in_set(n, 0);
    for (Vertex v : closure) in_set[v] = 1;
    Rational improved(BigInt(edges_inside(g, in_set)), BigInt(closure.size()));
    if (improved <= guess) break;
    guess = improved;
    best = std::move(closure);
  }
  return {guess, best};
}

bool is_strictly_balanced(const Hypergraph& g) {
  if (g.num_edges() == 0) throw DomainError("strict balance needs at least one edge");
  const Rational whole = density(g);
  std::vector<Vertex> rest;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (g.num_vertices() == 1) break;
    rest.clear();
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (v != x) rest.push_back(v);
    }
    if (max_density(induced(g, rest)).value >= whole) return false;
  }
  return true;
}

Hypergraph induced(const Hypergraph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> keep(vertices.begin(), vertices.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw InvalidInput("induced subhypergraph of an empty vertex set");
  if (keep.back() >= g.num_vertices()) throw InvalidInput("induced set has an out-of-range vertex");
  constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> rename(g.num_vertices(), kAbsent);
  for (std::size_t i = 0; i < keep.size(); ++i) rename[keep[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    Edge mapped;
    for (Vertex v : e) {
      if (rename[v] == kAbsent) break;
      mapped.push_back(rename[v]);
    }
    if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
  }
  return Hypergraph(g.s(), keep.size(), std::move(edges));
}

std::vector<std::optional<std::size_t>> distances_from(const Hypergraph& g, Vertex source) {
  if (source >= g.num_vertices()) throw InvalidInput("vertex out of range");
  std::vector<std::optional<std::size_t>> dist(g.num_vertices());
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (!dist[w]) {
        dist[w] = *dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> distance(const Hypergraph& g, Vertex x, Vertex y) {
  if (y >= g.num_vertices()) throw InvalidInput("vertex out of range");
  return distances_from(g, x)[y];
}

std::uint64_t for_each_embedding(const Hypergraph& pattern, const Hypergraph& host,
                                 const EmbeddingQuery& query,
                                 const std::function<bool(const VertexMap&)>& visit) {
  EmbeddingSearch search(pattern, host, query, visit);
  return search.run();
}

std::uint64_t count_embeddings(const Hypergraph& pattern, const Hypergraph& host, bool induced) {
  if (pattern.s() != host.s()) throw InvalidInput("pattern and host differ in uniformity");
  if (pattern.num_vertices() > host.num_vertices()) return 0;
  auto noop = [](const VertexMap&) { return true; };
  if (induced) {
    EmbeddingQuery query;
    query.induced = true;
    return for_each_embedding(pattern, host, query, noop);
  }
  // Isolated pattern vertices can go anywhere unused: count the rest and multiply
  // by the falling factorial of the leftover host vertices.
  std::vector<Vertex> core;
  for (Vertex v = 0; v < pattern.num_vertices(); ++v) {
    if (pattern.degree(v) > 0) core.push_back(v);
  }
  const std::size_t isolated = pattern.num_vertices() - core.size();
  std::uint64_t base = 1;
  if (!core.empty()) base = for_each_embedding(hyperspectra::induced(pattern, core), host, {}, noop);
  std::uint64_t free = host.num_vertices() - core.size();
  for (std::size_t i = 0; i < isolated; ++i) base = checked_mul(base, free - i);
  return base;
}

std::uint64_t automorphism_count(const Hypergraph& g, std::size_t cap) {
  if (g.num_vertices() > cap) throw CapExceeded("automorphism search above the vertex cap");
  return count_embeddings(g, g, false);
}

std::vector<VertexMap> automorphisms(const Hypergraph& g, std::size_t cap) {
  if (g.num_vertices() > cap) throw CapExceeded("automorphism search above the vertex cap");
  std::vector<VertexMap> out;
  for_each_embedding(g, g, {}, [&](const VertexMap& m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_copies(const Hypergraph& host, const Hypergraph& pattern, CopyMode mode,
                           std::size_t cap) {
  if (pattern.num_vertices() > cap) throw CapExceeded("pattern above the vertex cap");
  std::uint64_t aut = automorphism_count(pattern, cap);
  return count_embeddings(pattern, host, mode == CopyMode::kInduced) / aut;
}

bool contains_copy(const Hypergraph& host, const Hypergraph& pattern, CopyMode mode,
                   std::size_t cap) {
  if (pattern.s() != host.s()) throw InvalidInput("pattern and host differ in uniformity");
  if (pattern.num_vertices() > cap) throw CapExceeded("pattern above the vertex cap");
  if (pattern.num_vertices() > host.num_vertices()) return false;
  EmbeddingQuery query;
  query.induced = mode == CopyMode::kInduced;
  return for_each_embedding(pattern, host, query, [](const VertexMap&) { return false; }) > 0;
}

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b, std::size_t cap) {
  if (a.s() != b.s() || a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) {
    return false;
  }
  if (a.num_vertices() > cap) throw CapExceeded("isomorphism test above the vertex cap");
  auto degrees = [](const Hypergraph& g) {
    std::vector<std::size_t> d;
    for (Vertex v = 0; v < g.num_vertices(); ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(a) != degrees(b)) return false;
  return for_each_embedding(a, b, {}, [](const VertexMap&) { return false; }) > 0;
}

}  // namespace hyperspectra
