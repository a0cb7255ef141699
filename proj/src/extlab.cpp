#include "hyperspectra/extlab.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include "hyperspectra/errors.hpp"
#include "hyperspectra/io.hpp"

namespace hyperspectra {

namespace {

bool inside_roots(const Edge& e, std::size_t roots) {
  return std::all_of(e.begin(), e.end(), [&](Vertex v) { return v < roots; });
}

// Edges of G inside the roots that H leaves out; they count toward every e(K, H).
std::size_t extra_root_edges(const RootedPair& pair) {
  std::size_t inside = 0;
  for (const Edge& e : pair.g.edges()) inside += inside_roots(e, pair.roots);
  return inside - pair.h_edges.size();
}

// e(K_S, H) for every subset S of the non-root vertices, indexed by bitmask.
std::vector<std::size_t> extra_edge_counts(const RootedPair& pair, const Limits& limits) {
  const std::size_t extra = pair.extra_vertices();
  if (extra > limits.pair_cap || extra > 24) {
    throw CapExceeded("pair has " + std::to_string(extra) + " non-root vertices, above the cap");
  }
  std::vector<std::uint32_t> masks;
  for (const Edge& e : pair.g.edges()) {
    std::uint32_t mask = 0;
    for (Vertex v : e) {
      if (v >= pair.roots) mask |= 1u << (v - pair.roots);
    }
    if (mask) masks.push_back(mask);
  }
  const std::size_t base = extra_root_edges(pair);
  std::vector<std::size_t> counts(std::size_t{1} << extra, base);
  for (std::uint32_t s = 0; s < counts.size(); ++s) {
    for (std::uint32_t m : masks) counts[s] += (m & ~s) == 0;
  }
  return counts;
}

std::vector<Vertex> mask_vertices(std::uint32_t mask, std::size_t roots) {
  std::vector<Vertex> out;
  for (Vertex i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(static_cast<Vertex>(roots + i));
  }
  return out;
}

Rational f_value(std::size_t v, std::size_t e, const Rational& alpha) {
  return Rational(static_cast<long long>(v)) - alpha * Rational(static_cast<long long>(e));
}

}  // namespace

RootedPair RootedPair::induced_roots(Hypergraph g, std::size_t roots) {
  if (roots > g.num_vertices()) throw InvalidInput("more roots than vertices");
  std::vector<Edge> h;
  for (const Edge& e : g.edges()) {
    if (inside_roots(e, roots)) h.push_back(e);
  }
  return RootedPair(std::move(g), roots, std::move(h));
}

RootedPair::RootedPair(Hypergraph g_in, std::size_t roots_in, std::vector<Edge> h_in)
    : g(std::move(g_in)), roots(roots_in), h_edges(std::move(h_in)) {
  if (roots > g.num_vertices()) throw InvalidInput("more roots than vertices");
  for (Edge& e : h_edges) {
    std::sort(e.begin(), e.end());
    if (!inside_roots(e, roots)) throw InvalidInput("an H edge leaves the root vertices");
    if (!g.has_edge(e)) throw InvalidInput("an H edge is not an edge of G");
  }
  std::sort(h_edges.begin(), h_edges.end());
  h_edges.erase(std::unique(h_edges.begin(), h_edges.end()), h_edges.end());
}

Hypergraph RootedPair::h() const {
  return Hypergraph(g.s(), std::max<std::size_t>(roots, 1), h_edges);
}

RootedPair pair_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("$: expected an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "g" && it.key() != "roots" && it.key() != "h_edges") {
      throw ParseError("$: unknown key \"" + it.key() + "\"");
    }
  }
  if (!doc.contains("g") || !doc.contains("roots")) throw ParseError("$: need \"g\" and \"roots\"");
  Hypergraph g = hypergraph_from_json(doc["g"], "$.g");
  if (!doc["roots"].is_number_integer() || doc["roots"].get<long long>() < 0 ||
      doc["roots"].get<long long>() > static_cast<long long>(g.num_vertices())) {
    throw ParseError("$.roots: expected an integer between 0 and v(g)");
  }
  auto roots = doc["roots"].get<std::size_t>();
  if (!doc.contains("h_edges")) return RootedPair::induced_roots(std::move(g), roots);
  const auto& list = doc["h_edges"];
  if (!list.is_array()) throw ParseError("$.h_edges: expected an array");
  std::vector<Edge> h;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "$.h_edges[" + std::to_string(i) + "]";
    if (!list[i].is_array()) throw ParseError(path + ": expected an array");
    Edge e;
    for (const auto& v : list[i]) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(path + ": expected vertex ids");
      }
      e.push_back(v.get<Vertex>());
    }
    std::sort(e.begin(), e.end());
    if (!inside_roots(e, roots) || !g.has_edge(e)) {
      throw ParseError(path + ": not an edge of g inside the roots");
    }
    h.push_back(std::move(e));
  }
  return RootedPair(std::move(g), roots, std::move(h));
}

nlohmann::json pair_to_json(const RootedPair& pair) {
  return {{"g", hypergraph_to_json(pair.g)}, {"roots", pair.roots}, {"h_edges", pair.h_edges}};
}

Rational pair_density(const RootedPair& pair) {
  if (pair.extra_vertices() == 0) throw DomainError("degenerate pair: V(G) = V(H)");
  return Rational(BigInt(pair.extra_edges()), BigInt(pair.extra_vertices()));
}

Rational pair_max_density(const RootedPair& pair, const Limits& limits) {
  if (pair.extra_vertices() == 0) throw DomainError("degenerate pair: V(G) = V(H)");
  auto counts = extra_edge_counts(pair, limits);
  Rational best(0);
  for (std::uint32_t s = 1; s < counts.size(); ++s) {
    Rational d(BigInt(counts[s]), BigInt(std::popcount(s)));
    if (d > best) best = d;
  }
  return best;
}

bool is_strictly_balanced_pair(const RootedPair& pair, const Limits& limits) {
  Rational whole = pair_density(pair);
  auto counts = extra_edge_counts(pair, limits);
  const std::uint32_t full = static_cast<std::uint32_t>(counts.size() - 1);
  for (std::uint32_t s = 1; s < full; ++s) {
    if (Rational(BigInt(counts[s]), BigInt(std::popcount(s))) >= whole) return false;
  }
  return true;
}

Rational f_alpha(const RootedPair& pair, const Rational& alpha) {
  return f_value(pair.extra_vertices(), pair.extra_edges(), alpha);
}

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::kSafe: return "safe";
    case PairKind::kRigid: return "rigid";
    case PairKind::kNeutral: return "neutral";
    case PairKind::kNone: return "none";
  }
  return "?";
}

PairClass classify_pair(const RootedPair& pair, const Rational& alpha, const Limits& limits) {
  const std::size_t extra = pair.extra_vertices();
  auto counts = extra_edge_counts(pair, limits);
  const std::uint32_t full = static_cast<std::uint32_t>(counts.size() - 1);
  const Rational whole = f_value(extra, counts[full], alpha);
  if (extra == 0) {
    // Only K = H is available: rigid iff G adds edges.
    if (whole < Rational(0)) return {PairKind::kRigid, {}, whole};
    return {PairKind::kNone, {}, whole};
  }
  // f(K_S, H) over nonempty S; track the minimum over proper S and over all S.
  std::optional<Rational> min_proper, min_all;
  std::uint32_t arg_proper = 0, arg_all = 0;
  // f(G, K_S) = f(G, H) - f(K_S, H) over S != full, S may be empty.
  std::optional<Rational> max_rigid;
  std::uint32_t arg_rigid = 0;
  for (std::uint32_t s = 0; s <= full; ++s) {
    Rational f = f_value(std::popcount(s), counts[s], alpha);
    if (s != 0 && (!min_all || f < *min_all)) {
      min_all = f;
      arg_all = s;
    }
    if (s != 0 && s != full && (!min_proper || f < *min_proper)) {
      min_proper = f;
      arg_proper = s;
    }
    if (s != full) {
      Rational g_minus_k = whole - f;
      if (!max_rigid || g_minus_k > *max_rigid) {
        max_rigid = g_minus_k;
        arg_rigid = s;
      }
    }
  }
  if (*min_all > Rational(0)) {
    return {PairKind::kSafe, mask_vertices(arg_all, pair.roots), *min_all};
  }
  if (*max_rigid < Rational(0)) {
    return {PairKind::kRigid, mask_vertices(arg_rigid, pair.roots), *max_rigid};
  }
  if (whole.is_zero() && (!min_proper || *min_proper > Rational(0))) {
    if (!min_proper) return {PairKind::kNeutral, mask_vertices(full, pair.roots), whole};
    return {PairKind::kNeutral, mask_vertices(arg_proper, pair.roots), *min_proper};
  }
  return {PairKind::kNone, mask_vertices(arg_all, pair.roots), *min_all};
}

std::vector<VertexMap> strict_extensions(const Hypergraph& host, std::span<const Vertex> root_tuple,
                                         const RootedPair& pair, const Limits& limits) {
  if (host.s() != pair.g.s()) throw InvalidInput("host and pair differ in uniformity");
  if (root_tuple.size() != pair.roots) throw InvalidInput("root tuple length differs from l");
  if (pair.extra_vertices() > limits.extension_cap) {
    throw CapExceeded("pair has more non-root vertices than the extension cap");
  }
  std::set<Vertex> distinct(root_tuple.begin(), root_tuple.end());
  if (distinct.size() != root_tuple.size()) throw InvalidInput("root tuple repeats a vertex");
  for (Vertex v : root_tuple) {
    if (v >= host.num_vertices()) throw InvalidInput("root out of range");
  }
  // An edge of G \ H inside the roots would need a host edge outside host[roots].
  if (extra_root_edges(pair) > 0) return {};
  EmbeddingQuery query;
  query.induced = true;
  query.check_fixed_edges = false;
  for (std::size_t i = 0; i < root_tuple.size(); ++i) {
    query.fixed.emplace_back(static_cast<Vertex>(i), root_tuple[i]);
  }
  std::vector<VertexMap> out;
  for_each_embedding(pair.g, host, query, [&](const VertexMap& m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_kt_maximal(const Hypergraph& host, std::span<const Vertex> g_tilde,
                   std::span<const Vertex> h_tilde, const RootedPair& k_pair, const Limits& limits) {
  if (host.s() != k_pair.g.s()) throw InvalidInput("host and pair differ in uniformity");
  const std::size_t t = k_pair.roots;
  if (t > g_tilde.size()) throw DomainError("|V(T)| exceeds |V(G~)|");
  if (k_pair.extra_vertices() > limits.extension_cap) {
    throw CapExceeded("pair has more non-root vertices than the extension cap");
  }
  const std::size_t n = host.num_vertices();
  std::vector<char> in_g(n, 0), in_h(n, 0);
  for (Vertex v : g_tilde) {
    if (v >= n) throw InvalidInput("G~ vertex out of range");
    in_g[v] = 1;
  }
  for (Vertex v : h_tilde) {
    if (v >= n || !in_g[v]) throw InvalidInput("H~ must lie inside G~");
    in_h[v] = 1;
  }
  if (extra_root_edges(k_pair) > 0) return true;
  std::vector<Vertex> pool(g_tilde.begin(), g_tilde.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::vector<Vertex> tuple;
  std::vector<char> picked(pool.size(), 0);
  bool maximal = true;
  std::function<void()> over_tuples = [&] {
    if (!maximal) return;
    if (tuple.size() == t) {
      if (std::all_of(tuple.begin(), tuple.end(), [&](Vertex v) { return in_h[v]; })) return;
      EmbeddingQuery query;
      query.induced = true;
      query.check_fixed_edges = false;
      query.forbidden.assign(n, 0);
      for (Vertex v : pool) query.forbidden[v] = 1;
      for (std::size_t i = 0; i < t; ++i) {
        query.fixed.emplace_back(static_cast<Vertex>(i), tuple[i]);
        query.forbidden[tuple[i]] = 0;
      }
      // query.forbidden now marks G~ \ T~.
      const auto& rest = query.forbidden;
      std::vector<char> is_new(n, 0);
      for_each_embedding(k_pair.g, host, query, [&](const VertexMap& m) {
        for (std::size_t i = t; i < m.size(); ++i) is_new[m[i]] = 1;
        bool crossing = false;
        for (std::size_t i = t; i < m.size() && !crossing; ++i) {
          for (std::uint32_t ei : host.incident(m[i])) {
            const Edge& e = host.edge(ei);
            bool within = std::all_of(e.begin(), e.end(), [&](Vertex v) { return is_new[v] || rest[v]; });
            bool meets_rest = std::any_of(e.begin(), e.end(), [&](Vertex v) { return rest[v] != 0; });
            if (within && meets_rest) {
              crossing = true;
              break;
            }
          }
        }
        for (std::size_t i = t; i < m.size(); ++i) is_new[m[i]] = 0;
        if (!crossing) maximal = false;
        return maximal;
      });
      return;
    }
    for (std::size_t i = 0; i < pool.size() && maximal; ++i) {
      if (picked[i]) continue;
      picked[i] = 1;
      tuple.push_back(pool[i]);
      over_tuples();
      tuple.pop_back();
      picked[i] = 0;
    }
  };
  over_tuples();
  return maximal;
}

const std::vector<RootedPair>& rigid_and_neutral_pairs(int s, const Rational& alpha,
                                                       std::size_t max_roots, std::size_t r) {
  static std::mutex mutex;
  static std::map<std::tuple<int, std::string, std::size_t, std::size_t>, std::vector<RootedPair>> memo;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(s, alpha.str(), max_roots, r);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<RootedPair> found;
  std::set<std::tuple<std::size_t, std::size_t, std::vector<Edge>>> seen;
  Limits limits;
  for (std::size_t t = 1; t <= max_roots; ++t) {
    for (std::size_t j = 1; j <= r; ++j) {
      if (binomial(t + j, s) - binomial(t, s) > BigInt(20)) {
        throw CapExceeded("rigid/neutral pair enumeration above 20 candidate edges");
      }
    }
  }
  for (std::size_t t = 1; t <= max_roots; ++t) {
    for (std::size_t j = 1; j <= r; ++j) {
      const std::size_t v = t + j;
      std::vector<Edge> candidates;
      Edge pick;
      std::function<void(Vertex)> gen = [&](Vertex start) {
        if (static_cast<int>(pick.size()) == s) {
          if (pick.back() >= t) candidates.push_back(pick);
          return;
        }
        for (Vertex x = start; x < v; ++x) {
          pick.push_back(x);
          gen(x + 1);
          pick.pop_back();
        }
      };
      gen(0);
      std::vector<Vertex> perm(j);
      for (std::uint32_t mask = 0; mask < (1u << candidates.size()); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t b = 0; b < candidates.size(); ++b) {
          if (mask >> b & 1u) edges.push_back(candidates[b]);
        }
        RootedPair k(Hypergraph(s, v, edges), t, {});
        PairKind kind = classify_pair(k, alpha, limits).kind;
        if (kind != PairKind::kRigid && kind != PairKind::kNeutral) continue;
        // Canonical form: least sorted edge list over permutations of new vertices.
        std::iota(perm.begin(), perm.end(), static_cast<Vertex>(t));
        std::vector<Edge> best;
        bool first = true;
        do {
          std::vector<Edge> mapped;
          for (const Edge& e : edges) {
            Edge m;
            for (Vertex x : e) m.push_back(x < t ? x : perm[x - t]);
            std::sort(m.begin(), m.end());
            mapped.push_back(std::move(m));
          }
          std::sort(mapped.begin(), mapped.end());
          if (first || mapped < best) best = std::move(mapped);
          first = false;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (seen.emplace(t, j, best).second) found.push_back(std::move(k));
      }
    }
  }
  return memo.emplace(key, std::move(found)).first->second;
}

std::uint64_t count_maximal_extensions(const Hypergraph& host, std::span<const Vertex> root_tuple,
                                       const RootedPair& pair, std::size_t r, const Rational& alpha,
                                       const Limits& limits) {
  auto extensions = strict_extensions(host, root_tuple, pair, limits);
  if (r == 0) return extensions.size();
  const auto& family = rigid_and_neutral_pairs(pair.g.s(), alpha, pair.g.num_vertices(), r);
  std::uint64_t count = 0;
  for (const VertexMap& m : extensions) {
    bool ok = true;
    for (const RootedPair& k : family) {
      if (!is_kt_maximal(host, m, root_tuple, k, limits)) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

Rational cyclic_density_bound(int s, int m) {
  if (m < 1 || s < 2) throw DomainError("need m >= 1 and s >= 2");
  long long den = static_cast<long long>(m) * (s - 1) - 1;
  if (den <= 0) throw DomainError("m(s-1) - 1 must be positive");
  return ratio(m, den);
}

namespace {

// Walks the three cyclic-extension shapes over the vertex set W inside `host`,
// drawing new vertices from `allowed`. The emitter receives the case, the new
// vertices and the host edge ids of the shape, and returns false to stop.
class ShapeSearch {
 public:
  using Emit = std::function<bool(CyclicCase, const std::vector<Vertex>&, const std::vector<std::uint32_t>&)>;

  ShapeSearch(const Hypergraph& host, const std::vector<char>& in_w, const std::vector<char>& allowed,
              int m, std::size_t max_new, Emit emit)
      : host_(host), in_w_(in_w), allowed_(allowed), m_(m), max_new_(max_new), emit_(std::move(emit)),
        used_(host.num_vertices(), 0) {}

  void run() {
    const int s = host_.s();
    for (std::uint32_t ei = 0; ei < host_.num_edges() && going_; ++ei) {
      const Edge& e = host_.edge(ei);
      int roots = 0;
      bool ok = true;
      std::vector<Vertex> fresh;
      for (Vertex v : e) {
        if (in_w_[v]) {
          ++roots;
        } else if (allowed_[v]) {
          fresh.push_back(v);
        } else {
          ok = false;
        }
      }
      if (ok && roots >= 2 && roots <= s - 1 && fresh.size() <= max_new_) {
        going_ = emit_(CyclicCase::kSingleEdge, fresh, {ei});
      }
    }
    for (Vertex x1 = 0; x1 < host_.num_vertices() && going_ && m_ >= 2; ++x1) {
      if (!in_w_[x1]) continue;
      x1_ = x1;
      grow(x1, 0);
    }
  }

 private:
  bool fresh_vertex(Vertex v) const { return !in_w_[v] && allowed_[v] && !used_[v]; }

  // Adds a path edge through `tail` whose other s-1 vertices are fresh.
  void grow(Vertex tail, int k) {
    for (std::uint32_t ei : host_.incident(tail)) {
      if (!going_) return;
      if (std::find(path_edges_.begin(), path_edges_.end(), ei) != path_edges_.end()) continue;
      const Edge& e = host_.edge(ei);
      bool ok = true;
      for (Vertex v : e) {
        if (v != tail && !fresh_vertex(v)) ok = false;
      }
      if (!ok || path_.size() + e.size() - 1 > max_new_) continue;
      for (Vertex v : e) {
        if (v != tail) {
          used_[v] = 1;
          path_.push_back(v);
        }
      }
      path_edges_.push_back(ei);
      for (Vertex junction : e) {
        if (junction == tail) continue;
        close(junction);
        if (k + 1 < m_ - 1) grow(junction, k + 1);
        if (!going_) break;
      }
      path_edges_.pop_back();
      for (Vertex v : e) {
        if (v != tail) {
          used_[v] = 0;
          path_.pop_back();
        }
      }
    }
  }

  void close(Vertex junction) {
    for (std::uint32_t ci : host_.incident(junction)) {
      if (!going_) return;
      if (std::find(path_edges_.begin(), path_edges_.end(), ci) != path_edges_.end()) continue;
      int roots = 0, path_hits = 0;
      Vertex root = 0;
      bool ok = true;
      std::vector<Vertex> fresh;
      for (Vertex v : host_.edge(ci)) {
        if (v == junction) continue;
        if (in_w_[v]) {
          ++roots;
          root = v;
        } else if (used_[v]) {
          ++path_hits;
        } else if (allowed_[v]) {
          fresh.push_back(v);
        } else {
          ok = false;
        }
      }
      if (!ok) continue;
      CyclicCase shape;
      if (roots == 0 && path_hits >= 1) {
        shape = CyclicCase::kPathToFresh;
      } else if (roots == 1 && root != x1_) {
        shape = CyclicCase::kPathBetweenRoots;
      } else {
        continue;
      }
      if (path_.size() + fresh.size() > max_new_) continue;
      std::vector<Vertex> vertices = path_;
      vertices.insert(vertices.end(), fresh.begin(), fresh.end());
      std::vector<std::uint32_t> edges = path_edges_;
      edges.push_back(ci);
      going_ = emit_(shape, vertices, edges);
    }
  }

  const Hypergraph& host_;
  const std::vector<char>& in_w_;
  const std::vector<char>& allowed_;
  int m_;
  std::size_t max_new_;
  Emit emit_;
  std::vector<char> used_;
  std::vector<Vertex> path_;
  std::vector<std::uint32_t> path_edges_;
  Vertex x1_ = 0;
  bool going_ = true;
};

}  // namespace

std::optional<CyclicCase> match_cyclic_shape(const Hypergraph& g, std::span<const Vertex> h_vertices,
                                             int m) {
  cyclic_density_bound(g.s(), m);
  const std::size_t n = g.num_vertices();
  std::vector<char> in_w(n, 0), allowed(n, 0);
  for (Vertex v : h_vertices) {
    if (v >= n) throw InvalidInput("H vertex out of range");
    in_w[v] = 1;
  }
  std::size_t new_count = 0;
  for (Vertex v = 0; v < n; ++v) {
    allowed[v] = !in_w[v];
    new_count += allowed[v];
  }
  std::size_t new_edges = 0;
  for (const Edge& e : g.edges()) {
    new_edges += std::any_of(e.begin(), e.end(), [&](Vertex v) { return allowed[v] != 0; });
  }
  if (new_count == 0) return std::nullopt;
  std::optional<CyclicCase> found;
  ShapeSearch search(g, in_w, allowed, m, new_count,
                     [&](CyclicCase shape, const std::vector<Vertex>& vertices,
                         const std::vector<std::uint32_t>& edges) {
                       if (vertices.size() == new_count && edges.size() == new_edges) {
                         found = shape;
                         return false;
                       }
                       return true;
                     });
  search.run();
  return found;
}

bool is_cyclic_m_extension(const Hypergraph& g, std::span<const Vertex> h_vertices, int m) {
  if (!match_cyclic_shape(g, h_vertices, m)) return false;
  return max_density(g).value < cyclic_density_bound(g.s(), m);
}

std::vector<CyclicExtension> cyclic_extensions_in(const Hypergraph& host,
                                                  std::span<const Vertex> h_vertices, int m,
                                                  std::size_t max_new_vertices,
                                                  std::size_t max_results) {
  const Rational bound = cyclic_density_bound(host.s(), m);
  const std::size_t n = host.num_vertices();
  std::vector<char> in_w(n, 0), allowed(n, 0);
  for (Vertex v : h_vertices) {
    if (v >= n) throw InvalidInput("H vertex out of range");
    in_w[v] = 1;
  }
  std::vector<Vertex> w;
  for (Vertex v = 0; v < n; ++v) {
    allowed[v] = !in_w[v];
    if (in_w[v]) w.push_back(v);
  }
  std::vector<Edge> h_edges;
  for (const Edge& e : host.edges()) {
    if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in_w[v] != 0; })) h_edges.push_back(e);
  }
  std::set<std::pair<std::vector<Vertex>, std::vector<Edge>>> seen;
  std::vector<CyclicExtension> out;
  ShapeSearch search(host, in_w, allowed, m, max_new_vertices,
                     [&](CyclicCase shape, const std::vector<Vertex>& vertices,
                         const std::vector<std::uint32_t>& edge_ids) {
                       std::vector<Vertex> nv = vertices;
                       std::sort(nv.begin(), nv.end());
                       std::vector<Edge> ne;
                       for (auto id : edge_ids) ne.push_back(host.edge(id));
                       std::sort(ne.begin(), ne.end());
                       if (!seen.emplace(nv, ne).second) return true;
                       // rho^max of G = host[W] plus the shape, relabeled compactly.
                       std::vector<Vertex> all = w;
                       all.insert(all.end(), nv.begin(), nv.end());
                       std::sort(all.begin(), all.end());
                       auto index = [&](Vertex v) {
                         return static_cast<Vertex>(std::lower_bound(all.begin(), all.end(), v) - all.begin());
                       };
                       std::vector<Edge> edges;
                       for (const auto* list : {&h_edges, &ne}) {
                         for (const Edge& e : *list) {
                           Edge mapped;
                           for (Vertex v : e) mapped.push_back(index(v));
                           edges.push_back(std::move(mapped));
                         }
                       }
                       Hypergraph g(host.s(), all.size(), std::move(edges));
                       if (max_density(g).value < bound) {
                         out.push_back({shape, std::move(nv), std::move(ne)});
                         if (out.size() > max_results) {
                           throw CapExceeded("more cyclic extensions than the result cap");
                         }
                       }
                       return true;
                     });
  search.run();
  std::sort(out.begin(), out.end(), [](const CyclicExtension& a, const CyclicExtension& b) {
    return std::tie(a.new_vertices, a.new_edges) < std::tie(b.new_vertices, b.new_edges);
  });
  return out;
}

MDecomposition m_decomposition(const Hypergraph& g, int m, const Limits& limits) {
  const std::size_t n = g.num_vertices();
  if (n > limits.decomposition_cap || n > 30) {
    throw CapExceeded("m-decomposition above the vertex cap");
  }
  const Rational bound = cyclic_density_bound(g.s(), m);
  MDecomposition result;
  if (n == 1) {
    result.member = true;
    return result;
  }
  if (!(max_density(g).value < bound)) return result;
  // Breadth-first search over vertex sets W of G, starting from every single vertex.
  // Every subhypergraph already meets the density bound, so a step only needs the
  // shape; edges of G[W] not used by shapes are augmentations.
  struct Parent {
    std::uint32_t from;
    CyclicCase shape;
    std::vector<Edge> edges;
  };
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::map<std::uint32_t, Parent> parent;
  std::vector<std::uint32_t> frontier;
  for (Vertex x = 0; x < n; ++x) {
    parent.emplace(1u << x, Parent{0, CyclicCase::kSingleEdge, {}});
    frontier.push_back(1u << x);
  }
  std::vector<char> in_w(n), allowed(n);
  bool done = parent.count(full) > 0;
  while (!frontier.empty() && !done) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t state : frontier) {
      for (Vertex v = 0; v < n; ++v) {
        in_w[v] = (state >> v) & 1u;
        allowed[v] = !in_w[v];
      }
      ShapeSearch search(g, in_w, allowed, m, n,
                         [&](CyclicCase shape, const std::vector<Vertex>& vertices,
                             const std::vector<std::uint32_t>& edge_ids) {
                           std::uint32_t grown = state;
                           for (Vertex v : vertices) grown |= 1u << v;
                           if (parent.count(grown)) return true;
                           std::vector<Edge> edges;
                           for (auto id : edge_ids) edges.push_back(g.edge(id));
                           std::sort(edges.begin(), edges.end());
                           parent.emplace(grown, Parent{state, shape, std::move(edges)});
                           next.push_back(grown);
                           if (grown == full) done = true;
                           return !done;
                         });
      search.run();
      if (done) break;
    }
    frontier = std::move(next);
  }
  if (!parent.count(full)) return result;
  result.member = true;
  std::uint32_t state = full;
  while (std::popcount(state) > 1) {
    const Parent& p = parent.at(state);
    result.steps.push_back({p.shape, mask_vertices(state, 0), p.edges});
    state = p.from;
  }
  result.start = static_cast<Vertex>(std::countr_zero(state));
  std::reverse(result.steps.begin(), result.steps.end());
  return result;
}

}  // namespace hyperspectra
