#include <algorithm>
#include <functional>

#include "hyperspectra/errors.hpp"
#include "hyperspectra/folio.hpp"
#include "hyperspectra/hypercore.hpp"

namespace hyperspectra {

namespace {

using F = Formula;

class Builder {
 public:
  Builder(int s, int first_fresh) : s_(s), next_(first_fresh) {}

  std::string fresh() { return "x" + std::to_string(next_++); }

  F differ(const std::string& a, const std::string& b) { return F::negation(F::equal(a, b)); }

  // Quantifies `vars` existentially around `body`, innermost last.
  F exists_all(const std::vector<std::string>& vars, F body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = F::exists(*it, body);
    return body;
  }

  F d(int i, const std::string& a, const std::string& b) {
    if (i == 1) {
      std::vector<std::string> rest;
      for (int j = 2; j < s_; ++j) rest.push_back(fresh());
      std::vector<std::string> args{a, b};
      args.insert(args.end(), rest.begin(), rest.end());
      return F::disjunction({F::equal(a, b), exists_all(rest, F::edge(args))});
    }
    std::string c = fresh();
    F left = d(i / 2, a, c);
    F right = d((i + 1) / 2, c, b);
    return F::exists(c, F::conjunction({left, right}));
  }

  F d_eq(int i, const std::string& a, const std::string& b) {
    if (i == 1) return F::conjunction({d(1, a, b), differ(a, b)});
    F within = d(i, a, b);
    return F::conjunction({within, F::negation(d(i - 1, a, b))});
  }

  F d_tilde(int i, const std::string& x, const std::string& a, const std::string& b) {
    if (i == 1) {
      std::vector<std::string> rest;
      for (int j = 2; j < s_; ++j) rest.push_back(fresh());
      std::vector<std::string> args{a, b};
      args.insert(args.end(), rest.begin(), rest.end());
      std::vector<F> body{F::edge(args)};
      for (const auto& z : rest) body.push_back(differ(z, x));
      F edge_part = body.size() == 1 ? body[0] : F::conjunction(body);
      return F::conjunction(
          {differ(a, x), differ(b, x), F::disjunction({F::equal(a, b), exists_all(rest, edge_part)})});
    }
    std::string c = fresh();
    F left = d_tilde(i / 2, x, a, c);
    F right = d_tilde((i + 1) / 2, x, c, b);
    return F::conjunction(
        {differ(a, x), differ(b, x), F::exists(c, F::conjunction({differ(c, x), left, right}))});
  }

  F b(int i, const std::string& x1, const std::string& x2, const std::string& x3) {
    F first = d_eq(i / 2, x1, x3);
    return F::conjunction({first, d_eq((i + 1) / 2, x3, x2)});
  }

  F c(int i, const std::string& x1) {
    std::string x2 = fresh();
    std::string x3 = fresh();
    F far = d_eq(i, x1, x2);
    F shape = b(i + 1, x1, x2, x3);
    F detour = d_tilde(i, x3, x1, x2);
    return F::exists(x2, F::conjunction({far, F::exists(x3, F::conjunction({shape, detour}))}));
  }

  F q(int a2, int a3, const std::string& x3) {
    std::string x4 = fresh();
    F reach = d_eq(a3, x3, x4);
    return F::exists(x4, F::conjunction({reach, c(a2, x4)}));
  }

 private:
  int s_;
  int next_;
};

void check_args(int i, int s, int min_i) {
  if (s < 2) throw DomainError("uniformity must be at least 2");
  if (i < min_i) throw DomainError("index must be at least " + std::to_string(min_i));
}

// Distances inside G with vertex `avoid` and its edges deleted.
std::vector<std::vector<int>> distances_avoiding(const Hypergraph& g, Vertex avoid) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (Vertex src = 0; src < n; ++src) {
    if (src == avoid) continue;
    std::vector<Vertex> queue{src};
    dist[src][src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex u = queue[head];
      for (std::uint32_t ei : g.incident(u)) {
        const Edge& e = g.edge(ei);
        if (std::find(e.begin(), e.end(), avoid) != e.end()) continue;
        for (Vertex w : e) {
          if (dist[src][w] < 0) {
            dist[src][w] = dist[src][u] + 1;
            queue.push_back(w);
          }
        }
      }
    }
  }
  return dist;
}

}  // namespace

Formula build_D(int i, int s) {
  check_args(i, s, 1);
  return Builder(s, 3).d(i, "x1", "x2");
}

Formula build_D_eq(int i, int s) {
  check_args(i, s, 1);
  return Builder(s, 3).d_eq(i, "x1", "x2");
}

Formula build_Dtilde(int i, int s) {
  check_args(i, s, 1);
  return Builder(s, 3).d_tilde(i, "x", "x1", "x2");
}

Formula build_B(int i, int s) {
  check_args(i, s, 2);
  return Builder(s, 4).b(i, "x1", "x2", "x3");
}

Formula build_C(int i, int s) {
  check_args(i, s, 1);
  return Builder(s, 2).c(i, "x1");
}

Formula build_thm9_L(int a1, int a2, int a3, int s) {
  if (s < 2) throw DomainError("uniformity must be at least 2");
  if (a1 < 2 || a2 < 1 || a3 < 1 || a2 >= a1) {
    throw DomainError("need a1 >= 2, a2 >= 1, a3 >= 1 and a2 < a1");
  }
  Builder builder(s, 1);
  std::string x1 = builder.fresh();
  std::string x2 = builder.fresh();
  F apart = builder.d_eq(a1, x1, x2);
  std::string y = builder.fresh();
  F with_q = F::exists(y, F::conjunction({builder.b(a1, x1, x2, y), builder.q(a2, a3, y)}));
  std::string z = builder.fresh();
  F without_q = F::exists(
      z, F::conjunction({builder.b(a1, x1, x2, z), F::negation(builder.q(a2, a3, z))}));
  return F::exists(x1, F::exists(x2, F::conjunction({apart, with_q, without_q})));
}

bool thm9_property_holds(const Hypergraph& g, int a1, int a2, int a3) {
  if (a1 < 2 || a2 < 1 || a3 < 1 || a2 >= a1) {
    throw DomainError("need a1 >= 2, a2 >= 1, a3 >= 1 and a2 < a1");
  }
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<int>> dist(n);
  for (Vertex v = 0; v < n; ++v) {
    auto row = distances_from(g, v);
    for (const auto& d : row) dist[v].push_back(d ? static_cast<int>(*d) : -1);
  }
  auto at = [&](Vertex u, Vertex v, int i) { return dist[u][v] == i; };
  auto b_shape = [&](int i, Vertex x1, Vertex x2, Vertex x3) {
    return at(x1, x3, i / 2) && at(x3, x2, (i + 1) / 2);
  };
  std::vector<std::vector<std::vector<int>>> avoiding(n);
  auto tilde_within = [&](Vertex x, Vertex u, Vertex v, int i) {
    if (u == x || v == x) return false;
    if (avoiding[x].empty()) avoiding[x] = distances_avoiding(g, x);
    int d = avoiding[x][u][v];
    return d >= 0 && d <= i;
  };
  auto c_holds = [&](int i, Vertex x1) {
    for (Vertex x2 = 0; x2 < n; ++x2) {
      if (!at(x1, x2, i)) continue;
      for (Vertex x3 = 0; x3 < n; ++x3) {
        if (b_shape(i + 1, x1, x2, x3) && tilde_within(x3, x1, x2, i)) return true;
      }
    }
    return false;
  };
  std::vector<int> c_memo(n, -1);
  std::vector<int> q_memo(n, -1);
  auto q_holds = [&](Vertex x3) {
    if (q_memo[x3] < 0) {
      q_memo[x3] = 0;
      for (Vertex x4 = 0; x4 < n && !q_memo[x3]; ++x4) {
        if (!at(x3, x4, a3)) continue;
        if (c_memo[x4] < 0) c_memo[x4] = c_holds(a2, x4) ? 1 : 0;
        if (c_memo[x4]) q_memo[x3] = 1;
      }
    }
    return q_memo[x3] == 1;
  };
  for (Vertex x1 = 0; x1 < n; ++x1) {
    for (Vertex x2 = 0; x2 < n; ++x2) {
      if (!at(x1, x2, a1)) continue;
      bool seen_q = false, seen_not_q = false;
      for (Vertex x3 = 0; x3 < n; ++x3) {
        if (!b_shape(a1, x1, x2, x3)) continue;
        if (q_holds(x3)) {
          seen_q = true;
        } else {
          seen_not_q = true;
        }
      }
      if (seen_q && seen_not_q) return true;
    }
  }
  return false;
}

bool has_full_extension_property(const Hypergraph& g, int level) {
  const int s = g.s();
  if (level < s - 1) throw DomainError("extension level must be at least s-1");
  const std::size_t n = g.num_vertices();
  for (int r = s - 1; r <= level; ++r) {
    if (static_cast<std::size_t>(r) > n) return false;
    // Index sets B_{r, s-1}: the (s-1)-subsets of positions 0..r-1.
    std::vector<std::vector<int>> blocks;
    std::vector<int> pick;
    std::function<void(int)> gen = [&](int start) {
      if (static_cast<int>(pick.size()) == s - 1) {
        blocks.push_back(pick);
        return;
      }
      for (int i = start; i < r; ++i) {
        pick.push_back(i);
        gen(i + 1);
        pick.pop_back();
      }
    };
    gen(0);
    if (blocks.size() > 20) throw CapExceeded("too many edge patterns for the extension check");
    const std::uint64_t patterns = std::uint64_t{1} << blocks.size();
    if (n - r < patterns) return false;
    std::vector<char> seen(patterns);
    std::vector<Vertex> chosen(r);
    std::vector<char> in_set(n, 0);
    Edge candidate(s);
    // r-sets of vertices suffice: the property ignores the order of the tuple.
    std::function<bool(int, Vertex)> over_sets = [&](int depth, Vertex start) -> bool {
      if (depth == r) {
        std::fill(seen.begin(), seen.end(), 0);
        std::uint64_t distinct = 0;
        for (Vertex z = 0; z < n && distinct < patterns; ++z) {
          if (in_set[z]) continue;
          std::uint64_t mask = 0;
          for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (int j = 0; j < s - 1; ++j) candidate[j] = chosen[blocks[b][j]];
            candidate[s - 1] = z;
            if (g.contains(candidate)) mask |= std::uint64_t{1} << b;
          }
          if (!seen[mask]) {
            seen[mask] = 1;
            ++distinct;
          }
        }
        return distinct == patterns;
      }
      for (Vertex v = start; v < n; ++v) {
        chosen[depth] = v;
        in_set[v] = 1;
        bool ok = over_sets(depth + 1, v + 1);
        in_set[v] = 0;
        if (!ok) return false;
      }
      return true;
    };
    if (!over_sets(0, 0)) return false;
  }
  return true;
}

}  // namespace hyperspectra
