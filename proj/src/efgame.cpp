#include "hyperspectra/efgame.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "hyperspectra/errors.hpp"
#include "hyperspectra/hypercore.hpp"

namespace hyperspectra {

const char* to_string(Winner winner) {
  return winner == Winner::kDuplicator ? "duplicator" : "spoiler";
}

bool extends_partial_isomorphism(const Hypergraph& g1, const Hypergraph& g2,
                                 const std::vector<Vertex>& chosen1,
                                 const std::vector<Vertex>& chosen2, Vertex x, Vertex y) {
  // Distinct chosen pairs; a repeat on one side must be a repeat on the other.
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < chosen1.size(); ++i) {
    bool same_x = chosen1[i] == x, same_y = chosen2[i] == y;
    if (same_x != same_y) return false;
    if (same_x) return true;
    std::pair<Vertex, Vertex> p{chosen1[i], chosen2[i]};
    if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
  }
  const std::size_t need = static_cast<std::size_t>(g1.s()) - 1;
  if (pairs.size() < need) return true;
  std::vector<std::size_t> pick(need);
  for (std::size_t i = 0; i < need; ++i) pick[i] = i;
  Edge e1(need + 1), e2(need + 1);
  while (true) {
    for (std::size_t i = 0; i < need; ++i) {
      e1[i] = pairs[pick[i]].first;
      e2[i] = pairs[pick[i]].second;
    }
    e1[need] = x;
    e2[need] = y;
    if (g1.contains(e1) != g2.contains(e2)) return false;
    // Next combination.
    std::size_t i = need;
    while (i > 0 && pick[i - 1] == pairs.size() - need + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  return true;
}

namespace {

class Solver {
 public:
  Solver(const Hypergraph& g1, const Hypergraph& g2, const Limits& limits, bool use_symmetry,
         std::atomic<std::uint64_t>& expanded)
      : g1_(g1), g2_(g2), limits_(limits), expanded_(expanded) {
    if (use_symmetry && g1.num_vertices() <= 7 && g2.num_vertices() <= 7) {
      auto a1 = automorphisms(g1, 7);
      auto a2 = automorphisms(g2, 7);
      if (a1.size() * a2.size() <= 64 && a1.size() * a2.size() > 1) {
        aut1_ = std::move(a1);
        aut2_ = std::move(a2);
      }
    }
  }

  bool duplicator_wins(std::vector<Vertex>& c1, std::vector<Vertex>& c2, int rounds) {
    if (rounds == 0) return true;
    auto key = canonical(c1, c2, rounds);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++expanded_ > limits_.game_budget) throw BudgetExceeded("game search exceeded its budget");
    bool result = true;
    for (int side = 1; side <= 2 && result; ++side) {
      const std::size_t n = side == 1 ? g1_.num_vertices() : g2_.num_vertices();
      for (Vertex v = 0; v < n && result; ++v) result = answerable(c1, c2, rounds, side, v);
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  // Whether Duplicator has a winning reply to Spoiler's move (side, v).
  bool answerable(std::vector<Vertex>& c1, std::vector<Vertex>& c2, int rounds, int side, Vertex v) {
    const std::size_t m = side == 1 ? g2_.num_vertices() : g1_.num_vertices();
    for (Vertex w = 0; w < m; ++w) {
      Vertex x = side == 1 ? v : w;
      Vertex y = side == 1 ? w : v;
      if (!extends_partial_isomorphism(g1_, g2_, c1, c2, x, y)) continue;
      c1.push_back(x);
      c2.push_back(y);
      bool wins = duplicator_wins(c1, c2, rounds - 1);
      c1.pop_back();
      c2.pop_back();
      if (wins) return true;
    }
    return false;
  }

 private:
  using Key = std::vector<std::uint32_t>;

  // Sorted distinct (x, y) pairs plus the rounds left, minimized over board
  // automorphisms when the groups are small.
  Key canonical(const std::vector<Vertex>& c1, const std::vector<Vertex>& c2, int rounds) const {
    auto encode = [&](const VertexMap* s1, const VertexMap* s2) {
      Key key;
      for (std::size_t i = 0; i < c1.size(); ++i) {
        Vertex x = s1 ? (*s1)[c1[i]] : c1[i];
        Vertex y = s2 ? (*s2)[c2[i]] : c2[i];
        key.push_back(x << 16 | y);
      }
      std::sort(key.begin(), key.end());
      key.erase(std::unique(key.begin(), key.end()), key.end());
      key.push_back(0xffffffffu - static_cast<std::uint32_t>(rounds));
      return key;
    };
    Key best = encode(nullptr, nullptr);
    for (const VertexMap& s1 : aut1_) {
      for (const VertexMap& s2 : aut2_) {
        Key k = encode(&s1, &s2);
        if (k < best) best = std::move(k);
      }
    }
    return best;
  }

  const Hypergraph& g1_;
  const Hypergraph& g2_;
  const Limits& limits_;
  std::atomic<std::uint64_t>& expanded_;
  std::vector<VertexMap> aut1_, aut2_;
  std::map<Key, bool> memo_;
};

void check_boards(const Hypergraph& g1, const Hypergraph& g2, int k) {
  if (g1.s() != g2.s()) throw InvalidInput("boards differ in uniformity");
  if (k < 0) throw InvalidInput("number of rounds must be nonnegative");
  if (g1.num_vertices() > 0xffff || g2.num_vertices() > 0xffff) {
    throw InvalidInput("boards above 65535 vertices");
  }
}

}  // namespace

Winner solve(const Hypergraph& g1, const Hypergraph& g2, int k, const Limits& limits,
             const SolveOptions& options) {
  check_boards(g1, g2, k);
  if (k == 0) return Winner::kDuplicator;
  std::atomic<std::uint64_t> expanded{0};
  std::vector<SpoilerMove> moves;
  for (Vertex v = 0; v < g1.num_vertices(); ++v) moves.push_back({1, v});
  for (Vertex v = 0; v < g2.num_vertices(); ++v) moves.push_back({2, v});
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, moves.size()));
  if (jobs == 1) {
    Solver solver(g1, g2, limits, options.use_symmetry, expanded);
    std::vector<Vertex> c1, c2;
    return solver.duplicator_wins(c1, c2, k) ? Winner::kDuplicator : Winner::kSpoiler;
  }
  // Each worker owns a memo table and a strided share of Spoiler's first moves.
  std::atomic<bool> spoiler{false};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        Solver solver(g1, g2, limits, options.use_symmetry, expanded);
        std::vector<Vertex> c1, c2;
        for (std::size_t i = w; i < moves.size() && !spoiler; i += jobs) {
          if (!solver.answerable(c1, c2, k, moves[i].side, moves[i].vertex)) spoiler = true;
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return spoiler ? Winner::kSpoiler : Winner::kDuplicator;
}

bool verify_strategy(const Hypergraph& g1, const Hypergraph& g2, int k, const Strategy& strategy,
                     const Limits& limits) {
  check_boards(g1, g2, k);
  std::uint64_t expanded = 0;
  GamePosition position;
  position.g1 = &g1;
  position.g2 = &g2;
  std::function<bool(int)> survive = [&](int rounds) {
    if (rounds == 0) return true;
    if (++expanded > limits.game_budget) throw BudgetExceeded("strategy check exceeded its budget");
    position.rounds_left = rounds;
    for (int side = 1; side <= 2; ++side) {
      const Hypergraph& own = side == 1 ? g1 : g2;
      const Hypergraph& other = side == 1 ? g2 : g1;
      for (Vertex v = 0; v < own.num_vertices(); ++v) {
        position.rounds_left = rounds;
        auto reply = strategy(position, {side, v});
        if (!reply || *reply >= other.num_vertices()) return false;
        Vertex x = side == 1 ? v : *reply;
        Vertex y = side == 1 ? *reply : v;
        if (!extends_partial_isomorphism(g1, g2, position.chosen1, position.chosen2, x, y)) return false;
        position.chosen1.push_back(x);
        position.chosen2.push_back(y);
        bool ok = survive(rounds - 1);
        position.chosen1.pop_back();
        position.chosen2.pop_back();
        if (!ok) return false;
      }
    }
    return true;
  };
  return survive(k);
}

Strategy mirror_strategy() {
  return [](const GamePosition& pos, const SpoilerMove& move) -> std::optional<Vertex> {
    const Hypergraph& other = move.side == 1 ? *pos.g2 : *pos.g1;
    if (move.vertex >= other.num_vertices()) return std::nullopt;
    return move.vertex;
  };
}

Strategy constant_strategy(Vertex vertex) {
  return [vertex](const GamePosition& pos, const SpoilerMove& move) -> std::optional<Vertex> {
    const Hypergraph& other = move.side == 1 ? *pos.g2 : *pos.g1;
    if (vertex >= other.num_vertices()) return std::nullopt;
    return vertex;
  };
}

Strategy extension_strategy(int k) {
  return [k](const GamePosition& pos, const SpoilerMove& move) -> std::optional<Vertex> {
    if (static_cast<int>(pos.chosen1.size()) >= k) return std::nullopt;
    const bool first = move.side == 1;
    const auto& own = first ? pos.chosen1 : pos.chosen2;
    const auto& mates = first ? pos.chosen2 : pos.chosen1;
    for (std::size_t i = 0; i < own.size(); ++i) {
      if (own[i] == move.vertex) return mates[i];
    }
    const Hypergraph& other = first ? *pos.g2 : *pos.g1;
    for (Vertex w = 0; w < other.num_vertices(); ++w) {
      if (std::find(mates.begin(), mates.end(), w) != mates.end()) continue;
      Vertex x = first ? move.vertex : w;
      Vertex y = first ? w : move.vertex;
      if (extends_partial_isomorphism(*pos.g1, *pos.g2, pos.chosen1, pos.chosen2, x, y)) return w;
    }
    return std::nullopt;
  };
}

AgreementReport agreement_check(const Hypergraph& g1, const Hypergraph& g2, int k,
                                const std::vector<Formula>& corpus, const Limits& limits) {
  for (const Formula& f : corpus) {
    if (!free_variables(f).empty()) throw InvalidInput("corpus entry is not a sentence: " + print(f));
    if (quantifier_depth(f) > k) throw InvalidInput("corpus entry deeper than k: " + print(f));
  }
  AgreementReport report;
  report.winner = solve(g1, g2, k, limits);
  if (report.winner == Winner::kSpoiler) return report;
  for (const Formula& f : corpus) {
    if (evaluate(g1, f, {}, limits.eval_budget) != evaluate(g2, f, {}, limits.eval_budget)) {
      report.counterexamples.push_back(f);
    }
  }
  return report;
}

}  // namespace hyperspectra
