// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyperspectra/bounds.hpp"
#include "hyperspectra/efgame.hpp"
#include "hyperspectra/explab.hpp"
#include "hyperspectra/extlab.hpp"
#include "hyperspectra/folio.hpp"
#include "hyperspectra/hypercore.hpp"
#include "test_support.hpp"

namespace hs = hyperspectra;
using hs::Hypergraph;
using hs::Rational;

namespace {

int failures = 0;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

int ceil_log2(int i) {
  int bits = 0;
  while ((1 << bits) < i) ++bits;
  return bits;
}

void threshold_reproduction() {
  Stopwatch clock;
  hs::ExperimentConfig cfg;
  cfg.s = 3;
  cfg.n_values = {40};
  cfg.trials = 500;
  cfg.seed = 42;
  cfg.property = hs::PropertySpec::contains_pattern(hs::loose_path(3, 2));
  cfg.alphas = {Rational(3)};
  double above = hs::estimate_probability(cfg).estimate;
  cfg.alphas = {Rational(2)};
  double below = hs::estimate_probability(cfg).estimate;
  double t = clock.seconds();
  bool pass = above <= 0.02 && below >= 0.98 && t < 120.0;
  report(1, "loose 2-edge path threshold at n=40", pass,
         "alpha=3: " + fmt("%.4f", above) + " (need <= 0.02), alpha=2: " + fmt("%.4f", below) +
             " (need >= 0.98), " + fmt("%.1f s", t));
}

void poisson_limit() {
  Stopwatch clock;
  Hypergraph triangle(2, 3, {{0, 1}, {1, 2}, {0, 2}});
  Hypergraph four_cycle(2, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  hs::CountOptions options;
  options.trials = 2000;
  options.seed = 7;
  options.p = 1.0 / 150;
  hs::CopyCountReport r = hs::copy_count_distribution({triangle, four_cycle}, 150, options);
  double t = clock.seconds();
  const hs::CountSummary& tri = r.patterns[0];
  double corr = r.correlation.value_or(1.0);
  bool pass = tri.mean >= 0.14 && tri.mean <= 0.19 && tri.tv < 0.05 && std::abs(corr) < 0.1 && t < 300.0;
  report(2, "triangle copy count vs Pois(1/6) at n=150", pass,
         "mean " + fmt("%.4f", tri.mean) + " in [0.14, 0.19], TV " + fmt("%.4f", tri.tv) +
             " < 0.05, r(triangle, C4) " + fmt("%.4f", corr) + ", " + fmt("%.1f s", t));
}

void zero_one_failure_witness() {
  Stopwatch clock;
  // Smallest triple the constructor accepts: 8 edges on 15 vertices.
  Hypergraph k = hs::construct_thm9_K(3, 2, 1, 1);
  hs::Limits limits = hs::default_limits();
  limits.enumeration_cap = 32;
  std::vector<double> estimates;
  for (std::size_t n : {60u, 90u, 120u}) {
    hs::ExperimentConfig cfg;
    cfg.s = 3;
    cfg.n_values = {n};
    cfg.alphas = {hs::density(k).reciprocal()};
    cfg.trials = 2000;
    cfg.seed = 9;
    cfg.limits = limits;
    cfg.property = hs::PropertySpec::contains_pattern(k);
    estimates.push_back(hs::estimate_probability(cfg).estimate);
  }
  double lo = *std::min_element(estimates.begin(), estimates.end());
  double hi = *std::max_element(estimates.begin(), estimates.end());
  bool pass = lo >= 0.05 && hi <= 0.95 && hi - lo < 0.15;
  report(3, "containment of the (2,1,1) construction at alpha = 1/rho", pass,
         "e=" + std::to_string(k.num_edges()) + ", v=" + std::to_string(k.num_vertices()) + ", alpha " +
             hs::density(k).reciprocal().str() + ", estimates " + fmt("%.4f", estimates[0]) + " / " +
             fmt("%.4f", estimates[1]) + " / " + fmt("%.4f", estimates[2]) +
             " (need all in [0.05, 0.95], spread < 0.15), " + fmt("%.1f s", clock.seconds()));
}

void exact_identities() {
  Stopwatch clock;
  std::vector<std::string> failed;
  if (hs::thm6_threshold(3, 4) != Rational(2)) failed.push_back("thm6_threshold(3,4)");

  hs::Thm7Witness w7 = hs::construct_thm7_K(3, 5);
  if (w7.k.num_vertices() != 111) failed.push_back("thm7 |V| = " + std::to_string(w7.k.num_vertices()));
  if (w7.k.num_edges() != 468) failed.push_back("thm7 |E| = " + std::to_string(w7.k.num_edges()));
  if (hs::density(w7.k) < hs::thm7_threshold(3, 5)) failed.push_back("thm7 rho below threshold");

  hs::Split split = hs::split_a(3, 7, 1);
  Hypergraph k9 = hs::construct_thm9_K(3, split.a1, split.a2, split.a3);
  Rational d9 = hs::density(k9);
  if (!hs::is_strictly_balanced(k9)) failed.push_back("thm9 K not strictly balanced");
  if (d9 != hs::ratio(17, 33)) failed.push_back("thm9 density " + d9.str() + " != 17/33");
  if (d9.reciprocal() != Rational(2) - hs::ratio(1, 17)) {
    failed.push_back("thm9 1/density " + d9.reciprocal().str() + " != 33/17");
  }

  if (hs::thm11_l(2, 5) != 2) failed.push_back("thm11_l(2,5)");
  if (hs::thm11_l_closed_form(5) != 2) failed.push_back("thm11 closed form at k=5");

  double t = clock.seconds();
  if (t >= 10.0) failed.push_back("runtime " + fmt("%.1f s", t));
  std::string detail;
  for (const std::string& f : failed) detail += (detail.empty() ? "" : "; ") + f;
  if (detail.empty()) detail = "all identities hold";
  detail += ", split (3,7,1) = (" + std::to_string(split.a1) + "," + std::to_string(split.a2) + "," +
            std::to_string(split.a3) + ")";
  // The (5,1,4) triple gives e = 17, v = 33.
  Rational d514 = hs::density(hs::construct_thm9_K(3, 5, 1, 4));
  detail += ", (5,1,4) construction density " + d514.str() + ", " + fmt("%.2f s", t);
  report(4, "exact identities for thresholds and constructions", failed.empty(), detail);
}

void oracle_equivalence() {
  Stopwatch clock;
  std::mt19937_64 rng(2024);
  int density_bad = 0, eval_bad = 0, copies_bad = 0, game_bad = 0;

  for (int i = 0; i < 200; ++i) {
    int s = 2 + i % 3;
    std::size_t n = static_cast<std::size_t>(s) + rng() % (13 - s);
    Hypergraph g = hs::testing::random_hypergraph(s, n, 0.1 + 0.4 * (rng() % 100) / 100.0, rng);
    if (hs::max_density(g).value != hs::testing::brute_force_max_density(g)) ++density_bad;
  }

  const std::vector<std::string> pool{"x", "y", "z"};
  for (int i = 0; i < 500; ++i) {
    int s = 2 + i % 2;
    std::size_t n = 1 + rng() % 5;
    Hypergraph g = n >= static_cast<std::size_t>(s) ? hs::testing::random_hypergraph(s, n, 0.4, rng)
                                                    : Hypergraph::edgeless(s, n);
    hs::Formula f = hs::testing::random_formula(rng, s, 3, 5, pool);
    hs::Assignment a;
    std::vector<std::pair<std::string, hs::Vertex>> env;
    for (const std::string& v : pool) {
      auto value = static_cast<hs::Vertex>(rng() % n);
      a[v] = value;
      env.emplace_back(v, value);
    }
    if (hs::evaluate(g, f, a) != hs::testing::naive_evaluate(g, f, env)) ++eval_bad;
  }

  int copy_cases = 0;
  for (int i = 0; i < 200; ++i) {
    int s = 2 + i % 2;
    std::size_t host_n = static_cast<std::size_t>(s) + rng() % (8 - s);
    std::size_t pattern_n = static_cast<std::size_t>(s) + rng() % (host_n - s + 1);
    Hypergraph host = hs::testing::random_hypergraph(s, host_n, 0.5, rng);
    Hypergraph pattern = hs::testing::random_hypergraph(s, pattern_n, 0.5, rng);
    for (bool induced : {false, true}) {
      ++copy_cases;
      std::uint64_t brute = hs::testing::brute_force_embeddings(pattern, host, induced);
      auto mode = induced ? hs::CopyMode::kInduced : hs::CopyMode::kSubgraph;
      if (hs::count_copies(host, pattern, mode) * hs::automorphism_count(pattern) != brute) ++copies_bad;
    }
  }

  for (int i = 0; i < 100; ++i) {
    int s = 2 + i % 2;
    Hypergraph g1 = hs::testing::random_hypergraph(s, 3 + rng() % 3, 0.5, rng);
    Hypergraph g2 = hs::testing::random_hypergraph(s, 3 + rng() % 3, 0.5, rng);
    int k = 1 + i % 3;
    if (hs::solve(g1, g2, k) != hs::testing::reference_solve(g1, g2, k)) ++game_bad;
  }

  bool pass = density_bad + eval_bad + copies_bad + game_bad == 0;
  report(5, "fast routines against brute-force oracles", pass,
         "max_density " + std::to_string(density_bad) + "/200, evaluate " + std::to_string(eval_bad) +
             "/500, count_copies " + std::to_string(copies_bad) + "/" + std::to_string(copy_cases) +
             ", solve " + std::to_string(game_bad) + "/100 discrepancies, " + fmt("%.1f s", clock.seconds()));
}

void strategy_verification() {
  Stopwatch clock;
  std::mt19937_64 rng(7);
  int pairs = 0, losses = 0;
  const int k = 3;
  for (int trial = 0; trial < 4000 && pairs < 30; ++trial) {
    Hypergraph g1 = hs::testing::random_hypergraph(3, 7 + rng() % 2, 0.5, rng);
    Hypergraph g2 = hs::testing::random_hypergraph(3, 7 + rng() % 2, 0.5, rng);
    if (!hs::has_full_extension_property(g1, k - 1) || !hs::has_full_extension_property(g2, k - 1)) continue;
    ++pairs;
    if (!hs::verify_strategy(g1, g2, k, hs::extension_strategy(k))) ++losses;
  }
  report(6, "extension strategy against exhaustive Spoiler", pairs >= 20 && losses == 0,
         std::to_string(pairs) + " board pairs (need >= 20), " + std::to_string(losses) + " losses, " +
             fmt("%.1f s", clock.seconds()));
}

void hm_density_form() {
  Stopwatch clock;
  std::mt19937_64 rng(31);
  std::size_t checked = 0, violations = 0;
  const Rational s_minus_1(2);
  for (int m = 1; m <= 4; ++m) {
    for (const Hypergraph& g : hs::testing::random_hm_members(3, m, 20, 40, rng)) {
      ++checked;
      Rational inverse = hs::max_density(g).value.reciprocal();
      if (g.num_vertices() > 20) {
        ++violations;
        continue;
      }
      if (inverse == s_minus_1) continue;
      if (inverse > s_minus_1) {
        ++violations;
        continue;
      }
      Rational rest = (s_minus_1 - inverse).reciprocal() - Rational(m);
      if (rest.sign() <= 0 || rest.numerator() > m) ++violations;
    }
  }
  report(7, "1/rho^max form over generated H_m members", checked >= 100 && violations == 0,
         std::to_string(checked) + " members (need >= 100), " + std::to_string(violations) + " violations, " +
             fmt("%.1f s", clock.seconds()));
}

void depth_formulas() {
  int mismatches = 0;
  for (int s = 2; s <= 5; ++s) {
    for (int i = 1; i <= 64; ++i) {
      if (hs::quantifier_depth(hs::build_D(i, s)) != ceil_log2(i) + s - 2) ++mismatches;
      if (hs::quantifier_depth(hs::build_C(i, s)) != ceil_log2(i) + s) ++mismatches;
    }
  }
  report(8, "quantifier depth of D_i and C_i", mismatches == 0,
         std::to_string(mismatches) + " mismatches over i <= 64, s in 2..5");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      threshold_reproduction, poisson_limit,         zero_one_failure_witness, exact_identities,
      oracle_equivalence,     strategy_verification, hm_density_form,          depth_formulas};
  for (const auto& run : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion raised: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
