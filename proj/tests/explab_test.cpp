#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <set>

#include <gtest/gtest.h>

#include "hyperspectra/errors.hpp"
#include "hyperspectra/explab.hpp"
#include "hyperspectra/sampler.hpp"
#include "test_support.hpp"

namespace hyperspectra {
namespace {

namespace fs = std::filesystem;

Hypergraph triangle() { return Hypergraph(2, 3, {{0, 1}, {1, 2}, {0, 2}}); }
Hypergraph four_cycle() { return Hypergraph(2, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

// H = {012, 013}, G adds the pendant edge {2, 4, 5}; lambda = e^-1 / 4.
RootedPair pendant_pair() {
  return RootedPair::induced_roots(Hypergraph(3, 6, {{0, 1, 2}, {0, 1, 3}, {2, 4, 5}}), 4);
}

ExperimentConfig edge_config(double p) {
  ExperimentConfig cfg;
  cfg.s = 3;
  cfg.n_values = {10};
  cfg.p = p;
  cfg.trials = 200;
  cfg.seed = 1;
  return cfg;
}

ExperimentConfig path_sweep(std::vector<std::size_t> ns) {
  ExperimentConfig cfg;
  cfg.s = 3;
  cfg.n_values = std::move(ns);
  cfg.alphas = {Rational(2), ratio(9, 4), ratio(5, 2), ratio(11, 4), Rational(3)};
  cfg.property = PropertySpec::contains_pattern(loose_path(3, 2));
  cfg.trials = 300;
  cfg.seed = 42;
  return cfg;
}

fs::path temp_file(const std::string& name) {
  fs::path path = fs::temp_directory_path() / ("hyperspectra_explab_" + name);
  fs::remove(path);
  return path;
}

TEST(Wilson, KnownValuesAndRange) {
  Interval95 ci = wilson_interval(5, 20);
  EXPECT_NEAR(ci.lo, 0.1119, 1e-4);
  EXPECT_NEAR(ci.hi, 0.4687, 1e-4);
  for (std::uint64_t n : {1u, 7u, 100u}) {
    for (std::uint64_t k = 0; k <= n; ++k) {
      Interval95 c = wilson_interval(k, n);
      EXPECT_GE(c.lo, 0.0);
      EXPECT_LE(c.hi, 1.0);
      EXPECT_LE(c.lo, static_cast<double>(k) / n + 1e-12);
      EXPECT_GE(c.hi, static_cast<double>(k) / n - 1e-12);
    }
  }
  Interval95 empty = wilson_interval(0, 0);
  EXPECT_EQ(empty.lo, 0.0);
  EXPECT_EQ(empty.hi, 1.0);
}

TEST(EstimateProbability, ExactAtZeroAndOne) {
  EstimateReport zero = estimate_probability(edge_config(0.0));
  EXPECT_EQ(zero.estimate, 0.0);
  EXPECT_EQ(zero.successes, 0u);
  EXPECT_EQ(zero.ci_lo, 0.0);
  EXPECT_LT(zero.ci_hi, 4.0 / 200);
  EXPECT_GT(zero.ci_hi, 3.0 / 200);
  EstimateReport one = estimate_probability(edge_config(1.0));
  EXPECT_EQ(one.estimate, 1.0);
  EXPECT_EQ(one.trials, 200u);
  EXPECT_EQ(one.budget_exceeded, 0u);
}

TEST(EstimateProbability, RejectsBadConfigs) {
  ExperimentConfig cfg = edge_config(0.5);
  cfg.trials = 0;
  EXPECT_THROW(estimate_probability(cfg), InvalidInput);
  cfg = edge_config(0.5);
  cfg.n_values.clear();
  EXPECT_THROW(estimate_probability(cfg), InvalidInput);
  cfg = edge_config(0.5);
  cfg.alphas = {Rational(2)};
  EXPECT_THROW(estimate_probability(cfg), InvalidInput);
  cfg = edge_config(0.5);
  cfg.n_values = {10, 12};
  EXPECT_THROW(estimate_probability(cfg), InvalidInput);
  cfg = edge_config(0.5);
  cfg.property = PropertySpec::contains_pattern(triangle());
  EXPECT_THROW(estimate_probability(cfg), InvalidInput);
}

TEST(EstimateProbability, BudgetFailuresCountedSeparately) {
  ExperimentConfig cfg = edge_config(0.3);
  cfg.trials = 20;
  cfg.property = PropertySpec::sentence(
      parse_formula("(forall x (forall y (forall z (exists w (N x y w)))))", 3));
  cfg.limits.eval_budget = 5;
  EstimateReport r = estimate_probability(cfg);
  EXPECT_EQ(r.budget_exceeded, 20u);
  EXPECT_EQ(r.successes, 0u);
  EXPECT_EQ(r.estimate, 0.0);
  EXPECT_EQ(r.ci_lo, 0.0);
  EXPECT_EQ(r.ci_hi, 1.0);
}

TEST(EstimateProbability, FormulaAgreesWithBuiltin) {
  ExperimentConfig builtin = edge_config(0.002);
  ExperimentConfig formula = builtin;
  formula.property = PropertySpec::sentence(parse_formula("(exists a (exists b (exists c (N a b c))))", 3));
  EstimateReport a = estimate_probability(builtin);
  EstimateReport b = estimate_probability(formula);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_GT(a.successes, 0u);
  EXPECT_LT(a.successes, 200u);
}

TEST(SweepAlpha, SingleCellMatchesEstimate) {
  ExperimentConfig cfg = path_sweep({30});
  cfg.alphas = {ratio(5, 2)};
  std::vector<EstimateReport> sweep = sweep_alpha(cfg);
  ASSERT_EQ(sweep.size(), 1u);
  EXPECT_EQ(sweep.front(), estimate_probability(cfg));
}

TEST(SweepAlpha, CoupledEstimatesNonIncreasing) {
  ExperimentConfig cfg = path_sweep({30, 60});
  std::vector<EstimateReport> reports = sweep_alpha(cfg);
  ASSERT_EQ(reports.size(), 10u);
  for (std::size_t cell = 0; cell < reports.size(); ++cell) {
    EXPECT_EQ(reports[cell].n, cell < 5 ? 30u : 60u);
    if (cell % 5 != 0) EXPECT_LE(reports[cell].estimate, reports[cell - 1].estimate) << cell;
  }
  EXPECT_GT(reports[0].estimate, reports[4].estimate);
}

TEST(SweepAlpha, PerTrialIndicatorsMonotoneUnderCoupling) {
  ExperimentConfig cfg = path_sweep({40});
  cfg.trials = 200;
  std::vector<std::vector<TrialRecord>> cells;
  for (std::size_t i = 0; i < cfg.alphas.size(); ++i) cells.push_back(run_cell(cfg, 40, cfg.alphas[i], i));
  for (std::size_t i = 1; i < cells.size(); ++i) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      EXPECT_LE(*cells[i][t].outcome, *cells[i - 1][t].outcome) << "alpha " << i << " trial " << t;
    }
  }
}

TEST(SweepAlpha, UncoupledCellsUseFreshStreams) {
  ExperimentConfig cfg = edge_config(0.02);
  cfg.property = PropertySpec::contains_pattern(Hypergraph(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}));
  cfg.coupled = false;
  std::vector<TrialRecord> a = run_cell(cfg, 10, std::nullopt, 0);
  std::vector<TrialRecord> b = run_cell(cfg, 10, std::nullopt, 1);
  EXPECT_NE(a, b);
  EXPECT_EQ(a, run_cell(cfg, 10, std::nullopt, 0));
  cfg.coupled = true;
  EXPECT_EQ(run_cell(cfg, 10, std::nullopt, 0), run_cell(cfg, 10, std::nullopt, 1));
}

TEST(SweepAlpha, DeterministicAcrossJobs) {
  ExperimentConfig cfg = path_sweep({30});
  cfg.trials = 120;
  std::vector<EstimateReport> serial = sweep_alpha(cfg);
  cfg.jobs = 3;
  EXPECT_EQ(sweep_alpha(cfg), serial);
  EXPECT_EQ(run_cell(cfg, 30, cfg.alphas[1], 1), [&] {
    ExperimentConfig one = cfg;
    one.jobs = 1;
    return run_cell(one, 30, cfg.alphas[1], 1);
  }());
}

TEST(SweepAlpha, CsvHasOneRowPerCell) {
  ExperimentConfig cfg = path_sweep({30, 60});
  cfg.trials = 50;
  std::vector<EstimateReport> reports = sweep_alpha(cfg);
  std::string csv = summary_csv(reports, config_digest(cfg));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# config_digest: " + config_digest(cfg));
  std::getline(in, line);
  EXPECT_EQ(line, "n,alpha,p,trials,successes,estimate,ci_lo,ci_hi,budget_exceeded");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 10);
}

TEST(PoissonTv, MatchesDirectSum) {
  const std::vector<std::uint64_t> hist = {70, 20, 7, 0, 3};
  for (double lambda : {0.0, 1.0 / 6, 0.5, 2.0}) {
    // Direct sum over a long support with the pmf built by the recurrence.
    double pk = std::exp(-lambda), tv = 0.0;
    for (int k = 0; k < 200; ++k) {
      double emp = k < static_cast<int>(hist.size()) ? hist[k] / 100.0 : 0.0;
      tv += std::abs(emp - pk);
      pk *= lambda / (k + 1);
    }
    EXPECT_NEAR(tv_distance_poisson(hist, lambda), 0.5 * tv, 1e-12) << lambda;
  }
  EXPECT_NEAR(tv_distance_poisson({1}, 0.0), 0.0, 1e-15);
  EXPECT_THROW(tv_distance_poisson({0, 0}, 1.0), InvalidInput);
}

TEST(CopyCount, ZeroProbabilityIsPointMassAtZero) {
  CountOptions options;
  options.trials = 50;
  options.p = 0.0;
  CopyCountReport r = copy_count_distribution({triangle()}, 20, options);
  ASSERT_EQ(r.patterns.size(), 1u);
  EXPECT_EQ(r.patterns[0].histogram, std::vector<std::uint64_t>{50});
  EXPECT_EQ(r.patterns[0].mean, 0.0);
  EXPECT_NEAR(r.patterns[0].tv, 1.0 - std::exp(-1.0 / 6), 1e-12);
}

TEST(CopyCount, TriangleNearPoisson) {
  CountOptions options;
  options.trials = 2000;
  options.seed = 7;
  CopyCountReport r = copy_count_distribution({triangle(), four_cycle()}, 150, options);
  EXPECT_DOUBLE_EQ(r.p, 1.0 / 150);
  EXPECT_EQ(r.alpha, Rational(1));
  const CountSummary& tri = r.patterns[0];
  EXPECT_EQ(std::accumulate(tri.histogram.begin(), tri.histogram.end(), std::uint64_t{0}), 2000u);
  EXPECT_NEAR(tri.lambda, 1.0 / 6, 1e-15);
  EXPECT_NEAR(tri.mean, 1.0 / 6, 0.15 / 6);
  EXPECT_LT(tri.tv, 0.05);
  EXPECT_NEAR(r.patterns[1].lambda, 1.0 / 8, 1e-15);
  ASSERT_TRUE(r.correlation.has_value());
  EXPECT_LT(std::abs(*r.correlation), 0.1);
}

TEST(CopyCount, CountsMatchBruteForce) {
  CountOptions options;
  options.trials = 30;
  options.p = 0.3;
  options.seed = 9;
  CopyCountReport r = copy_count_distribution({triangle()}, 7, options);
  for (std::uint64_t t = 0; t < options.trials; ++t) {
    ModelParams params;
    params.s = 2;
    params.n = 7;
    params.p = 0.3;
    params.seed = 9;
    params.trial_index = t;
    std::uint64_t embeddings = testing::brute_force_embeddings(triangle(), sample(params), false);
    EXPECT_EQ(r.counts[0][t] * 6, embeddings);
  }
}

TEST(CopyCount, FittedLambdaUsesMean) {
  CountOptions options;
  options.trials = 200;
  options.p = 0.05;
  options.fitted_lambda = true;
  CopyCountReport r = copy_count_distribution({triangle()}, 30, options);
  EXPECT_DOUBLE_EQ(r.patterns[0].lambda, r.patterns[0].mean);
}

TEST(CopyCount, RejectsUnbalancedOrMixedDensity) {
  CountOptions options;
  options.trials = 5;
  Hypergraph triangle_with_pendant(2, 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  EXPECT_THROW(copy_count_distribution({triangle_with_pendant}, 20, options), HypothesisViolated);
  EXPECT_THROW(copy_count_distribution({triangle(), Hypergraph(2, 2, {{0, 1}})}, 20, options),
               HypothesisViolated);
}

TEST(CopyCount, DeterministicAcrossJobs) {
  CountOptions options;
  options.trials = 100;
  options.p = 0.08;
  CopyCountReport serial = copy_count_distribution({triangle(), four_cycle()}, 25, options);
  options.jobs = 4;
  CopyCountReport parallel = copy_count_distribution({triangle(), four_cycle()}, 25, options);
  EXPECT_EQ(serial.counts, parallel.counts);
}

// Copies of H, as (vertex set, edge images), with no injective map of G that
// sends H onto the copy and G's edges onto host edges.
std::uint64_t brute_force_unextendable(const Hypergraph& host, const RootedPair& pair) {
  const Hypergraph h = pair.h();
  const std::size_t n = host.num_vertices(), v = pair.g.num_vertices(), l = pair.roots;
  std::map<std::set<Edge>, bool> copies;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Every injective map of G's vertices; a map restricted to the roots is an H
  // embedding when H's edges land on host edges.
  std::vector<Vertex> image(v);
  std::vector<char> used(n, 0);
  auto image_of = [&](const Edge& e) {
    Edge out;
    for (Vertex x : e) out.push_back(image[x]);
    std::sort(out.begin(), out.end());
    return out;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == l) {
      for (const Edge& e : h.edges()) {
        if (!host.contains(image_of(e))) return;
      }
      std::set<Edge> key;
      for (const Edge& e : h.edges()) key.insert(image_of(e));
      for (std::size_t r = 0; r < l; ++r) key.insert(Edge{image[r], image[r], image[r]});
      copies.try_emplace(key, false);
    }
    if (i == v) {
      for (const Edge& e : pair.g.edges()) {
        if (!host.contains(image_of(e))) return;
      }
      std::set<Edge> key;
      for (const Edge& e : h.edges()) key.insert(image_of(e));
      for (std::size_t r = 0; r < l; ++r) key.insert(Edge{image[r], image[r], image[r]});
      copies[key] = true;
      return;
    }
    for (Vertex x = 0; x < n; ++x) {
      if (used[x]) continue;
      used[x] = 1;
      image[i] = x;
      rec(i + 1);
      used[x] = 0;
    }
  };
  rec(0);
  std::uint64_t count = 0;
  for (const auto& [key, extendable] : copies) count += extendable ? 0 : 1;
  return count;
}

TEST(Unextendable, MatchesBruteForceOnSmallHosts) {
  std::mt19937_64 rng(17);
  const RootedPair pair = pendant_pair();
  int nonzero = 0, mixed = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Hypergraph host = testing::random_hypergraph(3, 7, 0.3, rng);
    std::uint64_t fast = count_unextendable_copies(host, pair);
    EXPECT_EQ(fast, brute_force_unextendable(host, pair)) << to_string(host);
    nonzero += fast > 0;
    mixed += fast > 0 && fast < count_copies(host, pair.h());
  }
  EXPECT_GT(nonzero, 0);
  EXPECT_GT(mixed, 0);
}

TEST(Unextendable, TrivialCases) {
  CountOptions options;
  options.trials = 40;
  options.p = 0.0;
  UnextendableReport zero = unextendable_copy_count(pendant_pair(), 20, options);
  EXPECT_EQ(zero.counts, std::vector<std::uint64_t>(40, 0));
  // G = H: every copy of H lies in a copy of G, namely itself.
  options.p = 0.5;
  RootedPair same = RootedPair::induced_roots(triangle(), 3);
  UnextendableReport trivial = unextendable_copy_count(same, 12, options);
  EXPECT_EQ(trivial.counts, std::vector<std::uint64_t>(40, 0));
  EXPECT_FALSE(trivial.prop1.has_value());
  EXPECT_EQ(count_unextendable_copies(Hypergraph::complete(2, 5), same), 0u);
}

TEST(Unextendable, RejectsPairsOutsideHypotheses) {
  CountOptions options;
  options.trials = 5;
  RootedPair heavy = RootedPair::induced_roots(Hypergraph(2, 4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}}), 3);
  EXPECT_THROW(unextendable_copy_count(heavy, 20, options), HypothesisViolated);
}

TEST(Unextendable, MeanNearLambda) {
  CountOptions options;
  options.trials = 2000;
  options.seed = 3;
  for (std::size_t n : {80u, 120u}) {
    UnextendableReport r = unextendable_copy_count(pendant_pair(), n, options);
    ASSERT_TRUE(r.prop1.has_value());
    EXPECT_EQ(r.alpha, Rational(2));
    EXPECT_NEAR(r.summary.lambda, std::exp(-1.0) / 4, 1e-12);
    EXPECT_NEAR(r.summary.mean, r.summary.lambda, 0.25 * r.summary.lambda) << n;
  }
}

TEST(Persistence, RecordsRoundTrip) {
  std::vector<TrialRecord> records(3);
  records[0] = {40, Rational(2), 1.0 / 1600, 0, true, std::nullopt, false, std::nullopt};
  records[1] = {40, ratio(5, 2), 0.0001, 1, std::nullopt, 4, false, 0.25};
  records[2] = {60, std::nullopt, 0.1, 2, std::nullopt, std::nullopt, true, std::nullopt};
  fs::path path = temp_file("records.jsonl");
  save_records(path, "abc", records);
  RecordLog log = load_records(path);
  EXPECT_EQ(log.records, records);
  EXPECT_EQ(log.digests, std::vector<std::string>{"abc"});
  fs::remove(path);
}

TEST(Persistence, RerunAppendsIdenticalOutcomes) {
  fs::path path = temp_file("rerun.jsonl");
  ExperimentConfig cfg = path_sweep({30});
  cfg.trials = 40;
  cfg.output = path;
  sweep_alpha(cfg);
  sweep_alpha(cfg);
  RecordLog log = load_records(path);
  ASSERT_EQ(log.digests.size(), 2u);
  EXPECT_EQ(log.digests[0], config_digest(cfg));
  EXPECT_EQ(log.digests[0], log.digests[1]);
  ASSERT_EQ(log.records.size(), 400u);
  EXPECT_TRUE(std::equal(log.records.begin(), log.records.begin() + 200, log.records.begin() + 200));
  fs::remove(path);
}

TEST(Persistence, SummaryCsvRoundTrip) {
  ExperimentConfig cfg = path_sweep({30});
  cfg.trials = 60;
  std::vector<EstimateReport> reports = sweep_alpha(cfg);
  fs::path path = temp_file("summary.csv");
  save_summary_csv(path, reports, config_digest(cfg));
  EXPECT_EQ(load_summary_csv(path), reports);
  fs::remove(path);
}

TEST(Persistence, ErrorsNameThePath) {
  fs::path missing = fs::temp_directory_path() / "hyperspectra_no_such_dir" / "x.jsonl";
  try {
    load_records(missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(missing.string()), std::string::npos);
  }
  EXPECT_THROW(save_records(missing, "d", {}), Error);
  fs::path bad = temp_file("bad.csv");
  std::ofstream(bad) << "n,alpha\n1,2\n";
  EXPECT_THROW(load_summary_csv(bad), ParseError);
  fs::remove(bad);
}

TEST(ConfigDigest, StableAndSensitive) {
  ExperimentConfig cfg = path_sweep({30, 60});
  const std::string digest = config_digest(cfg);
  EXPECT_EQ(digest.size(), 64u);
  EXPECT_EQ(config_digest(ExperimentConfig::from_json(cfg.to_json())), digest);
  ExperimentConfig other = cfg;
  other.jobs = 4;
  other.output = "/tmp/ignored.jsonl";
  EXPECT_EQ(config_digest(other), digest);
  other.seed = 43;
  EXPECT_NE(config_digest(other), digest);
  other = cfg;
  other.property = PropertySpec::contains_edge();
  EXPECT_NE(config_digest(other), digest);
}

TEST(ConfigDigest, PropertySpecRoundTrip) {
  std::vector<PropertySpec> specs = {
      PropertySpec::contains_edge(), PropertySpec::contains_pattern(loose_path(3, 2), CopyMode::kInduced),
      PropertySpec::sentence(parse_formula("(exists x (exists y (exists z (N x y z))))", 3)),
      PropertySpec::thm9_sentence(3, 1, 2)};
  for (const PropertySpec& spec : specs) {
    PropertySpec back = PropertySpec::from_json(spec.to_json(), 3);
    EXPECT_EQ(back.to_json(), spec.to_json());
  }
  EXPECT_THROW(PropertySpec::from_json({{"builtin", "nope"}}, 3), ParseError);
}

}  // namespace
}  // namespace hyperspectra
