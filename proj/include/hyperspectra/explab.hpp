#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperspectra/bounds.hpp"
#include "hyperspectra/extlab.hpp"
#include "hyperspectra/folio.hpp"
#include "hyperspectra/hypercore.hpp"
#include "hyperspectra/limits.hpp"
#include "hyperspectra/rational.hpp"

namespace hyperspectra {

// What a trial checks in the sampled hypergraph.
struct PropertySpec {
  enum class Kind { kContainsEdge, kContainsPattern, kFormula, kThm9Sentence };

  Kind kind = Kind::kContainsEdge;
  std::optional<Hypergraph> pattern;
  CopyMode mode = CopyMode::kSubgraph;
  std::optional<Formula> formula;  // closed sentence
  long long a1 = 0, a2 = 0, a3 = 0;

  static PropertySpec contains_edge();
  static PropertySpec contains_pattern(Hypergraph pattern, CopyMode mode = CopyMode::kSubgraph);
  static PropertySpec sentence(Formula formula);
  static PropertySpec thm9_sentence(long long a1, long long a2, long long a3);

  // Builtin ids: "contains-edge" and "thm9-sentence".
  nlohmann::json to_json() const;
  static PropertySpec from_json(const nlohmann::json& doc, int s);
};

struct ExperimentConfig {
  int s = 3;
  std::vector<std::size_t> n_values;
  // Either an alpha grid (p = n^-alpha per cell) or one fixed edge probability.
  std::vector<Rational> alphas;
  std::optional<double> p;
  PropertySpec property;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  // Raw TrialRecords are appended here as JSONL when set.
  std::optional<std::filesystem::path> output;
  unsigned jobs = 1;
  // Cells share the per-trial edge uniforms, so containment indicators are
  // monotone in p. Off: every cell draws from its own stream.
  bool coupled = true;
  bool record_timing = false;
  Limits limits = default_limits();

  // Throws InvalidInput on trials = 0, an empty n-list, a missing or doubled
  // edge-probability source, or a property that does not fit s.
  void validate() const;
  // Canonical JSON of everything that determines the outcomes (output path, jobs
  // and timing are left out).
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& doc);
};

// Lowercase hex SHA-256 of the canonical JSON dump.
std::string config_digest(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t n = 0;
  std::optional<Rational> alpha;
  double p = 0.0;
  std::uint64_t trial_index = 0;
  std::optional<bool> outcome;
  std::optional<std::uint64_t> count;
  bool budget_exceeded = false;
  std::optional<double> elapsed;  // seconds, only when timing was requested

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

nlohmann::json to_json(const TrialRecord& record);
TrialRecord trial_record_from_json(const nlohmann::json& doc);

struct EstimateReport {
  std::size_t n = 0;
  std::optional<Rational> alpha;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t budget_exceeded = 0;
  // Over the trials that finished within budget.
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::string config_digest;

  friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

struct Interval95 {
  double lo = 0.0;
  double hi = 1.0;
};
// Wilson score interval at z = 1.96; [0, 1] for zero trials.
Interval95 wilson_interval(std::uint64_t successes, std::uint64_t trials);

// Requires exactly one n and one edge-probability source.
EstimateReport estimate_probability(const ExperimentConfig& cfg);
// One report per (n, alpha) cell, n-major. With `p` set instead of alphas, one
// cell per n.
std::vector<EstimateReport> sweep_alpha(const ExperimentConfig& cfg);

// Outcomes for one cell, in trial order; exposed for coupling checks.
std::vector<TrialRecord> run_cell(const ExperimentConfig& cfg, std::size_t n,
                                  const std::optional<Rational>& alpha, std::uint64_t cell);

// 0.5 * sum_k |hist(k)/T - Pois(k; lambda)|, with the Poisson mass beyond the
// histogram's support counted in full.
double tv_distance_poisson(const std::vector<std::uint64_t>& histogram, double lambda);
double poisson_pmf(std::uint64_t k, double lambda);

struct CountOptions {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::optional<double> p;  // defaults to n^-alpha for the theorem's alpha
  unsigned jobs = 1;
  bool fitted_lambda = false;  // compare against the empirical mean instead
  Limits limits = default_limits();
};

struct CountSummary {
  std::vector<std::uint64_t> histogram;  // histogram[k] = trials with count k
  double mean = 0.0;
  double variance = 0.0;
  double lambda = 0.0;  // the Poisson parameter compared against
  double tv = 0.0;
};

struct CopyCountReport {
  std::size_t n = 0;
  double p = 0.0;
  Rational alpha;  // 1/rho of the patterns
  std::vector<CountSummary> patterns;
  // Pearson correlation of the first two patterns' counts; nullopt when either
  // count is constant.
  std::optional<double> correlation;
  std::vector<std::vector<std::uint64_t>> counts;  // counts[pattern][trial]
};

// Copy counts of one or more strictly balanced patterns of equal density; the
// Poisson parameter of each is 1/|Aut|. Throws HypothesisViolated for a pattern
// that is not strictly balanced or densities that differ.
CopyCountReport copy_count_distribution(const std::vector<Hypergraph>& patterns, std::size_t n,
                                        const CountOptions& options);

struct UnextendableReport {
  std::size_t n = 0;
  double p = 0.0;
  Rational alpha;
  std::optional<Prop1Report> prop1;  // nullopt for the trivial pair G = H
  CountSummary summary;
  std::vector<std::uint64_t> counts;
};

// Copies of H (the root part) in G^s(n, p) not contained in any copy of G that
// maps H onto them. G = H gives 0 in every trial. Other pairs must satisfy the
// hypotheses checked by prop1_lambda.
UnextendableReport unextendable_copy_count(const RootedPair& pair, std::size_t n,
                                           const CountOptions& options);
// Single-host version of the count above.
std::uint64_t count_unextendable_copies(const Hypergraph& host, const RootedPair& pair,
                                        const Limits& limits = default_limits());

// JSONL: a header line {"schema", "config_digest"} followed by one TrialRecord per
// line. Appending adds a new header before the new records.
void save_records(const std::filesystem::path& path, const std::string& digest,
                  const std::vector<TrialRecord>& records, bool append = false);

struct RecordLog {
  std::vector<std::string> digests;  // one per header line, in file order
  std::vector<TrialRecord> records;
};
RecordLog load_records(const std::filesystem::path& path);

// CSV summary: "# config_digest: <hex>", then the column header
// n,alpha,p,trials,successes,estimate,ci_lo,ci_hi,budget_exceeded. Floats use
// `digits` significant digits; 17 round-trips exactly.
extern const char* const kSummaryCsvHeader;
std::string summary_csv(const std::vector<EstimateReport>& reports, const std::string& digest,
                        int digits = 17);
void save_summary_csv(const std::filesystem::path& path, const std::vector<EstimateReport>& reports,
                      const std::string& digest);
std::vector<EstimateReport> load_summary_csv(const std::filesystem::path& path);

}  // namespace hyperspectra
