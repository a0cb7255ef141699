#include "hyperspectra/explab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "hyperspectra/errors.hpp"
#include "hyperspectra/io.hpp"
#include "hyperspectra/sampler.hpp"

namespace hyperspectra {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr const char* kRecordSchema = "hyperspectra.trials/1";

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string format_double(double x, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Runs body(i) for i in [0, count) on `jobs` threads with a strided split.
void parallel_for(std::uint64_t count, unsigned jobs,
                  const std::function<void(std::uint64_t)>& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
  if (jobs == 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::uint64_t i = t; i < count; i += jobs) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool check_property(const Hypergraph& g, const PropertySpec& prop, const Limits& limits) {
  switch (prop.kind) {
    case PropertySpec::Kind::kContainsEdge:
      return g.num_edges() > 0;
    case PropertySpec::Kind::kContainsPattern:
      return contains_copy(g, *prop.pattern, prop.mode, limits.enumeration_cap);
    case PropertySpec::Kind::kFormula:
      return evaluate(g, *prop.formula, {}, limits.eval_budget);
    case PropertySpec::Kind::kThm9Sentence:
      return thm9_property_holds(g, static_cast<int>(prop.a1), static_cast<int>(prop.a2),
                                 static_cast<int>(prop.a3));
  }
  return false;
}

EstimateReport summarize(const std::vector<TrialRecord>& records, std::size_t n,
                         const std::optional<Rational>& alpha, double p, const std::string& digest) {
  EstimateReport r;
  r.n = n;
  r.alpha = alpha;
  r.p = p;
  r.trials = records.size();
  for (const TrialRecord& t : records) {
    if (t.budget_exceeded) {
      ++r.budget_exceeded;
    } else if (*t.outcome) {
      ++r.successes;
    }
  }
  std::uint64_t evaluated = r.trials - r.budget_exceeded;
  r.estimate = evaluated == 0 ? 0.0 : static_cast<double>(r.successes) / static_cast<double>(evaluated);
  Interval95 ci = wilson_interval(r.successes, evaluated);
  r.ci_lo = ci.lo;
  r.ci_hi = ci.hi;
  r.config_digest = digest;
  return r;
}

std::string hex_sha256(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

CountSummary summarize_counts(const std::vector<std::uint64_t>& counts, double theory_lambda,
                              bool fitted) {
  CountSummary s;
  std::uint64_t top = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  s.histogram.assign(top + 1, 0);
  double sum = 0.0;
  for (std::uint64_t c : counts) {
    ++s.histogram[c];
    sum += static_cast<double>(c);
  }
  const double t = static_cast<double>(counts.size());
  s.mean = counts.empty() ? 0.0 : sum / t;
  double sq = 0.0;
  for (std::uint64_t c : counts) sq += (static_cast<double>(c) - s.mean) * (static_cast<double>(c) - s.mean);
  s.variance = counts.size() > 1 ? sq / (t - 1.0) : 0.0;
  s.lambda = fitted ? s.mean : theory_lambda;
  s.tv = tv_distance_poisson(s.histogram, s.lambda);
  return s;
}

std::optional<double> pearson(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  const double t = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += static_cast<double>(a[i]);
    mb += static_cast<double>(b[i]);
  }
  ma /= t;
  mb /= t;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double da = static_cast<double>(a[i]) - ma, db = static_cast<double>(b[i]) - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

std::ofstream open_output(const std::filesystem::path& path, bool append) {
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

PropertySpec PropertySpec::contains_edge() { return {}; }

PropertySpec PropertySpec::contains_pattern(Hypergraph pattern, CopyMode mode) {
  PropertySpec p;
  p.kind = Kind::kContainsPattern;
  p.pattern = std::move(pattern);
  p.mode = mode;
  return p;
}

PropertySpec PropertySpec::sentence(Formula formula) {
  if (!free_variables(formula).empty()) throw InvalidInput("property formula must be a sentence");
  PropertySpec p;
  p.kind = Kind::kFormula;
  p.formula = std::move(formula);
  return p;
}

PropertySpec PropertySpec::thm9_sentence(long long a1, long long a2, long long a3) {
  if (a1 < 1 || a2 < 1 || a3 < 1) throw DomainError("thm9 sentence parameters must be positive");
  PropertySpec p;
  p.kind = Kind::kThm9Sentence;
  p.a1 = a1;
  p.a2 = a2;
  p.a3 = a3;
  return p;
}

nlohmann::json PropertySpec::to_json() const {
  switch (kind) {
    case Kind::kContainsEdge:
      return {{"builtin", "contains-edge"}};
    case Kind::kContainsPattern:
      return {{"pattern", hypergraph_to_json(*pattern)}, {"induced", mode == CopyMode::kInduced}};
    case Kind::kFormula:
      return {{"formula", print(*formula)}};
    case Kind::kThm9Sentence:
      return {{"builtin", "thm9-sentence"}, {"a", {a1, a2, a3}}};
  }
  return {};
}

PropertySpec PropertySpec::from_json(const nlohmann::json& doc, int s) {
  if (!doc.is_object()) throw ParseError("$.property: expected an object");
  if (doc.contains("pattern")) {
    bool induced = doc.value("induced", false);
    return contains_pattern(hypergraph_from_json(doc.at("pattern"), "$.property.pattern"),
                            induced ? CopyMode::kInduced : CopyMode::kSubgraph);
  }
  if (doc.contains("formula")) {
    return sentence(parse_formula(doc.at("formula").get<std::string>(), s));
  }
  std::string id = doc.value("builtin", "");
  if (id == "contains-edge") return contains_edge();
  if (id == "thm9-sentence") {
    const auto& a = doc.at("a");
    if (!a.is_array() || a.size() != 3) throw ParseError("$.property.a: expected [a1, a2, a3]");
    return thm9_sentence(a[0].get<long long>(), a[1].get<long long>(), a[2].get<long long>());
  }
  throw ParseError("$.property: unknown property '" + id + "'");
}

void ExperimentConfig::validate() const {
  if (s < 2) throw InvalidInput("uniformity must be at least 2");
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  if (n_values.empty()) throw InvalidInput("n-list is empty");
  if (alphas.empty() == !p.has_value()) throw InvalidInput("give either an alpha grid or p, not both");
  for (const Rational& a : alphas) {
    if (a.sign() <= 0) throw InvalidInput("alpha must be positive, got " + a.str());
  }
  if (p && !(*p >= 0.0 && *p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  for (std::size_t n : n_values) {
    if (n < static_cast<std::size_t>(s)) throw InvalidInput("n must be at least s");
  }
  if (property.kind == PropertySpec::Kind::kContainsPattern) {
    if (!property.pattern || property.pattern->s() != s) {
      throw InvalidInput("pattern uniformity does not match s");
    }
  }
  if (property.kind == PropertySpec::Kind::kFormula && !property.formula) {
    throw InvalidInput("formula property without a formula");
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json alpha_list = nlohmann::json::array();
  for (const Rational& a : alphas) alpha_list.push_back(a.str());
  nlohmann::json doc = {{"s", s},
                        {"n", n_values},
                        {"alpha", alpha_list},
                        {"property", property.to_json()},
                        {"trials", trials},
                        {"seed", seed},
                        {"coupled", coupled}};
  doc["p"] = p ? nlohmann::json(*p) : nlohmann::json(nullptr);
  return doc;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  ExperimentConfig cfg;
  try {
    cfg.s = doc.at("s").get<int>();
    cfg.n_values = doc.at("n").get<std::vector<std::size_t>>();
    for (const auto& a : doc.value("alpha", nlohmann::json::array())) {
      cfg.alphas.push_back(Rational::parse(a.get<std::string>()));
    }
    if (doc.contains("p") && !doc.at("p").is_null()) cfg.p = doc.at("p").get<double>();
    cfg.property = PropertySpec::from_json(doc.at("property"), cfg.s);
    cfg.trials = doc.at("trials").get<std::uint64_t>();
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.coupled = doc.value("coupled", true);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string config_digest(const ExperimentConfig& cfg) { return hex_sha256(cfg.to_json().dump()); }

nlohmann::json to_json(const TrialRecord& r) {
  nlohmann::json doc = {{"n", r.n}, {"p", r.p}, {"trial_index", r.trial_index},
                        {"budget_exceeded", r.budget_exceeded}};
  doc["alpha"] = r.alpha ? nlohmann::json(r.alpha->str()) : nlohmann::json(nullptr);
  if (r.outcome) doc["outcome"] = *r.outcome;
  if (r.count) doc["count"] = *r.count;
  if (r.elapsed) doc["elapsed"] = *r.elapsed;
  return doc;
}

TrialRecord trial_record_from_json(const nlohmann::json& doc) {
  TrialRecord r;
  try {
    r.n = doc.at("n").get<std::size_t>();
    r.p = doc.at("p").get<double>();
    r.trial_index = doc.at("trial_index").get<std::uint64_t>();
    r.budget_exceeded = doc.value("budget_exceeded", false);
    if (doc.contains("alpha") && !doc.at("alpha").is_null()) {
      r.alpha = Rational::parse(doc.at("alpha").get<std::string>());
    }
    if (doc.contains("outcome")) r.outcome = doc.at("outcome").get<bool>();
    if (doc.contains("count")) r.count = doc.at("count").get<std::uint64_t>();
    if (doc.contains("elapsed")) r.elapsed = doc.at("elapsed").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("trial record: ") + e.what());
  }
  return r;
}

Interval95 wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double k = static_cast<double>(successes);
  const double z2 = kZ95 * kZ95;
  const double center = (k + z2 / 2.0) / (n + z2);
  const double half = kZ95 / (n + z2) * std::sqrt(k * (n - k) / n + z2 / 4.0);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<TrialRecord> run_cell(const ExperimentConfig& cfg, std::size_t n,
                                  const std::optional<Rational>& alpha, std::uint64_t cell) {
  const std::uint64_t seed = cfg.coupled ? cfg.seed : splitmix(cfg.seed ^ splitmix(cell));
  ModelParams params;
  params.s = cfg.s;
  params.n = n;
  if (alpha) {
    params.alpha = *alpha;
  } else {
    params.p = *cfg.p;
  }
  params.seed = seed;
  const double p = params.edge_probability();

  std::vector<TrialRecord> records(cfg.trials);
  parallel_for(cfg.trials, cfg.jobs, [&](std::uint64_t i) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord& r = records[i];
    r.n = n;
    r.alpha = alpha;
    r.p = p;
    r.trial_index = i;
    try {
      ModelParams trial = params;
      trial.trial_index = i;
      Hypergraph g = sample(trial, cfg.limits);
      r.outcome = check_property(g, cfg.property, cfg.limits);
    } catch (const BudgetExceeded&) {
      r.budget_exceeded = true;
    }
    if (cfg.record_timing) {
      r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  });
  return records;
}

std::vector<EstimateReport> sweep_alpha(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::string digest = config_digest(cfg);
  std::vector<std::optional<Rational>> grid;
  if (cfg.p) {
    grid.emplace_back();
  } else {
    grid.assign(cfg.alphas.begin(), cfg.alphas.end());
  }
  std::vector<EstimateReport> reports;
  std::vector<TrialRecord> all;
  std::uint64_t cell = 0;
  for (std::size_t n : cfg.n_values) {
    for (const auto& alpha : grid) {
      std::vector<TrialRecord> records = run_cell(cfg, n, alpha, cell++);
      reports.push_back(summarize(records, n, alpha, records.empty() ? 0.0 : records.front().p, digest));
      if (cfg.output) all.insert(all.end(), records.begin(), records.end());
    }
  }
  if (cfg.output) save_records(*cfg.output, digest, all, true);
  return reports;
}

EstimateReport estimate_probability(const ExperimentConfig& cfg) {
  if (cfg.n_values.size() != 1 || cfg.alphas.size() + (cfg.p ? 1 : 0) != 1) {
    throw InvalidInput("estimate_probability needs exactly one n and one alpha or p");
  }
  return sweep_alpha(cfg).front();
}

double poisson_pmf(std::uint64_t k, double lambda) {
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(k) * std::log(lambda) - lambda -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

double tv_distance_poisson(const std::vector<std::uint64_t>& histogram, double lambda) {
  std::uint64_t total = 0;
  for (std::uint64_t h : histogram) total += h;
  if (total == 0) throw InvalidInput("empty histogram");
  double diff = 0.0, covered = 0.0;
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    double pk = poisson_pmf(k, lambda);
    covered += pk;
    diff += std::abs(static_cast<double>(histogram[k]) / static_cast<double>(total) - pk);
  }
  return 0.5 * (diff + std::max(0.0, 1.0 - covered));
}

CopyCountReport copy_count_distribution(const std::vector<Hypergraph>& patterns, std::size_t n,
                                        const CountOptions& options) {
  if (patterns.empty()) throw InvalidInput("no patterns given");
  if (options.trials == 0) throw InvalidInput("trials must be at least 1");
  const int s = patterns.front().s();
  const Rational rho = density(patterns.front());
  std::vector<double> lambdas;
  for (const Hypergraph& pattern : patterns) {
    if (pattern.s() != s) throw InvalidInput("patterns differ in uniformity");
    if (pattern.num_edges() == 0) throw HypothesisViolated("pattern has no edges");
    if (!is_strictly_balanced(pattern)) {
      throw HypothesisViolated("pattern " + to_string(pattern) + " is not strictly balanced");
    }
    if (density(pattern) != rho) throw HypothesisViolated("patterns differ in density");
    lambdas.push_back(1.0 / static_cast<double>(automorphism_count(pattern, options.limits.enumeration_cap)));
  }

  CopyCountReport report;
  report.n = n;
  report.alpha = rho.reciprocal();
  ModelParams params;
  params.s = s;
  params.n = n;
  if (options.p) {
    params.p = *options.p;
  } else {
    params.alpha = report.alpha;
  }
  params.seed = options.seed;
  report.p = params.edge_probability();

  report.counts.assign(patterns.size(), std::vector<std::uint64_t>(options.trials));
  parallel_for(options.trials, options.jobs, [&](std::uint64_t i) {
    ModelParams trial = params;
    trial.trial_index = i;
    Hypergraph g = sample(trial, options.limits);
    for (std::size_t j = 0; j < patterns.size(); ++j) {
      report.counts[j][i] = count_copies(g, patterns[j], CopyMode::kSubgraph, options.limits.enumeration_cap);
    }
  });
  for (std::size_t j = 0; j < patterns.size(); ++j) {
    report.patterns.push_back(summarize_counts(report.counts[j], lambdas[j], options.fitted_lambda));
  }
  if (patterns.size() >= 2) report.correlation = pearson(report.counts[0], report.counts[1]);
  return report;
}

std::uint64_t count_unextendable_copies(const Hypergraph& host, const RootedPair& pair,
                                        const Limits& limits) {
  if (pair.extra_vertices() == 0) return 0;
  if (pair.g.num_vertices() > limits.enumeration_cap) {
    throw CapExceeded("v(G) = " + std::to_string(pair.g.num_vertices()) + " exceeds the enumeration cap");
  }
  const Hypergraph h = pair.h();
  // Copy of H (image vertex set plus image edges) -> some embedding extends to G.
  std::map<std::vector<Vertex>, bool> copies;
  for_each_embedding(h, host, {}, [&](const VertexMap& phi) {
    std::vector<Vertex> key(phi.begin(), phi.end());
    std::sort(key.begin(), key.end());
    std::vector<Edge> images;
    for (const Edge& e : h.edges()) {
      Edge img;
      for (Vertex v : e) img.push_back(phi[v]);
      std::sort(img.begin(), img.end());
      images.push_back(std::move(img));
    }
    std::sort(images.begin(), images.end());
    for (const Edge& e : images) key.insert(key.end(), e.begin(), e.end());
    bool& extendable = copies[key];
    if (extendable) return true;
    EmbeddingQuery query;
    for (Vertex v = 0; v < pair.roots; ++v) query.fixed.emplace_back(v, phi[v]);
    extendable = for_each_embedding(pair.g, host, query, [](const VertexMap&) { return false; }) > 0;
    return true;
  });
  std::uint64_t unextendable = 0;
  for (const auto& [key, extendable] : copies) unextendable += extendable ? 0 : 1;
  return unextendable;
}

UnextendableReport unextendable_copy_count(const RootedPair& pair, std::size_t n,
                                           const CountOptions& options) {
  if (options.trials == 0) throw InvalidInput("trials must be at least 1");
  UnextendableReport report;
  report.n = n;
  const Hypergraph h = pair.h();
  if (pair.extra_vertices() > 0) {
    report.prop1 = prop1_lambda(pair, options.limits);
    report.alpha = report.prop1->inverse_alpha.reciprocal();
  } else if (h.num_edges() > 0) {
    report.alpha = density(h).reciprocal();
  } else if (!options.p) {
    throw InvalidInput("edgeless H needs an explicit p");
  }
  ModelParams params;
  params.s = pair.g.s();
  params.n = n;
  if (options.p) {
    params.p = *options.p;
  } else {
    params.alpha = report.alpha;
  }
  params.seed = options.seed;
  report.p = params.edge_probability();

  report.counts.assign(options.trials, 0);
  if (pair.extra_vertices() > 0) {
    parallel_for(options.trials, options.jobs, [&](std::uint64_t i) {
      ModelParams trial = params;
      trial.trial_index = i;
      report.counts[i] = count_unextendable_copies(sample(trial, options.limits), pair, options.limits);
    });
  }
  report.summary = summarize_counts(report.counts, report.prop1 ? report.prop1->lambda : 0.0,
                                    options.fitted_lambda);
  return report;
}

void save_records(const std::filesystem::path& path, const std::string& digest,
                  const std::vector<TrialRecord>& records, bool append) {
  std::ofstream out = open_output(path, append);
  out << nlohmann::json{{"schema", kRecordSchema}, {"config_digest", digest}}.dump() << '\n';
  for (const TrialRecord& r : records) out << to_json(r).dump() << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

RecordLog load_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  RecordLog log;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = parse_json_text(line);
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what(), line_no, 1);
    }
    if (doc.contains("schema")) {
      if (doc.at("schema") != kRecordSchema) {
        throw ParseError(path.string() + ": unknown schema", line_no, 1);
      }
      log.digests.push_back(doc.at("config_digest").get<std::string>());
    } else {
      log.records.push_back(trial_record_from_json(doc));
    }
  }
  return log;
}

const char* const kSummaryCsvHeader = "n,alpha,p,trials,successes,estimate,ci_lo,ci_hi,budget_exceeded";

std::string summary_csv(const std::vector<EstimateReport>& reports, const std::string& digest,
                        int digits) {
  std::string out = "# config_digest: " + digest + "\n" + kSummaryCsvHeader + "\n";
  for (const EstimateReport& r : reports) {
    out += std::to_string(r.n) + "," + (r.alpha ? r.alpha->str() : "") + "," + format_double(r.p, digits) + "," +
           std::to_string(r.trials) + "," + std::to_string(r.successes) + "," +
           format_double(r.estimate, digits) + "," + format_double(r.ci_lo, digits) + "," +
           format_double(r.ci_hi, digits) +
           "," + std::to_string(r.budget_exceeded) + "\n";
  }
  return out;
}

void save_summary_csv(const std::filesystem::path& path, const std::vector<EstimateReport>& reports,
                      const std::string& digest) {
  std::ofstream out = open_output(path, false);
  out << summary_csv(reports, digest);
  if (!out) throw Error("write failed for " + path.string());
}

std::vector<EstimateReport> load_summary_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line, digest;
  std::vector<EstimateReport> reports;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("# config_digest: ", 0) == 0) {
      digest = line.substr(17);
      continue;
    }
    if (!header_seen) {
      if (line != kSummaryCsvHeader) throw ParseError(path.string() + ": unexpected CSV header", line_no, 1);
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 9) throw ParseError(path.string() + ": expected 9 columns", line_no, 1);
    try {
      EstimateReport r;
      r.n = std::stoull(cells[0]);
      if (!cells[1].empty()) r.alpha = Rational::parse(cells[1]);
      r.p = std::stod(cells[2]);
      r.trials = std::stoull(cells[3]);
      r.successes = std::stoull(cells[4]);
      r.estimate = std::stod(cells[5]);
      r.ci_lo = std::stod(cells[6]);
      r.ci_hi = std::stod(cells[7]);
      r.budget_exceeded = std::stoull(cells[8]);
      r.config_digest = digest;
      reports.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError(path.string() + ": malformed number", line_no, 1);
    }
  }
  return reports;
}

}  // namespace hyperspectra
