#include "hyperspectra/cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperspectra/bounds.hpp"
#include "hyperspectra/efgame.hpp"
#include "hyperspectra/errors.hpp"
#include "hyperspectra/explab.hpp"
#include "hyperspectra/extlab.hpp"
#include "hyperspectra/folio.hpp"
#include "hyperspectra/hypercore.hpp"
#include "hyperspectra/io.hpp"
#include "hyperspectra/sampler.hpp"

namespace hyperspectra {

namespace {

using nlohmann::json;

// Bad flag values found after CLI11 accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Result {
  json doc;
  std::optional<std::string> csv = std::nullopt;
  std::optional<std::string> text = std::nullopt;
};

// Floats are reported with 12 significant digits.
json num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return json(std::stod(buf));
}

std::string num_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Rational parse_rational_flag(const std::string& text, const std::string& flag, bool* was_decimal) {
  try {
    return Rational::parse(text, was_decimal);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

json schema_doc(const std::string& name) { return {{"schema", "hyperspectra." + name + "/1"}}; }

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back(e);
  return out;
}

RootedPair load_pair(const std::string& path) {
  try {
    return pair_from_json(parse_json_text(read_text_file(path)));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Formula load_formula(const std::string& path, int s) { return parse_formula(read_text_file(path), s); }

std::string render_text(const json& doc) {
  std::string out;
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema") continue;
    out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  return out;
}

std::string histogram_csv(const std::vector<std::pair<std::string, const CountSummary*>>& rows) {
  std::string out = "pattern,k,count,empirical,poisson\n";
  for (const auto& [name, summary] : rows) {
    std::uint64_t total = 0;
    for (std::uint64_t h : summary->histogram) total += h;
    for (std::size_t k = 0; k < summary->histogram.size(); ++k) {
      out += name + "," + std::to_string(k) + "," + std::to_string(summary->histogram[k]) + "," +
             num_text(static_cast<double>(summary->histogram[k]) / static_cast<double>(total)) + "," +
             num_text(poisson_pmf(k, summary->lambda)) + "\n";
    }
  }
  return out;
}

json summary_json(const CountSummary& s) {
  return {{"histogram", s.histogram}, {"mean", num(s.mean)}, {"variance", num(s.variance)},
          {"lambda", num(s.lambda)},  {"tv", num(s.tv)}};
}

json schemas() {
  json hypergraph = {{"s", "int"}, {"n", "int"}, {"edges", "[[int, ...], ...] ascending, no repeats"}};
  return {
      {"schema", "hyperspectra.schemas/1"},
      {"inputs",
       {{"hypergraph", hypergraph},
        {"pair", {{"g", "hypergraph"}, {"roots", "int, vertices 0..roots-1 of g"},
                  {"h_edges", "optional [[int, ...], ...], default: edges induced on the roots"}}},
        {"formula", "s-expression: (exists x ...), (forall x ...), (and ...), (or ...), (not f), "
                    "(implies f g), (N v1 .. vs), (= a b); ';' comments"},
        {"experiment_config", {{"s", "int"}, {"n", "[int, ...]"}, {"alpha", "[\"p/q\", ...]"},
                               {"p", "number or null"}, {"property", "property spec"},
                               {"trials", "int"}, {"seed", "int"}, {"coupled", "bool"}}},
        {"property_spec", json::array({json{{"builtin", "contains-edge"}},
                                       json{{"builtin", "thm9-sentence"}, {"a", "[a1, a2, a3]"}},
                                       json{{"pattern", "hypergraph"}, {"induced", "bool"}},
                                       json{{"formula", "s-expression sentence"}}})}}},
      {"outputs",
       {{"hyperspectra.sample/1", {{"s", "int"}, {"n", "int"}, {"p", "number"}, {"edges", "[[int]]"}}},
        {"hyperspectra.density/1", {{"rho", "p/q"}, {"rho_max", "p/q"}, {"witness", "[int]"}}},
        {"hyperspectra.balance/1", {{"strictly_balanced", "bool"}, {"rho", "p/q"}, {"rho_max", "p/q"}}},
        {"hyperspectra.classify-pair/1", {{"kind", "safe|rigid|neutral|none"}, {"alpha", "p/q"},
                                          {"f_alpha", "p/q"}, {"witness", "[int]"},
                                          {"witness_value", "p/q"}}},
        {"hyperspectra.extend/1", {{"count", "int"}, {"extensions", "[[int]]"},
                                   {"maximal_count", "int, with --maximal-r"}}},
        {"hyperspectra.decompose/1", {{"member", "bool"}, {"start", "int"},
                                      {"steps", "[{shape, vertices, new_edges}]"}}},
        {"hyperspectra.game/1", {{"winner", "duplicator|spoiler"}, {"k", "int"}}},
        {"hyperspectra.eval/1", {{"value", "bool"}, {"depth", "int"}}},
        {"hyperspectra.bounds/1", {{"theorem", "int"}, {"parameters", "{name: int}"},
                                   {"values", "{name: p/q or int string}"}, {"meaning", "string"},
                                   {"witness", "optional hypergraph"}}},
        {"hyperspectra.sweep/1", {{"config_digest", "sha256 hex"}, {"config", "experiment_config"},
                                  {"cells", "[{n, alpha, p, trials, successes, estimate, ci_lo, "
                                            "ci_hi, budget_exceeded}]"}}},
        {"hyperspectra.poisson/1", {{"n", "int"}, {"p", "number"}, {"alpha", "p/q"},
                                    {"patterns", "[{histogram, mean, variance, lambda, tv}]"},
                                    {"correlation", "number or null"}}},
        {"hyperspectra.count-copies/1", {{"copies", "int"}, {"induced", "bool"}}},
        {"hyperspectra.unextendable/1", {{"n", "int"}, {"p", "number"}, {"alpha", "p/q"},
                                         {"a_h", "int"}, {"a1", "int"}, {"a2", "int"},
                                         {"histogram", "[int]"}, {"mean", "number"},
                                         {"lambda", "number"}, {"tv", "number"}}},
        {"hyperspectra.version/1", {{"version", "string"}}}}},
      {"csv",
       {{"sweep", {{"header_comment", "# config_digest: <sha256 hex>"}, {"columns", kSummaryCsvHeader}}},
        {"poisson", {{"columns", "pattern,k,count,empirical,poisson"}}},
        {"unextendable", {{"columns", "pattern,k,count,empirical,poisson"}}}}},
      {"jsonl",
       {{"header", {{"schema", "hyperspectra.trials/1"}, {"config_digest", "sha256 hex"}}},
        {"record", {{"n", "int"}, {"alpha", "p/q or null"}, {"p", "number"}, {"trial_index", "int"},
                    {"outcome", "optional bool"}, {"count", "optional int"},
                    {"budget_exceeded", "bool"}, {"elapsed", "optional seconds"}}}}}};
}

struct Flags {
  // Global.
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::string budget;
  unsigned jobs = 1;

  std::string in, pair, host, g1, g2, pattern_path, formula_path, expr, config, records;
  std::vector<std::string> patterns, assign, alpha_list;
  std::string alpha, p;
  int s = 0, k = 0, m = 0, theorem = 0;
  std::size_t n = 0, trial = 0, maximal_r = 0;
  std::vector<std::size_t> n_list;
  std::vector<unsigned> roots;
  std::vector<long long> thm9;
  std::optional<long long> aux_a, aux_j, aux_m;
  std::uint64_t trials = 1000;
  std::string property;
  bool induced = false, no_symmetry = false, no_coupling = false, timing = false, fitted = false;
};

double parse_probability(const std::string& text) {
  bool was_decimal = false;
  Rational r = parse_rational_flag(text, "--p", &was_decimal);
  if (r.sign() < 0 || r > Rational(1)) throw UsageError("--p must lie in [0, 1]");
  return r.to_double();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Exact and Monte Carlo tools for zero-one laws of random s-uniform hypergraphs",
               args.empty() ? "hyperspectra" : args.front()};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  app.add_option("--seed", f.seed, "Base seed for every random draw");
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", f.out, "Write the result here instead of stdout");
  app.add_option("--budget", f.budget,
                 "Caps: N (enumeration cap) or key=value list with keys enum_cap, pair_cap, "
                 "extension_cap, decomposition_cap, eval, game, sample");
  app.add_option("--jobs", f.jobs, "Worker threads for sweeps and game search")->check(CLI::PositiveNumber);

  std::map<std::string, std::function<Result(const Limits&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help) {
    return app.add_subcommand(name, help);
  };

  auto* sample_cmd = add("sample", "Draw one G^s(n, p) (or p = n^-alpha)");
  sample_cmd->add_option("--s", f.s, "Uniformity")->required();
  sample_cmd->add_option("--n", f.n, "Vertices")->required();
  auto* sample_p = sample_cmd->add_option("--p", f.p, "Edge probability");
  sample_cmd->add_option("--alpha", f.alpha, "Exponent, p = n^-alpha (p/q or decimal)")->excludes(sample_p);
  sample_cmd->add_option("--trial", f.trial, "Trial index within the seed's stream");
  handlers["sample"] = [&](const Limits& limits) {
    ModelParams params;
    params.s = f.s;
    params.n = f.n;
    params.seed = f.seed;
    params.trial_index = f.trial;
    bool was_decimal = false;
    if (!f.alpha.empty()) {
      params.alpha = parse_rational_flag(f.alpha, "--alpha", &was_decimal);
    } else if (!f.p.empty()) {
      params.p = parse_probability(f.p);
    } else {
      throw UsageError("sample needs --p or --alpha");
    }
    Hypergraph g = sample(params, limits);
    json doc = schema_doc("sample");
    doc.update(hypergraph_to_json(g));
    doc["p"] = num(params.edge_probability());
    if (params.alpha) {
      doc["alpha"] = params.alpha->str();
      doc["alpha_from_decimal"] = was_decimal;
    }
    return Result{doc, std::nullopt, to_string(g) + "\n"};
  };

  auto* density_cmd = add("density", "Density and maximum subhypergraph density");
  density_cmd->add_option("--in", f.in, "Hypergraph JSON file")->required();
  handlers["density"] = [&](const Limits&) {
    Hypergraph g = load_hypergraph(f.in);
    MaxDensity md = max_density(g);
    json doc = schema_doc("density");
    doc["rho"] = density(g).str();
    doc["rho_max"] = md.value.str();
    doc["witness"] = md.witness;
    return Result{doc};
  };

  auto* balance_cmd = add("balance", "Strict balance check");
  balance_cmd->add_option("--in", f.in, "Hypergraph JSON file")->required();
  handlers["balance"] = [&](const Limits&) {
    Hypergraph g = load_hypergraph(f.in);
    json doc = schema_doc("balance");
    doc["strictly_balanced"] = is_strictly_balanced(g);
    doc["rho"] = density(g).str();
    doc["rho_max"] = max_density(g).value.str();
    return Result{doc};
  };

  auto* classify_cmd = add("classify-pair", "Classify a rooted pair as alpha-safe, rigid or neutral");
  classify_cmd->add_option("--pair", f.pair, "Pair JSON file")->required();
  classify_cmd->add_option("--alpha", f.alpha, "alpha (p/q or decimal)")->required();
  handlers["classify-pair"] = [&](const Limits& limits) {
    bool was_decimal = false;
    Rational alpha = parse_rational_flag(f.alpha, "--alpha", &was_decimal);
    RootedPair pair = load_pair(f.pair);
    PairClass c = classify_pair(pair, alpha, limits);
    json doc = schema_doc("classify-pair");
    doc["kind"] = to_string(c.kind);
    doc["alpha"] = alpha.str();
    doc["alpha_from_decimal"] = was_decimal;
    doc["f_alpha"] = f_alpha(pair, alpha).str();
    doc["witness"] = c.witness;
    doc["witness_value"] = c.witness_value.str();
    return Result{doc};
  };

  auto* extend_cmd = add("extend", "Strict (G,H)-extensions of a root tuple in a host");
  extend_cmd->add_option("--host", f.host, "Host hypergraph JSON file")->required();
  extend_cmd->add_option("--pair", f.pair, "Pair JSON file")->required();
  extend_cmd->add_option("--roots", f.roots, "Host vertices for x_1..x_l, comma separated")
      ->required()
      ->delimiter(',');
  auto* max_r = extend_cmd->add_option("--maximal-r", f.maximal_r,
                                       "Also count the (K,T)-maximal ones over K_r (needs --alpha)");
  extend_cmd->add_option("--alpha", f.alpha, "alpha for K_r")->needs(max_r);
  handlers["extend"] = [&](const Limits& limits) {
    Hypergraph host = load_hypergraph(f.host);
    RootedPair pair = load_pair(f.pair);
    std::vector<Vertex> roots(f.roots.begin(), f.roots.end());
    std::vector<VertexMap> ext = strict_extensions(host, roots, pair, limits);
    json doc = schema_doc("extend");
    doc["count"] = ext.size();
    doc["extensions"] = ext;
    if (f.maximal_r > 0) {
      if (f.alpha.empty()) throw UsageError("--maximal-r needs --alpha");
      Rational alpha = parse_rational_flag(f.alpha, "--alpha", nullptr);
      doc["maximal_count"] = count_maximal_extensions(host, roots, pair, f.maximal_r, alpha, limits);
      doc["alpha"] = alpha.str();
    }
    return Result{doc};
  };

  auto* decompose_cmd = add("decompose", "Cyclic m-decomposition (membership in H_m)");
  decompose_cmd->add_option("--in", f.in, "Hypergraph JSON file")->required();
  decompose_cmd->add_option("--m", f.m, "m >= 1")->required();
  handlers["decompose"] = [&](const Limits& limits) {
    Hypergraph g = load_hypergraph(f.in);
    MDecomposition d = m_decomposition(g, f.m, limits);
    json doc = schema_doc("decompose");
    doc["member"] = d.member;
    doc["m"] = f.m;
    json steps = json::array();
    if (d.member) {
      doc["start"] = d.start;
      for (const DecompositionStep& step : d.steps) {
        steps.push_back({{"shape", static_cast<int>(step.shape)},
                         {"vertices", step.vertices},
                         {"new_edges", edges_json(step.new_edges)}});
      }
    }
    doc["steps"] = steps;
    return Result{doc};
  };

  auto* game_cmd = add("game", "Solve the k-round Ehrenfeucht game");
  game_cmd->add_option("--g1", f.g1, "First board")->required();
  game_cmd->add_option("--g2", f.g2, "Second board")->required();
  game_cmd->add_option("--k", f.k, "Rounds")->required()->check(CLI::NonNegativeNumber);
  game_cmd->add_flag("--no-symmetry", f.no_symmetry, "Do not reduce positions by automorphisms");
  handlers["game"] = [&](const Limits& limits) {
    Hypergraph a = load_hypergraph(f.g1), b = load_hypergraph(f.g2);
    SolveOptions options;
    options.jobs = f.jobs;
    options.use_symmetry = !f.no_symmetry;
    json doc = schema_doc("game");
    doc["winner"] = to_string(solve(a, b, f.k, limits, options));
    doc["k"] = f.k;
    return Result{doc};
  };

  auto* eval_cmd = add("eval", "Evaluate a first-order formula on a hypergraph");
  eval_cmd->add_option("--in", f.in, "Hypergraph JSON file")->required();
  auto* formula_file = eval_cmd->add_option("--formula", f.formula_path, "Formula file");
  eval_cmd->add_option("--expr", f.expr, "Formula text")->excludes(formula_file);
  eval_cmd->add_option("--assign", f.assign, "Free variable value, name=vertex (repeatable)");
  handlers["eval"] = [&](const Limits& limits) {
    Hypergraph g = load_hypergraph(f.in);
    if (f.formula_path.empty() && f.expr.empty()) throw UsageError("eval needs --formula or --expr");
    Formula formula = f.expr.empty() ? load_formula(f.formula_path, g.s()) : parse_formula(f.expr, g.s());
    Assignment assignment;
    for (const std::string& item : f.assign) {
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--assign expects name=vertex, got " + item);
      try {
        assignment[item.substr(0, eq)] = static_cast<Vertex>(std::stoul(item.substr(eq + 1)));
      } catch (const std::logic_error&) {
        throw UsageError("--assign expects name=vertex, got " + item);
      }
    }
    json doc = schema_doc("eval");
    doc["value"] = evaluate(g, formula, assignment, limits.eval_budget);
    doc["depth"] = quantifier_depth(formula);
    return Result{doc};
  };

  auto* bounds_cmd = add("bounds", "Closed-form spectrum bounds and constructions");
  bounds_cmd->add_option("--theorem", f.theorem, "1, 2, or 6..11")->required();
  bounds_cmd->add_option("--s", f.s, "Uniformity");
  bounds_cmd->add_option("--k", f.k, "Quantifier depth")->required();
  bounds_cmd->add_option("--a", f.aux_a, "Theorem 9 offset a");
  bounds_cmd->add_option("--j", f.aux_j, "Theorem 10 index j");
  bounds_cmd->add_option("--m", f.aux_m, "Theorem 11 index m");
  bounds_cmd->add_option("--alpha", f.alpha, "alpha for theorem 2 and Q_k membership under theorem 8");
  bounds_cmd->footer(
      "Required flags per theorem:\n"
      "  1: --k\n"
      "  2: --k --alpha (graphs)\n"
      "  6, 7, 8: --s --k (8 also takes --alpha for Q_k membership)\n"
      "  9: --s --k --a\n"
      "  10: --s --k --j\n"
      "  11: --s --k, optional --m");
  handlers["bounds"] = [&](const Limits&) {
    json doc = schema_doc("bounds");
    bool was_decimal = false;
    std::optional<Rational> alpha;
    if (!f.alpha.empty()) alpha = parse_rational_flag(f.alpha, "--alpha", &was_decimal);
    if (f.theorem == 1 || f.theorem == 2) {
      doc["theorem"] = f.theorem;
      doc["parameters"] = {{"k", f.k}};
      if (f.theorem == 1) {
        doc["values"] = {{"threshold", thm1_threshold(f.k).str()}};
        doc["meaning"] = "law-holds-below";
      } else {
        if (!alpha) throw UsageError("theorem 2 needs --alpha");
        doc["values"] = {{"alpha", alpha->str()}, {"status", to_string(thm2_status(f.k, *alpha))}};
        doc["meaning"] = "status";
      }
    } else {
      if (f.s == 0) throw UsageError("theorem " + std::to_string(f.theorem) + " needs --s");
      std::optional<long long> aux;
      if (f.theorem == 9) {
        if (!f.aux_a) throw UsageError("theorem 9 needs --a");
        aux = f.aux_a;
      } else if (f.theorem == 10) {
        if (!f.aux_j) throw UsageError("theorem 10 needs --j");
        aux = f.aux_j;
      } else if (f.theorem == 11) {
        aux = f.aux_m;
      } else if (f.theorem < 6 || f.theorem > 11) {
        throw UsageError("--theorem must be 1, 2 or 6..11");
      }
      doc.update(to_json(bound_report(f.theorem, f.s, f.k, aux)));
      if (f.theorem == 8 && alpha) {
        doc["values"]["alpha"] = alpha->str();
        doc["values"]["in_q_k"] = q_k_membership(*alpha, f.s, f.k) ? "true" : "false";
      }
    }
    if (alpha) doc["alpha_from_decimal"] = was_decimal;
    std::string text = "theorem " + std::to_string(f.theorem) + "\n";
    for (const auto& [key, value] : doc["values"].items()) {
      text += key + " = " + value.get<std::string>() + "\n";
    }
    text += "meaning: " + doc["meaning"].get<std::string>() + "\n";
    return Result{doc, std::nullopt, text};
  };

  auto* sweep_cmd = add("sweep", "Monte Carlo containment estimates over an (n, alpha) grid");
  auto* config_opt = sweep_cmd->add_option("--config", f.config, "Experiment config JSON file");
  sweep_cmd->add_option("--s", f.s, "Uniformity")->excludes(config_opt);
  sweep_cmd->add_option("--n", f.n_list, "Vertex counts, comma separated")->delimiter(',')->excludes(config_opt);
  auto* alpha_grid = sweep_cmd->add_option("--alpha", f.alpha_list, "alpha grid, comma separated")
                         ->delimiter(',')
                         ->excludes(config_opt);
  sweep_cmd->add_option("--p", f.p, "Fixed edge probability")->excludes(alpha_grid)->excludes(config_opt);
  sweep_cmd->add_option("--trials", f.trials, "Trials per cell")->excludes(config_opt);
  auto* pattern_opt = sweep_cmd->add_option("--pattern", f.pattern_path, "Containment of this hypergraph")
                          ->excludes(config_opt);
  auto* formula_opt = sweep_cmd->add_option("--formula", f.formula_path, "Sentence file")
                          ->excludes(config_opt)
                          ->excludes(pattern_opt);
  sweep_cmd->add_option("--property", f.property, "Builtin property: contains-edge | thm9-sentence")
      ->check(CLI::IsMember({"contains-edge", "thm9-sentence"}))
      ->excludes(pattern_opt)
      ->excludes(formula_opt)
      ->excludes(config_opt);
  sweep_cmd->add_option("--thm9", f.thm9, "a1,a2,a3 for thm9-sentence")->delimiter(',')->expected(3);
  sweep_cmd->add_flag("--induced", f.induced, "Induced containment for --pattern");
  sweep_cmd->add_flag("--no-coupling", f.no_coupling, "Independent streams per cell");
  sweep_cmd->add_flag("--timing", f.timing, "Record per-trial elapsed time in the JSONL records");
  sweep_cmd->add_option("--records", f.records, "Append raw trial records (JSONL) here");
  handlers["sweep"] = [&](const Limits& limits) {
    ExperimentConfig cfg;
    if (!f.config.empty()) {
      cfg = ExperimentConfig::from_json(parse_json_text(read_text_file(f.config)));
    } else {
      if (f.s == 0 || f.n_list.empty()) throw UsageError("sweep needs --s and --n (or --config)");
      cfg.s = f.s;
      cfg.n_values = f.n_list;
      for (const std::string& a : f.alpha_list) cfg.alphas.push_back(parse_rational_flag(a, "--alpha", nullptr));
      if (!f.p.empty()) cfg.p = parse_probability(f.p);
      if (cfg.alphas.empty() && !cfg.p) throw UsageError("sweep needs --alpha or --p");
      cfg.trials = f.trials;
      cfg.seed = f.seed;
      cfg.coupled = !f.no_coupling;
      if (!f.pattern_path.empty()) {
        cfg.property = PropertySpec::contains_pattern(load_hypergraph(f.pattern_path),
                                                      f.induced ? CopyMode::kInduced : CopyMode::kSubgraph);
      } else if (!f.formula_path.empty()) {
        cfg.property = PropertySpec::sentence(load_formula(f.formula_path, cfg.s));
      } else if (f.property == "thm9-sentence") {
        if (f.thm9.size() != 3) throw UsageError("thm9-sentence needs --thm9 a1,a2,a3");
        cfg.property = PropertySpec::thm9_sentence(f.thm9[0], f.thm9[1], f.thm9[2]);
      } else if (f.property.empty() || f.property == "contains-edge") {
        cfg.property = PropertySpec::contains_edge();
      }
    }
    cfg.jobs = f.jobs;
    cfg.limits = limits;
    cfg.record_timing = f.timing;
    if (!f.records.empty()) cfg.output = f.records;
    try {
      cfg.validate();
    } catch (const InvalidInput& e) {
      throw UsageError(e.what());
    }
    std::vector<EstimateReport> reports = sweep_alpha(cfg);
    const std::string digest = config_digest(cfg);
    json doc = schema_doc("sweep");
    doc["config_digest"] = digest;
    doc["config"] = cfg.to_json();
    json cells = json::array();
    for (const EstimateReport& r : reports) {
      cells.push_back({{"n", r.n},
                       {"alpha", r.alpha ? json(r.alpha->str()) : json(nullptr)},
                       {"p", num(r.p)},
                       {"trials", r.trials},
                       {"successes", r.successes},
                       {"estimate", num(r.estimate)},
                       {"ci_lo", num(r.ci_lo)},
                       {"ci_hi", num(r.ci_hi)},
                       {"budget_exceeded", r.budget_exceeded}});
    }
    doc["cells"] = cells;
    std::string csv = summary_csv(reports, digest, 12);
    return Result{doc, csv, csv};
  };

  auto* poisson_cmd = add("poisson", "Copy-count histograms against the Poisson limit");
  poisson_cmd->add_option("--pattern", f.patterns, "Strictly balanced pattern file (repeatable)")->required();
  poisson_cmd->add_option("--n", f.n, "Vertices")->required();
  poisson_cmd->add_option("--trials", f.trials, "Trials");
  poisson_cmd->add_option("--p", f.p, "Edge probability (default n^-1/rho)");
  poisson_cmd->add_flag("--fitted", f.fitted, "Compare against the empirical mean instead of 1/|Aut|");
  handlers["poisson"] = [&](const Limits& limits) {
    std::vector<Hypergraph> patterns;
    for (const std::string& path : f.patterns) patterns.push_back(load_hypergraph(path));
    CountOptions options;
    options.trials = f.trials;
    options.seed = f.seed;
    options.jobs = f.jobs;
    options.fitted_lambda = f.fitted;
    options.limits = limits;
    if (!f.p.empty()) options.p = parse_probability(f.p);
    CopyCountReport r = copy_count_distribution(patterns, f.n, options);
    json doc = schema_doc("poisson");
    doc["n"] = r.n;
    doc["p"] = num(r.p);
    doc["alpha"] = r.alpha.str();
    doc["trials"] = f.trials;
    json list = json::array();
    std::vector<std::pair<std::string, const CountSummary*>> rows;
    for (std::size_t i = 0; i < r.patterns.size(); ++i) {
      list.push_back(summary_json(r.patterns[i]));
      rows.emplace_back(std::to_string(i), &r.patterns[i]);
    }
    doc["patterns"] = list;
    doc["correlation"] = r.correlation ? num(*r.correlation) : json(nullptr);
    return Result{doc, histogram_csv(rows)};
  };

  auto* count_cmd = add("count-copies", "Number of copies of a pattern in a host");
  count_cmd->add_option("--host", f.host, "Host hypergraph JSON file")->required();
  count_cmd->add_option("--pattern", f.pattern_path, "Pattern hypergraph JSON file")->required();
  count_cmd->add_flag("--induced", f.induced, "Count induced copies");
  handlers["count-copies"] = [&](const Limits& limits) {
    Hypergraph host = load_hypergraph(f.host), pattern = load_hypergraph(f.pattern_path);
    json doc = schema_doc("count-copies");
    doc["copies"] = count_copies(host, pattern, f.induced ? CopyMode::kInduced : CopyMode::kSubgraph,
                                 limits.enumeration_cap);
    doc["induced"] = f.induced;
    return Result{doc};
  };

  auto* unext_cmd = add("unextendable", "Copies of H not contained in a copy of G");
  unext_cmd->add_option("--pair", f.pair, "Pair JSON file")->required();
  unext_cmd->add_option("--n", f.n, "Vertices")->required();
  unext_cmd->add_option("--trials", f.trials, "Trials");
  unext_cmd->add_option("--p", f.p, "Edge probability (default n^-alpha, alpha = 1/rho(H))");
  handlers["unextendable"] = [&](const Limits& limits) {
    RootedPair pair = load_pair(f.pair);
    CountOptions options;
    options.trials = f.trials;
    options.seed = f.seed;
    options.jobs = f.jobs;
    options.limits = limits;
    if (!f.p.empty()) options.p = parse_probability(f.p);
    UnextendableReport r = unextendable_copy_count(pair, f.n, options);
    json doc = schema_doc("unextendable");
    doc["n"] = r.n;
    doc["p"] = num(r.p);
    doc["alpha"] = r.alpha.str();
    doc["trials"] = f.trials;
    if (r.prop1) {
      doc["a_h"] = r.prop1->a_h;
      doc["a1"] = r.prop1->a1;
      doc["a2"] = r.prop1->a2;
    }
    doc.update(summary_json(r.summary));
    return Result{doc, histogram_csv({{"H", &r.summary}})};
  };

  add("schema-dump", "Print every JSON, CSV and JSONL schema");
  handlers["schema-dump"] = [&](const Limits&) { return Result{schemas()}; };

  add("version", "Print the version");
  handlers["version"] = [&](const Limits&) {
    json doc = schema_doc("version");
    doc["version"] = kVersion;
    return Result{doc, std::nullopt, std::string(kVersion) + "\n"};
  };

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("hyperspectra");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    Limits limits = default_limits();
    if (!f.budget.empty()) {
      try {
        limits = parse_limits(f.budget, limits);
      } catch (const ParseError& e) {
        throw UsageError(std::string("--budget: ") + e.what());
      }
    }
    Result result = handlers.at(name)(limits);
    std::string payload;
    if (f.format == "json") {
      payload = result.doc.dump(2) + "\n";
    } else if (f.format == "csv") {
      if (!result.csv) throw UsageError(name + " has no CSV output");
      payload = *result.csv;
    } else {
      payload = result.text ? *result.text : render_text(result.doc);
    }
    if (f.out.empty()) {
      out << payload;
    } else {
      std::ofstream file(f.out, std::ios::trunc);
      if (!file || !(file << payload)) throw Error("cannot write " + f.out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace hyperspectra
