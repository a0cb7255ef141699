#include "hyperspectra/folio.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

#include "hyperspectra/errors.hpp"

namespace hyperspectra {

Formula Formula::equal(std::string a, std::string b) {
  return Formula(std::make_shared<const Node>(Node{Kind::kEqual, {std::move(a), std::move(b)}, {}}));
}

Formula Formula::edge(std::vector<std::string> vars) {
  if (vars.size() < 2) throw InvalidInput("edge atom needs at least two arguments");
  return Formula(std::make_shared<const Node>(Node{Kind::kEdge, std::move(vars), {}}));
}

Formula Formula::negation(Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::kNot, {}, {std::move(body)}}));
}

Formula Formula::conjunction(std::vector<Formula> parts) {
  if (parts.empty()) throw InvalidInput("and needs at least one operand");
  return Formula(std::make_shared<const Node>(Node{Kind::kAnd, {}, std::move(parts)}));
}

Formula Formula::disjunction(std::vector<Formula> parts) {
  if (parts.empty()) throw InvalidInput("or needs at least one operand");
  return Formula(std::make_shared<const Node>(Node{Kind::kOr, {}, std::move(parts)}));
}

Formula Formula::implication(Formula premise, Formula conclusion) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kImplies, {}, {std::move(premise), std::move(conclusion)}}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::kExists, {std::move(var)}, {std::move(body)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::kForall, {std::move(var)}, {std::move(body)}}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.variables() == b.variables() && a.children() == b.children();
}

namespace {

const char* keyword(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::kEqual: return "=";
    case Formula::Kind::kEdge: return "N";
    case Formula::Kind::kNot: return "not";
    case Formula::Kind::kAnd: return "and";
    case Formula::Kind::kOr: return "or";
    case Formula::Kind::kImplies: return "implies";
    case Formula::Kind::kExists: return "exists";
    case Formula::Kind::kForall: return "forall";
  }
  return "?";
}

void print_to(const Formula& f, std::string& out) {
  out += '(';
  out += keyword(f.kind());
  for (const std::string& v : f.variables()) {
    out += ' ';
    out += v;
  }
  for (const Formula& c : f.children()) {
    out += ' ';
    print_to(c, out);
  }
  out += ')';
}

struct Token {
  enum Type { kOpen, kClose, kAtom, kEnd } type;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    if (pos_ >= text_.size()) return {Token::kEnd, "", line_, column_};
    int line = line_, column = column_;
    char c = text_[pos_];
    if (c == '(' || c == ')') {
      advance();
      return {c == '(' ? Token::kOpen : Token::kClose, std::string(1, c), line, column};
    }
    std::string atom;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      atom += text_[pos_];
      advance();
    }
    return {Token::kAtom, atom, line, column};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_keyword(const std::string& word) {
  static const std::set<std::string> kWords{"exists", "forall", "and", "or", "not", "implies", "N", "="};
  return kWords.count(word) > 0;
}

class Parser {
 public:
  Parser(std::string_view text, int s) : lexer_(text), s_(s) { token_ = lexer_.next(); }

  Formula parse_all() {
    Formula f = parse_formula();
    if (token_.type != Token::kEnd) fail("unexpected text after formula", token_);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const Token& at) {
    throw ParseError(what, at.line, at.column);
  }

  Token take() {
    Token t = token_;
    token_ = lexer_.next();
    return t;
  }

  void expect_close() {
    if (token_.type != Token::kClose) fail("expected ')'", token_);
    take();
  }

  std::string variable() {
    if (token_.type != Token::kAtom) fail("expected a variable name", token_);
    const Token& t = token_;
    bool ok = std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_';
    for (char c : t.text) {
      ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'');
    }
    if (!ok || is_keyword(t.text)) fail("invalid variable name '" + t.text + "'", t);
    return take().text;
  }

  Formula parse_formula() {
    if (token_.type != Token::kOpen) fail("expected '('", token_);
    take();
    if (token_.type != Token::kAtom) fail("expected a connective", token_);
    Token head = take();
    const std::string& op = head.text;
    if (op == "=") {
      std::string a = variable();
      std::string b = variable();
      expect_close();
      return Formula::equal(a, b);
    }
    if (op == "N") {
      std::vector<std::string> vars;
      while (token_.type == Token::kAtom) vars.push_back(variable());
      if (static_cast<int>(vars.size()) != s_) {
        fail("N takes " + std::to_string(s_) + " arguments, got " + std::to_string(vars.size()),
             head);
      }
      expect_close();
      return Formula::edge(vars);
    }
    if (op == "not") {
      Formula body = parse_formula();
      expect_close();
      return Formula::negation(body);
    }
    if (op == "and" || op == "or") {
      std::vector<Formula> parts;
      while (token_.type == Token::kOpen) parts.push_back(parse_formula());
      if (parts.empty()) fail(op + " needs at least one operand", head);
      expect_close();
      return op == "and" ? Formula::conjunction(parts) : Formula::disjunction(parts);
    }
    if (op == "implies") {
      Formula premise = parse_formula();
      Formula conclusion = parse_formula();
      expect_close();
      return Formula::implication(premise, conclusion);
    }
    if (op == "exists" || op == "forall") {
      std::string var = variable();
      Formula body = parse_formula();
      expect_close();
      return op == "exists" ? Formula::exists(var, body) : Formula::forall(var, body);
    }
    fail("unknown connective '" + op + "'", head);
  }

  Lexer lexer_;
  int s_;
  Token token_;
};

void collect_free(const Formula& f, std::multiset<std::string>& bound, std::set<std::string>& out) {
  using K = Formula::Kind;
  if (f.kind() == K::kEqual || f.kind() == K::kEdge) {
    for (const auto& v : f.variables()) {
      if (!bound.count(v)) out.insert(v);
    }
    return;
  }
  if (f.kind() == K::kExists || f.kind() == K::kForall) {
    auto it = bound.insert(f.variables()[0]);
    collect_free(f.children()[0], bound, out);
    bound.erase(it);
    return;
  }
  for (const Formula& c : f.children()) collect_free(c, bound, out);
}

// Formula compiled against variable slots for evaluation.
struct Compiled {
  Formula::Kind kind;
  std::vector<int> slots;
  std::vector<Compiled> children;
};

class Evaluator {
 public:
  Evaluator(const Hypergraph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

  Compiled compile(const Formula& f) {
    Compiled c{f.kind(), {}, {}};
    for (const auto& v : f.variables()) c.slots.push_back(slot(v));
    if (f.kind() == Formula::Kind::kEdge && static_cast<int>(c.slots.size()) != g_.s()) {
      throw InvalidInput("edge atom arity " + std::to_string(c.slots.size()) +
                         " does not match uniformity " + std::to_string(g_.s()));
    }
    for (const Formula& child : f.children()) c.children.push_back(compile(child));
    return c;
  }

  int slot(const std::string& name) {
    auto [it, inserted] = slots_.try_emplace(name, static_cast<int>(values_.size()));
    if (inserted) values_.push_back(0);
    return it->second;
  }

  void bind(int slot, Vertex v) { values_[slot] = v; }

  bool run(const Compiled& c) {
    using K = Formula::Kind;
    if (++visits_ > budget_) throw BudgetExceeded("model checking exceeded its node-visit budget");
    switch (c.kind) {
      case K::kEqual:
        return values_[c.slots[0]] == values_[c.slots[1]];
      case K::kEdge: {
        scratch_.clear();
        for (int s : c.slots) scratch_.push_back(values_[s]);
        std::sort(scratch_.begin(), scratch_.end());
        return g_.has_edge(scratch_);
      }
      case K::kNot:
        return !run(c.children[0]);
      case K::kAnd:
        for (const Compiled& child : c.children) {
          if (!run(child)) return false;
        }
        return true;
      case K::kOr:
        for (const Compiled& child : c.children) {
          if (run(child)) return true;
        }
        return false;
      case K::kImplies:
        return !run(c.children[0]) || run(c.children[1]);
      case K::kExists:
      case K::kForall: {
        const bool want = c.kind == K::kExists;
        const int s = c.slots[0];
        const Vertex saved = values_[s];
        bool result = !want;
        for (Vertex v = 0; v < g_.num_vertices(); ++v) {
          values_[s] = v;
          if (run(c.children[0]) == want) {
            result = want;
            break;
          }
        }
        values_[s] = saved;
        return result;
      }
    }
    return false;
  }

 private:
  const Hypergraph& g_;
  std::uint64_t budget_;
  std::uint64_t visits_ = 0;
  std::unordered_map<std::string, int> slots_;
  std::vector<Vertex> values_;
  std::vector<Vertex> scratch_;
};

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

Formula parse_formula(std::string_view text, int s) {
  if (s < 2) throw DomainError("uniformity must be at least 2");
  return Parser(text, s).parse_all();
}

int quantifier_depth(const Formula& f) {
  int deepest = 0;
  for (const Formula& c : f.children()) deepest = std::max(deepest, quantifier_depth(c));
  const bool quantifier = f.kind() == Formula::Kind::kExists || f.kind() == Formula::Kind::kForall;
  return deepest + (quantifier ? 1 : 0);
}

std::set<std::string> free_variables(const Formula& f) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::size_t formula_size(const Formula& f) {
  std::size_t size = 1;
  for (const Formula& c : f.children()) size += formula_size(c);
  return size;
}

bool evaluate(const Hypergraph& g, const Formula& f, const Assignment& assignment,
              std::uint64_t budget) {
  for (const std::string& v : free_variables(f)) {
    if (!assignment.count(v)) throw InvalidInput("unbound variable '" + v + "'");
  }
  Evaluator evaluator(g, budget);
  Compiled compiled = evaluator.compile(f);
  for (const auto& [name, vertex] : assignment) {
    if (vertex >= g.num_vertices()) throw InvalidInput("assignment of '" + name + "' out of range");
    evaluator.bind(evaluator.slot(name), vertex);
  }
  return evaluator.run(compiled);
}

}  // namespace hyperspectra
