#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hyperspectra/hypergraph.hpp"
#include "hyperspectra/limits.hpp"

namespace hyperspectra {

// First-order formula over the signature {N (s-ary), =} with named variables.
// Immutable; copies share structure. operator== is structural.
class Formula {
 public:
  enum class Kind { kEqual, kEdge, kNot, kAnd, kOr, kImplies, kExists, kForall };

  static Formula equal(std::string a, std::string b);
  static Formula edge(std::vector<std::string> vars);
  static Formula negation(Formula body);
  // And/Or take one or more operands.
  static Formula conjunction(std::vector<Formula> parts);
  static Formula disjunction(std::vector<Formula> parts);
  static Formula implication(Formula premise, Formula conclusion);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  Kind kind() const { return node_->kind; }
  // Atom arguments, or the single bound variable of a quantifier.
  const std::vector<std::string>& variables() const { return node_->vars; }
  const std::vector<Formula>& children() const { return node_->children; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::vector<std::string> vars;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// S-expression text: (exists x (forall y (or (N x y z) (= x y)))). Connectives are
// exists, forall, and, or, not, implies, N and =; ';' starts a comment. Throws
// ParseError with line/column on bad syntax or when N has a number of arguments
// other than s.
Formula parse_formula(std::string_view text, int s);
std::string print(const Formula& f);

int quantifier_depth(const Formula& f);
std::set<std::string> free_variables(const Formula& f);
std::size_t formula_size(const Formula& f);

using Assignment = std::map<std::string, Vertex>;

// Tarskian truth with quantifiers over V(G), short-circuiting connectives and
// quantifiers. Throws InvalidInput for an unbound free variable or an edge atom of
// the wrong arity, and BudgetExceeded after `budget` node visits.
bool evaluate(const Hypergraph& g, const Formula& f, const Assignment& assignment = {},
              std::uint64_t budget = default_limits().eval_budget);

// Distance formulas. Free variables are x1, x2 (and x for the tilde variant, which
// comes first as in D~_i(x, x1, x2)); bound variables are x3, x4, ... in order of
// creation.
Formula build_D(int i, int s);        // dist(x1, x2) <= i
Formula build_D_eq(int i, int s);     // dist(x1, x2) == i
Formula build_Dtilde(int i, int s);   // path of length <= i from x1 to x2 avoiding x
Formula build_B(int i, int s);        // B_i(x1, x2, x3), i >= 2
Formula build_C(int i, int s);        // C_i(x1)
// Closed sentence: some x1, x2 at distance a1 with two midpoints x3 of the
// B_{a1} shape, one satisfying Q and one not, where
// Q(x3) = exists x4 (D=_{a3}(x3, x4) and C_{a2}(x4)).
Formula build_thm9_L(int a1, int a2, int a3, int s);

// Direct evaluation of the build_thm9_L sentence through BFS distances (the tilde
// distance is computed in G with the avoided vertex deleted).
bool thm9_property_holds(const Hypergraph& g, int a1, int a2, int a3);

// For every r in s-1..level, every r-set of vertices and every set A of its
// (s-1)-subsets, some outside vertex z forms an edge with exactly the members of A.
// Throws DomainError when level < s-1 and CapExceeded when C(level, s-1) > 20.
bool has_full_extension_property(const Hypergraph& g, int level);

}  // namespace hyperspectra
