#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperspectra/extlab.hpp"
#include "hyperspectra/hypergraph.hpp"
#include "hyperspectra/rational.hpp"

namespace hyperspectra {

// Zero-one k-law holds for G^s(n, n^-alpha) when 1/alpha exceeds this value.
// Domain: s >= 3, k >= s+1.
Rational thm6_threshold(int s, int k);

// Some alpha with 1/alpha above this value breaks the k-law. Domain: s >= 3, k >= s+2.
Rational thm7_threshold(int s, int k);

// Unordered pairs {A, B} of distinct (s-1)-subsets of {1..k-2}.
std::size_t thm7_pair_count(int s, int k);

struct Thm7Witness {
  Hypergraph k;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  Rational density;
  // Closed-form counts for comparison with the built hypergraph.
  BigInt closed_form_vertices;
  BigInt closed_form_edges;
};

// Closed forms k-2 + |A|C + |A|C(C-1) and |A|C(C(k-2,s-1)-2) + |A|C(C-1)^2, C = C(k-1,s-1).
BigInt thm7_vertex_count(int s, int k);
BigInt thm7_edge_count(int s, int k);

// The witness K. Vertex ids: x_1..x_{k-2} are 0..k-3; then x_{k-1}^{A,B,C} ordered by
// ({A,B}, C); then x_k^{A,B,C,C'} ordered by ({A,B}, C, C'). Pairs {A,B} are listed
// lexicographically with A < B, and subsets of {1..m} lexicographically. Throws
// CapExceeded when the vertex count exceeds max_vertices.
Thm7Witness construct_thm7_K(int s, int k, std::size_t max_vertices = 10000);

struct Interval {
  Rational lo;  // open endpoints
  Rational hi;
};

// (s-1 - 1/2^{k-s+1}, s-1). Domain: s >= 2, k >= s.
Interval thm8_interval(int s, int k);
// alpha in Q_k = { s-1 - 1/(2^{k-s+1} + a/b) : a, b natural, a <= 2^{k-s+1} }.
bool q_k_membership(const Rational& alpha, int s, int k);

// s-1 - 1/(2^{k-s+1} + a). Domain: s >= 3, k >= s+4, 1 <= a <= 2^{k-s-2} + 2^{k-s-3} + 1.
Rational thm9_alpha(int s, int k, long long a);

struct Split {
  long long a1 = 0, a2 = 0, a3 = 0;
};
// Lexicographically least natural (a1, a2, a3) with 2a1 + 2a2 + 1 + a3 = 2^{k-s+1} + a,
// 2 <= a1 <= 2^{k-s}, a2 <= 2^{k-s-4}, a3 <= 2^{k-s-2}, a2 < a1. DomainError when
// none exists.
Split split_a(int s, int k, long long a);

// Loose cycle of 2a1 edges on the x-block, loose cycle of 2a2+1 edges on the
// y-block, and a loose path of a3 edges from x_1 to y_1 through the z-block.
// Vertex ids: x_1.. from 0, then y_1.., then z_1..; a3 = 1 gives the single
// edge {x_1, z_1..z_{s-2}, y_1}.
Hypergraph construct_thm9_K(int s, long long a1, long long a2, long long a3);

struct Thm10Value {
  BigInt m;
  BigInt sigma;  // 4(m^{m+1} - m)/(m - 1)
  Rational alpha;
};
// alpha = 1/C(k-11,s-1) + (k-10)/(C(k-11,s-1) Sigma), m = j(k-10). Domain:
// s >= 2, k-11 >= s-1, j >= 1, m >= 2.
Thm10Value thm10_alpha(int s, int k, long long j);

// max{l : C(l,s-1)(l+2) <= C(k,s)} by direct search. Domain: (s = 2, k >= 5) or
// (s >= 3, k >= s+2).
long long thm11_l(int s, int k);
// floor(sqrt(k(k-1)/2 - 1)) - 1, the closed form quoted for s = 2.
long long thm11_l_closed_form(int k);
// (l+m)/((l-t+m) C(l,s-1)) with l = l(k), t = k-l-2.
Rational thm11_alpha(int s, int k, long long m);

// 1/(k-2), the least point where the graph k-law fails.
Rational thm1_threshold(int k);

enum class LawStatus { kObeys, kFails, kUnknown };
const char* to_string(LawStatus status);
// Graph case, alpha = 1 - 1/(2^{k-1} + beta): obeys when beta has reduced numerator
// above 2^{k-1} or alpha is 1 - 1/2^k or 1 - 1/(2^k - 1); fails when beta is a
// natural number up to 2^{k-1} - 2. Domain: k > 3, 0 < alpha < 1.
LawStatus thm2_status(int k, const Rational& alpha);

struct Prop1Report {
  std::uint64_t a_h = 0;  // |Aut(H)|
  std::uint64_t a1 = 0;   // automorphisms of H extendable to G
  std::uint64_t a2 = 0;   // automorphisms of G fixing V(H) pointwise
  Rational inverse_alpha;
  double lambda = 0.0;    // (1/a_h) exp(-a_h/(a1 a2))
};
// H is the root part of the pair. Throws HypothesisViolated naming the failed
// condition and CapExceeded when v(G) exceeds the enumeration cap.
Prop1Report prop1_lambda(const RootedPair& pair, const Limits& limits = default_limits());

// Calculator output shared by the CLI.
struct BoundReport {
  int theorem = 0;
  std::map<std::string, long long> parameters;
  std::map<std::string, std::string> values;  // exact rationals and integers as strings
  std::string meaning;
  std::optional<Hypergraph> witness;
};
// Dispatches theorem 6..11 with the auxiliary parameter (a for 9, j for 10, m for 11).
BoundReport bound_report(int theorem, int s, int k, std::optional<long long> aux);
nlohmann::json to_json(const BoundReport& report);

}  // namespace hyperspectra
