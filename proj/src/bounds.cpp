#include "hyperspectra/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hyperspectra/errors.hpp"
#include "hyperspectra/hypercore.hpp"
#include "hyperspectra/io.hpp"

namespace hyperspectra {

namespace {

using Subset = std::vector<int>;

// l-subsets of {1..m} in lexicographic order.
std::vector<Subset> subsets(int m, int l) {
  std::vector<Subset> out;
  if (l < 0 || l > m) return out;
  Subset cur(l);
  for (int i = 0; i < l; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = l - 1;
    while (i >= 0 && cur[i] == m - l + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < l; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

Rational big(const BigInt& v) { return Rational(v); }

BigInt pow2(int e) { return power(BigInt(2), static_cast<unsigned>(e)); }

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

Rational thm6_threshold(int s, int k) {
  require(s >= 3 && k >= s + 1, "theorem 6 needs s >= 3 and k >= s+1");
  Rational c = big(binomial(k - 1, s - 1));
  Rational q = ratio(s - 1, k - 1);
  return c - Rational(1) - q + Rational(2) * (Rational(1) + q) / (c + Rational(2));
}

Rational thm7_threshold(int s, int k) {
  require(s >= 3 && k >= s + 2, "theorem 7 needs s >= 3 and k >= s+2");
  Rational c = big(binomial(k - 1, s - 1));
  return c - Rational(1) - ratio(s - 1, k - 1) - Rational(2) / c;
}

std::size_t thm7_pair_count(int s, int k) {
  require(s >= 3 && k >= s + 2, "theorem 7 needs s >= 3 and k >= s+2");
  BigInt b = binomial(k - 2, s - 1);
  return static_cast<std::size_t>(b * (b - 1) / 2);
}

BigInt thm7_vertex_count(int s, int k) {
  BigInt a = thm7_pair_count(s, k);
  BigInt c = binomial(k - 1, s - 1);
  return BigInt(k - 2) + a * c + a * c * (c - 1);
}

BigInt thm7_edge_count(int s, int k) {
  BigInt a = thm7_pair_count(s, k);
  BigInt c = binomial(k - 1, s - 1);
  return a * c * (binomial(k - 2, s - 1) - 2) + a * c * (c - 1) * (c - 1);
}

Thm7Witness construct_thm7_K(int s, int k, std::size_t max_vertices) {
  BigInt expected_v = thm7_vertex_count(s, k);
  if (expected_v > BigInt(max_vertices)) {
    throw CapExceeded("theorem 7 witness has " + expected_v.str() + " vertices, above the cap");
  }
  const auto pairs_base = subsets(k - 2, s - 1);  // B_{k-2,s-1}
  const auto cs = subsets(k - 1, s - 1);          // B_{k-1,s-1}
  const auto js = subsets(k - 2, s - 2);          // B_{k-2,s-2}
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < pairs_base.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs_base.size(); ++b) pairs.emplace_back(a, b);
  }
  const std::size_t nc = cs.size();
  const auto base = static_cast<Vertex>(k - 2);
  auto x = [](int i) { return static_cast<Vertex>(i - 1); };
  auto x_k1 = [&](std::size_t p, std::size_t c) { return static_cast<Vertex>(base + p * nc + c); };
  auto x_k = [&](std::size_t p, std::size_t c, std::size_t c2) {
    std::size_t slot = c2 < c ? c2 : c2 - 1;
    return static_cast<Vertex>(base + pairs.size() * nc + (p * nc + c) * (nc - 1) + slot);
  };
  const std::size_t n = base + pairs.size() * nc + pairs.size() * nc * (nc - 1);
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Subset& a = pairs_base[pairs[p].first];
    const Subset& b = pairs_base[pairs[p].second];
    for (std::size_t c = 0; c < nc; ++c) {
      for (const Subset& i : pairs_base) {
        if (i == a || i == b) continue;
        Edge e;
        for (int v : i) e.push_back(x(v));
        e.push_back(x_k1(p, c));
        edges.push_back(std::move(e));
      }
      for (std::size_t c2 = 0; c2 < nc; ++c2) {
        if (c2 == c) continue;
        const Subset& cprime = cs[c2];
        for (const Subset& i : pairs_base) {
          if (i == cprime) continue;
          Edge e;
          for (int v : i) e.push_back(x(v));
          e.push_back(x_k(p, c, c2));
          edges.push_back(std::move(e));
        }
        for (const Subset& j : js) {
          Subset with = j;
          with.push_back(k - 1);
          if (with == cprime) continue;
          Edge e;
          for (int v : j) e.push_back(x(v));
          e.push_back(x_k1(p, c));
          e.push_back(x_k(p, c, c2));
          std::sort(e.begin(), e.end());
          edges.push_back(std::move(e));
        }
      }
    }
  }
  Thm7Witness w{Hypergraph(s, n, std::move(edges)), n, 0, Rational(0), expected_v, thm7_edge_count(s, k)};
  w.edges = w.k.num_edges();
  w.density = density(w.k);
  return w;
}

Interval thm8_interval(int s, int k) {
  require(s >= 2 && k >= s, "theorem 8 interval needs s >= 2 and k >= s");
  Rational top(s - 1);
  return {top - Rational(1) / big(pow2(k - s + 1)), top};
}

bool q_k_membership(const Rational& alpha, int s, int k) {
  require(s >= 2 && k >= s, "Q_k needs s >= 2 and k >= s");
  Rational gap = Rational(s - 1) - alpha;
  if (gap.sign() <= 0) return false;
  BigInt two = pow2(k - s + 1);
  Rational rest = gap.reciprocal() - big(two);
  return rest.sign() > 0 && rest.numerator() <= two;
}

Rational thm9_alpha(int s, int k, long long a) {
  require(s >= 3 && k >= s + 4, "theorem 9 needs s >= 3 and k >= s+4");
  BigInt cap = pow2(k - s - 2) + pow2(k - s - 3) + 1;
  require(a >= 1 && BigInt(a) <= cap, "theorem 9 needs 1 <= a <= 2^{k-s-2} + 2^{k-s-3} + 1");
  return Rational(s - 1) - Rational(1) / (big(pow2(k - s + 1)) + Rational(a));
}

Split split_a(int s, int k, long long a) {
  thm9_alpha(s, k, a);
  if (k - s + 1 > 60) throw DomainError("split search limited to k - s + 1 <= 60");
  const long long total = (1LL << (k - s + 1)) + a;
  const long long a1_max = 1LL << (k - s);
  const long long a2_max = 1LL << (k - s - 4);
  const long long a3_max = 1LL << (k - s - 2);
  for (long long a1 = 2; a1 <= a1_max; ++a1) {
    for (long long a2 = 1; a2 <= a2_max && a2 < a1; ++a2) {
      long long a3 = total - 2 * a1 - 2 * a2 - 1;
      if (a3 >= 1 && a3 <= a3_max) return {a1, a2, a3};
    }
  }
  throw DomainError("no split (a1, a2, a3) satisfies the constraints");
}

Hypergraph construct_thm9_K(int s, long long a1, long long a2, long long a3) {
  require(s >= 3 && a1 >= 1 && a2 >= 1 && a3 >= 1, "theorem 9 witness needs s >= 3 and a1, a2, a3 >= 1");
  const long long w = s - 1;
  const long long nx = 2 * a1 * w, ny = (2 * a2 + 1) * w, nz = a3 * w - 1;
  if (nx + ny + nz > 1000000) throw CapExceeded("theorem 9 witness above 10^6 vertices");
  auto x = [&](long long i) { return static_cast<Vertex>(i - 1); };
  auto y = [&](long long i) { return static_cast<Vertex>(nx + i - 1); };
  auto z = [&](long long i) { return static_cast<Vertex>(nx + ny + i - 1); };
  std::vector<Edge> edges;
  auto cycle = [&](long long len, auto name) {
    for (long long i = 1; i < len; ++i) {
      Edge e;
      for (long long t = (i - 1) * w + 1; t <= i * w + 1; ++t) e.push_back(name(t));
      edges.push_back(std::move(e));
    }
    Edge last;
    for (long long t = (len - 1) * w + 1; t <= len * w; ++t) last.push_back(name(t));
    last.push_back(name(1));
    std::sort(last.begin(), last.end());
    edges.push_back(std::move(last));
  };
  cycle(2 * a1, x);
  cycle(2 * a2 + 1, y);
  if (a3 == 1) {
    Edge e{x(1), y(1)};
    for (long long t = 1; t <= s - 2; ++t) e.push_back(z(t));
    std::sort(e.begin(), e.end());
    edges.push_back(std::move(e));
  } else {
    Edge first{x(1)};
    for (long long t = 1; t <= w; ++t) first.push_back(z(t));
    std::sort(first.begin(), first.end());
    edges.push_back(std::move(first));
    for (long long i = 1; i < a3 - 1; ++i) {
      Edge e;
      for (long long t = i * w; t <= (i + 1) * w; ++t) e.push_back(z(t));
      edges.push_back(std::move(e));
    }
    Edge last;
    for (long long t = (a3 - 1) * w; t <= a3 * w - 1; ++t) last.push_back(z(t));
    last.push_back(y(1));
    std::sort(last.begin(), last.end());
    edges.push_back(std::move(last));
  }
  return Hypergraph(s, static_cast<std::size_t>(nx + ny + nz), std::move(edges));
}

Thm10Value thm10_alpha(int s, int k, long long j) {
  require(s >= 2 && k - 11 >= s - 1 && j >= 1, "theorem 10 needs s >= 2, k-11 >= s-1 and j >= 1");
  long long m = j * (k - 10);
  require(m >= 2, "theorem 10 needs m = j(k-10) >= 2");
  if (m > 20000) throw CapExceeded("theorem 10 with m above 20000");
  BigInt mm(m);
  BigInt sigma = 4 * (power(mm, static_cast<unsigned>(m + 1)) - mm) / (mm - 1);
  Rational c = big(binomial(k - 11, s - 1));
  Rational alpha = Rational(1) / c + Rational(k - 10) / (c * big(sigma));
  return {mm, sigma, alpha};
}

long long thm11_l(int s, int k) {
  require((s == 2 && k >= 5) || (s >= 3 && k >= s + 2),
          "theorem 11 needs s = 2, k >= 5 or s >= 3, k >= s+2");
  const BigInt limit = binomial(k, s);
  long long l = 1;
  while (binomial(l + 1, s - 1) * (l + 3) <= limit) ++l;
  return l;
}

long long thm11_l_closed_form(int k) {
  require(k >= 5, "closed form needs k >= 5");
  long long n = static_cast<long long>(k) * (k - 1) / 2 - 1;
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r - 1;
}

Rational thm11_alpha(int s, int k, long long m) {
  long long l = thm11_l(s, k);
  require(m >= 1, "theorem 11 needs m >= 1");
  long long t = k - l - 2;
  require(t >= 1 && t < l, "theorem 11 needs 1 <= t = k-l-2 < l");
  return Rational(l + m) / (Rational(l - t + m) * big(binomial(l, s - 1)));
}

Rational thm1_threshold(int k) {
  require(k >= 3, "theorem 1 needs k >= 3");
  return ratio(1, k - 2);
}

const char* to_string(LawStatus status) {
  switch (status) {
    case LawStatus::kObeys: return "obeys";
    case LawStatus::kFails: return "fails";
    case LawStatus::kUnknown: return "unknown";
  }
  return "?";
}

LawStatus thm2_status(int k, const Rational& alpha) {
  require(k > 3 && k < 60, "theorem 2 needs 3 < k < 60");
  require(alpha.sign() > 0 && alpha < Rational(1), "theorem 2 needs 0 < alpha < 1");
  const BigInt two_k = pow2(k);
  if (alpha == Rational(1) - Rational(1) / big(two_k) ||
      alpha == Rational(1) - Rational(1) / big(two_k - 1)) {
    return LawStatus::kObeys;
  }
  const BigInt half = pow2(k - 1);
  Rational beta = (Rational(1) - alpha).reciprocal() - big(half);
  if (beta.sign() <= 0) return LawStatus::kUnknown;
  if (beta.is_integer() && beta.numerator() <= half - 2) return LawStatus::kFails;
  if (beta.numerator() > half) return LawStatus::kObeys;
  return LawStatus::kUnknown;
}

Prop1Report prop1_lambda(const RootedPair& pair, const Limits& limits) {
  const Hypergraph h = pair.h();
  if (h.num_edges() == 0) throw HypothesisViolated("H must be strictly balanced: H has no edges");
  if (!is_strictly_balanced(h)) throw HypothesisViolated("H must be strictly balanced");
  if (pair.extra_vertices() == 0) throw HypothesisViolated("the pair must add vertices");
  if (!is_strictly_balanced_pair(pair, limits)) {
    throw HypothesisViolated("(G, H) must be a strictly balanced pair");
  }
  Rational rho_h = density(h);
  Rational rho_pair = pair_density(pair);
  if (rho_h != rho_pair) {
    throw HypothesisViolated("rho(H) = rho(G, H) fails: " + rho_h.str() + " vs " + rho_pair.str());
  }
  const std::size_t l = pair.roots;
  auto aut_g = automorphisms(pair.g, limits.enumeration_cap);
  std::set<Edge> h_edges(pair.h_edges.begin(), pair.h_edges.end());
  std::set<VertexMap> restrictions;
  std::uint64_t a2 = 0;
  for (const VertexMap& tau : aut_g) {
    bool fixes = true, keeps = true;
    for (Vertex v = 0; v < l; ++v) {
      fixes = fixes && tau[v] == v;
      keeps = keeps && tau[v] < l;
    }
    a2 += fixes;
    if (!keeps) continue;
    VertexMap sigma(tau.begin(), tau.begin() + l);
    bool is_aut = true;
    for (const Edge& e : pair.h_edges) {
      Edge image;
      for (Vertex v : e) image.push_back(sigma[v]);
      std::sort(image.begin(), image.end());
      is_aut = is_aut && h_edges.count(image);
    }
    if (is_aut) restrictions.insert(std::move(sigma));
  }
  Prop1Report report;
  report.a_h = automorphism_count(h, limits.enumeration_cap);
  report.a1 = restrictions.size();
  report.a2 = a2;
  report.inverse_alpha = rho_h;
  const double ah = static_cast<double>(report.a_h);
  report.lambda = std::exp(-ah / (static_cast<double>(report.a1) * static_cast<double>(report.a2))) / ah;
  return report;
}

BoundReport bound_report(int theorem, int s, int k, std::optional<long long> aux) {
  BoundReport r;
  r.theorem = theorem;
  r.parameters = {{"s", s}, {"k", k}};
  switch (theorem) {
    case 6: {
      Rational t = thm6_threshold(s, k);
      r.values["threshold"] = t.str();
      r.values["alpha_bound"] = t.reciprocal().str();
      r.meaning = "law-holds-below";
      break;
    }
    case 7: {
      Rational t = thm7_threshold(s, k);
      r.values["threshold"] = t.str();
      r.values["vertices"] = thm7_vertex_count(s, k).str();
      r.values["edges"] = thm7_edge_count(s, k).str();
      r.meaning = "law-fails-at";
      if (thm7_vertex_count(s, k) <= 10000) {
        Thm7Witness w = construct_thm7_K(s, k);
        r.values["density"] = w.density.str();
        r.values["alpha"] = w.density.reciprocal().str();
        r.witness = std::move(w.k);
      }
      break;
    }
    case 8: {
      Interval iv = thm8_interval(s, k);
      r.values["lo"] = iv.lo.str();
      r.values["hi"] = iv.hi.str();
      r.meaning = "interval";
      break;
    }
    case 9: {
      long long a = aux.value_or(1);
      r.parameters["a"] = a;
      Rational alpha = thm9_alpha(s, k, a);
      Split split = split_a(s, k, a);
      r.values["alpha"] = alpha.str();
      r.values["a1"] = std::to_string(split.a1);
      r.values["a2"] = std::to_string(split.a2);
      r.values["a3"] = std::to_string(split.a3);
      Hypergraph w = construct_thm9_K(s, split.a1, split.a2, split.a3);
      r.values["vertices"] = std::to_string(w.num_vertices());
      r.values["edges"] = std::to_string(w.num_edges());
      r.values["density"] = density(w).str();
      r.witness = std::move(w);
      r.meaning = "law-fails-at";
      break;
    }
    case 10: {
      long long j = aux.value_or(1);
      r.parameters["j"] = j;
      Thm10Value v = thm10_alpha(s, k, j);
      r.values["m"] = v.m.str();
      r.values["sigma"] = v.sigma.str();
      r.values["alpha"] = v.alpha.str();
      r.values["limit"] = (Rational(1) / big(binomial(k - 11, s - 1))).str();
      r.meaning = "limit-point";
      break;
    }
    case 11: {
      long long l = thm11_l(s, k);
      r.values["l"] = std::to_string(l);
      r.values["limit"] = (Rational(1) / big(binomial(l, s - 1))).str();
      if (aux) {
        r.parameters["m"] = *aux;
        r.values["alpha"] = thm11_alpha(s, k, *aux).str();
      }
      r.meaning = "limit-point";
      break;
    }
    default:
      throw DomainError("theorem must be one of 6..11");
  }
  return r;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json doc{{"theorem", report.theorem},
                     {"parameters", report.parameters},
                     {"values", report.values},
                     {"meaning", report.meaning}};
  if (report.witness) doc["witness"] = hypergraph_to_json(*report.witness);
  return doc;
}

}  // namespace hyperspectra
