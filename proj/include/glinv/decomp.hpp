#pragma once

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tensorspace.hpp"

namespace glinv {

struct SpanDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
inline F parse_scalar(const std::string& s);
template <>
inline Rational parse_scalar<Rational>(const std::string& s) { return parse_rational(s); }
template <>
inline Cyclo3 parse_scalar<Cyclo3>(const std::string& s) { return parse_cyclo3(s); }

// Univariate polynomial in t, ascending coefficients.
template <class F>
struct Poly {
  std::vector<F> c;

  Poly() = default;
  Poly(F a) : c{std::move(a)} { trim(); }
  Poly(std::initializer_list<F> xs) : c(xs) { trim(); }
  explicit Poly(std::vector<F> xs) : c(std::move(xs)) { trim(); }
  static Poly monomial(F a, int deg) {
    Poly p;
    p.c.assign(deg + 1, F(0));
    p.c[deg] = std::move(a);
    p.trim();
    return p;
  }

  bool zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  F at(int i) const { return i < static_cast<int>(c.size()) ? c[i] : F(0); }
  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  // t -> t^e
  Poly substitute_power(int e) const {
    Poly p;
    if (zero()) return p;
    p.c.assign(static_cast<std::size_t>(degree()) * e + 1, F(0));
    for (std::size_t i = 0; i < c.size(); ++i) p.c[i * e] = c[i];
    return p;
  }

  friend Poly operator+(const Poly& x, const Poly& y) {
    Poly p;
    p.c.assign(std::max(x.c.size(), y.c.size()), F(0));
    for (std::size_t i = 0; i < x.c.size(); ++i) p.c[i] += x.c[i];
    for (std::size_t i = 0; i < y.c.size(); ++i) p.c[i] += y.c[i];
    p.trim();
    return p;
  }
  friend Poly operator*(const Poly& x, const Poly& y) {
    Poly p;
    if (x.zero() || y.zero()) return p;
    p.c.assign(x.c.size() + y.c.size() - 1, F(0));
    for (std::size_t i = 0; i < x.c.size(); ++i)
      for (std::size_t j = 0; j < y.c.size(); ++j) p.c[i + j] += x.c[i] * y.c[j];
    p.trim();
    return p;
  }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c == y.c; }
};

template <class F>
using PolyVec = std::vector<Poly<F>>;

// Sparse 3-way tensor in A (x) B (x) C.
template <class F>
struct Tensor3 {
  int da = 0, db = 0, dc = 0;
  std::map<std::array<int, 3>, F> entries;
  void add(int a, int b, int c, const F& v) {
    if (is_zero(v)) return;
    auto& slot = entries[{a, b, c}];
    slot += v;
    if (is_zero(slot)) entries.erase({a, b, c});
  }
  friend bool operator==(const Tensor3& x, const Tensor3& y) {
    return x.da == y.da && x.db == y.db && x.dc == y.dc && x.entries == y.entries;
  }
};

// Which tensor a decomposition is for.
struct Target {
  std::string kind;  // "skew", "skew-diff", "invariant", "cartan"
  int k = 0;
  Partition mu, nu;  // invariant: (mu, nu); cartan: (lambda, lambda')
  std::string describe() const {
    if (kind == "skew") return "T" + std::to_string(k);
    if (kind == "skew-diff") return "T" + std::to_string(k) + "-T" + std::to_string(k - 1);
    return kind + "(" + to_string(mu) + ";" + to_string(nu) + ";k=" + std::to_string(k) + ")";
  }
};

inline Partition cartan_sum(const Partition& a, const Partition& b) {
  std::vector<int> s(std::max(a.length(), b.length()));
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
  return Partition(s);
}

template <class F>
Tensor3<F> target_tensor(const Target& t) {
  Tensor3<F> out;
  if (t.kind == "skew" || t.kind == "skew-diff") {
    int k = t.k;
    out.da = out.db = k;
    out.dc = k * (k - 1) / 2;
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        if (t.kind == "skew-diff" && j != k) continue;
        out.add(i - 1, j - 1, pair_index(i, j, k), F(1));
        out.add(j - 1, i - 1, pair_index(i, j, k), F(-1));
      }
  } else if (t.kind == "invariant") {
    auto it = build_tensor(t.k, t.mu, t.nu);
    out.da = it.k;
    out.db = it.m;
    out.dc = it.n;
    for (const auto& x : it.terms) out.add(x.i - 1, x.tau, x.sigma, F(x.coeff));
  } else if (t.kind == "cartan") {
    auto A = schur_module(t.mu, t.k), B = schur_module(t.nu, t.k), C = schur_module(cartan_sum(t.mu, t.nu), t.k);
    out.da = A->dim();
    out.db = B->dim();
    out.dc = C->dim();
    auto cols = cartan_product_columns(*A, *B, *C);
    for (int a = 0; a < A->dim(); ++a)
      for (int b = 0; b < B->dim(); ++b)
        for (const auto& [c, v] : cols[static_cast<std::size_t>(a) * B->dim() + b]) out.add(a, b, c, F(static_cast<long>(v)));
  } else {
    throw std::invalid_argument("unknown target kind: " + t.kind);
  }
  return out;
}

template <class F>
struct CurveTerm {
  PolyVec<F> a, b, c;
};

template <class F = Rational>
struct CurveDecomposition {
  int k = 0;
  Target target;
  F scale = F(1);
  int d = 0;
  std::vector<CurveTerm<F>> terms;
  int size() const { return static_cast<int>(terms.size()); }
};

struct VerificationReport {
  std::string target;
  int rank = 0;
  int d = 0;
  bool pass = false;
  std::optional<int> failing_order;
  std::optional<std::array<int, 3>> failing_coordinate;
  std::string message;
};

// Checks sum scale * a(t) (x) b(t) (x) c(t) = t^d T + O(t^{d+1}) exactly.
template <class F>
VerificationReport verify_border_decomposition(const CurveDecomposition<F>& D, const Tensor3<F>& T) {
  VerificationReport rep{D.target.describe(), D.size(), D.d};
  std::map<std::array<int, 3>, Poly<F>> sum;
  for (const auto& term : D.terms) {
    if (static_cast<int>(term.a.size()) != T.da || static_cast<int>(term.b.size()) != T.db ||
        static_cast<int>(term.c.size()) != T.dc)
      throw DimensionMismatch("decomposition factor dimensions do not match the target");
    for (int x = 0; x < T.da; ++x) {
      if (term.a[x].zero()) continue;
      for (int y = 0; y < T.db; ++y) {
        if (term.b[y].zero()) continue;
        Poly<F> ab = term.a[x] * term.b[y];
        for (int z = 0; z < T.dc; ++z) {
          if (term.c[z].zero()) continue;
          auto& slot = sum[{x, y, z}];
          slot = slot + ab * term.c[z];
        }
      }
    }
  }
  std::map<std::array<int, 3>, bool> coords;
  for (const auto& [key, p] : sum) coords[key] = true;
  for (const auto& [key, v] : T.entries) coords[key] = true;
  std::optional<int> worst;
  for (const auto& [key, unused] : coords) {
    auto it = sum.find(key);
    Poly<F> p = it == sum.end() ? Poly<F>() : it->second;
    auto tv = T.entries.find(key);
    F want = tv == T.entries.end() ? F(0) : tv->second;
    for (int o = 0; o <= D.d; ++o) {
      F got = D.scale * p.at(o);
      F expect = o == D.d ? want : F(0);
      if (!(got == expect)) {
        if (!worst || o < *worst) {
          worst = o;
          rep.failing_coordinate = key;
        }
        break;
      }
    }
  }
  rep.pass = !worst;
  rep.failing_order = worst;
  rep.message = rep.pass ? "verified" : "mismatch at t^" + std::to_string(*worst);
  return rep;
}

template <class F>
VerificationReport verify_rank_decomposition(const CurveDecomposition<F>& D, const Tensor3<F>& T) {
  if (D.d != 0) throw std::invalid_argument("rank decomposition must have d = 0");
  return verify_border_decomposition(D, T);
}

namespace detail {

template <class F>
PolyVec<F> linear(int dim, std::initializer_list<std::pair<int, Poly<F>>> xs) {
  PolyVec<F> v(dim);
  for (const auto& [i, p] : xs) v[i] = v[i] + p;
  return v;
}

inline Poly<Rational> tpow(long coeff, int deg) { return Poly<Rational>::monomial(Rational(coeff), deg); }

}  // namespace detail

inline CurveDecomposition<Rational> t3_decomposition() {
  using detail::linear;
  using detail::tpow;
  const int k = 3;
  auto e = [](int i, int j) { return pair_index(i, j, 3); };
  CurveDecomposition<Rational> D{k, {"skew", k}, Rational(1), 1, {}};
  auto al = [&](std::initializer_list<std::pair<int, Poly<Rational>>> xs) { return linear<Rational>(k, xs); };
  auto wedge = [&](std::initializer_list<std::pair<int, Poly<Rational>>> xs) { return linear<Rational>(3, xs); };
  D.terms.push_back({al({{0, tpow(1, 1)}}), al({{1, tpow(1, 0)}}), wedge({{e(1, 2), tpow(1, 0)}})});
  D.terms.push_back({al({{1, tpow(-1, 1)}}), al({{0, tpow(1, 0)}}), wedge({{e(1, 2), tpow(1, 0)}})});
  D.terms.push_back({al({{2, tpow(1, 0)}, {0, tpow(1, 1)}}), al({{2, tpow(1, 0)}, {0, tpow(-1, 1)}}), wedge({{e(1, 3), tpow(1, 0)}})});
  D.terms.push_back({al({{2, tpow(1, 0)}, {1, tpow(1, 1)}}), al({{2, tpow(1, 0)}, {1, tpow(-1, 1)}}), wedge({{e(2, 3), tpow(1, 0)}})});
  D.terms.push_back({al({{2, tpow(-1, 0)}}), al({{2, tpow(1, 0)}}), wedge({{e(1, 3), tpow(1, 0)}, {e(2, 3), tpow(1, 0)}})});
  return D;
}

// Border rank eight decomposition of T_4, with vanishing order 3 and scale 1/4.
inline CurveDecomposition<Rational> t4_conner_decomposition() {
  using detail::tpow;
  const int k = 4;
  auto e = [](int i, int j) { return pair_index(i, j, 4); };
  CurveDecomposition<Rational> D{k, {"skew", k}, Rational(1, 4), 3, {}};
  auto al = [&](std::initializer_list<std::pair<int, Poly<Rational>>> xs) { return detail::linear<Rational>(k, xs); };
  auto wedge = [&](long s, std::initializer_list<std::pair<int, Poly<Rational>>> xs) {
    auto v = detail::linear<Rational>(6, xs);
    for (auto& p : v) p = p * tpow(s, 0);
    return v;
  };
  // alpha_i has index i-1
  D.terms.push_back({al({{0, tpow(1, 0)}, {2, tpow(2, 0)}}), al({{0, tpow(1, 0)}}),
                     wedge(1, {{e(2, 4), tpow(1, 0)}, {e(1, 3), tpow(-2, 3)}})});
  D.terms.push_back({al({{0, tpow(1, 0)}}), al({{0, tpow(1, 0)}, {2, tpow(2, 0)}}),
                     wedge(1, {{e(2, 4), tpow(1, 0)}, {e(1, 3), tpow(2, 3)}})});
  D.terms.push_back({al({{0, tpow(1, 0)}, {2, tpow(1, 0)}, {1, tpow(1, 1)}, {3, tpow(1, 2)}}),
                     al({{0, tpow(1, 0)}, {2, tpow(1, 0)}, {1, tpow(-1, 1)}, {3, tpow(1, 2)}}),
                     wedge(-4, {{e(2, 4), tpow(1, 0)}, {e(1, 2), tpow(-1, 2)}, {e(1, 4), tpow(-1, 2)}})});
  D.terms.push_back({al({{0, tpow(1, 0)}, {2, tpow(1, 0)}, {1, tpow(2, 1)}, {3, tpow(2, 2)}}),
                     al({{0, tpow(1, 0)}, {2, tpow(1, 0)}, {1, tpow(-2, 1)}, {3, tpow(2, 2)}}),
                     wedge(2, {{e(2, 4), tpow(1, 0)}, {e(1, 2), tpow(-2, 2)}, {e(1, 4), tpow(-1, 2)}})});
  D.terms.push_back({al({{2, tpow(1, 0)}, {1, tpow(-2, 1)}}), al({{2, tpow(1, 0)}, {1, tpow(2, 1)}}),
                     wedge(-2, {{e(2, 4), tpow(1, 0)}, {e(1, 2), tpow(2, 2)}, {e(2, 3), tpow(2, 2)}})});
  D.terms.push_back({al({{2, tpow(1, 0)}, {1, tpow(-1, 1)}}), al({{2, tpow(1, 0)}, {1, tpow(1, 1)}}),
                     wedge(4, {{e(2, 4), tpow(1, 0)},
                               {e(1, 2), tpow(1, 2)},
                               {e(1, 4), tpow(1, 2)},
                               {e(2, 3), tpow(1, 2)},
                               {e(3, 4), tpow(-1, 2)}})});
  D.terms.push_back({al({{0, tpow(1, 0)}, {2, tpow(1, 0)}, {3, tpow(2, 1)}}),
                     al({{0, tpow(1, 0)}, {2, tpow(1, 0)}, {3, tpow(-2, 1)}}), wedge(-2, {{e(1, 4), tpow(1, 2)}})});
  D.terms.push_back({al({{2, tpow(1, 0)}, {1, tpow(-1, 1)}, {3, tpow(-1, 1)}}),
                     al({{2, tpow(1, 0)}, {1, tpow(1, 1)}, {3, tpow(1, 1)}}),
                     wedge(4, {{e(3, 4), tpow(1, 2)}, {e(1, 4), tpow(-1, 2)}})});
  return D;
}

// T_k - T_{k-1} as a k-term decomposition with vanishing order 1.
inline CurveDecomposition<Rational> skew_difference_decomposition(int k) {
  using detail::tpow;
  if (k < 2) throw std::invalid_argument("k >= 2 required");
  const int w = k * (k - 1) / 2;
  CurveDecomposition<Rational> D{k, {"skew-diff", k}, Rational(1), 1, {}};
  for (int j = 1; j < k; ++j) {
    PolyVec<Rational> a(k), b(k), c(w);
    a[k - 1] = tpow(1, 0);
    a[j - 1] = tpow(1, 1);
    b[k - 1] = tpow(1, 0);
    b[j - 1] = tpow(-1, 1);
    c[pair_index(j, k, k)] = tpow(1, 0);
    D.terms.push_back({a, b, c});
  }
  PolyVec<Rational> a(k), b(k), c(w);
  a[k - 1] = tpow(-1, 0);
  b[k - 1] = tpow(1, 0);
  for (int i = 1; i < k; ++i) c[pair_index(i, k, k)] = tpow(1, 0);
  D.terms.push_back({a, b, c});
  return D;
}

// Re-indexes a skew-family decomposition from dimension D.k into dimension k.
inline CurveDecomposition<Rational> embed_skew(const CurveDecomposition<Rational>& D, int k) {
  if (k < D.k) throw std::invalid_argument("cannot embed into a smaller space");
  CurveDecomposition<Rational> out = D;
  out.k = k;
  out.target.k = k;
  for (auto& term : out.terms) {
    term.a.resize(k);
    term.b.resize(k);
    PolyVec<Rational> c(k * (k - 1) / 2);
    for (int i = 1; i <= D.k; ++i)
      for (int j = i + 1; j <= D.k; ++j) c[pair_index(i, j, k)] = term.c[pair_index(i, j, D.k)];
    term.c = std::move(c);
  }
  return out;
}

// Puts every part on the least common vanishing order via t -> t^m, folds
// scales into the third factor, and concatenates.
inline CurveDecomposition<Rational> concatenate(const std::vector<CurveDecomposition<Rational>>& parts, Target target) {
  if (parts.empty()) throw std::invalid_argument("nothing to concatenate");
  int L = 1;
  for (const auto& p : parts)
    if (p.d > 0) L = std::lcm(L, p.d);
  CurveDecomposition<Rational> out{parts.front().k, std::move(target), Rational(1), L, {}};
  for (const auto& p : parts) {
    int e = p.d > 0 ? L / p.d : 1;
    for (const auto& term : p.terms) {
      CurveTerm<Rational> t;
      for (const auto& x : term.a) t.a.push_back(x.substitute_power(e));
      for (const auto& x : term.b) t.b.push_back(x.substitute_power(e));
      Poly<Rational> factor = p.d > 0 ? Poly<Rational>(p.scale) : Poly<Rational>::monomial(p.scale, L);
      for (const auto& x : term.c) t.c.push_back(x.substitute_power(e) * factor);
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

inline CurveDecomposition<Rational> skew_upper_decomposition(int k) {
  if (k < 4) throw std::invalid_argument("k >= 4 required");
  std::vector<CurveDecomposition<Rational>> parts{embed_skew(t4_conner_decomposition(), k)};
  for (int j = 5; j <= k; ++j) parts.push_back(embed_skew(skew_difference_decomposition(j), k));
  return concatenate(parts, {"skew", k});
}

// The rank five decomposition of the GL_2 tensor in (S^2)* (x) (S^2)* (x) S^4,
// as written with third roots of unity.
inline CurveDecomposition<Cyclo3> example3_decomposition() {
  const Cyclo3 z = Cyclo3::zeta(), z2 = z * z, third(Rational(1, 3));
  auto vec = [](std::vector<Cyclo3> xs) {
    PolyVec<Cyclo3> v;
    for (auto& x : xs) v.push_back(Poly<Cyclo3>(x));
    return v;
  };
  CurveDecomposition<Cyclo3> D{2, {"cartan", 2, Partition{2}, Partition{2}}, Cyclo3(1), 0, {}};
  D.terms.push_back({vec({1, 0, 0}), vec({1, 0, 0}), vec({1, 0, 0, -1, 0})});
  D.terms.push_back({vec({third, third, third}), vec({1, 1, 1}), vec({0, 1, 1, 1, 0})});
  D.terms.push_back({vec({third, third * z, third * z2}), vec({1, z, z2}), vec({0, z2, z, 1, 0})});
  D.terms.push_back({vec({third, third * z2, third * z}), vec({1, z2, z}), vec({0, z, z2, 1, 0})});
  D.terms.push_back({vec({0, 0, 1}), vec({0, 0, 1}), vec({0, -1, 0, 0, 1})});
  return D;
}

// a (x) b (x) c as a Tensor3, for comparing individual terms.
template <class F>
Tensor3<F> term_tensor(const CurveTerm<F>& t) {
  Tensor3<F> out{static_cast<int>(t.a.size()), static_cast<int>(t.b.size()), static_cast<int>(t.c.size()), {}};
  for (int x = 0; x < out.da; ++x)
    for (int y = 0; y < out.db; ++y)
      for (int z = 0; z < out.dc; ++z) out.add(x, y, z, t.a[x].at(0) * t.b[y].at(0) * t.c[z].at(0));
  return out;
}

struct PointSource {
  std::uint64_t seed = 1;
  int batches = 10;
  // explicit group elements; c_i is the top-coordinate functional composed with g_i
  std::vector<DenseMatrix<Rational>> rational;
  std::vector<DenseMatrix<Cyclo3>> cyclotomic;
};

namespace detail {

inline std::vector<DenseMatrix<Rational>> random_orbit_elements(int count, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> off(-3, 3), diag(1, 5);
  std::vector<DenseMatrix<Rational>> out;
  for (int s = 0; s < count; ++s) {
    DenseMatrix<Rational> u = DenseMatrix<Rational>::identity(k), dg(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) u(i, j) = off(rng);
      dg(i, i) = diag(rng);
    }
    DenseMatrix<Rational> g(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) g(i, j) = u(i, j) * dg(j, j);
    out.push_back(g);
  }
  return out;
}

template <class F>
CurveDecomposition<F> cartan_from_elements(const Target& target, const std::vector<DenseMatrix<F>>& gs, bool* deficient) {
  const int k = target.k;
  auto A = schur_module(target.mu, k), B = schur_module(target.nu, k);
  auto C = schur_module(cartan_sum(target.mu, target.nu), k);
  const int n = C->dim(), da = A->dim(), db = B->dim();
  const auto top = C->entries(C->highest_weight_index());
  auto cols = cartan_product_columns(*A, *B, *C);

  std::vector<std::vector<F>> w;  // functionals on C
  for (const auto& g : gs) {
    std::vector<F> f(n, F(0));
    for (int gamma = 0; gamma < n; ++gamma) {
      TableauVector<F> e{C->shape(), k, {}};
      e.add(C->entries(gamma), F(1));
      f[gamma] = gl_action(g, e).coefficient(top);
    }
    w.push_back(std::move(f));
  }
  DenseMatrix<F> W(static_cast<int>(w.size()), n);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (int j = 0; j < n; ++j) W(static_cast<int>(i), j) = w[i][j];
  if (static_cast<int>(w.size()) != n || dense_rank(W) != n) {
    *deficient = true;
    return {};
  }
  DenseMatrix<F> X = solve_dual_basis(w);
  CurveDecomposition<F> D{k, target, F(1), 0, {}};
  for (int i = 0; i < n; ++i) {
    // phi(c_i) as a da x db matrix; must have rank one
    DenseMatrix<F> M(da, db);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b)
        for (const auto& [c, v] : cols[static_cast<std::size_t>(a) * db + b]) M(a, b) += w[i][c] * F(static_cast<long>(v));
    if (dense_rank(M) != 1) throw std::logic_error("orbit point does not give a rank one matrix");
    int r0 = 0, c0 = 0;
    while (r0 < da && [&] {
      for (int b = 0; b < db; ++b)
        if (!is_zero(M(r0, b))) return false;
      return true;
    }())
      ++r0;
    while (is_zero(M(r0, c0))) ++c0;
    CurveTerm<F> term;
    for (int a = 0; a < da; ++a) term.a.push_back(Poly<F>(M(a, c0) / M(r0, c0)));
    for (int b = 0; b < db; ++b) term.b.push_back(Poly<F>(M(r0, b)));
    for (int c = 0; c < n; ++c) term.c.push_back(Poly<F>(X(c, i)));
    D.terms.push_back(std::move(term));
  }
  return D;
}

}  // namespace detail

inline CurveDecomposition<Rational> cartan_decomposition(const Partition& lambda, const Partition& lambdaPrime, int k,
                                                         const PointSource& src = {}) {
  Target target{"cartan", k, lambda, lambdaPrime};
  if (cartan_sum(lambda, lambdaPrime).length() > k) throw std::invalid_argument("Cartan product longer than k");
  const int n = schur_module(cartan_sum(lambda, lambdaPrime), k)->dim();
  bool deficient = false;
  if (!src.rational.empty()) {
    auto D = detail::cartan_from_elements<Rational>(target, src.rational, &deficient);
    if (deficient) throw SpanDeficient("given points do not span");
    return D;
  }
  std::mt19937_64 rng(src.seed);
  for (int batch = 0; batch < src.batches; ++batch) {
    deficient = false;
    auto D = detail::cartan_from_elements<Rational>(target, detail::random_orbit_elements(n, k, rng), &deficient);
    if (!deficient) return D;
  }
  throw SpanDeficient("sampled orbit points failed to span after retries");
}

inline CurveDecomposition<Cyclo3> cartan_decomposition_cyclo3(const Partition& lambda, const Partition& lambdaPrime,
                                                              int k, const std::vector<DenseMatrix<Cyclo3>>& gs) {
  Target target{"cartan", k, lambda, lambdaPrime};
  bool deficient = false;
  auto D = detail::cartan_from_elements<Cyclo3>(target, gs, &deficient);
  if (deficient) throw SpanDeficient("given points do not span");
  return D;
}

// Group elements with first row (s, t) for the five points of the rational
// normal curve used with third roots of unity.
inline std::vector<DenseMatrix<Cyclo3>> example3_elements() {
  const Cyclo3 z = Cyclo3::zeta();
  auto g = [](Cyclo3 s, Cyclo3 t) {
    DenseMatrix<Cyclo3> m(2, 2);
    m(0, 0) = s;
    m(0, 1) = t;
    if (is_zero(s)) {
      m(1, 0) = Cyclo3(1);
    } else {
      m(1, 1) = Cyclo3(1);
    }
    return m;
  };
  return {g(1, 0), g(1, 1), g(1, z), g(1, z * z), g(0, 1)};
}

template <class F>
nlohmann::json poly_vec_json(const PolyVec<F>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : v) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : p.c) cs.push_back(to_string(c));
    out.push_back(cs);
  }
  return out;
}

template <class F>
PolyVec<F> poly_vec_from_json(const nlohmann::json& j) {
  PolyVec<F> out;
  for (const auto& p : j) {
    std::vector<F> cs;
    for (const auto& c : p) cs.push_back(parse_scalar<F>(c.get<std::string>()));
    out.push_back(Poly<F>(std::move(cs)));
  }
  return out;
}

inline nlohmann::json to_json(const Target& t) {
  nlohmann::json j{{"kind", t.kind}, {"k", t.k}};
  if (t.kind == "invariant" || t.kind == "cartan") {
    j["first"] = to_string(t.mu);
    j["second"] = to_string(t.nu);
  }
  return j;
}

inline Target target_from_json(const nlohmann::json& j) {
  Target t;
  t.kind = j.at("kind").get<std::string>();
  t.k = j.at("k").get<int>();
  if (j.contains("first")) t.mu = parse_partition(j.at("first").get<std::string>());
  if (j.contains("second")) t.nu = parse_partition(j.at("second").get<std::string>());
  return t;
}

template <class F>
nlohmann::json to_json(const CurveDecomposition<F>& D) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : D.terms) terms.push_back({{"a", poly_vec_json(t.a)}, {"b", poly_vec_json(t.b)}, {"c", poly_vec_json(t.c)}});
  return {{"schema", "glinv.decomposition/1"}, {"field", std::is_same_v<F, Cyclo3> ? "Q(z)" : "Q"},
          {"k", D.k}, {"target", to_json(D.target)}, {"scale", to_string(D.scale)}, {"d", D.d}, {"terms", terms}};
}

template <class F>
CurveDecomposition<F> decomposition_from_json(const nlohmann::json& j) {
  CurveDecomposition<F> D;
  D.k = j.at("k").get<int>();
  D.target = target_from_json(j.at("target"));
  D.scale = parse_scalar<F>(j.at("scale").get<std::string>());
  D.d = j.at("d").get<int>();
  if (D.d < 0) throw std::invalid_argument("negative vanishing order");
  for (const auto& t : j.at("terms"))
    D.terms.push_back({poly_vec_from_json<F>(t.at("a")), poly_vec_from_json<F>(t.at("b")), poly_vec_from_json<F>(t.at("c"))});
  return D;
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j{{"schema", "glinv.verification/1"}, {"target", r.target}, {"rank", r.rank}, {"d", r.d},
                   {"pass", r.pass}, {"message", r.message}};
  if (r.failing_order) j["failing_order"] = *r.failing_order;
  if (r.failing_coordinate) j["failing_coordinate"] = *r.failing_coordinate;
  return j;
}

}  // namespace glinv
