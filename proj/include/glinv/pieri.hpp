#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "schur.hpp"

namespace glinv {

template <class F>
using FVec = std::vector<std::pair<int, F>>;

// Basis of S_mu (x) V: index tau*k + (i-1).
inline std::vector<int> tensor_weight(const SchurModule& mu, int x) {
  int k = mu.k();
  std::vector<int> w = mu.weight(x / k);
  ++w[x % k];
  return w;
}

inline IntVec merge_terms(IntVec v) {
  std::sort(v.begin(), v.end());
  IntVec out;
  for (const auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.push_back({i, c});
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  return out;
}

inline IntVec tensor_raise(const SchurModule& mu, int a, int x) {
  int k = mu.k(), tau = x / k, i = x % k + 1;
  IntVec out;
  for (const auto& [t, c] : mu.raise(a, tau)) out.push_back({t * k + i - 1, c});
  if (i == a + 1) out.push_back({tau * k + a - 1, 1});
  return merge_terms(std::move(out));
}

inline IntVec tensor_lower(const SchurModule& mu, int a, int x) {
  int k = mu.k(), tau = x / k, i = x % k + 1;
  IntVec out;
  for (const auto& [t, c] : mu.lower(a, tau)) out.push_back({t * k + i - 1, c});
  if (i == a) out.push_back({tau * k + a, 1});
  return merge_terms(std::move(out));
}

inline std::vector<int> padded(const Partition& p, int k) {
  std::vector<int> w(k, 0);
  for (int i = 0; i < p.length() && i < k; ++i) w[i] = p[i];
  return w;
}

inline std::vector<int> shifted(std::vector<int> w, int a, int sign) {
  w[a - 1] += sign;
  w[a] -= sign;
  return w;
}

template <class F>
FVec<F> to_fvec(const std::map<int, F>& acc) {
  FVec<F> out;
  for (const auto& [i, c] : acc)
    if (!is_zero(c)) out.push_back({i, c});
  return out;
}

// Scales a family of rational vectors to primitive integers, first nonzero
// coefficient positive.
inline void normalize_family(std::vector<FVec<Rational>>& cols) {
  Integer g = 0, l = 1;
  const Rational* first = nullptr;
  for (const auto& col : cols) {
    for (const auto& [i, c] : col) {
      if (!first) first = &c;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
  }
  if (!first) return;
  Rational s = Rational(l) / Rational(g);
  if (sgn(*first) < 0) s = -s;
  for (auto& col : cols)
    for (auto& [i, c] : col) c *= s;
}

template <class F>
void normalize_family(std::vector<FVec<F>>&) {}

// Equivariant projection P: S_mu (x) V -> S_nu, by the recursion
// E_a P(x) = P(E_a x) from the top weight down. At the weight nu itself P is
// the functional vanishing on images of lowering operators.
template <class F>
std::vector<FVec<F>> pieri_projection_columns(const SchurModule& mu, const SchurModule& nu) {
  added_row(mu.shape(), nu.shape());
  int k = mu.k();
  if (nu.k() != k) throw InvalidPair("modules over different k");
  if (nu.shape().length() > k) throw InvalidPair("nu longer than k");
  int D = mu.dim() * k;
  std::map<std::vector<int>, std::vector<int>> dom;
  for (int x = 0; x < D; ++x) dom[tensor_weight(mu, x)].push_back(x);
  std::vector<std::vector<int>> order;
  for (const auto& [w, xs] : dom) order.push_back(w);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return weight_height(a) > weight_height(b); });

  std::vector<FVec<F>> img(D);
  const std::vector<int> top = padded(nu.shape(), k);
  static const std::vector<int> none;
  auto dom_at = [&](const std::vector<int>& w) -> const std::vector<int>& {
    auto it = dom.find(w);
    return it == dom.end() ? none : it->second;
  };

  for (const auto& w : order) {
    const std::vector<int>& B = nu.weight_space(w);
    if (B.empty()) continue;
    const std::vector<int>& X = dom.at(w);

    if (w == top) {
      std::unordered_map<int, int> xpos;
      for (std::size_t t = 0; t < X.size(); ++t) xpos[X[t]] = static_cast<int>(t);
      std::vector<std::vector<F>> rowsF;
      for (int a = 1; a < k; ++a) {
        std::vector<int> up = shifted(w, a, 1);
        if (up[a] < 0) continue;
        for (int x2 : dom_at(up)) {
          std::vector<F> r(X.size(), F(0));
          for (const auto& [x3, c] : tensor_lower(mu, a, x2)) r[xpos.at(x3)] += F(static_cast<long>(c));
          rowsF.push_back(std::move(r));
        }
      }
      DenseMatrix<F> A(static_cast<int>(rowsF.size()), static_cast<int>(X.size()));
      for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) A(r, c) = rowsF[r][c];
      auto ker = dense_kernel(A);
      if (ker.size() != 1) throw std::logic_error("top weight functional is not unique");
      for (std::size_t t = 0; t < X.size(); ++t)
        if (!is_zero(ker[0][t])) img[X[t]] = {{B[0], ker[0][t]}};
      continue;
    }

    int d = static_cast<int>(B.size());
    std::vector<std::unordered_map<int, int>> rowOf(k);
    int nrows = 0;
    for (int a = 1; a < k; ++a) {
      std::vector<int> up = shifted(w, a, 1);
      if (up[a] < 0) continue;
      for (int s2 : nu.weight_space(up)) rowOf[a][s2] = nrows++;
    }
    DenseMatrix<F> R(nrows, d);
    for (int s = 0; s < d; ++s)
      for (int a = 1; a < k; ++a)
        for (const auto& [s2, c] : nu.raise(a, B[s])) R(rowOf[a].at(s2), s) += F(static_cast<long>(c));
    std::vector<int> sel = independent_rows(R);
    if (static_cast<int>(sel.size()) != d) throw std::logic_error("raising operators not injective below the top");
    DenseMatrix<F> Rs(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) Rs(r, c) = R(sel[r], c);
    DenseMatrix<F> G = inverse(Rs);

    for (int x : X) {
      std::vector<F> rhs(nrows, F(0));
      for (int a = 1; a < k; ++a) {
        if (rowOf[a].empty()) continue;
        for (const auto& [x2, c] : tensor_raise(mu, a, x)) {
          F cf(static_cast<long>(c));
          for (const auto& [s2, f] : img[x2]) rhs[rowOf[a].at(s2)] += cf * f;
        }
      }
      std::vector<F> y(d, F(0));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          if (!is_zero(G(r, c)) && !is_zero(rhs[sel[c]])) y[r] += G(r, c) * rhs[sel[c]];
      for (int r = 0; r < nrows; ++r) {
        F lhs(0);
        for (int c = 0; c < d; ++c)
          if (!is_zero(R(r, c))) lhs += R(r, c) * y[c];
        if (!(lhs == rhs[r])) throw std::logic_error("Pieri projection failed the equivariance check");
      }
      FVec<F> col;
      for (int s = 0; s < d; ++s)
        if (!is_zero(y[s])) col.push_back({B[s], y[s]});
      std::sort(col.begin(), col.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
      img[x] = std::move(col);
    }
  }
  normalize_family(img);
  return img;
}

// Equivariant inclusion I: S_nu -> S_mu (x) V, by I(F_a y) = F_a I(y) from
// the highest weight vector down.
template <class F>
std::vector<FVec<F>> pieri_inclusion_columns(const SchurModule& mu, const SchurModule& nu) {
  added_row(mu.shape(), nu.shape());
  int k = mu.k();
  if (nu.k() != k) throw InvalidPair("modules over different k");
  if (nu.shape().length() > k) throw InvalidPair("nu longer than k");
  int D = mu.dim() * k;
  std::map<std::vector<int>, std::vector<int>> dom;
  for (int x = 0; x < D; ++x) dom[tensor_weight(mu, x)].push_back(x);
  std::vector<std::vector<int>> order;
  for (const auto& [w, s] : nu.weight_spaces()) order.push_back(w);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return weight_height(a) > weight_height(b); });

  std::vector<FVec<F>> img(nu.dim());
  const std::vector<int> top = padded(nu.shape(), k);

  for (const auto& w : order) {
    const std::vector<int>& B = nu.weight_space(w);
    if (w == top) {
      const std::vector<int>& X = dom.at(w);
      std::unordered_map<int, int> xpos;
      for (std::size_t t = 0; t < X.size(); ++t) xpos[X[t]] = static_cast<int>(t);
      int nrows = 0;
      std::vector<std::unordered_map<int, int>> rowOf(k);
      for (int a = 1; a < k; ++a) {
        auto it = dom.find(shifted(w, a, 1));
        if (it == dom.end()) continue;
        for (int x2 : it->second) rowOf[a][x2] = nrows++;
      }
      DenseMatrix<F> E(nrows, static_cast<int>(X.size()));
      for (std::size_t t = 0; t < X.size(); ++t)
        for (int a = 1; a < k; ++a)
          for (const auto& [x2, c] : tensor_raise(mu, a, X[t])) E(rowOf[a].at(x2), static_cast<int>(t)) += F(static_cast<long>(c));
      auto ker = dense_kernel(E);
      if (ker.size() != 1) throw std::logic_error("highest weight vector of the nu component is not unique");
      FVec<F> h;
      for (std::size_t t = 0; t < X.size(); ++t)
        if (!is_zero(ker[0][t])) h.push_back({X[t], ker[0][t]});
      std::sort(h.begin(), h.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
      img[B[0]] = std::move(h);
      continue;
    }

    int d = static_cast<int>(B.size());
    std::unordered_map<int, int> bpos;
    for (int s = 0; s < d; ++s) bpos[B[s]] = s;
    std::vector<std::pair<int, int>> cols;  // (a, sigma')
    for (int a = 1; a < k; ++a) {
      std::vector<int> up = shifted(w, a, 1);
      if (up[a] < 0) continue;
      for (int s2 : nu.weight_space(up)) cols.push_back({a, s2});
    }
    DenseMatrix<F> Ft(static_cast<int>(cols.size()), d);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [s, v] : nu.lower(cols[c].first, cols[c].second)) Ft(static_cast<int>(c), bpos.at(s)) += F(static_cast<long>(v));
    std::vector<int> sel = independent_rows(Ft);
    if (static_cast<int>(sel.size()) != d) throw std::logic_error("lowering operators do not span");
    DenseMatrix<F> Fs(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) Fs(c, r) = Ft(sel[r], c);
    DenseMatrix<F> C = inverse(Fs);  // e_sigma = sum_s C(s, sigma) F_{a_s} e_{sigma'_s}

    std::vector<std::map<int, F>> lowered(d);
    for (int s = 0; s < d; ++s) {
      auto [a, s2] = cols[sel[s]];
      for (const auto& [x, f] : img[s2])
        for (const auto& [x2, c] : tensor_lower(mu, a, x)) lowered[s][x2] += f * F(static_cast<long>(c));
    }
    for (int t = 0; t < d; ++t) {
      std::map<int, F> acc;
      for (int s = 0; s < d; ++s) {
        if (is_zero(C(s, t))) continue;
        for (const auto& [x, f] : lowered[s]) acc[x] += C(s, t) * f;
      }
      img[B[t]] = to_fvec(acc);
    }
  }
  normalize_family(img);
  return img;
}

// Columns of the Cartan product S_a (x) S_b -> S_{a+b}: concatenate the
// columns of both tableaux (longest first) and straighten. Index ta*dim(b)+tb.
inline std::vector<IntVec> cartan_product_columns(const SchurModule& A, const SchurModule& B, const SchurModule& C) {
  std::vector<int> sum(std::max(A.shape().length(), B.shape().length()));
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = A.shape()[i] + B.shape()[i];
  if (Partition(sum) != C.shape() || A.k() != C.k() || B.k() != C.k()) throw InvalidPair("not a Cartan product");
  auto columns = [](const SchurModule& M, int idx) {
    std::vector<std::vector<int>> cols;
    for (int c = 0; c < M.shape().width(); ++c) {
      std::vector<int> col;
      for (int r = 0; r < M.column_length(c); ++r) col.push_back(M.entries(idx)[M.pos(r, c)]);
      cols.push_back(std::move(col));
    }
    return cols;
  };
  std::vector<IntVec> out;
  for (int ta = 0; ta < A.dim(); ++ta) {
    for (int tb = 0; tb < B.dim(); ++tb) {
      auto cols = columns(A, ta);
      auto cb = columns(B, tb);
      cols.insert(cols.end(), cb.begin(), cb.end());
      std::stable_sort(cols.begin(), cols.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
      std::vector<int> e(C.cells());
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < cols[c].size(); ++r) e[C.pos(static_cast<int>(r), static_cast<int>(c))] = cols[c][r];
      out.push_back(C.straighten(e));
    }
  }
  return out;
}

struct PieriData {
  std::shared_ptr<SchurModule> mu, nu;
  std::vector<FVec<Rational>> projection;  // index tau*k + i-1
};

// Rational projection maps shared by (mu, nu, k).
inline std::shared_ptr<const PieriData> pieri_data(const Partition& mu, const Partition& nu, int k) {
  static std::mutex m;
  static std::map<std::tuple<Partition, Partition, int>, std::shared_ptr<PieriData>> cache;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find({mu, nu, k});
    if (it != cache.end()) return it->second;
  }
  auto d = std::make_shared<PieriData>();
  d->mu = schur_module(mu, k);
  d->nu = schur_module(nu, k);
  d->projection = pieri_projection_columns<Rational>(*d->mu, *d->nu);
  std::lock_guard<std::mutex> lock(m);
  return cache.emplace(std::make_tuple(mu, nu, k), d).first->second;
}

inline TableauVector<Rational> pieri_project(const Tableau& tau, int i, const Partition& nu, int k) {
  auto d = pieri_data(tau.shape, nu, k);
  if (i < 1 || i > k) throw std::out_of_range("basis index i");
  int t = d->mu->index_of(tau.entries);
  if (t < 0) throw std::invalid_argument("tau is not semistandard");
  TableauVector<Rational> out{nu, k, {}};
  for (const auto& [s, c] : d->projection[t * k + i - 1]) out.add(d->nu->entries(s), c);
  return out;
}

}  // namespace glinv
