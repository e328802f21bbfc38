#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "pieri.hpp"

namespace glinv {

// Ranks of GL-equivariant maps out of S_mu (x) S_nu, computed one isotypic
// component at a time over Z/p. For each dominant pi the highest weight
// vectors of weight pi are solved for by propagating down the weights of the
// first factor, then their images are tested for independence.

struct HwComponent {
  Partition pi;
  long multiplicity = 0;  // LR coefficient
  long hw_dim = 0;        // computed dimension of highest weight vectors
  long image_rank = 0;
  long dim = 0;           // dim S_pi
};

struct HwRankResult {
  std::uint64_t prime = 0;
  long rank = 0;
  long expected = 0;
  bool full = false;
  bool consistent = true;  // hw_dim == multiplicity for every pi
  std::vector<HwComponent> components;
};

namespace detail {

// Incremental row echelon basis over Z/p for vectors of fixed length.
class Echelon {
 public:
  explicit Echelon(int n) : n_(n) {}
  bool add(std::vector<Zp> v) {
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      const Zp f = v[lead_[b]];
      if (f.value() == 0) continue;
      for (int j = lead_[b]; j < n_; ++j)
        if (rows_[b][j].value()) v[j] -= f * rows_[b][j];
    }
    int l = 0;
    while (l < n_ && v[l].value() == 0) ++l;
    if (l == n_) return false;
    Zp inv = v[l].inverse();
    for (int j = l; j < n_; ++j) v[j] *= inv;
    // keep fully reduced so kernel extraction is direct
    for (auto& row : rows_) {
      const Zp f = row[l];
      if (f.value() == 0) continue;
      for (int j = l; j < n_; ++j)
        if (v[j].value()) row[j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    lead_.push_back(l);
    return true;
  }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool full() const { return rank() == n_; }
  std::vector<std::vector<Zp>> kernel() const {
    std::vector<char> piv(n_, 0);
    for (int l : lead_) piv[l] = 1;
    std::vector<std::vector<Zp>> out;
    for (int f = 0; f < n_; ++f) {
      if (piv[f]) continue;
      std::vector<Zp> v(n_, Zp(0));
      v[f] = Zp(1);
      for (std::size_t b = 0; b < rows_.size(); ++b) v[lead_[b]] = -rows_[b][f];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  int n_;
  std::vector<std::vector<Zp>> rows_;
  std::vector<int> lead_;
};

inline std::vector<int> raised_weight(std::vector<int> w, int a) {
  ++w[a - 1];
  --w[a];
  return w;
}

}  // namespace detail

// Element of S_mu (x) S_nu as ((kappa, sigma), coefficient) pairs.
using ProductVector = std::vector<std::pair<std::pair<int, int>, Zp>>;

// Highest weight vectors in S_mu (x) S_nu over the current Z/p modulus.
class HighestWeightSolver {
 public:
  HighestWeightSolver(std::shared_ptr<SchurModule> a, std::shared_ptr<SchurModule> b)
      : A_(std::move(a)), B_(std::move(b)), k_(A_->k()) {
    posA_.resize(A_->dim());
    posB_.resize(B_->dim());
    for (const auto& [w, xs] : A_->weight_spaces())
      for (std::size_t i = 0; i < xs.size(); ++i) posA_[xs[i]] = static_cast<int>(i);
    for (const auto& [w, xs] : B_->weight_spaces())
      for (std::size_t i = 0; i < xs.size(); ++i) posB_[xs[i]] = static_cast<int>(i);
    for (const auto& [w, xs] : A_->weight_spaces()) order_.push_back(w);
    std::stable_sort(order_.begin(), order_.end(),
                     [](const auto& x, const auto& y) { return weight_height(x) > weight_height(y); });
    for (std::size_t i = 0; i < order_.size(); ++i) orderIndex_[order_[i]] = static_cast<int>(i);
    top_ = padded(A_->shape(), k_);
    solvers_.resize(order_.size());
    for (std::size_t ui = 0; ui < order_.size(); ++ui)
      if (order_[ui] != top_) build_solver(ui);
  }

  // Basis of highest weight vectors of weight pi.
  std::vector<ProductVector> vectors(const Partition& pi) const {
    using detail::raised_weight;
    const std::vector<int> piw = padded(pi, k_);
    auto diff = [&](const std::vector<int>& u) {
      std::vector<int> d(k_);
      for (int a = 0; a < k_; ++a) d[a] = piw[a] - u[a];
      return d;
    };
    const int np = static_cast<int>(B_->weight_space(diff(top_)).size());
    if (np == 0) return {};
    detail::Echelon constraints(np);

    // X[ui] laid out [kappa local][sigma local][param].
    std::vector<std::vector<Zp>> X(order_.size());
    for (std::size_t ui = 0; ui < order_.size(); ++ui) {
      const auto& u = order_[ui];
      const int da = static_cast<int>(A_->weight_space(u).size());
      const int db = static_cast<int>(B_->weight_space(diff(u)).size());
      if (db == 0) continue;
      X[ui].assign(static_cast<std::size_t>(da) * db * np, Zp(0));
      if (u == top_) {
        for (int j = 0; j < np; ++j) X[ui][static_cast<std::size_t>(j) * np + j] = Zp(1);
        continue;
      }
      const Solver& s = solvers_[ui];
      const int R = static_cast<int>(s.rows.size());
      // rhs[row][sigma][j] = -(1 (x) E_a) X_{u+alpha_a}
      std::vector<Zp> rhs(static_cast<std::size_t>(R) * db * np, Zp(0));
      for (int r = 0; r < R; ++r) {
        auto [a, kp] = s.rows[r];
        int wi = orderIndex_.at(raised_weight(u, a));
        if (X[wi].empty()) continue;
        const auto& bw = B_->weight_space(diff(order_[wi]));
        const int dbw = static_cast<int>(bw.size());
        const int kl = posA_[kp];
        for (int sl = 0; sl < dbw; ++sl) {
          const Zp* src = &X[wi][(static_cast<std::size_t>(kl) * dbw + sl) * np];
          for (const auto& [t, c] : B_->raise(a, bw[sl])) {
            Zp f = -Zp(c);
            Zp* dst = &rhs[(static_cast<std::size_t>(r) * db + posB_[t]) * np];
            for (int j = 0; j < np; ++j)
              if (src[j].value()) dst[j] += f * src[j];
          }
        }
      }
      auto& x = X[ui];
      for (int c = 0; c < da; ++c)
        for (int q = 0; q < da; ++q) {
          Zp f = s.inv(c, q);
          if (f.value() == 0) continue;
          const Zp* src = &rhs[static_cast<std::size_t>(s.sel[q]) * db * np];
          Zp* dst = &x[static_cast<std::size_t>(c) * db * np];
          for (int z = 0; z < db * np; ++z)
            if (src[z].value()) dst[z] += f * src[z];
        }
      // residual on the rows not used for solving
      std::vector<char> isSel(R, 0);
      for (int q : s.sel) isSel[q] = 1;
      for (int r = 0; r < R && !constraints.full(); ++r) {
        if (isSel[r]) continue;
        for (int sl = 0; sl < db; ++sl) {
          std::vector<Zp> v(np, Zp(0));
          for (int c = 0; c < da; ++c) {
            Zp f = s.M(r, c);
            if (f.value() == 0) continue;
            const Zp* src = &x[(static_cast<std::size_t>(c) * db + sl) * np];
            for (int j = 0; j < np; ++j) v[j] += f * src[j];
          }
          const Zp* rr = &rhs[(static_cast<std::size_t>(r) * db + sl) * np];
          bool nz = false;
          for (int j = 0; j < np; ++j) {
            v[j] -= rr[j];
            nz = nz || v[j].value();
          }
          if (nz) constraints.add(std::move(v));
        }
      }
    }
    // (1 (x) E_a) X_w = 0 where w - alpha_a is not a weight of S_mu.
    for (std::size_t wi = 0; wi < order_.size(); ++wi) {
      if (X[wi].empty()) continue;
      const auto& w = order_[wi];
      const auto& xs = A_->weight_space(w);
      const auto& bw = B_->weight_space(diff(w));
      const std::size_t dbw = bw.size();
      for (int a = 1; a < k_; ++a) {
        std::vector<int> lowered = w;
        --lowered[a - 1];
        ++lowered[a];
        if (orderIndex_.count(lowered)) continue;
        const auto& bt = B_->weight_space(raised_weight(diff(w), a));
        if (bt.empty()) continue;
        for (std::size_t kl = 0; kl < xs.size(); ++kl) {
          std::vector<std::vector<Zp>> acc(bt.size(), std::vector<Zp>(np, Zp(0)));
          for (std::size_t sl = 0; sl < dbw; ++sl) {
            const Zp* src = &X[wi][(kl * dbw + sl) * np];
            for (const auto& [t, c] : B_->raise(a, bw[sl])) {
              Zp f(c);
              for (int j = 0; j < np; ++j) acc[posB_[t]][j] += f * src[j];
            }
          }
          for (auto& v : acc)
            if (std::any_of(v.begin(), v.end(), [](const Zp& z) { return z.value() != 0; }))
              constraints.add(std::move(v));
        }
      }
    }

    std::vector<ProductVector> out;
    for (const auto& kv : constraints.kernel()) {
      ProductVector vec;
      for (std::size_t ui = 0; ui < order_.size(); ++ui) {
        if (X[ui].empty()) continue;
        const auto& xs = A_->weight_space(order_[ui]);
        const auto& bs = B_->weight_space(diff(order_[ui]));
        const std::size_t db = bs.size();
        for (std::size_t kl = 0; kl < xs.size(); ++kl)
          for (std::size_t sl = 0; sl < db; ++sl) {
            const Zp* src = &X[ui][(kl * db + sl) * np];
            Zp coef(0);
            for (int j = 0; j < np; ++j)
              if (src[j].value()) coef += src[j] * kv[j];
            if (coef.value()) vec.push_back({{xs[kl], bs[sl]}, coef});
          }
      }
      out.push_back(std::move(vec));
    }
    return out;
  }

  // Applies every raising operator and reports whether all results vanish.
  bool is_highest_weight(const ProductVector& v) const {
    for (int a = 1; a < k_; ++a) {
      std::map<std::pair<int, int>, Zp> acc;
      for (const auto& [ks, c] : v) {
        for (const auto& [t, d] : A_->raise(a, ks.first)) acc[{t, ks.second}] += c * Zp(d);
        for (const auto& [t, d] : B_->raise(a, ks.second)) acc[{ks.first, t}] += c * Zp(d);
      }
      for (const auto& [key, z] : acc)
        if (z.value()) return false;
    }
    return true;
  }

 private:
  struct Solver {
    std::vector<std::pair<int, int>> rows;  // (a, kappa')
    DenseMatrix<Zp> M;                      // rows x dim A_u
    std::vector<int> sel;
    DenseMatrix<Zp> inv;  // inverse of M restricted to sel
  };

  void build_solver(std::size_t ui) {
    const auto& u = order_[ui];
    const auto& xs = A_->weight_space(u);
    Solver& s = solvers_[ui];
    for (int a = 1; a < k_; ++a)
      for (int kp : A_->weight_space(detail::raised_weight(u, a))) s.rows.push_back({a, kp});
    const int d = static_cast<int>(xs.size());
    s.M = DenseMatrix<Zp>(static_cast<int>(s.rows.size()), d);
    std::map<std::pair<int, int>, int> rowOf;
    for (std::size_t r = 0; r < s.rows.size(); ++r) rowOf[s.rows[r]] = static_cast<int>(r);
    for (int c = 0; c < d; ++c)
      for (int a = 1; a < k_; ++a)
        for (const auto& [t, v] : A_->raise(a, xs[c])) s.M(rowOf.at({a, t}), c) += Zp(v);
    s.sel = independent_rows(s.M);
    if (static_cast<int>(s.sel.size()) != d) throw std::logic_error("raising map not injective below the top weight");
    DenseMatrix<Zp> sq(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) sq(r, c) = s.M(s.sel[r], c);
    s.inv = inverse(sq);
  }

  std::shared_ptr<SchurModule> A_, B_;
  int k_;
  std::vector<int> posA_, posB_;
  std::vector<std::vector<int>> order_;
  std::map<std::vector<int>, int> orderIndex_;
  std::vector<int> top_;
  std::vector<Solver> solvers_;
};

// Rank of an equivariant map on S_mu (x) S_nu given by
// image(kappa, sigma, emit) with emit(long coordinate, Zp value).
template <class Image>
HwRankResult equivariant_rank(const Partition& mu, const Partition& nu, int k, std::uint64_t p, long codomainDim,
                              Image&& image) {
  Zp::Scope scope(p);
  HighestWeightSolver solver(schur_module(mu, k), schur_module(nu, k));
  HwRankResult res;
  res.prime = p;
  res.expected = codomainDim;
  for (const auto& [pi, mult] : lr_multiplicities(mu, nu, k)) {
    HwComponent comp{pi, mult, 0, 0, dim_schur(pi, k).get_si()};
    auto hw = solver.vectors(pi);
    comp.hw_dim = static_cast<long>(hw.size());
    std::unordered_map<long, int> cpos;
    std::vector<std::unordered_map<int, Zp>> images(hw.size());
    for (std::size_t h = 0; h < hw.size(); ++h)
      for (const auto& [ks, coef] : hw[h])
        image(ks.first, ks.second, [&](long key, Zp val) {
          auto [it, fresh] = cpos.try_emplace(key, static_cast<int>(cpos.size()));
          images[h][it->second] += coef * val;
        });
    detail::Echelon img(static_cast<int>(cpos.size()));
    for (auto& im : images) {
      std::vector<Zp> v(cpos.size(), Zp(0));
      for (const auto& [c, z] : im) v[c] = z;
      img.add(std::move(v));
    }
    comp.image_rank = img.rank();
    res.consistent = res.consistent && comp.hw_dim == comp.multiplicity;
    res.rank += comp.image_rank * comp.dim;
    res.components.push_back(comp);
  }
  res.full = res.consistent && res.rank == res.expected;
  return res;
}

// T': kappa (x) sigma -> sum iota(sigma)[tau, i] P(kappa (x) alpha_i) (x) tau,
// with codomain coordinates lambda*m + tau.
inline HwRankResult young_rank_by_highest_weights(const Partition& mu, const Partition& nu, int k, std::uint64_t p) {
  Zp::Scope scope(p);
  auto A = schur_module(mu, k);
  auto B = schur_module(nu, k);
  const long m = A->dim(), n = B->dim();
  auto proj = pieri_projection_columns<Zp>(*A, *B);
  auto incl = pieri_inclusion_columns<Zp>(*A, *B);
  return equivariant_rank(mu, nu, k, p, m * n, [&](int kappa, int sigma, auto&& emit) {
    for (const auto& [x, c] : incl[sigma]) {
      int tau = x / k, i = x % k;
      for (const auto& [lam, d] : proj[static_cast<std::size_t>(kappa) * k + i]) emit(lam * m + tau, c * d);
    }
  });
}

}  // namespace glinv
