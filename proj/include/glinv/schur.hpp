#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"
#include "partitions.hpp"

namespace glinv {

struct MixedWeight : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A filling of a Young diagram, entries stored row-major.
struct Tableau {
  Partition shape;
  std::vector<int> entries;

  int at(int r, int c) const {
    int pos = 0;
    for (int i = 0; i < r; ++i) pos += shape[i];
    return entries[pos + c];
  }
  friend bool operator==(const Tableau&, const Tableau&) = default;
  friend bool operator<(const Tableau& a, const Tableau& b) {
    if (a.shape != b.shape) return a.shape < b.shape;
    return a.entries < b.entries;
  }
};

inline std::string to_string(const Tableau& t) {
  std::string s = "[";
  int pos = 0;
  for (int r = 0; r < t.shape.length(); ++r) {
    s += r ? ",[" : "[";
    for (int c = 0; c < t.shape[r]; ++c) {
      if (c) s += ',';
      s += std::to_string(t.entries[pos++]);
    }
    s += ']';
  }
  return s + "]";
}

inline Tableau parse_tableau(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Tableau t;
  std::vector<int> rows;
  for (const auto& row : j) {
    rows.push_back(static_cast<int>(row.size()));
    for (const auto& v : row) t.entries.push_back(v.get<int>());
  }
  t.shape = Partition(rows);
  return t;
}

inline bool is_semistandard(const Tableau& t) {
  int pos = 0;
  std::vector<int> start;
  for (int r = 0; r < t.shape.length(); ++r) {
    start.push_back(pos);
    pos += t.shape[r];
  }
  for (int r = 0; r < t.shape.length(); ++r) {
    for (int c = 0; c < t.shape[r]; ++c) {
      int v = t.entries[start[r] + c];
      if (v < 1) return false;
      if (c > 0 && t.entries[start[r] + c - 1] > v) return false;
      if (r > 0 && t.entries[start[r - 1] + c] >= v) return false;
    }
  }
  return true;
}

inline std::vector<int> content(const std::vector<int>& entries, int k) {
  std::vector<int> w(k, 0);
  for (int v : entries) ++w[v - 1];
  return w;
}

inline int weight_height(const std::vector<int>& w) {
  int k = static_cast<int>(w.size()), h = 0;
  for (int a = 0; a < k; ++a) h += (k - 1 - a) * w[a];
  return h;
}

using Coef = std::int64_t;
using IntVec = std::vector<std::pair<int, Coef>>;

inline Coef checked_add(Coef a, Coef b) {
  Coef r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("straightening coefficient overflow");
  return r;
}
inline Coef checked_mul(Coef a, Coef b) {
  Coef r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("straightening coefficient overflow");
  return r;
}

inline void accumulate(std::map<int, Coef>& acc, const IntVec& v, Coef s) {
  for (const auto& [i, c] : v) {
    Coef& slot = acc[i];
    slot = checked_add(slot, checked_mul(s, c));
  }
}

inline IntVec to_intvec(const std::map<int, Coef>& acc) {
  IntVec out;
  for (const auto& [i, c] : acc)
    if (c != 0) out.push_back({i, c});
  return out;
}

// S_lambda(C^k) on the SSYT basis, with memoized straightening.
class SchurModule {
 public:
  SchurModule(Partition shape, int k) : shape_(std::move(shape)), k_(k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    conj_ = shape_.conjugate();
    n_ = shape_.size();
    int pos = 0;
    for (int r = 0; r < shape_.length(); ++r) {
      rowStart_.push_back(pos);
      pos += shape_[r];
    }
    basis_ = enumerate_ssyt(shape_, k_);
    for (int i = 0; i < dim(); ++i) {
      index_.emplace(key(basis_[i]), i);
      weights_.push_back(content(basis_[i], k_));
      spaces_[weights_.back()].push_back(i);
    }
  }

  SchurModule(const SchurModule&) = delete;
  SchurModule& operator=(const SchurModule&) = delete;

  const Partition& shape() const { return shape_; }
  int k() const { return k_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int cells() const { return n_; }
  const std::vector<int>& entries(int idx) const { return basis_[idx]; }
  Tableau tableau(int idx) const { return {shape_, basis_[idx]}; }
  const std::vector<int>& weight(int idx) const { return weights_[idx]; }
  const std::map<std::vector<int>, std::vector<int>>& weight_spaces() const { return spaces_; }
  const std::vector<int>& weight_space(const std::vector<int>& w) const {
    static const std::vector<int> none;
    auto it = spaces_.find(w);
    return it == spaces_.end() ? none : it->second;
  }
  int pos(int r, int c) const { return rowStart_[r] + c; }
  int column_length(int c) const { return conj_[c]; }

  int index_of(const std::vector<int>& e) const {
    auto it = index_.find(key(e));
    return it == index_.end() ? -1 : it->second;
  }

  int highest_weight_index() const {
    std::vector<int> e;
    for (int r = 0; r < shape_.length(); ++r) e.insert(e.end(), shape_[r], r + 1);
    return index_of(e);
  }

  // Expresses an arbitrary filling (row-major) in the SSYT basis.
  IntVec straighten(std::vector<int> e) const {
    int sign = sort_columns(e);
    if (sign == 0) return {};
    std::lock_guard<std::mutex> lock(mutex_);
    IntVec v = straighten_sorted(e);
    if (sign < 0)
      for (auto& [i, c] : v) c = -c;
    return v;
  }

  // E_a: replace one a+1 by a, summed over occurrences.
  const IntVec& raise(int a, int idx) const { return shift(a, idx, true); }
  // F_a: replace one a by a+1.
  const IntVec& lower(int a, int idx) const { return shift(a, idx, false); }

  // Sorts each column increasingly; returns the sign, or 0 on a repeat.
  int sort_columns(std::vector<int>& e) const {
    int sign = 1;
    for (int c = 0; c < shape_.width(); ++c) {
      int len = conj_[c];
      for (int i = 1; i < len; ++i) {
        for (int j = i; j > 0; --j) {
          int& lo = e[pos(j - 1, c)];
          int& hi = e[pos(j, c)];
          if (lo == hi) return 0;
          if (lo < hi) break;
          std::swap(lo, hi);
          sign = -sign;
        }
      }
    }
    return sign;
  }

 private:
  static std::string key(const std::vector<int>& e) { return std::string(e.begin(), e.end()); }

  const IntVec& shift(int a, int idx, bool up) const {
    if (a < 1 || a >= k_) throw std::out_of_range("operator index");
    std::size_t slot = (static_cast<std::size_t>(idx) * (k_ - 1) + (a - 1)) * 2 + (up ? 0 : 1);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (shiftCache_.empty()) shiftCache_.resize(static_cast<std::size_t>(dim()) * (k_ - 1) * 2);
      if (shiftCache_[slot]) return *shiftCache_[slot];
    }
    int from = up ? a + 1 : a, to = up ? a : a + 1;
    std::map<int, Coef> acc;
    const std::vector<int>& base = basis_[idx];
    for (int p = 0; p < n_; ++p) {
      if (base[p] != from) continue;
      std::vector<int> e = base;
      e[p] = to;
      accumulate(acc, straighten(e), 1);
    }
    auto v = std::make_unique<IntVec>(to_intvec(acc));
    std::lock_guard<std::mutex> lock(mutex_);
    if (!shiftCache_[slot]) shiftCache_[slot] = std::move(v);
    return *shiftCache_[slot];
  }

  // e has sorted columns without repeats.
  IntVec straighten_sorted(const std::vector<int>& e) const {
    std::string k = key(e);
    if (auto it = index_.find(k); it != index_.end()) return {{it->second, 1}};
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;

    int vc = -1, vr = -1;
    for (int c = 0; c + 1 < shape_.width() && vc < 0; ++c) {
      for (int r = 0; r < conj_[c + 1]; ++r) {
        if (e[pos(r, c)] > e[pos(r, c + 1)]) {
          vc = c;
          vr = r;
          break;
        }
      }
    }
    if (vc < 0) throw std::logic_error("semistandard filling missing from basis");

    // Exchange the top vr+1 entries of column vc+1 with every (vr+1)-subset
    // of column vc, keeping vertical order.
    int take = vr + 1, len = conj_[vc];
    std::map<int, Coef> acc;
    std::vector<int> pick(len, 0);
    std::fill(pick.begin(), pick.begin() + take, 1);
    std::sort(pick.begin(), pick.end());
    do {
      std::vector<int> s = e;
      int t = 0;
      for (int r = 0; r < len; ++r) {
        if (!pick[r]) continue;
        s[pos(r, vc)] = e[pos(t, vc + 1)];
        s[pos(t, vc + 1)] = e[pos(r, vc)];
        ++t;
      }
      int sign = sort_columns(s);
      if (sign == 0) continue;
      accumulate(acc, straighten_sorted(s), sign);
    } while (std::next_permutation(pick.begin(), pick.end()));
    IntVec out = to_intvec(acc);
    memo_.emplace(k, out);
    return out;
  }

  Partition shape_, conj_;
  int k_, n_;
  std::vector<int> rowStart_;
  std::vector<std::vector<int>> basis_;
  std::vector<std::vector<int>> weights_;
  std::unordered_map<std::string, int> index_;
  std::map<std::vector<int>, std::vector<int>> spaces_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, IntVec> memo_;
  mutable std::vector<std::unique_ptr<IntVec>> shiftCache_;
};

// Shared modules keyed by (shape, k).
inline std::shared_ptr<SchurModule> schur_module(const Partition& shape, int k) {
  static std::mutex m;
  static std::map<std::pair<Partition, int>, std::shared_ptr<SchurModule>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache[{shape, k}];
  if (!slot) slot = std::make_shared<SchurModule>(shape, k);
  return slot;
}

// Formal combination of semistandard tableaux of one shape.
template <class F = Rational>
struct TableauVector {
  Partition shape;
  int k = 0;
  std::map<std::vector<int>, F> terms;

  void add(const std::vector<int>& e, const F& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) terms.erase(it);
    }
  }
  bool is_zero_vector() const { return terms.empty(); }
  F coefficient(const std::vector<int>& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? F(0) : it->second;
  }
  friend bool operator==(const TableauVector& a, const TableauVector& b) {
    return a.shape == b.shape && a.k == b.k && a.terms == b.terms;
  }
};

template <class F>
std::string to_string(const TableauVector<F>& v) {
  if (v.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : v.terms) {
    if (!first) s += " + ";
    first = false;
    s += to_string(c) + "*" + to_string(Tableau{v.shape, e});
  }
  return s;
}

template <class F>
nlohmann::json to_json(const TableauVector<F>& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : v.terms) terms.push_back({{"coeff", to_string(c)}, {"tableau", to_string(Tableau{v.shape, e})}});
  return {{"shape", to_string(v.shape)}, {"k", v.k}, {"terms", terms}};
}

template <class F = Rational>
TableauVector<F> from_intvec(const SchurModule& m, const IntVec& v) {
  TableauVector<F> out{m.shape(), m.k(), {}};
  for (const auto& [i, c] : v) out.add(m.entries(i), F(static_cast<long>(c)));
  return out;
}

inline TableauVector<Rational> straighten(const Tableau& f, int k) {
  for (int v : f.entries)
    if (v < 1 || v > k) throw std::out_of_range("entry outside 1..k");
  auto m = schur_module(f.shape, k);
  return from_intvec(*m, m->straighten(f.entries));
}

template <class F>
std::vector<int> weight(const TableauVector<F>& v) {
  if (v.terms.empty()) throw MixedWeight("zero vector has no weight");
  std::vector<int> w = content(v.terms.begin()->first, v.k);
  for (const auto& [e, c] : v.terms)
    if (content(e, v.k) != w) throw MixedWeight("vector is not a weight vector");
  return w;
}

template <class F>
TableauVector<F> raising_action(int i, const TableauVector<F>& v) {
  auto m = schur_module(v.shape, v.k);
  TableauVector<F> out{v.shape, v.k, {}};
  for (const auto& [e, c] : v.terms) {
    int idx = m->index_of(e);
    for (const auto& [j, d] : m->raise(i, idx)) out.add(m->entries(j), c * F(static_cast<long>(d)));
  }
  return out;
}

template <class F>
TableauVector<F> lowering_action(int i, const TableauVector<F>& v) {
  auto m = schur_module(v.shape, v.k);
  TableauVector<F> out{v.shape, v.k, {}};
  for (const auto& [e, c] : v.terms) {
    int idx = m->index_of(e);
    for (const auto& [j, d] : m->lower(i, idx)) out.add(m->entries(j), c * F(static_cast<long>(d)));
  }
  return out;
}

// e_a -> sum_b g(b,a) e_b on every cell, expanded and straightened.
template <class F>
TableauVector<F> gl_action(const DenseMatrix<F>& g, const TableauVector<F>& v) {
  auto m = schur_module(v.shape, v.k);
  int k = v.k;
  if (g.rows() != k || g.cols() != k) throw DimensionMismatch("gl_action: g must be k x k");
  TableauVector<F> out{v.shape, k, {}};
  int n = m->cells();
  for (const auto& [e, c] : v.terms) {
    std::vector<int> f(n);
    auto rec = [&](auto&& self, int p, F coef) -> void {
      if (p == n) {
        for (const auto& [j, d] : m->straighten(f)) out.add(m->entries(j), coef * F(static_cast<long>(d)));
        return;
      }
      for (int b = 1; b <= k; ++b) {
        const F& gb = g(b - 1, e[p] - 1);
        if (is_zero(gb)) continue;
        f[p] = b;
        self(self, p + 1, coef * gb);
      }
    };
    rec(rec, 0, c);
  }
  return out;
}

inline TableauVector<Rational> highest_weight_vector(const Partition& lam, int k) {
  if (lam.length() > k) throw std::invalid_argument("shape longer than k");
  auto m = schur_module(lam, k);
  TableauVector<Rational> v{lam, k, {}};
  v.add(m->entries(m->highest_weight_index()), 1);
  return v;
}

}  // namespace glinv
