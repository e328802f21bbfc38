#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"

namespace glinv {

struct NotADiagram : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidPair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Weakly decreasing positive parts; the empty partition has no parts.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0 || (i > 0 && parts_[i] > parts_[i - 1]))
        throw NotADiagram("parts must be positive and weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  // 1-based row; rows past the end have length 0.
  int row(int r) const { return r >= 1 && r <= length() ? parts_[r - 1] : 0; }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  int size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  int width() const { return parts_.empty() ? 0 : parts_[0]; }

  Partition conjugate() const {
    std::vector<int> c(width(), 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) ++c[j];
    return Partition(std::move(c));
  }

  bool contains(const Partition& o) const {
    if (o.length() > length()) return false;
    for (int i = 0; i < o.length(); ++i)
      if (o.parts_[i] > parts_[i]) return false;
    return true;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

inline std::string to_string(const Partition& p) {
  if (p.empty()) return "-";
  std::string s;
  for (int i = 0; i < p.length(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.parts()[i]);
  }
  return s;
}

inline Partition parse_partition(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '(' && c != ')' && c != '[' && c != ']') s += c;
  if (s.empty() || s == "-") return {};
  std::vector<int> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw NotADiagram("malformed partition: " + text);
    parts.push_back(std::stoi(tok));
  }
  return Partition(std::move(parts));
}

// Hook-content formula for dim S_lambda C^k.
inline Integer dim_schur(const Partition& lam, int k) {
  if (lam.length() > k) return 0;
  Partition c = lam.conjugate();
  Integer num = 1, den = 1;
  for (int r = 0; r < lam.length(); ++r) {
    for (int j = 0; j < lam.parts()[r]; ++j) {
      num *= k + j - r;
      den *= (lam.parts()[r] - j - 1) + (c.parts()[j] - r - 1) + 1;
    }
  }
  return num / den;
}

inline std::int64_t dim_schur_small(const Partition& lam, int k) { return dim_schur(lam, k).get_si(); }

// Adds a box at the end of 1-based row r.
inline Partition add_cell(const Partition& lam, int r) {
  if (r < 1 || r > lam.length() + 1) throw NotADiagram("row out of range");
  std::vector<int> p = lam.parts();
  if (r == lam.length() + 1) {
    p.push_back(1);
  } else {
    if (r > 1 && p[r - 1] + 1 > p[r - 2]) throw NotADiagram("adding the box breaks the diagram");
    ++p[r - 1];
  }
  return Partition(std::move(p));
}

// Row (1-based) of the single box of nu/mu, or InvalidPair.
inline int added_row(const Partition& mu, const Partition& nu) {
  if (nu.size() != mu.size() + 1 || !nu.contains(mu)) throw InvalidPair("nu/mu is not a single box");
  for (int r = 1; r <= nu.length(); ++r)
    if (nu.row(r) != mu.row(r)) return r;
  throw InvalidPair("nu/mu is not a single box");
}

inline bool is_horizontal_strip(const Partition& outer, const Partition& inner) {
  if (!outer.contains(inner)) return false;
  for (int i = 1; i <= outer.length(); ++i)
    if (inner.row(i) < outer.row(i + 1)) return false;
  return true;
}

inline bool is_vertical_strip(const Partition& outer, const Partition& inner) {
  return is_horizontal_strip(outer.conjugate(), inner.conjugate());
}

enum class Strictness { ColumnStrict, RowStrict };

// Shapes obtained by adding p boxes, at most one per column (ColumnStrict)
// or at most one per row (RowStrict), with at most max_len rows.
inline std::vector<Partition> pieri_expand(const Partition& lam, int p, Strictness mode, int max_len = 1 << 20) {
  std::vector<Partition> out;
  if (mode == Strictness::RowStrict) {
    Partition c = lam.conjugate();
    for (const Partition& q : pieri_expand(c, p, Strictness::ColumnStrict)) {
      Partition t = q.conjugate();
      if (t.length() <= max_len) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  int n = lam.length() + 1;
  std::vector<int> add(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      if (left) return;
      std::vector<int> q(n);
      for (int r = 0; r < n; ++r) q[r] = lam[r] + add[r];
      Partition t(q);
      if (t.length() <= max_len) out.push_back(t);
      return;
    }
    int cap = i == 0 ? left : std::min(left, lam[i - 1] - lam[i]);
    for (int a = 0; a <= cap; ++a) {
      add[i] = a;
      self(self, i + 1, left - a);
    }
    add[i] = 0;
  };
  rec(rec, 0, p);
  std::sort(out.begin(), out.end());
  return out;
}

// Partitions pi with outer/pi a horizontal strip (any size).
inline std::vector<Partition> horizontal_strip_removals(const Partition& outer) {
  std::vector<Partition> out;
  int n = outer.length();
  std::vector<int> q(n);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back(Partition(q));
      return;
    }
    for (int v = outer[i + 1]; v <= outer[i]; ++v) {
      q[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Semistandard tableaux of shape lam in 1..k, row-major entries, in
// lexicographic order of the row-reading word.
inline std::vector<std::vector<int>> enumerate_ssyt(const Partition& lam, int k) {
  std::vector<std::vector<int>> out;
  if (lam.length() > k) return out;
  int n = lam.size();
  std::vector<int> rowOf(n), colOf(n), start(lam.length() + 1, 0);
  for (int r = 0, pos = 0; r < lam.length(); ++r) {
    start[r] = pos;
    for (int c = 0; c < lam.parts()[r]; ++c, ++pos) {
      rowOf[pos] = r;
      colOf[pos] = c;
    }
  }
  Partition conj = lam.conjugate();
  std::vector<int> e(n);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      out.push_back(e);
      return;
    }
    int r = rowOf[pos], c = colOf[pos];
    int lo = 1;
    if (c > 0) lo = std::max(lo, e[pos - 1]);
    if (r > 0) lo = std::max(lo, e[start[r - 1] + c] + 1);
    int hi = k - (conj[c] - 1 - r);
    for (int v = lo; v <= hi; ++v) {
      e[pos] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// c^nu_{lam,mu} for all nu with at most max_len rows, by counting
// Littlewood-Richardson tableaux of shape nu/lam and content mu.
inline std::map<Partition, long> lr_multiplicities(const Partition& lam, const Partition& mu, int max_len = 1 << 20) {
  std::map<Partition, long> out;
  int rows = lam.length() + mu.length();
  // fill[r] = entries of row r of the skew part, left to right.
  std::vector<std::vector<int>> fill(rows);
  std::vector<int> shape(rows, 0);
  for (int r = 0; r < lam.length(); ++r) shape[r] = lam[r];

  auto lattice_ok = [&]() {
    std::vector<int> cnt(mu.length() + 2, 0);
    for (int r = 0; r < rows; ++r) {
      for (int i = static_cast<int>(fill[r].size()) - 1; i >= 0; --i) {
        int v = fill[r][i];
        ++cnt[v];
        if (v > 1 && cnt[v] > cnt[v - 1]) return false;
      }
    }
    return true;
  };

  // Place the label-v horizontal strip of size mu_v on top of the current shape.
  auto rec = [&](auto&& self, int v) -> void {
    if (v > mu.length()) {
      if (!lattice_ok()) return;
      Partition nu(shape);
      if (nu.length() <= max_len) ++out[nu];
      return;
    }
    std::vector<int> base = shape;
    std::vector<int> add(rows, 0);
    auto place = [&](auto&& pself, int r, int left) -> void {
      if (r == rows) {
        if (left) return;
        for (int i = 0; i < rows; ++i) {
          shape[i] = base[i] + add[i];
          fill[i].insert(fill[i].end(), add[i], v);
        }
        self(self, v + 1);
        for (int i = 0; i < rows; ++i) {
          fill[i].resize(fill[i].size() - add[i]);
          shape[i] = base[i];
        }
        return;
      }
      int cap = r == 0 ? left : std::min(left, base[r - 1] - base[r]);
      for (int a = 0; a <= cap; ++a) {
        add[r] = a;
        pself(pself, r + 1, left - a);
      }
      add[r] = 0;
    };
    place(place, 0, mu[v - 1]);
  };
  rec(rec, 1);
  return out;
}

struct GenericRank {
  long rank = 0, ker = 0, coker = 0;
  friend bool operator==(const GenericRank&, const GenericRank&) = default;
};

// Rank, kernel and cokernel dimension of phi_v for nonzero v, from the
// decomposition of S_mu and S_nu under GL(k-1) x GL(1).
inline GenericRank predicted_generic_rank(const Partition& mu, const Partition& nu, int k) {
  int j = added_row(mu, nu);
  if (nu.length() > k) throw InvalidPair("nu longer than k");
  long m = dim_schur(mu, k).get_si(), n = dim_schur(nu, k).get_si();
  if (j == 1) return {m, 0, n - m};
  int col = nu.row(j);  // y = (j, col), x = (j-1, col)
  long rank = 0, ker = 0, coker = 0;
  for (const Partition& pi : horizontal_strip_removals(nu)) {
    long d = dim_schur(pi, k - 1).get_si();
    if (d == 0) continue;
    bool hasX = pi.row(j - 1) >= col, hasY = pi.row(j) >= col;
    if (hasX && !hasY) rank += d;
    if (hasY) coker += d;
  }
  for (const Partition& pi : horizontal_strip_removals(mu)) {
    long d = dim_schur(pi, k - 1).get_si();
    if (d == 0) continue;
    if (pi.row(j - 1) < col) ker += d;
  }
  return {rank, ker, coker};
}

}  // namespace glinv
