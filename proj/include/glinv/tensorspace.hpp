#pragma once

#include <random>
#include <string>
#include <vector>

#include "pieri.hpp"
#include "rank.hpp"

namespace glinv {

struct TensorTerm {
  int i;      // 1..k, index of alpha_i in V*
  int tau;    // SSYT(mu) index
  int sigma;  // SSYT(nu) index
  Rational coeff;
};

// T in V* (x) S_mu V* (x) S_nu V with T(e_i, tau) = P(tau (x) e_i).
struct InvariantTensor {
  int k = 0;
  Partition mu, nu;
  int m = 0, n = 0;
  std::vector<TensorTerm> terms;
};

inline InvariantTensor build_tensor(int k, const Partition& mu, const Partition& nu) {
  auto d = pieri_data(mu, nu, k);
  InvariantTensor t{k, mu, nu, d->mu->dim(), d->nu->dim(), {}};
  for (int tau = 0; tau < t.m; ++tau)
    for (int i = 1; i <= k; ++i)
      for (const auto& [s, c] : d->projection[tau * k + i - 1]) t.terms.push_back({i, tau, s, c});
  return t;
}

inline int pair_index(int i, int j, int k) {
  // lexicographic index of {i < j} among 2-subsets of 1..k
  int idx = 0;
  for (int a = 1; a < i; ++a) idx += k - a;
  return idx + (j - i - 1);
}

// T_k = sum_{i<j} a_i (x) a_j (x) e_ij - a_j (x) a_i (x) e_ij, with e_ij the
// SSYT [[i],[j]] of shape (1,1).
inline InvariantTensor build_skew_tensor(int k) {
  if (k < 2) throw std::invalid_argument("k >= 2 required");
  InvariantTensor t{k, Partition{1}, Partition{1, 1}, k, k * (k - 1) / 2, {}};
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      t.terms.push_back({i, j - 1, pair_index(i, j, k), Rational(1)});
      t.terms.push_back({j, i - 1, pair_index(i, j, k), Rational(-1)});
    }
  return t;
}

// phi_v as an n x m matrix (rows SSYT(nu), columns SSYT(mu)).
inline ExactMatrix matrix_at(const InvariantTensor& t, const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != t.k) throw DimensionMismatch("matrix_at: vector length");
  ExactMatrix m(t.n, t.m);
  for (const auto& term : t.terms) m.add(term.sigma, term.tau, term.coeff * v[term.i - 1]);
  return m;
}

struct RankSample {
  std::vector<Rational> v;
  long rank, ker, coker;
};

struct ConstantRankReport {
  GenericRank predicted;
  std::vector<RankSample> samples;
  std::vector<RankSample> violations;
  bool ok() const { return violations.empty(); }
};

inline std::vector<Rational> random_nonzero_vector(int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-9, 9);
  for (;;) {
    std::vector<Rational> v(k);
    bool nz = false;
    for (auto& x : v) {
      x = dist(rng);
      nz = nz || sgn(x) != 0;
    }
    if (nz) return v;
  }
}

inline ConstantRankReport constant_rank_check(const InvariantTensor& t, int samples, std::uint64_t seed = 1) {
  ConstantRankReport rep;
  rep.predicted = predicted_generic_rank(t.mu, t.nu, t.k);
  std::vector<std::vector<Rational>> points;
  for (int i = 0; i < t.k; ++i) {
    std::vector<Rational> e(t.k, 0);
    e[i] = 1;
    points.push_back(e);
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) points.push_back(random_nonzero_vector(t.k, rng));
  for (auto& v : points) {
    long r = rank_exact(matrix_at(t, v));
    RankSample s{v, r, t.m - r, t.n - r};
    if (s.rank != rep.predicted.rank || s.ker != rep.predicted.ker || s.coker != rep.predicted.coker)
      rep.violations.push_back(s);
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

struct Conciseness {
  int a, b, c;
};

inline Conciseness conciseness_check(const InvariantTensor& t) {
  ExactMatrix ta(t.k, t.m * t.n), tb(t.m, t.k * t.n), tc(t.n, t.k * t.m);
  for (const auto& x : t.terms) {
    ta.add(x.i - 1, x.tau * t.n + x.sigma, x.coeff);
    tb.add(x.tau, (x.i - 1) * t.n + x.sigma, x.coeff);
    tc.add(x.sigma, (x.i - 1) * t.m + x.tau, x.coeff);
  }
  return {rank_exact(ta), rank_exact(tb), rank_exact(tc)};
}

inline std::string linear_form(const std::vector<std::pair<int, Rational>>& coeffs, bool latex) {
  std::string s;
  for (const auto& [i, c] : coeffs) {
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    std::string var = latex ? "x_{" + std::to_string(i) + "}" : "x" + std::to_string(i);
    if (!s.empty())
      s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0)
      s += "-";
    if (a != 1) s += to_string(a) + (latex ? "" : "*");
    s += var;
  }
  return s.empty() ? "0" : s;
}

// The matrix of linear forms in x_1..x_k, as aligned text or LaTeX pmatrix.
inline std::string format_linear_space(const InvariantTensor& t, bool latex) {
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> cell(t.n, std::vector<std::vector<std::pair<int, Rational>>>(t.m));
  for (const auto& x : t.terms) cell[x.sigma][x.tau].push_back({x.i, x.coeff});
  std::vector<std::vector<std::string>> txt(t.n, std::vector<std::string>(t.m));
  std::size_t w = 1;
  for (int r = 0; r < t.n; ++r)
    for (int c = 0; c < t.m; ++c) {
      auto v = cell[r][c];
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      txt[r][c] = linear_form(v, latex);
      w = std::max(w, txt[r][c].size());
    }
  std::string out = latex ? "\\begin{pmatrix}\n" : "";
  for (int r = 0; r < t.n; ++r) {
    for (int c = 0; c < t.m; ++c) {
      if (latex) {
        out += (c ? " & " : "  ") + txt[r][c];
      } else {
        out += (c ? "  " : "") + std::string(w - txt[r][c].size(), ' ') + txt[r][c];
      }
    }
    out += latex ? (r + 1 < t.n ? " \\\\\n" : "\n") : "\n";
  }
  if (latex) out += "\\end{pmatrix}\n";
  return out;
}

inline nlohmann::json to_json(const InvariantTensor& t) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& x : t.terms)
    terms.push_back({{"i", x.i}, {"tau_index", x.tau}, {"sigma_index", x.sigma}, {"coeff", to_string(x.coeff)}});
  return {{"schema", "glinv.tensor/1"}, {"k", t.k}, {"mu", to_string(t.mu)}, {"nu", to_string(t.nu)},
          {"m", t.m}, {"n", t.n}, {"terms", terms}};
}

inline InvariantTensor tensor_from_json(const nlohmann::json& j) {
  InvariantTensor t;
  t.k = j.at("k").get<int>();
  t.mu = parse_partition(j.at("mu").get<std::string>());
  t.nu = parse_partition(j.at("nu").get<std::string>());
  t.m = static_cast<int>(dim_schur(t.mu, t.k).get_si());
  t.n = static_cast<int>(dim_schur(t.nu, t.k).get_si());
  for (const auto& x : j.at("terms"))
    t.terms.push_back({x.at("i").get<int>(), x.at("tau_index").get<int>(), x.at("sigma_index").get<int>(),
                       parse_rational(x.at("coeff").get<std::string>())});
  return t;
}

}  // namespace glinv
