#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "highest_weight.hpp"
#include "tensorspace.hpp"

namespace glinv {

inline long binom(long n, long r) {
  if (r < 0 || n < 0 || r > n) return 0;
  long out = 1;
  for (long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

// p-subsets of {1..n} in lexicographic order.
inline std::vector<std::vector<int>> subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

// Koszul flattening Lambda^p H (x) S_nu V* -> Lambda^{p+1} H (x) S_mu V*, with
// H spanned by alpha_1..alpha_h (h = k gives the full map). Rows (L, tau),
// columns (K, sigma); alpha_K ^ alpha_i is reordered with its sign.
inline ExactMatrix koszul_matrix(const InvariantTensor& t, int p, int h = -1) {
  if (h < 0) h = t.k;
  if (h < 1 || h > t.k) throw std::invalid_argument("koszul_matrix: bad h");
  if (p < 0 || p > h - 1) throw std::invalid_argument("koszul_matrix: need 0 <= p <= h-1");
  auto dom = subsets(h, p), cod = subsets(h, p + 1);
  std::map<std::vector<int>, int> codIndex;
  for (std::size_t i = 0; i < cod.size(); ++i) codIndex[cod[i]] = static_cast<int>(i);
  ExactMatrix out(static_cast<int>(cod.size()) * t.m, static_cast<int>(dom.size()) * t.n);
  for (std::size_t kk = 0; kk < dom.size(); ++kk) {
    const auto& K = dom[kk];
    for (const auto& term : t.terms) {
      if (term.i > h || std::find(K.begin(), K.end(), term.i) != K.end()) continue;
      int greater = 0;
      for (int x : K) greater += x > term.i;
      std::vector<int> L = K;
      L.insert(std::upper_bound(L.begin(), L.end(), term.i), term.i);
      Rational c = greater % 2 ? Rational(-term.coeff) : term.coeff;
      out.add(codIndex.at(L) * t.m + term.tau, static_cast<int>(kk) * t.n + term.sigma, c);
    }
  }
  return out;
}

// Young flattening S_alpha V* (x) S_nu V* -> S_alpha~ V* (x) S_mu V*:
// kappa (x) sigma -> sum_i T[i,tau,sigma] P'(kappa (x) alpha_i) (x) tau.
inline ExactMatrix young_matrix(const InvariantTensor& t, const Partition& alpha, const Partition& alphaTilde) {
  auto d = pieri_data(alpha, alphaTilde, t.k);
  const int da = d->mu->dim(), dat = d->nu->dim();
  std::vector<std::vector<const TensorTerm*>> byI(t.k + 1);
  for (const auto& term : t.terms) byI[term.i].push_back(&term);
  ExactMatrix out(dat * t.m, da * t.n);
  for (int kappa = 0; kappa < da; ++kappa)
    for (int i = 1; i <= t.k; ++i)
      for (const auto& [lam, psi] : d->projection[static_cast<std::size_t>(kappa) * t.k + i - 1])
        for (const TensorTerm* term : byI[i]) out.add(lam * t.m + term->tau, kappa * t.n + term->sigma, psi * term->coeff);
  return out;
}

inline long theorem1_predicted_rank(const Partition& mu, const Partition& nu, int p, int k) {
  int j = added_row(mu, nu);
  long total = 0;
  for (const Partition& pi : pieri_expand(nu, p, Strictness::RowStrict, k))
    if (pi.row(j) == nu.row(j)) total += dim_schur(pi, k).get_si();
  return total;
}

struct FlatteningSpec {
  enum class Kind { Koszul, Young } kind = Kind::Koszul;
  int p = 0;
  int h = -1;  // restricted Koszul: dimension of H
  Partition alpha, alpha_tilde;
};

inline nlohmann::json to_json(const FlatteningSpec& s) {
  if (s.kind == FlatteningSpec::Kind::Koszul) {
    nlohmann::json j{{"kind", "koszul"}, {"p", s.p}};
    if (s.h >= 0) j["h"] = s.h;
    return j;
  }
  return {{"kind", "young"}, {"alpha", to_string(s.alpha)}, {"alpha_tilde", to_string(s.alpha_tilde)}};
}

struct BoundCertificate {
  int k = 0;
  Partition mu, nu;
  FlatteningSpec spec;
  int rows = 0, cols = 0;
  RankEvidence rank;
  long divisor = 1;
  long bound = 0;
  std::optional<long> predicted_rank;
  std::vector<std::string> assumptions;

  bool matches_prediction() const { return !predicted_rank || *predicted_rank == rank.rank(); }
};

inline long ceil_div(long a, long b) { return (a + b - 1) / b; }

inline nlohmann::json to_json(const BoundCertificate& c) {
  nlohmann::json j{{"schema", "glinv.certificate/1"},
                   {"tensor", {{"k", c.k}, {"mu", to_string(c.mu)}, {"nu", to_string(c.nu)}}},
                   {"spec", to_json(c.spec)},
                   {"dims", {c.rows, c.cols}},
                   {"rank", to_json(c.rank)},
                   {"divisor", c.divisor},
                   {"bound", c.bound},
                   {"assumptions", c.assumptions}};
  if (c.predicted_rank) j["predicted_rank"] = *c.predicted_rank;
  j["digest"] = sha256_hex(j.dump());
  return j;
}

inline BoundCertificate certify(const InvariantTensor& t, FlatteningSpec spec, const ExactMatrix& mat, long divisor,
                                std::optional<long> predicted, const RankOptions& opt) {
  BoundCertificate c;
  c.k = t.k;
  c.mu = t.mu;
  c.nu = t.nu;
  c.spec = std::move(spec);
  c.rows = mat.rows();
  c.cols = mat.cols();
  c.rank = gather_rank_evidence(mat, opt);
  c.divisor = divisor;
  c.bound = ceil_div(c.rank.rank(), divisor);
  c.predicted_rank = predicted;
  if (!c.rank.exact_rank)
    c.assumptions.push_back("rank is the largest rank over the sampled primes, a lower bound for the rank over Q");
  return c;
}

inline BoundCertificate koszul_bound(const InvariantTensor& t, int p, const RankOptions& opt = {}) {
  FlatteningSpec s;
  s.p = p;
  return certify(t, s, koszul_matrix(t, p), binom(t.k - 1, p), theorem1_predicted_rank(t.mu, t.nu, p, t.k), opt);
}

inline BoundCertificate young_bound(const InvariantTensor& t, const Partition& alpha, const Partition& alphaTilde,
                                    const RankOptions& opt = {}) {
  FlatteningSpec s;
  s.kind = FlatteningSpec::Kind::Young;
  s.alpha = alpha;
  s.alpha_tilde = alphaTilde;
  long divisor = predicted_generic_rank(alpha, alphaTilde, t.k).rank;
  auto c = certify(t, s, young_matrix(t, alpha, alphaTilde), divisor, std::nullopt, opt);
  c.assumptions.push_back("divisor is the generic rank of the constant-rank space for (alpha, alpha~) on V*");
  return c;
}

inline BoundCertificate restricted_koszul_bound(const InvariantTensor& t, int h, int p, const RankOptions& opt = {}) {
  if (h < 1 || h > t.k || p > h - 1) throw std::invalid_argument("restricted_koszul_bound: need 1 <= h <= k, p <= h-1");
  FlatteningSpec s;
  s.p = p;
  s.h = h;
  std::optional<long> predicted;
  if (t.mu == Partition{1} && t.nu == Partition{1, 1} && p >= 1) predicted = t.k * binom(h, p + 1);
  return certify(t, s, koszul_matrix(t, p, h), binom(h - 1, p), predicted, opt);
}

struct Prop2Row {
  Partition pi;
  long domain = 0;        // in S_mu* (x) S_nu*
  long intermediate = 0;  // in S_mu* (x) V* (x) S_mu*
  bool applies = false;
};

inline std::vector<Prop2Row> prop2_multiplicity_report(const Partition& mu, const Partition& nu, int k) {
  added_row(mu, nu);
  std::map<Partition, Prop2Row> rows;
  for (const auto& [pi, c] : lr_multiplicities(mu, nu, k)) rows[pi].domain = c;
  for (const Partition& lam : pieri_expand(mu, 1, Strictness::ColumnStrict, k))
    for (const auto& [pi, c] : lr_multiplicities(lam, mu, k)) rows[pi].intermediate += c;
  std::vector<Prop2Row> out;
  for (auto& [pi, r] : rows) {
    r.pi = pi;
    r.applies = r.domain == 0 || r.domain == r.intermediate;
    out.push_back(r);
  }
  return out;
}

struct Conjecture1Result {
  Partition mu, nu;
  int k = 0;
  bool full_rank = false;
  long rank = 0;
  long expected = 0;
  std::string method;
  double seconds = 0;
};

enum class Conjecture1Method { Direct, HighestWeight };

inline Conjecture1Result verify_conjecture1(const Partition& mu, const Partition& nu, int k,
                                            Conjecture1Method method = Conjecture1Method::HighestWeight,
                                            const RankOptions& opt = {}) {
  int j = added_row(mu, nu);
  if (j == 1 || j == k) throw InvalidPair("full-rank check requires the added cell outside rows 1 and k");
  if (nu.length() > k) throw InvalidPair("nu longer than k");
  auto start = std::chrono::steady_clock::now();
  Conjecture1Result r{mu, nu, k};
  r.expected = dim_schur(mu, k).get_si() * dim_schur(nu, k).get_si();
  if (method == Conjecture1Method::Direct) {
    auto t = build_tensor(k, mu, nu);
    auto ev = gather_rank_evidence(young_matrix(t, mu, nu), opt);
    r.rank = ev.rank();
    r.method = ev.exact_rank ? "direct exact" : "direct modular";
  } else {
    auto primes = random_primes(std::max(1, opt.primes), opt.seed);
    r.rank = 0;
    for (auto p : primes) {
      auto hw = young_rank_by_highest_weights(mu, nu, k, p);
      r.rank = std::max(r.rank, hw.rank);
      if (hw.full) break;
    }
    r.method = "highest weight modular";
  }
  r.full_rank = r.rank == r.expected;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace glinv
