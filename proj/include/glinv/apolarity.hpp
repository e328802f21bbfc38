#pragma once

#include <algorithm>
#include <climits>
#include <future>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flatten.hpp"

namespace glinv {

struct NonMultiplicityFree : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SparseVec = std::map<int, Rational>;

inline void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  for (const auto& [i, v] : x) {
    auto& s = y[i];
    s += a * v;
    if (sgn(s) == 0) y.erase(i);
  }
}

inline int span_rank(const std::vector<SparseVec>& vs, int dim) {
  ExactMatrix m(static_cast<int>(vs.size()), dim);
  for (std::size_t r = 0; r < vs.size(); ++r)
    for (const auto& [c, v] : vs[r]) m.set(static_cast<int>(r), c, v);
  return rank_exact(m);
}

// True iff every op(v) for v in basis lies in span(basis).
template <class Op>
bool span_closed(const std::vector<SparseVec>& basis, int dim, int ops, Op&& op) {
  int r = span_rank(basis, dim);
  std::vector<SparseVec> all = basis;
  for (const auto& v : basis)
    for (int a = 1; a <= ops; ++a) {
      SparseVec w = op(a, v);
      if (!w.empty()) all.push_back(std::move(w));
    }
  return span_rank(all, dim) == r;
}

// GL(V) raising operator E_a on the dual SSYT basis of S_lambda V*:
// E_a tau* = -sum_{tau'} [tau in E_a tau'] tau'*.
class DualRaising {
 public:
  DualRaising(const Partition& lam, int k) : mod_(schur_module(lam, k)), k_(k) {
    table_.assign(static_cast<std::size_t>(k) * mod_->dim(), {});
    for (int a = 1; a < k; ++a)
      for (int tp = 0; tp < mod_->dim(); ++tp)
        for (const auto& [t, c] : mod_->raise(a, tp)) table_[static_cast<std::size_t>(a) * mod_->dim() + t].push_back({tp, -c});
  }
  const IntVec& operator()(int a, int tau) const { return table_[static_cast<std::size_t>(a) * mod_->dim() + tau]; }
  const SchurModule& module() const { return *mod_; }

 private:
  std::shared_ptr<SchurModule> mod_;
  int k_;
  std::vector<IntVec> table_;
};

// Raising on V* (x) S_mu V*, coordinates (i-1)*m + tau.
class AmbientRaising {
 public:
  AmbientRaising(const Partition& mu, int k) : dual_(mu, k), k_(k), m_(dual_.module().dim()) {}
  int dim() const { return k_ * m_; }
  SparseVec operator()(int a, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [x, c] : v) {
      int i = x / m_ + 1, tau = x % m_;
      if (i == a) axpy(out, -c, {{a * m_ + tau, Rational(1)}});
      for (const auto& [tp, d] : dual_(a, tau)) axpy(out, c * Rational(d), {{(i - 1) * m_ + tp, Rational(1)}});
    }
    return out;
  }

 private:
  DualRaising dual_;
  int k_, m_;
};

struct PosetNode {
  int summand = 0;
  std::string label;
  std::vector<int> weight;
  int level = 0;
  SparseVec vec;
};

struct WeightPoset {
  int k = 0;
  std::vector<std::string> summands;
  std::vector<PosetNode> nodes;
  std::vector<std::vector<int>> up;  // raising targets of each node
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < up.size(); ++i)
      for (int j : up[i]) out.push_back({static_cast<int>(i), j});
    return out;
  }
};

// Equivariant isomorphism S_lambda W -> S_lambda V* (W = V*, SSYT basis on
// the left, dual SSYT basis on the right). GL(V) raising acts on S_lambda W as
// minus the W-lowering, and on the dual basis as minus E_a^T, so X satisfies
// X L_a = U_a^T X and X U_a = L_a^T X with U, L the raising and lowering matrices.
inline DenseMatrix<Rational> dual_identification(const Partition& lam, int k) {
  auto M = schur_module(lam, k);
  const int n = M->dim();
  std::map<std::pair<int, int>, int> var;
  for (const auto& [w, idx] : M->weight_spaces())
    for (int a : idx)
      for (int b : idx) var.emplace(std::make_pair(a, b), static_cast<int>(var.size()));
  auto matrix = [&](int a, bool up) {
    DenseMatrix<Rational> out(n, n);
    for (int c = 0; c < n; ++c)
      for (const auto& [r, v] : up ? M->raise(a, c) : M->lower(a, c)) out(r, c) = Rational(v);
    return out;
  };
  std::vector<std::map<int, Rational>> eqs;
  for (int a = 1; a < k; ++a)
    for (int up = 0; up < 2; ++up) {
      auto A = matrix(a, !up), B = matrix(a, up);  // X A = B^T X
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          std::map<int, Rational> eq;
          for (int j = 0; j < n; ++j) {
            if (sgn(A(j, c)) != 0 && var.count({r, j})) eq[var.at({r, j})] += A(j, c);
            if (sgn(B(j, r)) != 0 && var.count({j, c})) eq[var.at({j, c})] -= B(j, r);
          }
          std::erase_if(eq, [](const auto& kv) { return sgn(kv.second) == 0; });
          if (!eq.empty()) eqs.push_back(std::move(eq));
        }
    }
  DenseMatrix<Rational> sys(static_cast<int>(eqs.size()), static_cast<int>(var.size()));
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (const auto& [j, v] : eqs[i]) sys(static_cast<int>(i), j) = v;
  auto ker = dense_kernel(sys);
  if (ker.size() != 1) throw std::logic_error("dual_identification: intertwiner space is not one-dimensional");
  DenseMatrix<Rational> X(n, n);
  for (const auto& [rc, j] : var) X(rc.first, rc.second) = ker[0][j];
  return X;
}

// Nodes are the SSYT basis vectors of each summand S_pi W, W = V*, with
// raising edges given by replacing an entry a with a+1. When mu is given the
// nodes are realized in V* (x) S_mu V* through the dual identification and
// the transposed projection S_mu V (x) V -> S_pi V.
inline WeightPoset build_weight_poset(const std::vector<Partition>& summands, int k, int maxLevel = INT_MAX,
                                      const std::optional<Partition>& mu = std::nullopt) {
  WeightPoset P;
  P.k = k;
  for (std::size_t s = 0; s < summands.size(); ++s) {
    const Partition& pi = summands[s];
    auto M = schur_module(pi, k);
    P.summands.push_back(to_string(pi));
    auto gl_weight = [&](int idx) {
      std::vector<int> w = M->weight(idx);
      for (auto& x : w) x = -x;
      return w;
    };
    std::vector<int> top;
    for (int idx = 0; idx < M->dim(); ++idx)
      if (top.empty() || weight_height(gl_weight(idx)) > weight_height(top)) top = gl_weight(idx);
    std::vector<SparseVec> vecs(M->dim());
    if (mu) {
      auto d = pieri_data(*mu, pi, k);
      const int m = d->mu->dim();
      std::vector<SparseVec> dual(M->dim());  // P^T(lambda*)
      for (int tau = 0; tau < m; ++tau)
        for (int i = 1; i <= k; ++i)
          for (const auto& [lam, c] : d->projection[static_cast<std::size_t>(tau) * k + i - 1])
            dual[lam][(i - 1) * m + tau] += c;
      auto X = dual_identification(pi, k);
      for (int idx = 0; idx < M->dim(); ++idx)
        for (int r = 0; r < M->dim(); ++r)
          if (sgn(X(r, idx)) != 0) axpy(vecs[idx], X(r, idx), dual[r]);
    }
    std::map<int, int> nodeOf;
    for (int idx = 0; idx < M->dim(); ++idx) {
      auto w = gl_weight(idx);
      int level = weight_height(top) - weight_height(w);
      if (level > maxLevel) continue;
      nodeOf[idx] = static_cast<int>(P.nodes.size());
      P.nodes.push_back({static_cast<int>(s), to_string(M->tableau(idx)), w, level, vecs[idx]});
      P.up.emplace_back();
    }
    for (const auto& [idx, node] : nodeOf) {
      std::set<int> targets;
      for (int a = 1; a < k; ++a)
        for (const auto& [tp, c] : M->lower(a, idx))
          if (c != 0 && nodeOf.count(tp)) targets.insert(nodeOf.at(tp));
      P.up[node].assign(targets.begin(), targets.end());
    }
  }
  return P;
}

// Poset spanned by given weight vectors of V* (x) Lambda^2 V (dim V = 4);
// edges go to the nodes appearing when E_a v is written in the nodes of the
// raised weight.
struct ExplicitNode {
  std::string label;
  SparseVec vec;  // coordinates (i-1)*6 + pair_index
};

inline SparseVec skew_module_raise(int a, const SparseVec& v, int k) {
  // V* (x) Lambda^2 V; E_a: alpha_a -> -alpha_{a+1}, e_{a+1} -> e_a
  const int w = k * (k - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) pairs.push_back({i, j});
  SparseVec out;
  auto wedge = [&](int x, int y, int alpha, const Rational& c) {
    if (x == y) return;
    Rational s = c;
    if (x > y) {
      std::swap(x, y);
      s = -s;
    }
    axpy(out, s, {{(alpha - 1) * w + pair_index(x, y, k), Rational(1)}});
  };
  for (const auto& [idx, c] : v) {
    int alpha = idx / w + 1;
    auto [x, y] = pairs[idx % w];
    if (alpha == a) wedge(x, y, a + 1, -c);
    if (x == a + 1) wedge(a, y, alpha, c);
    if (y == a + 1) wedge(x, a, alpha, c);
  }
  return out;
}

inline std::vector<int> skew_module_weight(const SparseVec& v, int k) {
  const int w = k * (k - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) pairs.push_back({i, j});
  std::optional<std::vector<int>> out;
  for (const auto& [idx, c] : v) {
    std::vector<int> wt(k, 0);
    --wt[idx / w];
    ++wt[pairs[idx % w].first - 1];
    ++wt[pairs[idx % w].second - 1];
    if (out && *out != wt) throw MixedWeight("node is not a weight vector");
    out = wt;
  }
  if (!out) throw MixedWeight("zero node");
  return *out;
}

inline WeightPoset build_explicit_poset(const std::vector<ExplicitNode>& nodes, int k) {
  WeightPoset P;
  P.k = k;
  P.summands.push_back("explicit");
  const int dim = k * k * (k - 1) / 2;
  std::vector<int> top;
  for (const auto& n : nodes) {
    auto w = skew_module_weight(n.vec, k);
    if (top.empty() || weight_height(w) > weight_height(top)) top = w;
  }
  for (const auto& n : nodes) {
    auto w = skew_module_weight(n.vec, k);
    P.nodes.push_back({0, n.label, w, weight_height(top) - weight_height(w), n.vec});
    P.up.emplace_back();
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::set<int> targets;
    for (int a = 1; a < k; ++a) {
      SparseVec r = skew_module_raise(a, nodes[i].vec, k);
      if (r.empty()) continue;
      auto wt = skew_module_weight(r, k);
      std::vector<int> cand;
      for (std::size_t j = 0; j < nodes.size(); ++j)
        if (P.nodes[j].weight == wt) cand.push_back(static_cast<int>(j));
      // solve r = sum x_j node_j
      DenseMatrix<Rational> M(dim, static_cast<int>(cand.size()) + 1);
      for (std::size_t c = 0; c < cand.size(); ++c)
        for (const auto& [x, v] : nodes[cand[c]].vec) M(x, static_cast<int>(c)) = v;
      for (const auto& [x, v] : r) M(x, static_cast<int>(cand.size())) = v;
      auto piv = rref(M);
      if (!piv.empty() && piv.back() == static_cast<int>(cand.size()))
        throw std::runtime_error("raised node leaves the span of the listed nodes");
      for (std::size_t p = 0; p < piv.size(); ++p)
        if (sgn(M(static_cast<int>(p), static_cast<int>(cand.size()))) != 0) targets.insert(cand[piv[p]]);
    }
    P.up[i].assign(targets.begin(), targets.end());
  }
  return P;
}

// Top three levels of the complement of V in V* (x) Lambda^2 V, dim V = 4,
// with the node vectors as drawn.
inline WeightPoset figure2_poset() {
  const int k = 4, w = 6;
  auto b = [&](int alpha, int i, int j) { return (alpha - 1) * w + pair_index(i, j, k); };
  std::vector<ExplicitNode> nodes{
      {"a4(x)e12", {{b(4, 1, 2), 1}}},
      {"a3(x)e12", {{b(3, 1, 2), 1}}},
      {"a4(x)e13", {{b(4, 1, 3), 1}}},
      {"a3(x)e13+a2(x)e12", {{b(3, 1, 3), 1}, {b(2, 1, 2), 1}}},
      {"a4(x)e14-a2(x)e12", {{b(4, 1, 4), 1}, {b(2, 1, 2), -1}}},
      {"a4(x)e23", {{b(4, 2, 3), 1}}},
  };
  return build_explicit_poset(nodes, k);
}

// Undirected graph isomorphism by brute force (small posets only).
inline bool poset_isomorphic(const WeightPoset& P, const std::vector<std::pair<int, int>>& edges, int n) {
  if (static_cast<int>(P.nodes.size()) != n) return false;
  std::set<std::pair<int, int>> target;
  for (auto [a, b] : edges) target.insert({std::min(a, b), std::max(a, b)});
  std::set<std::pair<int, int>> mine;
  for (auto [a, b] : P.edges()) mine.insert({std::min(a, b), std::max(a, b)});
  if (mine.size() != target.size()) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (auto [a, b] : mine) {
      int x = perm[a], y = perm[b];
      if (!target.count({std::min(x, y), std::max(x, y)})) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

struct Candidate {
  std::vector<int> nodes;  // indices into the poset
  std::vector<int> per_summand;
};

struct EnumerationResult {
  std::vector<Candidate> candidates;
  std::vector<std::string> warnings;
};

inline std::vector<int> up_closure(const WeightPoset& P, int node) {
  std::set<int> seen{node};
  std::vector<int> stack{node};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : P.up[x])
      if (seen.insert(y).second) stack.push_back(y);
  }
  return {seen.begin(), seen.end()};
}

// All d-element sets of nodes closed under raising. Weights that occur more
// than once among nodes that can appear in such a set are reported: spans of
// non-basis vectors of those weight spaces are not enumerated.
inline EnumerationResult enumerate_borel_fixed(const WeightPoset& P, int d) {
  EnumerationResult res;
  if (d < 0) return res;
  const int n = static_cast<int>(P.nodes.size());
  std::set<std::vector<int>> found;
  std::set<std::vector<int>> frontier{{}};
  for (int step = 0; step < d; ++step) {
    std::set<std::vector<int>> next;
    for (const auto& s : frontier) {
      std::set<int> have(s.begin(), s.end());
      for (int x = 0; x < n; ++x) {
        if (have.count(x)) continue;
        if (!std::all_of(P.up[x].begin(), P.up[x].end(), [&](int y) { return have.count(y) > 0; })) continue;
        auto t = s;
        t.insert(std::upper_bound(t.begin(), t.end(), x), x);
        next.insert(t);
      }
    }
    frontier = std::move(next);
  }
  for (const auto& s : frontier) {
    Candidate c{s, std::vector<int>(P.summands.size(), 0)};
    for (int x : s) ++c.per_summand[P.nodes[x].summand];
    res.candidates.push_back(std::move(c));
  }
  std::stable_sort(res.candidates.begin(), res.candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.per_summand > b.per_summand; });

  // weights touched by some candidate that are shared between summands or
  // repeated inside one summand
  std::set<std::vector<int>> used;
  for (const auto& c : res.candidates)
    for (int x : c.nodes) used.insert(P.nodes[x].weight);
  std::map<std::vector<int>, std::map<int, int>> count;
  for (const auto& node : P.nodes)
    if (used.count(node.weight)) ++count[node.weight][node.summand];
  for (const auto& [w, per] : count) {
    bool shared = per.size() > 1;
    bool repeated = std::any_of(per.begin(), per.end(), [](const auto& kv) { return kv.second > 1; });
    if (!shared && !repeated) continue;
    std::string ws;
    for (std::size_t i = 0; i < w.size(); ++i) ws += (i ? "," : "") + std::to_string(w[i]);
    std::string what = shared && repeated ? "shared between summands and repeated within one"
                       : shared           ? "shared between summands"
                                          : "repeated within one summand";
    res.warnings.push_back("weight (" + ws + ") is " + what +
                           "; spans of non-basis vectors of this weight space are not enumerated");
  }
  return res;
}

struct Apolarity210Setup {
  InvariantTensor tensor;
  std::vector<SparseVec> mandatory;  // image of T_C in V* (x) S_mu V*
  int mandatory_rank = 0;
  WeightPoset complement;
  int ambient_dim = 0;
};

inline Apolarity210Setup setup_210(const InvariantTensor& T) {
  Apolarity210Setup s;
  s.tensor = T;
  s.ambient_dim = T.k * T.m;
  s.mandatory.assign(T.n, {});
  for (const auto& x : T.terms) {
    auto& slot = s.mandatory[x.sigma][(x.i - 1) * T.m + x.tau];
    slot += x.coeff;
  }
  for (auto& v : s.mandatory) std::erase_if(v, [](const auto& kv) { return sgn(kv.second) == 0; });
  s.mandatory_rank = span_rank(s.mandatory, s.ambient_dim);
  std::vector<Partition> rest;
  for (const auto& pi : pieri_expand(T.mu, 1, Strictness::ColumnStrict, T.k))
    if (pi != T.nu) rest.push_back(pi);
  std::stable_sort(rest.begin(), rest.end(), [](const Partition& a, const Partition& b) { return a.length() > b.length(); });
  s.complement = build_weight_poset(rest, T.k, INT_MAX, T.mu);
  return s;
}

// psi: V* (x) E -> Lambda^2 V* (x) S_mu V*, alpha_j (x) (alpha_i (x) tau*) ->
// (alpha_j ^ alpha_i) (x) tau*; returns dim ker.
inline int kernel_dim_210(const InvariantTensor& T, const std::vector<SparseVec>& E) {
  const int k = T.k, m = T.m, r = static_cast<int>(E.size());
  ExactMatrix psi(k * (k - 1) / 2 * m, k * r);
  for (int j = 1; j <= k; ++j)
    for (int e = 0; e < r; ++e)
      for (const auto& [x, c] : E[e]) {
        int i = x / m + 1, tau = x % m;
        if (i == j) continue;
        int lo = std::min(i, j), hi = std::max(i, j);
        psi.add(pair_index(lo, hi, k) * m + tau, (j - 1) * r + e, j < i ? c : Rational(-c));
      }
  return k * r - rank_exact(psi);
}

struct CandidateResult {
  std::vector<std::string> labels;
  std::vector<int> per_summand;
  int kernel_dim = 0;
  bool borel_fixed = false;
};

struct ApolarityReport {
  std::string tensor;
  int r = 0;
  int mandatory_dim = 0;
  int mandatory_kernel = 0;  // kernel of psi on the mandatory part alone
  std::vector<CandidateResult> candidates;
  std::vector<std::string> warnings;
  bool refuted = false;
  std::string note;
  long lower_bound() const { return refuted ? r + 1 : 0; }
};

// (210) criterion for T_k in closed form: E_110 = Lambda^2 V* + d dims of S^2 V*
// gives a kernel of dimension k d, so r = C(k,2) + d is refuted iff C(k,2)+d > k d.
inline bool skew_210_refuted(int k, int r) {
  long base = binom(k, 2), d = r - base;
  if (d < 0) return true;
  return base + d > static_cast<long>(k) * d;
}

struct Apolarity210Options {
  bool strict = false;  // promote warnings to NonMultiplicityFree
  int jobs = 1;
};

inline ApolarityReport run_210_test(const InvariantTensor& T, int r, const Apolarity210Options& opt = {}) {
  Apolarity210Setup s = setup_210(T);
  ApolarityReport rep;
  rep.tensor = "k=" + std::to_string(T.k) + " mu=" + to_string(T.mu) + " nu=" + to_string(T.nu);
  rep.r = r;
  rep.mandatory_dim = s.mandatory_rank;
  rep.mandatory_kernel = kernel_dim_210(T, s.mandatory);
  int d = r - s.mandatory_rank;
  if (d < 0) {
    rep.refuted = true;
    rep.note = "r is below the dimension of the image of T_C";
    return rep;
  }
  auto en = enumerate_borel_fixed(s.complement, d);
  rep.warnings = en.warnings;
  if (opt.strict && !rep.warnings.empty()) throw NonMultiplicityFree(rep.warnings.front());
  AmbientRaising R(T.mu, T.k);
  auto evaluate = [&](const Candidate& c) {
    CandidateResult cr;
    cr.per_summand = c.per_summand;
    std::vector<SparseVec> E = s.mandatory;
    for (int x : c.nodes) {
      cr.labels.push_back(s.complement.summands[s.complement.nodes[x].summand] + ":" + s.complement.nodes[x].label);
      E.push_back(s.complement.nodes[x].vec);
    }
    cr.borel_fixed = span_rank(E, s.ambient_dim) == static_cast<int>(E.size()) &&
                     span_closed(E, s.ambient_dim, T.k - 1, [&](int a, const SparseVec& v) { return R(a, v); });
    cr.kernel_dim = kernel_dim_210(T, E);
    return cr;
  };
  if (opt.jobs > 1) {
    std::vector<std::future<CandidateResult>> fs;
    for (const auto& c : en.candidates) fs.push_back(std::async(std::launch::async, evaluate, std::cref(c)));
    for (auto& f : fs) rep.candidates.push_back(f.get());
  } else {
    for (const auto& c : en.candidates) rep.candidates.push_back(evaluate(c));
  }
  rep.refuted = std::all_of(rep.candidates.begin(), rep.candidates.end(),
                            [&](const CandidateResult& c) { return c.kernel_dim < r; });
  if (rep.candidates.empty()) rep.note = "no Borel-fixed candidate of the required dimension";
  return rep;
}

inline nlohmann::json to_json(const ApolarityReport& r) {
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : r.candidates)
    cands.push_back({{"complement", c.labels}, {"per_summand", c.per_summand}, {"kernel_dim", c.kernel_dim},
                     {"borel_fixed", c.borel_fixed}});
  return {{"schema", "glinv.apolarity210/1"}, {"tensor", r.tensor}, {"r", r.r}, {"mandatory_dim", r.mandatory_dim},
          {"mandatory_kernel", r.mandatory_kernel}, {"candidates", cands}, {"warnings", r.warnings},
          {"verdict", r.refuted ? "refuted" : "not refuted"}, {"lower_bound", r.lower_bound()}, {"note", r.note}};
}

// Stated E_111 and E_011 spaces for T_4.

struct StatedCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct StatedReport {
  std::vector<StatedCheck> checks;
  std::vector<std::string> untested;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const StatedCheck& c) { return c.pass; });
  }
};

namespace detail {

// V* (x) V* (x) Lambda^2 V, coordinates ((i-1)*k + (j-1))*w + pair.
inline SparseVec triple_raise(int a, const SparseVec& v, int k) {
  const int w = k * (k - 1) / 2;
  SparseVec out;
  for (const auto& [idx, c] : v) {
    int i = idx / (k * w) + 1, j = (idx / w) % k + 1, p = idx % w;
    // first factor
    if (i == a) axpy(out, -c, {{(a * k + (j - 1)) * w + p, Rational(1)}});
    if (j == a) axpy(out, -c, {{((i - 1) * k + a) * w + p, Rational(1)}});
    // third factor via the V* (x) Lambda^2 V raising with alpha fixed to 1
    SparseVec inner = skew_module_raise(a, {{p, c}}, k);
    for (const auto& [q, d] : inner) {
      if (q / w != 0) continue;  // alpha_1 -> alpha_2 part is not wanted here
      axpy(out, d, {{((i - 1) * k + (j - 1)) * w + q % w, Rational(1)}});
    }
  }
  return out;
}

}  // namespace detail

inline StatedReport verify_stated_E111(int samples = 5, std::uint64_t seed = 1) {
  const int k = 4, w = 6, tripleDim = k * k * w, pairDim = k * w;
  auto e = [&](int i, int j) { return pair_index(i, j, k); };
  auto t3 = [&](int i, int j, int pi, int pj) { return ((i - 1) * k + (j - 1)) * w + e(pi, pj); };
  auto b2 = [&](int i, int pi, int pj) { return (i - 1) * w + e(pi, pj); };
  StatedReport rep;

  SparseVec T4;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      T4[t3(i, j, i, j)] += 1;
      T4[t3(j, i, i, j)] -= 1;
    }
  std::vector<SparseVec> E111{
      T4,
      {{t3(4, 4, 1, 2), 1}},
      {{t3(3, 4, 1, 2), 1}},
      {{t3(4, 3, 1, 2), 1}},
      {{t3(4, 4, 1, 3), 1}},
      {{t3(2, 3, 1, 2), 1}, {t3(3, 2, 1, 2), -1}},
      {{t3(2, 4, 1, 2), 1}, {t3(4, 2, 1, 2), -1}},
      {{t3(3, 4, 1, 3), 1}, {t3(4, 3, 1, 3), 1}, {t3(4, 4, 1, 4), 1}},
  };
  int dim = span_rank(E111, tripleDim);
  rep.checks.push_back({"E111 dimension", dim == 8, "dim = " + std::to_string(dim)});
  {
    auto with = E111;
    with.push_back(T4);
    bool contains = span_rank(with, tripleDim) == dim;
    rep.checks.push_back({"E111 contains T4", contains, ""});
  }
  bool bf = span_closed(E111, tripleDim, k - 1, [&](int a, const SparseVec& v) { return detail::triple_raise(a, v, k); });
  rep.checks.push_back({"E111 Borel-fixed", bf, "closed under the raising operators on all three factors"});

  // V inside V* (x) Lambda^2 V as the image of T_A: e_m -> sum_j alpha_j (x) e_m ^ e_j
  std::vector<SparseVec> Vimg;
  for (int m = 1; m <= k; ++m) {
    SparseVec v;
    for (int j = 1; j <= k; ++j) {
      if (j == m) continue;
      if (m < j)
        v[b2(j, m, j)] += 1;
      else
        v[b2(j, j, m)] -= 1;
    }
    Vimg.push_back(v);
  }
  auto e011 = [&](const Rational& s, const Rational& t) {
    std::vector<SparseVec> E = Vimg;
    E.push_back({{b2(4, 1, 2), 1}});
    E.push_back({{b2(3, 1, 2), 1}});
    E.push_back({{b2(4, 1, 3), 1}});
    SparseVec last;
    axpy(last, s, {{b2(4, 1, 4), 1}});
    axpy(last, s, {{b2(3, 1, 3), 1}});
    axpy(last, t, {{b2(4, 2, 3), 1}});
    E.push_back(last);
    return E;
  };
  auto raise2 = [&](int a, const SparseVec& v) { return skew_module_raise(a, v, k); };
  {
    auto E = e011(1, 0);
    int d = span_rank(E, pairDim);
    rep.checks.push_back({"E011[1:0] dimension", d == 8, "dim = " + std::to_string(d)});
    rep.checks.push_back({"E011[1:0] contains V", span_rank(E, pairDim) == span_rank(std::vector<SparseVec>(E.begin() + 4, E.end()), pairDim) + 4 &&
                                                      span_rank(Vimg, pairDim) == 4,
                          "V is the image of T_A"});
    rep.checks.push_back({"E011[1:0] Borel-fixed", span_closed(E, pairDim, k - 1, raise2), ""});
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  bool all = true;
  std::string pts;
  for (int n = 0; n < samples; ++n) {
    Rational s = dist(rng), t = dist(rng);
    if (sgn(s) == 0 && sgn(t) == 0) t = 1;
    pts += (n ? " " : "") + std::string("[") + to_string(s) + ":" + to_string(t) + "]";
    all = all && span_closed(e011(s, t), pairDim, k - 1, raise2);
  }
  rep.checks.push_back({"E011 family Borel-fixed at sampled [s:t]", all, pts});
  rep.untested = {"(012) test", "(021) test", "(111) admissibility beyond dimension, containment and Borel-fixedness"};
  return rep;
}

inline nlohmann::json to_json(const StatedReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"schema", "glinv.stated/1"}, {"checks", checks}, {"untested", r.untested}, {"pass", r.pass()}};
}

}  // namespace glinv
