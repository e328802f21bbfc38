// One PASS/FAIL line per acceptance criterion. All checks are exact unless a
// line says modular; time limits are the budgets below, in seconds.
#include <chrono>
#include <cstdio>
#include <functional>

#include "oracles.hpp"

using namespace glinv;

namespace {

constexpr double kLimit1 = 10, kLimit2Exact = 300, kLimit2Modular = 3600, kLimit3 = 1800, kLimit4 = 7200,
                 kLimit5 = 300, kLimit7 = 120, kLimit8 = 60, kLimit10 = 60;
constexpr int kModularPrimes = 3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RankOptions exact() {
  RankOptions o;
  o.exact = true;
  return o;
}

RankOptions modular() {
  RankOptions o;
  o.primes = kModularPrimes;
  return o;
}

Outcome example5_bounds() {
  auto t0 = std::chrono::steady_clock::now();
  auto t = build_tensor(3, Partition{2, 1}, Partition{2, 2});
  auto k = koszul_bound(t, 1, exact());
  auto y = young_bound(t, Partition{2, 1}, Partition{2, 2}, exact());
  double s = seconds_since(t0);
  bool ok = k.rank.exact_rank == 18 && k.bound == 9 && y.rank.exact_rank == 48 && y.bound == 10 && s < kLimit1;
  return {ok, "koszul rank " + std::to_string(k.rank.rank()) + " bound " + std::to_string(k.bound) + ", young rank " +
                  std::to_string(y.rank.rank()) + " bound " + std::to_string(y.bound) + ", " + std::to_string(s) + " s"};
}

Outcome theorem3_tables() {
  auto t0 = std::chrono::steady_clock::now();
  auto grid = theorem3_grid(modular());
  double exactSeconds = 0, modularSeconds = 0;
  int bad = 0, notFull = 0;
  for (const auto& c : grid) {
    (c.a + c.b <= 3 ? exactSeconds : modularSeconds) += c.seconds;
    if (c.young_rank != c.m * c.n) ++notFull;
    const auto dims = "(" + std::to_string(c.m) + "," + std::to_string(c.n) + ")";
    if (std::to_string(c.young_bound) != golden::theorem3_bounds()[c.a][c.b]) ++bad;
    if (std::to_string(c.koszul_bound) != golden::theorem3_koszul()[c.a][c.b]) ++bad;
    if (dims != golden::theorem3_dims()[c.a][c.b]) ++bad;
    if ((c.a + c.b <= 3) != (c.method != "modular")) ++bad;
  }
  bool ok = bad == 0 && notFull == 0 && exactSeconds < kLimit2Exact && modularSeconds < kLimit2Modular;
  return {ok, std::to_string(grid.size()) + " cells x 3 tables, " + std::to_string(bad) + " mismatches, " +
                  std::to_string(notFull) + " not full rank; exact cells " + std::to_string(exactSeconds) +
                  " s, modular cells " + std::to_string(modularSeconds) + " s (total " +
                  std::to_string(seconds_since(t0)) + " s)"};
}

Outcome theorem1_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0, bad = 0;
  for (const auto& [mu, nu] : oracle::pieri_pairs(4, 4))
    for (int k : {3, 4, 5}) {
      if (nu.length() > k) continue;
      auto t = build_tensor(k, mu, nu);
      for (int p = 0; p <= k - 1; ++p) {
        ++checked;
        if (rank_exact(koszul_matrix(t, p)) != theorem1_predicted_rank(mu, nu, p, k)) ++bad;
      }
    }
  double s = seconds_since(t0);
  return {bad == 0 && s < kLimit3,
          std::to_string(checked) + " flattenings, " + std::to_string(bad) + " mismatches, " + std::to_string(s) + " s"};
}

Outcome conjecture_scan_boxes() {
  auto t0 = std::chrono::steady_clock::now();
  std::set<std::tuple<Partition, Partition, int>> seen;
  std::vector<ScanInstance> insts;
  for (const auto& box : {conjecture_instances(4, 4, 0), conjecture_instances(2, 5, 0)})
    for (const auto& i : box)
      if (seen.insert({i.mu, i.nu, i.k}).second) insts.push_back(i);
  auto rs = conjecture_scan(insts, kLimit4, modular());
  int full = 0;
  double slowest = 0;
  std::string worst;
  for (const auto& r : rs) {
    full += r.status == "full rank";
    if (r.seconds > slowest) {
      slowest = r.seconds;
      worst = to_string(r.instance.mu) + "->" + to_string(r.instance.nu);
    }
  }
  double s = seconds_since(t0);
  return {full == static_cast<int>(rs.size()) && s < kLimit4,
          std::to_string(full) + "/" + std::to_string(rs.size()) + " instances full rank (modular), total " +
              std::to_string(s) + " s, slowest " + worst + " " + std::to_string(slowest) + " s"};
}

Outcome constant_rank() {
  auto t0 = std::chrono::steady_clock::now();
  int bad = 0, samples = 0;
  auto run = [&](const Partition& mu, const Partition& nu, long rank, long ker, long coker, std::uint64_t seed) {
    auto rep = constant_rank_check(build_tensor(3, mu, nu), 20, seed);
    if (rep.samples.size() != 23) ++bad;
    for (const auto& x : rep.samples) {
      ++samples;
      if (x.rank != rank || x.ker != ker || x.coker != coker) ++bad;
    }
  };
  run(Partition{2, 1}, Partition{2, 2}, 5, 3, 1, 1);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      run(Partition{a + b + 1, a}, Partition{a + b + 1, a + 1},
          binom(a + b + 4, 3) - binom(a + 3, 3) - binom(b + 3, 3), binom(a + 2, 2), binom(b + 2, 2), 10 + 4 * a + b);
  double s = seconds_since(t0);
  return {bad == 0 && s < kLimit5, std::to_string(samples) + " points (basis and random), " + std::to_string(bad) +
                                       " disagreements with the closed forms, " + std::to_string(s) + " s"};
}

Outcome skew_family() {
  std::string detail;
  bool ok = true;
  for (int k = 3; k <= 8; ++k) {
    auto c = koszul_bound(build_skew_tensor(k), 1, k <= 6 ? exact() : modular());
    bool good = c.rank.rank() == k * binom(k, 2) && c.bound == ceil_div(k * k, 2) &&
                (k <= 6 ? c.rank.exact_rank.has_value() : c.rank.primes_agree());
    ok = ok && good;
    detail += "k=" + std::to_string(k) + ":" + std::to_string(c.bound) + (k <= 6 ? "" : "(mod)") + " ";
  }
  int cells = 0, positive = 0, positiveMatch = 0;
  std::string misses;
  for (int k = 3; k <= 5; ++k)
    for (int h = 1; h <= k; ++h)
      for (int p = 0; p <= h - 1; ++p) {
        ++cells;
        auto r = restricted_koszul_bound(build_skew_tensor(k), h, p, exact());
        const bool match = r.bound == ceil_div(static_cast<long>(k) * h, p + 1);
        positive += p >= 1;
        positiveMatch += p >= 1 && match;
        if (!match)
          misses += " (k" + std::to_string(k) + ",h" + std::to_string(h) + ",p" + std::to_string(p) + ": " +
                    std::to_string(r.bound) + "!=" + std::to_string(ceil_div(static_cast<long>(k) * h, p + 1)) + ")";
      }
  ok = ok && misses.empty();
  detail += "| restricted: " + std::to_string(cells) + " (k,h,p) cells, " + std::to_string(positiveMatch) + "/" +
            std::to_string(positive) + " with p >= 1 match";
  detail += misses.empty() ? ", all match" : ", mismatches:" + misses;
  return {ok, detail};
}

Outcome decomposition_suite() {
  auto t0 = std::chrono::steady_clock::now();
  int failed = 0, total = 0;
  auto rat = [&](const CurveDecomposition<Rational>& D, int size) {
    ++total;
    if (D.size() != size || !verify_border_decomposition(D, target_tensor<Rational>(D.target)).pass) ++failed;
  };
  auto t3 = t3_decomposition();
  rat(t3, 5);
  if (t3.d != 1) ++failed;
  auto t4 = t4_conner_decomposition();
  rat(t4, 8);
  if (t4.d != 3 || t4.scale != Rational(1, 4)) ++failed;
  for (int k = 3; k <= 9; ++k) rat(skew_difference_decomposition(k), k);
  const int upper[] = {8, 13, 19, 26, 34, 43};
  for (int k = 4; k <= 9; ++k) rat(skew_upper_decomposition(k), upper[k - 4]);
  ++total;
  auto e3 = example3_decomposition();
  if (e3.size() != 5 || !verify_rank_decomposition(e3, target_tensor<Cyclo3>(e3.target)).pass) ++failed;
  for (const auto& [l, lp, k] : std::vector<std::tuple<Partition, Partition, int>>{
           {Partition{1}, Partition{1}, 2}, {Partition{2}, Partition{2}, 2}, {Partition{2, 1}, Partition{1}, 3}}) {
    ++total;
    auto D = cartan_decomposition(l, lp, k);
    if (!verify_rank_decomposition(D, target_tensor<Rational>(D.target)).pass) ++failed;
  }
  double s = seconds_since(t0);
  return {failed == 0 && s < kLimit7, std::to_string(total - failed) + "/" + std::to_string(total) +
                                          " decompositions verified, " + std::to_string(s) + " s"};
}

Outcome apolarity_example5() {
  auto t0 = std::chrono::steady_clock::now();
  auto rep = run_210_test(build_tensor(3, Partition{2, 1}, Partition{2, 2}), 9);
  std::multiset<int> ks;
  std::string list;
  for (const auto& c : rep.candidates) {
    ks.insert(c.kernel_dim);
    list += std::to_string(c.kernel_dim) + " ";
  }
  double s = seconds_since(t0);
  bool ok = ks == std::multiset<int>{3, 4, 6, 6, 6, 6, 7} && rep.refuted && rep.lower_bound() == 10 && s < kLimit8;
  return {ok, std::to_string(rep.candidates.size()) + " candidates, kernels " + list + "verdict " +
                  (rep.refuted ? "refuted" : "not refuted") + ", border rank >= " + std::to_string(rep.lower_bound()) +
                  " (= 10 with the cited fills-space fact), " + std::to_string(rep.warnings.size()) + " warnings, " +
                  std::to_string(s) + " s"};
}

Outcome apolarity_skew() {
  bool ok = true;
  std::string detail;
  for (int k = 4; k <= 6; ++k) {
    auto T = build_skew_tensor(k);
    const int base = static_cast<int>(binom(k, 2)), cut = base + (k + 1) / 2;
    int firstOpen = -1;
    for (int r = base - 1; r <= cut; ++r) {
      bool refuted = run_210_test(T, r).refuted;
      ok = ok && refuted == (r < cut);
      if (!refuted && firstOpen < 0) firstOpen = r;
    }
    detail += "k=" + std::to_string(k) + ": first r not refuted " + std::to_string(firstOpen) + " (expected " +
              std::to_string(cut) + ") ";
  }
  return {ok, detail};
}

Outcome stated_spaces() {
  auto t0 = std::chrono::steady_clock::now();
  auto rep = verify_stated_E111();
  double s = seconds_since(t0);
  std::string names;
  for (const auto& c : rep.checks) names += c.name + (c.pass ? " ok; " : " FAILED; ");
  return {rep.pass() && !rep.untested.empty() && s < kLimit10,
          names + std::to_string(rep.untested.size()) + " conditions flagged untested, " + std::to_string(s) + " s"};
}

Outcome property_suites() {
  int straighten = oracle::straightening_failures(1000, 1);
  int equiv = 0;
  for (const auto& [mu, nu] : oracle::pieri_pairs(2, 3))
    equiv += oracle::pieri_equivariance_failures(mu, nu, 3, oracle::group_generators(3, 2));
  int modularBad = 0;
  for (const auto& g : oracle::golden_matrices()) {
    int r = rank_exact(g.m);
    for (auto p : random_primes(kModularPrimes, 5)) modularBad += rank_mod_p(g.m, p) > r;
    modularBad += !oracle::modular_agrees(g.m, r, 5);
  }
  int lrBad = 0;
  auto shapes = oracle::partitions_in_box(3, 3, true);
  for (int k = 1; k <= 4; ++k)
    for (const auto& a : shapes)
      for (const auto& b : shapes) lrBad += !oracle::lr_dimension_identity(a, b, k);
  return {straighten + equiv + modularBad + lrBad == 0,
          "straightening " + std::to_string(straighten) + ", equivariance " + std::to_string(equiv) +
              ", modular/exact " + std::to_string(modularBad) + ", LR identity " + std::to_string(lrBad) + " failures"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 Koszul and Young bounds of the (2,1),(2,2) tensor", example5_bounds},
      {"2 two-row bound, dimension and Koszul tables", theorem3_tables},
      {"3 Koszul ranks against the module formula, 4x4 box", theorem1_oracle},
      {"4 Young flattening full rank on the scanned boxes", conjecture_scan_boxes},
      {"5 constant rank of the two-row family", constant_rank},
      {"6 skew family Koszul and restricted bounds", skew_family},
      {"7 decomposition suite", decomposition_suite},
      {"8 210 test of the (2,1),(2,2) tensor at r = 9", apolarity_example5},
      {"9 210 test of the skew tensors", apolarity_skew},
      {"10 stated spaces for T4", stated_spaces},
      {"11 property suites", property_suites},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %s  [%.1f s]  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
