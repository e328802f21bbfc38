#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace glinv;

TEST_CASE("straightening is idempotent on random fillings", "[properties]") {
  for (std::uint64_t seed : {1u, 2u, 3u}) CHECK(oracle::straightening_failures(1000, seed) == 0);
}

TEST_CASE("straightening is GL-equivariant on random vectors", "[properties]") {
  std::mt19937_64 rng(17);
  auto shapes = oracle::partitions_in_box(3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const Partition& lam = shapes[rng() % shapes.size()];
    const int k = std::max(lam.length(), 3);
    auto M = schur_module(lam, k);
    auto gs = oracle::group_generators(k, trial);
    const auto& g = gs[rng() % gs.size()];
    // a random (non-semistandard) filling: straightening first or acting first agree
    std::vector<int> e(lam.size());
    for (int& x : e) x = 1 + static_cast<int>(rng() % k);
    auto lhs = gl_action(g, straighten(Tableau{lam, e}, k));
    TableauVector<Rational> rhs{lam, k, {}};
    // g acts on a filling letter by letter; expand the product and straighten each term
    std::vector<std::pair<std::vector<int>, Rational>> terms{{{}, Rational(1)}};
    for (int letter : e) {
      std::vector<std::pair<std::vector<int>, Rational>> next;
      for (const auto& [w, c] : terms)
        for (int b = 1; b <= k; ++b) {
          const Rational& gb = g(b - 1, letter - 1);
          if (is_zero(gb)) continue;
          auto w2 = w;
          w2.push_back(b);
          next.push_back({w2, c * gb});
        }
      terms = std::move(next);
    }
    for (const auto& [w, c] : terms)
      for (const auto& [u, d] : straighten(Tableau{lam, w}, k).terms) rhs.add(u, c * d);
    INFO(to_string(lam) << " k=" << k);
    CHECK(lhs == rhs);
    CHECK(M->dim() == dim_schur(lam, k));
  }
}

TEST_CASE("equivariant Pieri projection on sampled pairs", "[properties]") {
  std::mt19937_64 rng(5);
  auto pairs = oracle::pieri_pairs(3, 3);
  for (int trial = 0; trial < 12; ++trial) {
    const auto& [mu, nu] = pairs[rng() % pairs.size()];
    const int k = std::max(nu.length(), 2 + static_cast<int>(rng() % 3));
    INFO(to_string(mu) << " -> " << to_string(nu) << " k=" << k);
    CHECK(oracle::pieri_equivariance_failures(mu, nu, k, oracle::group_generators(k, trial)) == 0);
  }
}

TEST_CASE("modular rank never exceeds the exact rank", "[properties]") {
  for (const auto& g : oracle::golden_matrices()) {
    INFO(g.name);
    const int exact = rank_exact(g.m);
    for (auto p : random_primes(3, 99)) CHECK(rank_mod_p(g.m, p) <= exact);
    CHECK(oracle::modular_agrees(g.m, exact, 7));
  }
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    ExactMatrix m(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (rng() % 3 == 0) m.set(i, j, static_cast<long>(rng() % 11) - 5);
    const int exact = rank_exact(m);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) CHECK(rank_mod_p(m, p) <= exact);
  }
}

TEST_CASE("LR dimension identity on a 3 x 3 box", "[properties]") {
  auto shapes = oracle::partitions_in_box(3, 3, true);
  for (int k = 1; k <= 4; ++k)
    for (const Partition& a : shapes)
      for (const Partition& b : shapes) {
        INFO(to_string(a) << " x " << to_string(b) << " k=" << k);
        CHECK(oracle::lr_dimension_identity(a, b, k));
      }
}
