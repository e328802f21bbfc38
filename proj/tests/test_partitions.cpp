#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace glinv;

namespace {

long binomial(long n, long r) { return binom(n, r); }

}  // namespace

TEST_CASE("dim_schur on small shapes", "[partitions]") {
  CHECK(dim_schur(Partition{2, 1}, 3) == 8);
  CHECK(dim_schur(Partition{2, 2}, 3) == 6);
  for (int k = 1; k <= 6; ++k) CHECK(dim_schur(Partition{1}, k) == k);
  CHECK(dim_schur(Partition{1, 1, 1, 1}, 3) == 0);
}

TEST_CASE("dim_schur of two-row shapes matches the closed form", "[partitions]") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      Partition mu{a + b + 1, a};
      CHECK(dim_schur(mu, 3) == (a + b + 3) * (a + 1) * (b + 2) / 2);
    }
}

TEST_CASE("dim_schur counts semistandard tableaux", "[partitions]") {
  for (const Partition& lam : oracle::partitions_in_box(4, 4))
    for (int k = 1; k <= 5; ++k) {
      INFO(to_string(lam) << " k=" << k);
      CHECK(dim_schur(lam, k) == static_cast<long>(enumerate_ssyt(lam, k).size()));
    }
}

TEST_CASE("add_cell", "[partitions]") {
  CHECK(add_cell(Partition{2, 1}, 2) == Partition{2, 2});
  CHECK(add_cell(Partition{}, 1) == Partition{1});
  CHECK(add_cell(Partition{2, 1}, 3) == Partition{2, 1, 1});
  CHECK_THROWS_AS(add_cell(Partition{1, 1}, 2), NotADiagram);
}

TEST_CASE("partition validation", "[partitions]") {
  CHECK_THROWS_AS(Partition({1, 2}), NotADiagram);
  CHECK(parse_partition("3,1") == Partition{3, 1});
  CHECK(Partition{3, 1}.conjugate() == Partition{2, 1, 1});
}

TEST_CASE("pieri_expand", "[partitions]") {
  auto a = pieri_expand(Partition{2, 2}, 1, Strictness::ColumnStrict, 3);
  CHECK(std::set<Partition>(a.begin(), a.end()) == std::set<Partition>{Partition{3, 2}, Partition{2, 2, 1}});
  auto b = pieri_expand(Partition{2, 1}, 2, Strictness::RowStrict, 3);
  CHECK(std::set<Partition>(b.begin(), b.end()) ==
        std::set<Partition>{Partition{3, 2}, Partition{3, 1, 1}, Partition{2, 2, 1}});
  for (auto mode : {Strictness::ColumnStrict, Strictness::RowStrict})
    CHECK(pieri_expand(Partition{3, 1}, 0, mode, 4) == std::vector<Partition>{Partition{3, 1}});
}

TEST_CASE("pieri_expand agrees with LR products by (p) and (1^p)", "[partitions]") {
  for (const Partition& lam : oracle::partitions_in_box(3, 3))
    for (int p = 1; p <= 3; ++p)
      for (int k = 2; k <= 4; ++k) {
        std::vector<int> ones(p, 1);
        auto row = lr_multiplicities(lam, Partition{p}, k);
        auto col = lr_multiplicities(lam, Partition(ones), k);
        auto h = pieri_expand(lam, p, Strictness::ColumnStrict, k);
        auto v = pieri_expand(lam, p, Strictness::RowStrict, k);
        std::map<Partition, long> hm, vm;
        for (const auto& x : h) ++hm[x];
        for (const auto& x : v) ++vm[x];
        INFO(to_string(lam) << " p=" << p << " k=" << k);
        CHECK(hm == row);
        CHECK(vm == col);
      }
}

TEST_CASE("lr_multiplicities on the (2,1) x (2,2) product", "[partitions]") {
  std::map<Partition, long> expect{
      {Partition{4, 3}, 1}, {Partition{4, 2, 1}, 1}, {Partition{3, 3, 1}, 1}, {Partition{3, 2, 2}, 1}};
  CHECK(lr_multiplicities(Partition{2, 1}, Partition{2, 2}, 3) == expect);
}

TEST_CASE("iterated product (2,1) x (1) x (2,1)", "[partitions]") {
  const int k = 3;
  std::map<Partition, long> total;
  for (const auto& [lam, c] : lr_multiplicities(Partition{2, 1}, Partition{1}, k))
    for (const auto& [pi, d] : lr_multiplicities(lam, Partition{2, 1}, k)) total[pi] += c * d;
  std::map<Partition, long> expect{{Partition{5, 2}, 1},    {Partition{5, 1, 1}, 1}, {Partition{4, 3}, 2},
                                   {Partition{4, 2, 1}, 4}, {Partition{3, 3, 1}, 3}, {Partition{3, 2, 2}, 3}};
  CHECK(total == expect);
}

TEST_CASE("lr_multiplicities by (1) is Pieri with unit multiplicities", "[partitions]") {
  for (const Partition& lam : oracle::partitions_in_box(3, 3)) {
    auto lr = lr_multiplicities(lam, Partition{1}, 4);
    auto pe = pieri_expand(lam, 1, Strictness::ColumnStrict, 4);
    CHECK(lr.size() == pe.size());
    for (const auto& [pi, c] : lr) CHECK(c == 1);
  }
}

TEST_CASE("lr_multiplicities agrees with the character computation", "[partitions][oracle]") {
  auto shapes = oracle::partitions_in_box(3, 3);
  for (int k = 2; k <= 4; ++k)
    for (const Partition& a : shapes)
      for (const Partition& b : shapes) {
        if (a.size() + b.size() > 8) continue;
        INFO(to_string(a) << " x " << to_string(b) << " k=" << k);
        CHECK(lr_multiplicities(a, b, k) == oracle::lr_by_characters(a, b, k));
      }
}

TEST_CASE("LR dimension identity", "[partitions]") {
  auto shapes = oracle::partitions_in_box(3, 3);
  for (int k = 1; k <= 4; ++k)
    for (const Partition& a : shapes)
      for (const Partition& b : shapes) CHECK(oracle::lr_dimension_identity(a, b, k));
}

TEST_CASE("enumerate_ssyt", "[partitions]") {
  auto one = enumerate_ssyt(Partition{1, 1}, 2);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == std::vector<int>{1, 2});
  CHECK(enumerate_ssyt(Partition{2, 1}, 3).size() == 8);
  CHECK(enumerate_ssyt(Partition{3, 2}, 3).size() == 15);
  auto all = enumerate_ssyt(Partition{2, 2}, 3);
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (const auto& e : all) CHECK(is_semistandard(Tableau{Partition{2, 2}, e}));
}

TEST_CASE("predicted_generic_rank examples", "[partitions]") {
  CHECK(predicted_generic_rank(Partition{2, 1}, Partition{2, 2}, 3) == GenericRank{5, 3, 1});
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      auto g = predicted_generic_rank(Partition{a + b + 1, a}, Partition{a + b + 1, a + 1}, 3);
      INFO("a=" << a << " b=" << b);
      CHECK(g.rank == binomial(a + b + 4, 3) - binomial(a + 3, 3) - binomial(b + 3, 3));
      CHECK(g.ker == binomial(a + 2, 2));
      CHECK(g.coker == binomial(b + 2, 2));
    }
  for (int k = 2; k <= 6; ++k)
    for (int p = 0; p < k; ++p) {
      std::vector<int> mu(p, 1), nu(p + 1, 1);
      CHECK(predicted_generic_rank(Partition(mu), Partition(nu), k).rank == binomial(k - 1, p));
    }
}

TEST_CASE("predicted_generic_rank balances dimensions", "[partitions]") {
  for (const auto& [mu, nu] : oracle::pieri_pairs(4, 4))
    for (int k = nu.length(); k <= 5; ++k) {
      if (k < 1) continue;
      auto g = predicted_generic_rank(mu, nu, k);
      INFO(to_string(mu) << " -> " << to_string(nu) << " k=" << k);
      CHECK(g.rank + g.ker == dim_schur(mu, k));
      CHECK(g.rank + g.coker == dim_schur(nu, k));
    }
}

TEST_CASE("added_row rejects pairs that are not one cell apart", "[partitions]") {
  CHECK_THROWS_AS(added_row(Partition{2, 1}, Partition{3, 2}), InvalidPair);
  CHECK(added_row(Partition{2, 1}, Partition{2, 2}) == 2);
}
