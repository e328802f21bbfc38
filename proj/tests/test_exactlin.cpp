#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace glinv;

namespace {

ExactMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  ExactMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(static_cast<int>(r), static_cast<int>(c), rows[r][c]);
  return m;
}

ExactMatrix identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ExactMatrix random_matrix(int rows, int cols, int rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  ExactMatrix a(rows, rank), b(rank, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rank; ++j) a.set(i, j, d(rng));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < cols; ++j) b.set(i, j, d(rng));
  return multiply(a, b);
}

}  // namespace

TEST_CASE("rank of tiny matrices", "[exactlin]") {
  CHECK(rank_exact(from_rows({{1, 2}, {2, 4}})) == 1);
  for (int n : {1, 5, 17}) CHECK(rank_exact(identity(n)) == n);
  CHECK(rank_fraction_free(from_rows({{1, 2}, {2, 4}})) == 1);
  CHECK(rank_exact(ExactMatrix(3, 4)) == 0);
}

TEST_CASE("rank of the p=1 Koszul flattening of the (2,1),(2,2) tensor", "[exactlin]") {
  auto m = koszul_matrix(build_tensor(3, Partition{2, 1}, Partition{2, 2}), 1);
  CHECK(m.rows() == 24);
  CHECK(m.cols() == 18);
  CHECK(rank_exact(m) == 18);
  CHECK(rank_fraction_free(m) == 18);
}

TEST_CASE("modular rank", "[exactlin]") {
  CHECK(rank_mod_p(from_rows({{1, 2}, {2, 4}}), 5) == 1);
  for (long p : {5L, 7L, 1000003L}) {
    auto m = from_rows({{p, 0}, {0, 1}});
    CHECK(rank_mod_p(m, static_cast<std::uint64_t>(p)) == 1);
    CHECK(rank_exact(m) == 2);
  }
  auto young = young_matrix(build_tensor(3, Partition{2, 1}, Partition{2, 2}), Partition{2, 1}, Partition{2, 2});
  CHECK(young.rows() == 48);
  CHECK(young.cols() == 48);
  CHECK(rank_mod_p(young, 1000003) == 48);
  CHECK(rank_exact(young) == 48);
}

TEST_CASE("a vanishing denominator is reported as a bad prime", "[exactlin]") {
  ExactMatrix m(1, 1);
  m.set(0, 0, Rational(1, 7));
  CHECK_THROWS_AS(rank_mod_p(m, 7), BadPrime);
}

TEST_CASE("random_primes are distinct primes of about 30 bits", "[exactlin]") {
  auto ps = random_primes(5, 42);
  CHECK(ps.size() == 5);
  CHECK(std::set<std::uint64_t>(ps.begin(), ps.end()).size() == 5);
  for (auto p : ps) {
    CHECK(is_prime_u64(p));
    CHECK(p > (1ULL << 29));
    CHECK(p < (1ULL << 30));
  }
  CHECK(random_primes(3, 7) == random_primes(3, 7));
}

TEST_CASE("kernel_basis", "[exactlin]") {
  CHECK(kernel_basis(identity(4)).empty());
  auto k = kernel_basis(from_rows({{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == -k[0][1]);
  CHECK(sgn(k[0][0]) != 0);
}

TEST_CASE("kernel of psi for the mandatory part plus S_(2,1,1)", "[exactlin]") {
  auto T = build_tensor(3, Partition{2, 1}, Partition{2, 2});
  auto s = setup_210(T);
  std::vector<SparseVec> E = s.mandatory;
  for (const auto& node : s.complement.nodes)
    if (s.complement.summands[node.summand] == "2,1,1") E.push_back(node.vec);
  REQUIRE(E.size() == 9);
  CHECK(kernel_dim_210(T, E) == 3);
}

TEST_CASE("solve_dual_basis inverts the pairing", "[exactlin]") {
  std::vector<std::vector<Rational>> f{{1, 2, 0}, {0, 1, 3}, {1, 0, 1}};
  auto X = solve_dual_basis(f);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int c = 0; c < 3; ++c) s += f[i][c] * X(c, j);
      CHECK(s == (i == j ? 1 : 0));
    }
  CHECK_THROWS(solve_dual_basis(std::vector<std::vector<Rational>>{{1, 1}, {2, 2}}));
}

TEST_CASE("rank of a product and rank-nullity", "[exactlin]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int r1 = 1 + static_cast<int>(rng() % 5), r2 = 1 + static_cast<int>(rng() % 5);
    auto A = random_matrix(6, 7, r1, rng), B = random_matrix(7, 5, r2, rng);
    int ra = rank_exact(A), rb = rank_exact(B), rab = rank_exact(multiply(A, B));
    CHECK(rab <= std::min(ra, rb));
    CHECK(static_cast<int>(kernel_basis(A).size()) + ra == A.cols());
    CHECK(static_cast<int>(kernel_basis(B).size()) + rb == B.cols());
    for (auto p : random_primes(3, trial)) CHECK(rank_mod_p(A, p) <= ra);
  }
}

TEST_CASE("modular and exact ranks agree on the reference matrices", "[exactlin]") {
  for (const auto& g : oracle::golden_matrices()) {
    INFO(g.name);
    int exact = rank_exact(g.m);
    CHECK(exact == rank_fraction_free(g.m));
    CHECK(oracle::modular_agrees(g.m, exact, 3));
  }
}

TEST_CASE("rank evidence records its method and survives JSON", "[exactlin]") {
  auto m = koszul_matrix(build_skew_tensor(4), 1);
  RankOptions opt;
  opt.exact = true;
  auto ev = gather_rank_evidence(m, opt);
  CHECK(ev.method == RankMethod::Both);
  CHECK(ev.exact_rank == 24);
  CHECK(ev.primes_agree());
  CHECK(ev.modular_ranks.size() == 3);
  auto back = rank_evidence_from_json(to_json(ev));
  CHECK(back.digest == ev.digest);
  CHECK(back.exact_rank == ev.exact_rank);
  CHECK(back.modular_ranks == ev.modular_ranks);
  CHECK(digest(m) == ev.digest);
  CHECK(matrix_from_json(to_json(m)).entries() == m.entries());
}

TEST_CASE("rank evidence cache is keyed by digest", "[exactlin]") {
  auto dir = std::filesystem::temp_directory_path() / "glinv-test-cache";
  std::filesystem::remove_all(dir);
  RankOptions opt;
  opt.cache_dir = dir.string();
  auto m = koszul_matrix(build_skew_tensor(3), 1);
  auto first = gather_rank_evidence(m, opt);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
  auto second = gather_rank_evidence(m, opt);
  CHECK(second.rank() == first.rank());
  CHECK(second.digest == first.digest);
  std::filesystem::remove_all(dir);
}
