#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace glinv;

namespace {

template <class F>
VerificationReport check(const CurveDecomposition<F>& D) {
  return verify_border_decomposition(D, target_tensor<F>(D.target));
}

// max |scale * N^d * sum_i a_i(1/N) (x) b_i(1/N) (x) c_i(1/N) - T| over all coordinates
Rational limit_error(const CurveDecomposition<Rational>& D, long N) {
  auto T = target_tensor<Rational>(D.target);
  const Rational t(1, N);
  auto eval = [&](const Poly<Rational>& p) {
    Rational s = 0, pw = 1;
    for (const auto& c : p.c) {
      s += c * pw;
      pw *= t;
    }
    return s;
  };
  std::map<std::array<int, 3>, Rational> sum;
  for (const auto& term : D.terms)
    for (int x = 0; x < T.da; ++x)
      for (int y = 0; y < T.db; ++y)
        for (int z = 0; z < T.dc; ++z) sum[{x, y, z}] += eval(term.a[x]) * eval(term.b[y]) * eval(term.c[z]);
  Rational scale = D.scale;
  for (int i = 0; i < D.d; ++i) scale *= N;
  Rational worst = 0;
  for (int x = 0; x < T.da; ++x)
    for (int y = 0; y < T.db; ++y)
      for (int z = 0; z < T.dc; ++z) {
        auto it = T.entries.find({x, y, z});
        Rational diff = scale * sum[{x, y, z}] - (it == T.entries.end() ? Rational(0) : it->second);
        if (sgn(diff) < 0) diff = -diff;
        if (diff > worst) worst = diff;
      }
  return worst;
}

std::map<std::array<int, 3>, Rational> skew_coefficients(int k) {
  std::map<std::array<int, 3>, Rational> out;
  for (const auto& x : build_skew_tensor(k).terms) out[{x.i - 1, x.tau, x.sigma}] += x.coeff;
  return out;
}

}  // namespace

TEST_CASE("the skew target agrees with the skew tensor", "[decomp]") {
  for (int k = 2; k <= 6; ++k) CHECK(target_tensor<Rational>(Target{"skew", k}).entries == skew_coefficients(k));
}

TEST_CASE("border decomposition of T3", "[decomp]") {
  auto D = t3_decomposition();
  CHECK(D.size() == 5);
  CHECK(D.d == 1);
  auto r = check(D);
  CHECK(r.pass);
  CHECK(r.message == "verified");
}

TEST_CASE("border decomposition of T4", "[decomp]") {
  auto D = t4_conner_decomposition();
  CHECK(D.size() == 8);
  CHECK(D.d == 3);
  CHECK(D.scale == Rational(1, 4));
  CHECK(check(D).pass);
}

TEST_CASE("decompositions of T_k - T_(k-1)", "[decomp]") {
  for (int k = 2; k <= 9; ++k) {
    auto D = skew_difference_decomposition(k);
    INFO("k=" << k);
    CHECK(D.size() == k);
    CHECK(D.d == 1);
    CHECK(check(D).pass);
  }
  CHECK_THROWS(skew_difference_decomposition(1));
}

TEST_CASE("upper bound decompositions of T_k", "[decomp]") {
  const std::vector<int> sizes{8, 13, 19, 26, 34, 43};
  for (int k = 4; k <= 9; ++k) {
    auto D = skew_upper_decomposition(k);
    INFO("k=" << k);
    CHECK(D.size() == sizes[k - 4]);
    CHECK(D.size() == binom(k + 1, 2) - 2);
    CHECK(check(D).pass);
  }
  CHECK_THROWS(skew_upper_decomposition(3));
}

TEST_CASE("border decompositions converge numerically", "[decomp][oracle]") {
  for (const auto& D : {t3_decomposition(), t4_conner_decomposition(), skew_difference_decomposition(5),
                        skew_upper_decomposition(6)}) {
    INFO(D.target.describe());
    Rational coarse = limit_error(D, 1000), fine = limit_error(D, 1000000);
    CHECK(fine < Rational(1, 1000));
    CHECK(fine * 100 <= coarse);
  }
}

TEST_CASE("rank decomposition over Q(zeta_3)", "[decomp]") {
  auto D = example3_decomposition();
  CHECK(D.size() == 5);
  CHECK(D.d == 0);
  CHECK(verify_rank_decomposition(D, target_tensor<Cyclo3>(D.target)).pass);
  auto G = cartan_decomposition_cyclo3(Partition{2}, Partition{2}, 2, example3_elements());
  REQUIRE(G.size() == 5);
  CHECK(verify_rank_decomposition(G, target_tensor<Cyclo3>(G.target)).pass);
  for (int i = 0; i < 5; ++i) CHECK(term_tensor(G.terms[i]) == term_tensor(D.terms[i]));
}

TEST_CASE("perturbed decompositions fail", "[decomp]") {
  auto D = t3_decomposition();
  for (std::size_t drop = 0; drop < D.terms.size(); ++drop) {
    auto bad = D;
    bad.terms.erase(bad.terms.begin() + static_cast<long>(drop));
    auto r = check(bad);
    CHECK_FALSE(r.pass);
    REQUIRE(r.failing_order.has_value());
    CHECK(*r.failing_order <= 1);
    CHECK(r.failing_coordinate.has_value());
  }
  auto E = example3_decomposition();
  E.terms[2].b[1] = Poly<Cyclo3>(Cyclo3(1));
  CHECK_FALSE(verify_rank_decomposition(E, target_tensor<Cyclo3>(E.target)).pass);
  auto pts = example3_elements();
  pts[2](0, 1) = Cyclo3(1);
  CHECK_THROWS_AS(cartan_decomposition_cyclo3(Partition{2}, Partition{2}, 2, pts), SpanDeficient);
  auto S = t4_conner_decomposition();
  S.scale = Rational(1, 2);
  CHECK_FALSE(check(S).pass);
  CHECK_THROWS_AS(verify_rank_decomposition(t3_decomposition(), target_tensor<Rational>(Target{"skew", 3})),
                  std::invalid_argument);
}

TEST_CASE("Cartan product decompositions", "[decomp]") {
  struct Case {
    Partition l, lp;
    int k, size;
  };
  for (const auto& c : std::vector<Case>{{Partition{1}, Partition{1}, 2, 3},
                                         {Partition{2}, Partition{2}, 2, 5},
                                         {Partition{2, 1}, Partition{1}, 3, 15}}) {
    auto D = cartan_decomposition(c.l, c.lp, c.k);
    INFO(to_string(c.l) << " * " << to_string(c.lp) << " k=" << c.k);
    CHECK(D.size() == c.size);
    CHECK(D.size() == dim_schur(cartan_sum(c.l, c.lp), c.k));
    CHECK(verify_rank_decomposition(D, target_tensor<Rational>(D.target)).pass);
    // the third factors form a basis
    DenseMatrix<Rational> C(D.size(), D.size());
    for (int i = 0; i < D.size(); ++i)
      for (int j = 0; j < D.size(); ++j) C(i, j) = D.terms[i].c[j].at(0);
    CHECK(dense_rank(C) == D.size());
  }
  CHECK_THROWS(cartan_decomposition(Partition{1, 1, 1}, Partition{1}, 2));
}

TEST_CASE("Cartan decompositions from different seeds all verify", "[decomp]") {
  for (std::uint64_t seed = 2; seed <= 6; ++seed) {
    PointSource src;
    src.seed = seed;
    auto D = cartan_decomposition(Partition{2}, Partition{1}, 2, src);
    CHECK(D.size() == 4);
    CHECK(verify_rank_decomposition(D, target_tensor<Rational>(D.target)).pass);
  }
}

TEST_CASE("concatenation of decompositions", "[decomp]") {
  auto a = embed_skew(t3_decomposition(), 5), b = embed_skew(skew_difference_decomposition(4), 5),
       c = skew_difference_decomposition(5);
  auto D = concatenate({a, b, c}, {"skew", 5});
  CHECK(D.size() == 5 + 4 + 5);
  CHECK(D.d == 1);
  CHECK(check(D).pass);
  auto E = concatenate({embed_skew(t4_conner_decomposition(), 5), c}, {"skew", 5});
  CHECK(E.d == 3);
  CHECK(check(E).pass);
  auto F = concatenate({a, b}, {"skew", 5});
  CHECK_FALSE(check(F).pass);
  CHECK_THROWS(embed_skew(t4_conner_decomposition(), 3));
}

TEST_CASE("decomposition JSON round trip", "[decomp]") {
  for (const auto& D : {t3_decomposition(), t4_conner_decomposition(), skew_upper_decomposition(5)}) {
    auto back = decomposition_from_json<Rational>(nlohmann::json::parse(to_json(D).dump()));
    CHECK(back.size() == D.size());
    CHECK(back.d == D.d);
    CHECK(back.scale == D.scale);
    CHECK(back.target.describe() == D.target.describe());
    CHECK(check(back).pass);
    for (int i = 0; i < D.size(); ++i) CHECK(back.terms[i].c == D.terms[i].c);
  }
  auto E = example3_decomposition();
  auto back = decomposition_from_json<Cyclo3>(nlohmann::json::parse(to_json(E).dump()));
  CHECK(verify_rank_decomposition(back, target_tensor<Cyclo3>(back.target)).pass);
  auto rep = to_json(check(t3_decomposition()));
  CHECK(rep["pass"] == true);
}

TEST_CASE("dimension mismatch is reported", "[decomp]") {
  CHECK_THROWS_AS(verify_border_decomposition(t3_decomposition(), target_tensor<Rational>(Target{"skew", 4})),
                  DimensionMismatch);
}
