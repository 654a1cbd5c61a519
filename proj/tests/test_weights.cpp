#include <doctest.h>

#include <algorithm>
#include <set>

#include "afr/characters.hpp"
#include "afr/error.hpp"
#include "afr/weights.hpp"

using namespace afr;

namespace {

long long binomial(int n, int k) {
  long long v = 1;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

TEST_CASE("P+ enumeration") {
  const auto& a1 = algebra_data({Family::A, 1});
  auto ctx = enumerate_pplus(a1, 2);
  CHECK(ctx.size() == 3);
  CHECK(ctx.pplus == std::vector<Weight>{{0}, {1}, {2}});
  CHECK(ctx.index_of_zero == 0);
  CHECK(ctx.kappa == 4);

  // A-series sizes are binomials
  for (int r = 1; r <= 4; ++r)
    for (int k = 1; k <= 5; ++k) {
      auto c = enumerate_pplus(algebra_data({Family::A, r}), k);
      CHECK(c.size() == binomial(r + k, r));
    }

  // canonical order is lexicographic on the labels
  auto b3 = enumerate_pplus(algebra_data({Family::B, 3}), 2);
  CHECK(std::is_sorted(b3.pplus.begin(), b3.pplus.end()));
  CHECK(b3.size() == 7);
  std::set<Weight> expect{{0, 0, 0}, {2, 0, 0}, {1, 0, 0}, {0, 1, 0},
                          {0, 0, 2}, {0, 0, 1}, {1, 0, 1}};
  CHECK(std::set<Weight>(b3.pplus.begin(), b3.pplus.end()) == expect);

  auto e8 = enumerate_pplus(algebra_data({Family::E, 8}), 2);
  REQUIRE(e8.size() == 3);
  CHECK(e8.weight(0) == Weight{0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(e8.index_of({1, 0, 0, 0, 0, 0, 0, 0}) >= 0);
  CHECK(e8.index_of({0, 0, 0, 0, 0, 0, 1, 0}) >= 0);

  CHECK_THROWS_AS(enumerate_pplus(a1, 0), UsageError);
  CHECK_THROWS_AS(ctx.index_of({5}), UsageError);
}

TEST_CASE("charge conjugation") {
  auto a2 = enumerate_pplus(algebra_data({Family::A, 2}), 3);
  CHECK(charge_conjugate(a2, {1, 2}) == Weight{2, 1});
  CHECK(charge_conjugate(a2, {0, 0}) == Weight{0, 0});

  auto b3 = enumerate_pplus(algebra_data({Family::B, 3}), 2);
  for (const auto& w : b3.pplus) CHECK(charge_conjugate(b3, w) == w);

  auto e6 = enumerate_pplus(algebra_data({Family::E, 6}), 2);
  CHECK(charge_conjugate(e6, {1, 0, 0, 0, 0, 0}) == Weight{0, 0, 0, 0, 1, 0});
  CHECK(charge_conjugate(e6, {0, 1, 0, 0, 0, 0}) == Weight{0, 0, 0, 1, 0, 0});
  CHECK(charge_conjugate(e6, {0, 0, 0, 0, 0, 1}) == Weight{0, 0, 0, 0, 0, 1});

  auto d5 = enumerate_pplus(algebra_data({Family::D, 5}), 2);
  CHECK(charge_conjugate(d5, {0, 0, 0, 1, 0}) == Weight{0, 0, 0, 0, 1});

  // involution everywhere
  for (const auto& ctx : {a2, b3, e6, d5})
    for (const auto& w : ctx.pplus) CHECK(charge_conjugate(ctx, charge_conjugate(ctx, w)) == w);
}

TEST_CASE("conjugation groups") {
  auto count = [](Family f, int r, int k) {
    return conjugations(enumerate_pplus(algebra_data({f, r}), k)).size();
  };
  CHECK(count(Family::D, 4, 2) == 6);
  CHECK(count(Family::D, 5, 2) == 2);
  CHECK(count(Family::D, 6, 1) == 2);
  CHECK(count(Family::A, 1, 3) == 1);
  CHECK(count(Family::A, 3, 2) == 2);
  CHECK(count(Family::E, 6, 1) == 2);
  CHECK(count(Family::G, 2, 2) == 1);
  CHECK(count(Family::B, 3, 2) == 1);
  CHECK(count(Family::E, 7, 2) == 1);

  // conjugations contain charge conjugation
  auto e6 = enumerate_pplus(algebra_data({Family::E, 6}), 2);
  auto conj = conjugations(e6);
  auto c = charge_conjugation_perm(e6);
  CHECK(std::find(conj.begin(), conj.end(), c) != conj.end());
}

TEST_CASE("extended diagram symmetry groups") {
  auto order = [](Family f, int r) { return extended_symmetries(algebra_data({f, r})).size(); };
  CHECK(order(Family::A, 1) == 2);
  CHECK(order(Family::A, 2) == 6);   // dihedral on a triangle
  CHECK(order(Family::A, 4) == 10);  // dihedral on a pentagon
  CHECK(order(Family::B, 3) == 2);
  CHECK(order(Family::C, 3) == 2);
  CHECK(order(Family::D, 4) == 24);  // S4 on the outer nodes
  CHECK(order(Family::D, 5) == 8);
  CHECK(order(Family::E, 6) == 6);
  CHECK(order(Family::E, 7) == 2);
  CHECK(order(Family::E, 8) == 1);
  CHECK(order(Family::F, 4) == 1);
  CHECK(order(Family::G, 2) == 1);
}

TEST_CASE("simple currents — A series") {
  auto ctx = enumerate_pplus(algebra_data({Family::A, 2}), 3);
  auto S = smatrix(ctx);
  auto currents = simple_currents(ctx, S);
  REQUIRE(currents.size() == 3);  // Z3

  std::multiset<int> orders;
  for (const auto& c : currents) orders.insert(c.order);
  CHECK(orders == std::multiset<int>{1, 3, 3});

  for (const auto& c : currents) {
    CHECK(c.perm[ctx.index_of_zero] == c.rep_index);
    CHECK(perm_order(c.perm) == c.order);
    // Q = a t(lambda) / (r+1) mod 1 for J^a with J0 = k Lambda_1
    if (c.rep == Weight{3, 0} || c.rep == Weight{0, 3}) {
      const int a = c.rep == Weight{3, 0} ? 1 : 2;
      for (int i = 0; i < ctx.size(); ++i) {
        Rational expect = mod1(Rational(a * a_series_charge(ctx.weight(i)), 3));
        CHECK(mod1(c.charge[i]) == expect);
      }
    }
  }
}

TEST_CASE("simple currents — detection matches q-dimension one") {
  for (auto [f, r, k] : std::vector<std::tuple<Family, int, int>>{
           {Family::A, 3, 2}, {Family::B, 3, 2}, {Family::C, 2, 3}, {Family::D, 4, 2},
           {Family::E, 6, 2}, {Family::E, 7, 2}, {Family::G, 2, 3}}) {
    auto ctx = enumerate_pplus(algebra_data({f, r}), k);
    auto S = smatrix(ctx);
    auto currents = simple_currents(ctx, S);
    std::set<int> reps;
    for (const auto& c : currents) reps.insert(c.rep_index);
    for (int i = 0; i < ctx.size(); ++i) {
      const bool unit_qdim = std::abs(qdim(ctx, ctx.weight(i)) - 1.0) <= kQdimClassTol;
      CHECK(unit_qdim == (reps.count(i) > 0));
    }
  }
}

TEST_CASE("simple currents — anomalous E8 level 2") {
  auto ctx = enumerate_pplus(algebra_data({Family::E, 8}), 2);
  auto S = smatrix(ctx);
  auto currents = simple_currents(ctx, S);
  REQUIRE(currents.size() == 2);
  const auto& j = currents[0].order == 2 ? currents[0] : currents[1];
  CHECK(j.rep == Weight{0, 0, 0, 0, 0, 0, 1, 0});
  const int zero = ctx.index_of_zero;
  const int l1 = ctx.index_of({1, 0, 0, 0, 0, 0, 0, 0});
  CHECK(j.perm[zero] == j.rep_index);
  CHECK(j.perm[j.rep_index] == zero);
  CHECK(j.perm[l1] == l1);

  auto e83 = enumerate_pplus(algebra_data({Family::E, 8}), 3);
  auto S3 = smatrix(e83);
  CHECK(simple_currents(e83, S3).size() == 1);  // only the identity
}

TEST_CASE("simple currents — orthogonal charges") {
  auto b3 = enumerate_pplus(algebra_data({Family::B, 3}), 3);
  auto Sb = smatrix(b3);
  auto cb = simple_currents(b3, Sb);
  REQUIRE(cb.size() == 2);
  const auto& j = cb[0].order == 2 ? cb[0] : cb[1];
  for (int i = 0; i < b3.size(); ++i)
    CHECK(mod1(j.charge[i]) == mod1(Rational(b3.weight(i)[2], 2)));  // Q = lambda_r / 2

  auto d4 = enumerate_pplus(algebra_data({Family::D, 4}), 2);
  auto Sd = smatrix(d4);
  auto cd = simple_currents(d4, Sd);
  REQUIRE(cd.size() == 4);  // Z2 x Z2
  const int r = 4, k = 2;
  for (const auto& c : cd) {
    if (c.rep == Weight{2, 0, 0, 0}) {
      // vector current: Q_v = (lambda_{r-1} + lambda_r)/2
      for (int i = 0; i < d4.size(); ++i)
        CHECK(mod1(c.charge[i]) == mod1(Rational(d4.weight(i)[2] + d4.weight(i)[3], 2)));
    }
    if (c.rep == Weight{0, 0, 0, 2}) {
      // spinor current: Q_s(J_s 0) = -rk/4 mod 1
      CHECK(mod1(c.charge[c.rep_index]) == mod1(Rational(-r * k, 4)));
    }
  }
}

TEST_CASE("simple current phase identities") {
  for (auto [f, r, k] : std::vector<std::tuple<Family, int, int>>{
           {Family::A, 2, 3}, {Family::B, 3, 2}, {Family::D, 5, 2}, {Family::E, 6, 2}}) {
    auto ctx = enumerate_pplus(algebra_data({f, r}), k);
    auto S = smatrix(ctx);
    auto currents = simple_currents(ctx, S);
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (const auto& c : currents) {
      // S_{J lambda, mu} = exp(2 pi i Q(mu)) S_{lambda, mu}
      for (int la = 0; la < ctx.size(); ++la)
        for (int mu = 0; mu < ctx.size(); ++mu) {
          const double q = to_double(c.charge[mu]);
          const std::complex<double> phase(std::cos(kTwoPi * q), std::sin(kTwoPi * q));
          CHECK(std::abs(S(c.perm[la], mu) - phase * S(la, mu)) < 1e-9);
        }
      // additivity and reciprocity of the charges
      for (const auto& c2 : currents) {
        CHECK(mod1(c.charge[c2.rep_index]) == mod1(c2.charge[c.rep_index]));
        for (int la = 0; la < ctx.size(); ++la) {
          Rational lhs = c2.charge[c.perm[la]];
          Rational rhs = c.charge[c2.rep_index] + c2.charge[la];
          CHECK(congruent_mod1(lhs, rhs));
        }
      }
    }
  }
}

TEST_CASE("permutation helpers") {
  Perm p{1, 2, 0};
  CHECK(perm_order(p) == 3);
  CHECK(compose(p, inverse_perm(p)) == Perm{0, 1, 2});
  CHECK(is_identity(compose(p, inverse_perm(p))));
  CHECK(cycle_notation(p) == "(0 1 2)");
  CHECK(cycle_notation(Perm{0, 1}) == "()");
}
