#include <doctest.h>

#include <random>
#include <sstream>

#include "afr/error.hpp"
#include "afr/fusion.hpp"
#include "lr_oracle.hpp"

using namespace afr;

namespace {

/// Closed-form A1 level-k fusion numbers used as an independent oracle.
std::int64_t a1_fusion(int k, int a, int b, int c) {
  if ((a + b + c) % 2 != 0) return 0;
  return std::abs(a - b) <= c && c <= std::min(a + b, 2 * k - a - b) ? 1 : 0;
}

struct Bundle {
  LevelContext ctx;
  SMatrix S;
  FusionTable table;
};

Bundle make(Family f, int r, int k) {
  Bundle b{enumerate_pplus(algebra_data({f, r}), k), {}, {}};
  b.S = smatrix(b.ctx);
  b.table = build_table(b.ctx);
  return b;
}

}  // namespace

TEST_CASE("tensor products") {
  const auto& a2 = algebra_data({Family::A, 2});
  SUBCASE("trivial factor") {
    auto t = tensor_mult(a2, {1, 2}, {0, 0});
    REQUIRE(t.size() == 1);
    CHECK(t.at({1, 2}) == 1);
  }
  SUBCASE("fundamental square of sl(3)") {
    auto t = tensor_mult(a2, {1, 0}, {1, 0});
    REQUIRE(t.size() == 2);
    CHECK(t.at({0, 1}) == 1);
    CHECK(t.at({2, 0}) == 1);
  }
  SUBCASE("agreement with the Littlewood-Richardson oracle") {
    for (auto [r, pairs] : std::vector<std::pair<int, std::vector<std::pair<Weight, Weight>>>>{
             {2, {{{1, 0}, {1, 1}}, {{2, 1}, {1, 2}}, {{2, 0}, {0, 2}}}},
             {3, {{{1, 0, 1}, {0, 1, 0}}, {{1, 1, 0}, {1, 0, 1}}}}}) {
      const auto& alg = algebra_data({Family::A, r});
      for (const auto& [la, mu] : pairs) {
        auto t = tensor_mult(alg, la, mu);
        // every coefficient matches, and nothing is missing
        std::int64_t total = 0;
        for (const auto& [nu, n] : t) {
          CHECK(lr::tensor_mult_sl(r + 1, la, mu, nu) == n);
          total += n * weyl_dim(alg, nu);
        }
        CHECK(total == weyl_dim(alg, la) * weyl_dim(alg, mu));
      }
    }
  }
  SUBCASE("dimension sum rule") {
    std::mt19937 rng(11);
    for (auto id : {AlgebraId{Family::B, 3}, AlgebraId{Family::G, 2}, AlgebraId{Family::C, 3}}) {
      const auto& alg = algebra_data(id);
      std::uniform_int_distribution<int> label(0, 2);
      for (int trial = 0; trial < 5; ++trial) {
        Weight la(alg.rank), mu(alg.rank);
        for (auto& x : la) x = label(rng);
        for (auto& x : mu) x = label(rng);
        auto t = tensor_mult(alg, la, mu);
        std::int64_t total = 0;
        for (const auto& [nu, n] : t) total += n * weyl_dim(alg, nu);
        CHECK(total == weyl_dim(alg, la) * weyl_dim(alg, mu));
      }
    }
  }
  SUBCASE("hook-length coefficients in fundamental tensor powers") {
    // coefficient of lambda with t(lambda) = l in the l-th tensor power of
    // the first fundamental weight is l! / (product of hook lengths)
    auto fact = [](int n) { std::int64_t f = 1; for (int i = 2; i <= n; ++i) f *= i; return f; };
    for (int r : {2, 3}) {
      const auto& alg = algebra_data({Family::A, r});
      Weight l1(r, 0);
      l1[0] = 1;
      std::map<Weight, std::int64_t> power{{l1, 1}};
      for (int l = 2; l <= 4; ++l) {
        std::map<Weight, std::int64_t> next;
        for (const auto& [w, n] : power)
          for (const auto& [nu, m] : tensor_mult(alg, w, l1)) next[nu] += n * m;
        power = std::move(next);
        for (const auto& [w, n] : power) {
          if (lr::boxes(lr::partition_of(w)) != l) continue;
          CHECK(n == fact(l) / lr::hook_product(w));
        }
      }
    }
  }
}

TEST_CASE("fusion products") {
  SUBCASE("A1 closed form, all levels and triples") {
    for (int k = 1; k <= 6; ++k) {
      auto b = make(Family::A, 1, k);
      for (int x = 0; x <= k; ++x)
        for (int y = 0; y <= k; ++y)
          for (int z = 0; z <= k; ++z) CHECK(b.table.coeff(x, y, z) == a1_fusion(k, x, y, z));
    }
  }
  SUBCASE("level truncation reduces to the tensor product at large level") {
    const auto& a2 = algebra_data({Family::A, 2});
    auto ctx = enumerate_pplus(a2, 6);
    const Weight la{1, 1}, mu{2, 0};
    auto fused = fusion_product(ctx, la, mu);
    auto tensor = tensor_mult(a2, la, mu);
    CHECK(std::map<Weight, std::int64_t>(fused.begin(), fused.end()) == tensor);
  }
  SUBCASE("Fibonacci ring at G2 level 1") {
    auto ctx = enumerate_pplus(algebra_data({Family::G, 2}), 1);
    auto f = fusion_product(ctx, {0, 1}, {0, 1});
    REQUIRE(f.size() == 2);
    CHECK(f.at({0, 0}) == 1);
    CHECK(f.at({0, 1}) == 1);
  }
  SUBCASE("two-element ring at A1 level 1") {
    auto b = make(Family::A, 1, 1);
    CHECK(b.table.coeff(1, 1, 0) == 1);
    CHECK(b.table.coeff(1, 1, 1) == 0);
  }
  SUBCASE("E8 level 2 truncation") {
    auto b = make(Family::E, 8, 2);
    const int l1 = b.ctx.index_of({1, 0, 0, 0, 0, 0, 0, 0});
    const auto& row = b.table.product(l1, l1);
    REQUIRE(row.size() == 2);
    CHECK(b.table.coeff(l1, l1, b.ctx.index_of_zero) == 1);
    CHECK(b.table.coeff(l1, l1, b.ctx.index_of({0, 0, 0, 0, 0, 0, 1, 0})) == 1);
  }
}

TEST_CASE("fusion table invariants") {
  for (auto [f, r, k] : std::vector<std::tuple<Family, int, int>>{
           {Family::A, 2, 2}, {Family::B, 3, 2}, {Family::G, 2, 3}, {Family::D, 4, 2}}) {
    auto b = make(f, r, k);
    const int n = b.ctx.size();
    const auto C = charge_conjugation_perm(b.ctx);

    // unit row and conjugation pairing
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        CHECK(b.table.coeff(0, x, y) == (x == y ? 1 : 0));
        CHECK(b.table.coeff(x, y, 0) == (y == C[x] ? 1 : 0));
      }

    // full associativity
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int t = 0; t < n; ++t) {
            std::int64_t lhs = 0, rhs = 0;
            for (int s = 0; s < n; ++s) {
              lhs += b.table.coeff(x, y, s) * b.table.coeff(s, z, t);
              rhs += b.table.coeff(y, z, s) * b.table.coeff(x, s, t);
            }
            CHECK(lhs == rhs);
          }

    // conjugation invariance
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          CHECK(b.table.coeff(C[x], C[y], C[z]) == b.table.coeff(x, y, z));

    // simple-current invariance and charge conservation on the support
    const auto currents = simple_currents(b.ctx, b.S);
    for (const auto& j1 : currents)
      for (const auto& j2 : currents)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            for (auto [z, v] : b.table.product(x, y)) {
              const int jz = j1.perm[j2.perm[z]];
              CHECK(b.table.coeff(j1.perm[x], j2.perm[y], jz) == v);
              CHECK(congruent_mod1(j1.charge[x] + j1.charge[y], j1.charge[z]));
            }

    // the fusion matrix of a simple current is its permutation matrix
    for (const auto& j : currents)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          CHECK(b.table.coeff(j.rep_index, x, y) == (j.perm[x] == y ? 1 : 0));
  }
}

TEST_CASE("Verlinde formula") {
  SUBCASE("unit row") {
    auto b = make(Family::C, 2, 3);
    for (int x = 0; x < b.ctx.size(); ++x)
      for (int y = 0; y < b.ctx.size(); ++y)
        CHECK(verlinde_fusion(b.S, 0, x, y) == (x == y ? 1 : 0));
  }
  SUBCASE("A1 level 2 against the closed-form S") {
    // evaluate the Verlinde sum on a hand-built S matrix
    const int k = 2, n = k + 1;
    SMatrix S;
    S.m.resize(n, n);
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb)
        S.m(a, bb) = std::sqrt(2.0 / (k + 2)) *
                     std::sin(M_PI * (a + 1) * (bb + 1) / static_cast<double>(k + 2));
    CHECK(verlinde_fusion(S, 1, 1, 0) == 1);
    CHECK(verlinde_fusion(S, 1, 1, 2) == 1);
    CHECK(verlinde_fusion(S, 1, 1, 1) == 0);
  }
  SUBCASE("whole-table agreement on mixed contexts") {
    for (auto [f, r, k] : std::vector<std::tuple<Family, int, int>>{
             {Family::A, 3, 4}, {Family::E, 6, 2}, {Family::F, 4, 3}}) {
      auto b = make(f, r, k);
      auto check = verlinde_table_check(b.table, b.S);
      CHECK(check.mismatches == 0);
      CHECK(check.max_residual < 1e-9);
    }
  }
  SUBCASE("rounding failure raises") {
    auto b = make(Family::A, 1, 2);
    SMatrix corrupted = b.S;
    corrupted.m(1, 1) += 0.01;
    CHECK_THROWS_AS(verlinde_fusion(corrupted, 1, 1, 1), RoundingError);
  }
}

TEST_CASE("genus dimensions") {
  auto b = make(Family::A, 1, 1);
  SUBCASE("torus counts the primaries") { CHECK(verlinde_genus(b.S, 1, {}) == 2); }
  SUBCASE("genus two") { CHECK(verlinde_genus(b.S, 2, {}) == 4); }
  SUBCASE("three-point couplings reproduce the fusion numbers") {
    auto g = make(Family::G, 2, 2);
    for (int x = 0; x < g.ctx.size(); ++x)
      for (int y = 0; y < g.ctx.size(); ++y)
        for (int z = 0; z < g.ctx.size(); ++z) {
          const int punct[3] = {x, y, charge_conjugate_index(g.ctx, z)};
          CHECK(verlinde_genus(g.S, 0, punct) == g.table.coeff(x, y, z));
        }
  }
  SUBCASE("negative genus is rejected") {
    CHECK_THROWS_AS(verlinde_genus(b.S, -1, {}), UsageError);
  }
}

TEST_CASE("table cache round trip") {
  auto b = make(Family::B, 3, 3);
  std::ostringstream os;
  save_table(b.ctx, b.table, os);
  std::istringstream is(os.str());
  auto reloaded = load_table(b.ctx, is);
  CHECK(reloaded.rows_ == b.table.rows_);

  // header mismatch is rejected
  auto other = enumerate_pplus(algebra_data({Family::B, 3}), 2);
  std::istringstream is2(os.str());
  CHECK_THROWS_AS(load_table(other, is2), UsageError);

  // and byte-identical re-serialization
  std::ostringstream os2;
  save_table(b.ctx, reloaded, os2);
  CHECK(os.str() == os2.str());
}
