#include "afr/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "afr/error.hpp"
#include "afr/version.hpp"

namespace afr {

std::int64_t FusionTable::coeff(int a, int b, int c) const {
  const Row& row = product(a, b);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, int v) { return e.first < v; });
  return (it != row.end() && it->first == c) ? it->second : 0;
}

const FusionTable::Row& FusionTable::product(int a, int b) const {
  return rows_[tri(a, b)];
}

std::map<Weight, std::int64_t> tensor_mult(const AlgebraData& alg, const Weight& lambda,
                                           const Weight& mu) {
  for (auto x : lambda)
    if (x < 0) throw UsageError("tensor_mult: lambda not dominant");
  for (auto x : mu)
    if (x < 0) throw UsageError("tensor_mult: mu not dominant");

  const bool swap = weyl_dim(alg, lambda) > weyl_dim(alg, mu);
  const Weight& small = swap ? mu : lambda;
  const Weight& big = swap ? lambda : mu;
  const WeightSystem& ws = weight_multiplicities(alg, small);

  const int r = alg.rank;
  std::map<Weight, std::int64_t> acc;
  std::vector<std::int64_t> v(r);
  for (std::size_t i = 0; i < ws.count(); ++i) {
    const auto w = ws.weight_at(i);
    for (int j = 0; j < r; ++j) v[j] = big[j] + 1 + w[j];
    const int sign = fold_finite_shifted(alg, v);
    if (sign == 0) continue;
    Weight key(r);
    for (int j = 0; j < r; ++j) key[j] = static_cast<std::int32_t>(v[j] - 1);
    acc[key] += sign * ws.weight_mult[i];
  }
  for (auto it = acc.begin(); it != acc.end();) {
    if (it->second == 0) { it = acc.erase(it); continue; }
    if (it->second < 0) throw InternalError("negative tensor multiplicity (fold bug)");
    ++it;
  }
  return acc;
}

FusionTable::Row fusion_product_indexed(const LevelContext& ctx, int a, int b) {
  const AlgebraData& alg = *ctx.alg;
  const int r = alg.rank;
  const Weight& la = ctx.weight(a);
  const Weight& mu = ctx.weight(b);
  const bool swap = weyl_dim(alg, la) > weyl_dim(alg, mu);
  const Weight& small = swap ? mu : la;
  const Weight& big = swap ? la : mu;
  const WeightSystem& ws = weight_multiplicities(alg, small);

  std::vector<std::int64_t> acc(ctx.size(), 0);
  std::vector<std::int64_t> v(r);
  for (std::size_t i = 0; i < ws.count(); ++i) {
    const auto w = ws.weight_at(i);
    for (int j = 0; j < r; ++j) v[j] = big[j] + 1 + w[j];
    const int sign = fold_affine_shifted(alg, ctx.kappa, v);
    if (sign == 0) continue;
    acc[ctx.index_of_shifted(v)] += sign * ws.weight_mult[i];
  }
  FusionTable::Row row;
  for (int c = 0; c < ctx.size(); ++c) {
    if (acc[c] == 0) continue;
    if (acc[c] < 0) throw InternalError("negative fusion coefficient (fold bug)");
    row.emplace_back(c, acc[c]);
  }
  return row;
}

std::map<Weight, std::int64_t> fusion_product(const LevelContext& ctx, const Weight& lambda,
                                              const Weight& mu) {
  const auto row = fusion_product_indexed(ctx, ctx.index_of(lambda), ctx.index_of(mu));
  std::map<Weight, std::int64_t> out;
  for (auto [c, n] : row) out[ctx.weight(c)] = n;
  return out;
}

FusionTable build_table(const LevelContext& ctx) {
  FusionTable table;
  table.ctx = &ctx;
  table.n_ = ctx.size();
  table.rows_.resize(table.tri(table.n_ - 1, table.n_ - 1) + 1);
  for (int a = 0; a < table.n_; ++a) {
    for (int b = a; b < table.n_; ++b) {
      if (a == 0) {
        table.rows_[table.tri(a, b)] = {{static_cast<std::int32_t>(b), 1}};
        continue;
      }
      table.rows_[table.tri(a, b)] = fusion_product_indexed(ctx, a, b);
    }
  }
  return table;
}

void save_table(const LevelContext& ctx, const FusionTable& table, std::ostream& os) {
  os << "afr-fusion-table 1\n";
  os << "algebra " << family_letter(ctx.alg->id.family) << ' ' << ctx.alg->rank << " level "
     << ctx.level << " code " << kCodeVersion << '\n';
  os << "pplus " << ctx.size() << '\n';
  for (int i = 0; i < ctx.size(); ++i) os << weight_to_string(ctx.weight(i)) << '\n';
  std::size_t triples = 0;
  for (const auto& row : table.rows_) triples += row.size();
  os << "triples " << triples << '\n';
  for (int a = 0; a < table.n_; ++a)
    for (int b = a; b < table.n_; ++b)
      for (auto [c, n] : table.product(a, b)) os << a << ' ' << b << ' ' << c << ' ' << n << '\n';
}

FusionTable load_table(const LevelContext& ctx, std::istream& is) {
  auto fail = [](const std::string& why) -> FusionTable {
    throw UsageError("fusion table cache rejected: " + why);
  };
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "afr-fusion-table" || version != 1)
    return fail("bad magic");
  std::string word, code;
  char fam;
  int rank, level, n;
  if (!(is >> tag >> fam >> rank >> word >> level >> tag >> code) || word != "level")
    return fail("bad header");
  if (fam != family_letter(ctx.alg->id.family) || rank != ctx.alg->rank || level != ctx.level)
    return fail("context mismatch");
  if (code != kCodeVersion) return fail("code version mismatch");
  if (!(is >> tag >> n) || tag != "pplus" || n != ctx.size()) return fail("P+ size mismatch");
  for (int i = 0; i < n; ++i) {
    Weight w(ctx.rank());
    for (int j = 0; j < ctx.rank(); ++j)
      if (!(is >> w[j])) return fail("truncated P+ block");
    if (w != ctx.weight(i)) return fail("P+ order mismatch");
  }
  std::size_t triples = 0;
  if (!(is >> tag >> triples) || tag != "triples") return fail("bad triples header");

  FusionTable table;
  table.ctx = &ctx;
  table.n_ = n;
  table.rows_.resize(table.tri(n - 1, n - 1) + 1);
  for (std::size_t t = 0; t < triples; ++t) {
    int a, b, c;
    std::int64_t v;
    if (!(is >> a >> b >> c >> v)) return fail("truncated triples block");
    if (a < 0 || b < a || b >= n || c < 0 || c >= n || v <= 0) return fail("invalid triple");
    table.rows_[table.tri(a, b)].emplace_back(c, v);
  }
  for (auto& row : table.rows_)
    if (!std::is_sorted(row.begin(), row.end())) return fail("unsorted row");
  return table;
}

std::int64_t verlinde_fusion(const SMatrix& S, int a, int b, int c) {
  const int n = S.size();
  std::complex<double> acc = 0;
  for (int d = 0; d < n; ++d)
    acc += S(a, d) * S(b, d) * std::conj(S(c, d)) / S(0, d);
  const double re = std::round(acc.real());
  if (std::abs(acc.imag()) > kRoundingTol || std::abs(acc.real() - re) > kRoundingTol)
    throw RoundingError("Verlinde sum failed to round to an integer");
  if (re < 0) throw RoundingError("Verlinde sum rounded to a negative value");
  return static_cast<std::int64_t>(re);
}

std::int64_t verlinde_genus(const SMatrix& S, int genus, std::span<const int> punctures) {
  if (genus < 0) throw UsageError("genus must be nonnegative");
  const int n = S.size();
  std::complex<double> acc = 0;
  for (int b = 0; b < n; ++b) {
    const double s0 = S(0, b).real();
    std::complex<double> term = std::pow(s0, 2 - 2 * genus);
    for (int a : punctures) term *= S(a, b) / s0;
    acc += term;
  }
  const double re = std::round(acc.real());
  if (std::abs(acc.imag()) > kRoundingTol || std::abs(acc.real() - re) > kRoundingTol)
    throw RoundingError("genus Verlinde sum failed to round to an integer");
  if (re < 0) throw RoundingError("genus Verlinde sum rounded to a negative value");
  return static_cast<std::int64_t>(re);
}

Eigen::MatrixXcd verlinde_matrix(const SMatrix& S, int a) {
  const int n = S.size();
  Eigen::MatrixXcd scaled = S.m;
  for (int d = 0; d < n; ++d) scaled.col(d) *= S(a, d) / S(0, d);
  return scaled * S.m.adjoint();
}

VerlindeCheck verlinde_table_check(const FusionTable& table, const SMatrix& S) {
  VerlindeCheck out;
  const int n = S.size();
  for (int a = 0; a < n; ++a) {
    const Eigen::MatrixXcd M = verlinde_matrix(S, a);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const std::complex<double> v = M(b, c);
        const double re = std::round(v.real());
        out.max_residual = std::max(out.max_residual,
                                    std::max(std::abs(v.imag()), std::abs(v.real() - re)));
        if (static_cast<std::int64_t>(re) != table.coeff(a, b, c)) ++out.mismatches;
      }
  }
  return out;
}

}  // namespace afr
