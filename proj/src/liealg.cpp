#include "afr/liealg.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "afr/error.hpp"

namespace afr {

namespace {

void check_rank(AlgebraId id) {
  const int r = id.rank;
  bool ok = false;
  switch (id.family) {
    case Family::A: ok = r >= 1; break;
    case Family::B: ok = r >= 3; break;
    case Family::C: ok = r >= 2; break;
    case Family::D: ok = r >= 4; break;
    case Family::E: ok = r >= 6 && r <= 8; break;
    case Family::F: ok = r == 4; break;
    case Family::G: ok = r == 2; break;
  }
  if (!ok) throw UsageError("invalid rank " + std::to_string(r) + " for family " +
                            std::string(1, family_letter(id.family)));
}

/// Diagram skeleton in Kac numbering: half norms d_i, bonds, comarks.
struct Skeleton {
  std::vector<Rational> d;                 // 1-based
  std::vector<std::pair<int, int>> bonds;  // adjacent node pairs, 1-based
  std::vector<int> comarks;                // 1-based, index 0 unused
};

Skeleton skeleton(AlgebraId id) {
  const int r = id.rank;
  Skeleton s;
  s.d.assign(r + 1, Rational(1));
  for (int i = 1; i < r; ++i) s.bonds.push_back({i, i + 1});
  s.comarks.assign(r + 1, 1);
  switch (id.family) {
    case Family::A:
      break;
    case Family::B:
      s.d[r] = Rational(1, 2);  // short root at the chain end
      for (int i = 2; i <= r - 1; ++i) s.comarks[i] = 2;
      break;
    case Family::C:
      for (int i = 1; i < r; ++i) s.d[i] = Rational(1, 2);  // long root at the end
      break;
    case Family::D:
      s.bonds.pop_back();  // fork: r-1 and r both attach to r-2
      s.bonds.push_back({r - 2, r});
      for (int i = 2; i <= r - 2; ++i) s.comarks[i] = 2;
      break;
    case Family::E:
      if (r == 6) {
        s.bonds.pop_back();  // chain 1-2-3-4-5, node 6 on node 3
        s.bonds.push_back({3, 6});
        s.comarks = {0, 1, 2, 3, 2, 1, 2};
      } else if (r == 7) {
        s.bonds.pop_back();  // chain 1-..-6, node 7 on node 3
        s.bonds.push_back({3, 7});
        s.comarks = {0, 2, 3, 4, 3, 2, 1, 2};
      } else {
        s.bonds.pop_back();  // chain 1-..-7, node 8 on node 5
        s.bonds.push_back({5, 8});
        s.comarks = {0, 2, 3, 4, 5, 6, 4, 2, 3};
      }
      break;
    case Family::F:
      s.d[3] = s.d[4] = Rational(1, 2);
      s.comarks = {0, 2, 3, 2, 1};
      break;
    case Family::G:
      s.d[2] = Rational(1, 3);
      s.comarks = {0, 2, 1};
      break;
  }
  return s;
}

std::vector<std::vector<Rational>> invert_rational(std::vector<std::vector<Rational>> m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col] != 0) { pivot = row; break; }
    if (pivot < 0) throw InternalError("singular symmetrized Cartan matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = m[col][col];
    for (int j = 0; j < n; ++j) { m[col][j] /= p; inv[col][j] /= p; }
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col];
      for (int j = 0; j < n; ++j) { m[row][j] -= f * m[col][j]; inv[row][j] -= f * inv[col][j]; }
    }
  }
  return inv;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) { h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull; h *= 1099511628211ull; }
    return h;
  }
};

/// Positive roots by height with the root-string closure rule:
/// beta + alpha_i is a root iff p_i(beta) - <beta, alpha_i^vee> > 0,
/// where p_i counts how far the alpha_i-string continues below beta.
void build_positive_roots(AlgebraData& alg) {
  const int r = alg.rank;
  std::unordered_set<std::vector<int>, VecHash> seen;
  std::vector<std::vector<int>> frontier;
  for (int i = 0; i < r; ++i) {
    std::vector<int> root(alg.cartan[i]);
    frontier.push_back(root);
    seen.insert(root);
    alg.positive_roots.push_back(root);
    alg.root_height.push_back(1);
  }
  int height = 1;
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& beta : frontier) {
      for (int i = 0; i < r; ++i) {
        int p = 0;
        std::vector<int> probe = beta;
        while (true) {
          for (int j = 0; j < r; ++j) probe[j] -= alg.cartan[i][j];
          if (!seen.count(probe)) break;
          if (++p > 64) throw InternalError("runaway root string");
        }
        if (p - beta[i] <= 0) continue;
        std::vector<int> up = beta;
        for (int j = 0; j < r; ++j) up[j] += alg.cartan[i][j];
        if (seen.insert(up).second) {
          next.push_back(up);
          alg.positive_roots.push_back(up);
          alg.root_height.push_back(height + 1);
        }
      }
    }
    frontier = std::move(next);
    ++height;
    if (height > 64 * r) throw InternalError("root closure did not terminate");
  }
  int max_h = 0;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < alg.positive_roots.size(); ++k)
    if (alg.root_height[k] > max_h) { max_h = alg.root_height[k]; arg = k; }
  alg.theta = alg.positive_roots[arg];
}

std::size_t expected_root_count(AlgebraId id) {
  const std::size_t r = static_cast<std::size_t>(id.rank);
  switch (id.family) {
    case Family::A: return r * (r + 1) / 2;
    case Family::B:
    case Family::C: return r * r;
    case Family::D: return r * (r - 1);
    case Family::E: return id.rank == 6 ? 36 : id.rank == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

/// Orthogonal components lambda(l) as linear functionals on Dynkin labels.
///   A: lambda(l) = sum_{i=l..r} lambda_i               (partition rows)
///   B: lambda(l) = sum_{i=l..r-1} lambda_i + lambda_r/2
///   C: lambda(l) = sum_{i=l..r} lambda_i
///   D: lambda(l) = sum_{i=l..r-1} lambda_i + (lambda_r - lambda_{r-1})/2
void build_ortho_rows(AlgebraData& alg) {
  const int r = alg.rank;
  for (int l = 1; l <= r; ++l) {
    std::vector<Rational> row(r, Rational(0));
    switch (alg.id.family) {
      case Family::A:
      case Family::C:
        for (int i = l; i <= r; ++i) row[i - 1] = 1;
        break;
      case Family::B:
        for (int i = l; i <= r - 1; ++i) row[i - 1] = 1;
        row[r - 1] = Rational(1, 2);
        break;
      case Family::D:
        for (int i = l; i <= r - 1; ++i) row[i - 1] = 1;
        row[r - 2] -= Rational(1, 2);
        row[r - 1] += Rational(1, 2);
        break;
      default:
        return;
    }
    alg.ortho_rows.push_back(std::move(row));
  }
}

std::unique_ptr<AlgebraData> build(AlgebraId id) {
  check_rank(id);
  auto out = std::make_unique<AlgebraData>();
  AlgebraData& alg = *out;
  alg.id = id;
  const int r = id.rank;
  alg.rank = r;

  Skeleton s = skeleton(id);
  alg.half_norm.assign(s.d.begin() + 1, s.d.end());
  alg.comarks.assign(r + 1, 1);
  for (int i = 1; i <= r; ++i) alg.comarks[i] = s.comarks[i];
  alg.dual_coxeter = std::accumulate(alg.comarks.begin(), alg.comarks.end(), 0);

  // Symmetrized Cartan matrix: diagonal 2 d_i, bonds carry -max(d_i, d_j).
  std::vector<std::vector<Rational>> sym(r, std::vector<Rational>(r, Rational(0)));
  for (int i = 0; i < r; ++i) sym[i][i] = 2 * alg.half_norm[i];
  for (auto [i, j] : s.bonds) {
    Rational b = -std::max(alg.half_norm[i - 1], alg.half_norm[j - 1]);
    sym[i - 1][j - 1] = sym[j - 1][i - 1] = b;
  }
  alg.cartan.assign(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      alg.cartan[i][j] = static_cast<int>(to_int64(sym[i][j] / alg.half_norm[j]));

  alg.cartan_sparse.assign(r, {});
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (alg.cartan[i][j] != 0) alg.cartan_sparse[i].push_back({j, alg.cartan[i][j]});

  // Quadratic form F = D B^{-1} D, conductor = lcm of denominators.
  auto binv = invert_rational(sym);
  alg.quad_form.assign(r, std::vector<Rational>(r));
  BigInt lcm_den = 1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      alg.quad_form[i][j] = binv[i][j] * alg.half_norm[i] * alg.half_norm[j];
      lcm_den = boost::multiprecision::lcm(lcm_den, denominator(alg.quad_form[i][j]));
    }
  alg.conductor = to_int64(lcm_den);
  alg.quad_form_scaled.assign(r, std::vector<std::int64_t>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      alg.quad_form_scaled[i][j] = to_int64(alg.quad_form[i][j] * alg.conductor);

  build_positive_roots(alg);
  if (alg.positive_roots.size() != expected_root_count(id))
    throw InternalError("positive-root count mismatch for " + id.name());

  alg.rho.assign(r, 1);
  alg.level_delta.assign(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) alg.level_delta[i] += alg.comarks[j + 1] * alg.cartan[i][j];

  // Highest root must be long (norm 2) and sit at level 2.
  std::vector<std::int64_t> th(alg.theta.begin(), alg.theta.end());
  if (alg.inner(th, th) != 2) throw InternalError("highest root norm != 2 for " + id.name());
  std::int64_t theta_level = 0;
  for (int j = 0; j < r; ++j) theta_level += alg.comarks[j + 1] * alg.theta[j];
  if (theta_level != 2) throw InternalError("highest root level != 2 for " + id.name());

  build_ortho_rows(alg);
  return out;
}

}  // namespace

Family family_from_letter(char c) {
  switch (c) {
    case 'A': case 'a': return Family::A;
    case 'B': case 'b': return Family::B;
    case 'C': case 'c': return Family::C;
    case 'D': case 'd': return Family::D;
    case 'E': case 'e': return Family::E;
    case 'F': case 'f': return Family::F;
    case 'G': case 'g': return Family::G;
    default: throw UsageError(std::string("unknown algebra family '") + c + "'");
  }
}

std::int64_t AlgebraData::inner_scaled(std::span<const std::int64_t> v,
                                       std::span<const std::int64_t> w) const {
  if (static_cast<int>(v.size()) != rank || static_cast<int>(w.size()) != rank)
    throw UsageError("inner product dimension mismatch");
  std::int64_t acc = 0;
  for (int i = 0; i < rank; ++i) {
    if (v[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < rank; ++j) row += quad_form_scaled[i][j] * w[j];
    acc += v[i] * row;
  }
  return acc;
}

Rational AlgebraData::inner(std::span<const std::int64_t> v, std::span<const std::int64_t> w) const {
  return Rational(inner_scaled(v, w), conductor);
}

const AlgebraData& algebra_data(AlgebraId id) {
  static std::mutex mu;
  static std::map<AlgebraId, std::unique_ptr<AlgebraData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, build(id)).first;
  return *it->second;
}

Rational weight_inner(const AlgebraData& alg, std::span<const std::int64_t> v,
                      std::span<const std::int64_t> w) {
  return alg.inner(v, w);
}

int fold_finite_shifted(const AlgebraData& alg, std::span<std::int64_t> v) {
  const int r = alg.rank;
  int sign = 1;
  for (long iter = 0;; ++iter) {
    if (iter > 1000000) throw InternalError("finite fold did not terminate");
    int arg = -1;
    std::int64_t min = 0;
    for (int i = 0; i < r; ++i)
      if (v[i] < min) { min = v[i]; arg = i; }
    if (arg < 0) break;
    const std::int64_t t = v[arg];
    for (auto [j, c] : alg.cartan_sparse[arg]) v[j] -= t * c;
    sign = -sign;
  }
  for (int i = 0; i < r; ++i)
    if (v[i] == 0) return 0;
  return sign;
}

int fold_affine_shifted(const AlgebraData& alg, std::int64_t kappa, std::span<std::int64_t> v) {
  const int r = alg.rank;
  std::int64_t v0 = kappa;
  for (int i = 0; i < r; ++i) v0 -= alg.comarks[i + 1] * v[i];
  int sign = 1;
  for (long iter = 0;; ++iter) {
    if (iter > 2000000) throw InternalError("affine fold did not terminate");
    int arg = -1;  // -1 encodes the affine node
    std::int64_t min = v0;
    for (int i = 0; i < r; ++i)
      if (v[i] < min) { min = v[i]; arg = i; }
    if (min >= 0) break;
    if (arg < 0) {
      for (int j = 0; j < r; ++j) v[j] += v0 * alg.theta[j];
      v0 = -v0;
    } else {
      const std::int64_t t = v[arg];
      for (auto [j, c] : alg.cartan_sparse[arg]) v[j] -= t * c;
      v0 += t * alg.level_delta[arg];
    }
    sign = -sign;
  }
  if (v0 == 0) return 0;
  for (int i = 0; i < r; ++i)
    if (v[i] == 0) return 0;
  return sign;
}

void fold_dominant(const AlgebraData& alg, std::span<std::int64_t> v) {
  const int r = alg.rank;
  for (long iter = 0;; ++iter) {
    if (iter > 1000000) throw InternalError("dominant fold did not terminate");
    int arg = -1;
    std::int64_t min = 0;
    for (int i = 0; i < r; ++i)
      if (v[i] < min) { min = v[i]; arg = i; }
    if (arg < 0) return;
    const std::int64_t t = v[arg];
    for (auto [j, c] : alg.cartan_sparse[arg]) v[j] -= t * c;
  }
}

FoldResult finite_fold(const AlgebraData& alg, std::vector<std::int64_t> v) {
  if (static_cast<int>(v.size()) != alg.rank) throw UsageError("finite_fold: wrong dimension");
  for (int i = 0; i < alg.rank; ++i) v[i] += 1;
  FoldResult out;
  out.det_sign = fold_finite_shifted(alg, v);
  for (int i = 0; i < alg.rank; ++i) v[i] -= 1;
  out.weight = std::move(v);
  return out;
}

FoldResult affine_fold(const AlgebraData& alg, std::int64_t kappa, std::vector<std::int64_t> v) {
  if (static_cast<int>(v.size()) != alg.rank) throw UsageError("affine_fold: wrong dimension");
  if (kappa < alg.dual_coxeter) throw UsageError("affine_fold: kappa below dual Coxeter number");
  FoldResult out;
  out.det_sign = fold_affine_shifted(alg, kappa, v);
  out.weight = std::move(v);
  return out;
}

}  // namespace afr
