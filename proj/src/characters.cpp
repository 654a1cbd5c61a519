#include "afr/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "afr/error.hpp"

namespace afr {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

std::uint64_t pack8(std::span<const std::int64_t> v) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::int64_t x = v[i];
    if (x < -120 || x > 120) throw InternalError("orbit label out of packing range");
    key |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(x + 121)) << (8 * i);
  }
  return key;
}

struct WideHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) { h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull; h *= 1099511628211ull; }
    return h;
  }
};

/// Deduplicating visitor over an arbitrary-rank label vector set. Rank <= 8
/// uses packed 64-bit keys, anything wider falls back to vector keys.
class VisitedSet {
 public:
  explicit VisitedSet(int rank) : packed_(rank <= 8) {}
  bool insert(std::span<const std::int64_t> v) {
    if (packed_) return packed_set_.insert(pack8(v)).second;
    return wide_set_.insert(std::vector<std::int64_t>(v.begin(), v.end())).second;
  }

 private:
  bool packed_;
  std::unordered_set<std::uint64_t> packed_set_;
  std::unordered_set<std::vector<std::int64_t>, WideHash> wide_set_;
};

/// Dominant weights of L(lambda): breadth-first closure of lambda under
/// positive-root subtraction, pruned to the dominant chamber. Every dominant
/// weight below lambda in the same coset is reached this way (covers in the
/// dominance order on dominants are positive roots).
struct DominantSet {
  std::vector<std::vector<std::int64_t>> weights;
  std::vector<int> depth;  // height of lambda - mu in the root basis
};

DominantSet dominant_weights(const AlgebraData& alg, const Weight& highest) {
  const int r = alg.rank;
  DominantSet out;
  VisitedSet seen(r);
  std::vector<std::int64_t> top(highest.begin(), highest.end());
  seen.insert(top);
  out.weights.push_back(top);
  out.depth.push_back(0);
  std::size_t head = 0;
  while (head < out.weights.size()) {
    const auto cur = out.weights[head];
    const int cur_depth = out.depth[head];
    ++head;
    for (std::size_t a = 0; a < alg.positive_roots.size(); ++a) {
      std::vector<std::int64_t> next(cur);
      bool dominant = true;
      for (int j = 0; j < r; ++j) {
        next[j] -= alg.positive_roots[a][j];
        if (next[j] < 0) dominant = false;
      }
      if (!dominant) continue;
      if (seen.insert(next)) {
        out.weights.push_back(std::move(next));
        out.depth.push_back(cur_depth + alg.root_height[a]);
      }
    }
  }
  return out;
}

std::unique_ptr<WeightSystem> build_weight_system(const AlgebraData& alg, const Weight& highest) {
  const int r = alg.rank;
  auto out = std::make_unique<WeightSystem>();
  WeightSystem& ws = *out;
  ws.highest = highest;
  ws.rank = r;

  DominantSet dom = dominant_weights(alg, highest);
  std::vector<std::size_t> order(dom.weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dom.depth[a] < dom.depth[b]; });

  // Index of each dominant weight for multiplicity lookups during Freudenthal.
  std::map<std::vector<std::int64_t>, std::size_t> dom_index;
  for (std::size_t i = 0; i < dom.weights.size(); ++i) dom_index[dom.weights[i]] = i;

  std::vector<std::int64_t> mult(dom.weights.size(), 0);
  std::vector<std::int64_t> lam_rho(r), mu_rho(r), xi(r), folded(r);
  for (int j = 0; j < r; ++j) lam_rho[j] = highest[j] + 1;
  const std::int64_t lam_norm = alg.inner_scaled(lam_rho, lam_rho);

  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t idx = order[oi];
    const auto& mu = dom.weights[idx];
    if (dom.depth[idx] == 0) { mult[idx] = 1; continue; }
    std::int64_t num = 0;
    for (std::size_t a = 0; a < alg.positive_roots.size(); ++a) {
      const auto& alpha = alg.positive_roots[a];
      std::vector<std::int64_t> alpha64(alpha.begin(), alpha.end());
      xi = mu;
      for (int step = 1;; ++step) {
        if (step > 100000) throw InternalError("runaway Freudenthal string");
        for (int j = 0; j < r; ++j) xi[j] += alpha[j];
        folded = xi;
        fold_dominant(alg, folded);
        auto it = dom_index.find(folded);
        if (it == dom_index.end()) break;
        const std::int64_t m = mult[it->second];
        if (m == 0) throw InternalError("Freudenthal ordering violated");
        num += m * alg.inner_scaled(xi, alpha64);
      }
    }
    num *= 2;
    for (int j = 0; j < r; ++j) mu_rho[j] = mu[j] + 1;
    const std::int64_t den = lam_norm - alg.inner_scaled(mu_rho, mu_rho);
    if (den <= 0 || num % den != 0)
      throw InternalError("Freudenthal recursion produced a non-integer multiplicity");
    mult[idx] = num / den;
  }

  // Expand each dominant Weyl orbit into the flat distinct-weight list.
  std::int64_t total = 0;
  for (std::size_t i = 0; i < dom.weights.size(); ++i) {
    ws.dominant.push_back(Weight(dom.weights[i].begin(), dom.weights[i].end()));
    ws.dominant_mult.push_back(mult[i]);

    VisitedSet seen(r);
    std::vector<std::vector<std::int64_t>> queue{dom.weights[i]};
    seen.insert(queue[0]);
    std::size_t head = 0;
    while (head < queue.size()) {
      const auto v = queue[head];
      ++head;
      for (int j = 0; j < r; ++j) ws.weights_flat.push_back(static_cast<std::int32_t>(v[j]));
      ws.weight_mult.push_back(mult[i]);
      total += mult[i];
      for (int s = 0; s < r; ++s) {
        if (v[s] <= 0) continue;
        std::vector<std::int64_t> next(v);
        const std::int64_t t = next[s];
        for (auto [j, c] : alg.cartan_sparse[s]) next[j] -= t * c;
        if (seen.insert(next)) queue.push_back(std::move(next));
      }
    }
  }
  ws.dim = total;

  if (total != weyl_dim(alg, highest))
    throw InternalError("weight system dimension disagrees with the Weyl formula");
  return out;
}

}  // namespace

std::int64_t WeightSystem::multiplicity(const AlgebraData& alg,
                                        std::span<const std::int64_t> w) const {
  std::vector<std::int64_t> folded(w.begin(), w.end());
  fold_dominant(alg, folded);
  Weight key(folded.begin(), folded.end());
  for (std::size_t i = 0; i < dominant.size(); ++i)
    if (dominant[i] == key) return dominant_mult[i];
  return 0;
}

const WeightSystem& weight_multiplicities(const AlgebraData& alg, const Weight& highest) {
  for (auto x : highest)
    if (x < 0) throw UsageError("weight_multiplicities needs a dominant weight");
  static std::mutex mu;
  static std::map<std::pair<AlgebraId, Weight>, std::unique_ptr<WeightSystem>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(alg.id, highest);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(std::move(key), build_weight_system(alg, highest)).first;
  return *it->second;
}

std::int64_t weyl_dim(const AlgebraData& alg, const Weight& highest) {
  const int r = alg.rank;
  std::vector<std::int64_t> lam_rho(r), rho(r, 1);
  for (int j = 0; j < r; ++j) lam_rho[j] = highest[j] + 1;
  BigInt num = 1, den = 1;
  for (const auto& root : alg.positive_roots) {
    std::vector<std::int64_t> alpha(root.begin(), root.end());
    num *= alg.inner_scaled(lam_rho, alpha);
    den *= alg.inner_scaled(rho, alpha);
  }
  if (num % den != 0) throw InternalError("Weyl dimension is not an integer");
  return to_int64(BigInt(num / den));
}

double qdim(const LevelContext& ctx, const Weight& w) {
  const AlgebraData& alg = *ctx.alg;
  const int r = alg.rank;
  const std::int64_t M = alg.conductor * ctx.kappa;
  std::vector<std::int64_t> lam_rho(r), rho(r, 1);
  for (int j = 0; j < r; ++j) lam_rho[j] = w[j] + 1;
  long double val = 1.0L;
  for (const auto& root : alg.positive_roots) {
    std::vector<std::int64_t> alpha(root.begin(), root.end());
    const std::int64_t a1 = alg.inner_scaled(lam_rho, alpha);
    const std::int64_t a0 = alg.inner_scaled(rho, alpha);
    if (a1 <= 0 || a1 >= M) throw InternalError("q-dimension angle out of range");
    val *= sinl(kPi * static_cast<long double>(a1) / static_cast<long double>(M)) /
           sinl(kPi * static_cast<long double>(a0) / static_cast<long double>(M));
  }
  return static_cast<double>(val);
}

std::vector<double> qdims(const LevelContext& ctx) {
  std::vector<double> out(ctx.size());
  for (int i = 0; i < ctx.size(); ++i) out[i] = qdim(ctx, ctx.weight(i));
  return out;
}

namespace {

/// chi as an exact integer histogram over the Nkappa-th roots of unity.
class CharacterAccumulator {
 public:
  explicit CharacterAccumulator(const LevelContext& ctx)
      : ctx_(ctx), M_(ctx.alg->conductor * ctx.kappa), hist_(static_cast<std::size_t>(M_)) {
    cis_.reserve(static_cast<std::size_t>(M_));
    for (std::int64_t t = 0; t < M_; ++t) {
      const long double ang = -2.0L * kPi * static_cast<long double>(t) / static_cast<long double>(M_);
      cis_.emplace_back(cosl(ang), sinl(ang));
    }
  }

  /// (w|mu+rho)*N as a function of the labels of w, for fixed mu.
  void set_column(const Weight& mu) {
    const AlgebraData& alg = *ctx_.alg;
    const int r = alg.rank;
    g_.assign(r, 0);
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) g_[j] += alg.quad_form_scaled[j][i] * (mu[i] + 1);
  }

  std::complex<long double> eval(const WeightSystem& ws) {
    const int r = ws.rank;
    std::fill(hist_.begin(), hist_.end(), 0);
    const std::int32_t* w = ws.weights_flat.data();
    for (std::size_t i = 0; i < ws.count(); ++i, w += r) {
      std::int64_t t = 0;
      for (int j = 0; j < r; ++j) t += g_[j] * w[j];
      t %= M_;
      if (t < 0) t += M_;
      hist_[static_cast<std::size_t>(t)] += ws.weight_mult[i];
    }
    std::complex<long double> acc(0.0L, 0.0L);
    for (std::int64_t t = 0; t < M_; ++t)
      if (hist_[static_cast<std::size_t>(t)] != 0)
        acc += static_cast<long double>(hist_[static_cast<std::size_t>(t)]) * cis_[static_cast<std::size_t>(t)];
    return acc;
  }

 private:
  const LevelContext& ctx_;
  std::int64_t M_;
  std::vector<std::int64_t> hist_;
  std::vector<std::complex<long double>> cis_;
  std::vector<std::int64_t> g_;
};

}  // namespace

std::complex<double> chi(const LevelContext& ctx, const Weight& lambda, const Weight& mu) {
  CharacterAccumulator acc(ctx);
  acc.set_column(mu);
  const auto v = acc.eval(weight_multiplicities(*ctx.alg, lambda));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

SMatrix smatrix(const LevelContext& ctx, double tol) {
  const int n = ctx.size();
  SMatrix S;
  S.ctx = &ctx;
  S.tol = tol;
  S.m.resize(n, n);

  std::vector<long double> D(n);
  long double sum2 = 0.0L;
  for (int i = 0; i < n; ++i) {
    D[i] = static_cast<long double>(qdim(ctx, ctx.weight(i)));
    sum2 += D[i] * D[i];
  }
  const long double s00 = 1.0L / sqrtl(sum2);

  CharacterAccumulator acc(ctx);
  for (int mui = 0; mui < n; ++mui) {
    acc.set_column(ctx.weight(mui));
    const long double col0 = s00 * D[mui];
    S.m(0, mui) = static_cast<double>(col0);
    for (int li = 1; li < n; ++li) {
      const auto c = acc.eval(weight_multiplicities(*ctx.alg, ctx.weight(li)));
      S.m(li, mui) = std::complex<double>(static_cast<double>(col0 * c.real()),
                                          static_cast<double>(col0 * c.imag()));
    }
  }

  S.symmetry_residual = (S.m - S.m.transpose()).cwiseAbs().maxCoeff();
  Eigen::MatrixXcd gram = S.m * S.m.adjoint();
  for (int i = 0; i < n; ++i) gram(i, i) -= 1.0;
  S.unitarity_residual = gram.cwiseAbs().maxCoeff();

  Eigen::MatrixXcd s2 = S.m * S.m;
  Perm conj = charge_conjugation_perm(ctx);
  for (int j = 0; j < n; ++j) s2(conj[j], j) -= 1.0;
  S.s2c_residual = s2.cwiseAbs().maxCoeff();

  S.row0_min = S.m.row(0).real().minCoeff();

  if (S.unitarity_residual > tol)
    throw InternalError(ctx.name() + ": S-matrix unitarity residual " +
                        std::to_string(S.unitarity_residual) + " exceeds tolerance");
  return S;
}

std::vector<int> qdim_minimal_orbit(const LevelContext& ctx) {
  const auto D = qdims(ctx);
  double min = 0;
  bool found = false;
  for (int i = 0; i < ctx.size(); ++i) {
    if (std::abs(D[i] - 1.0) <= kQdimClassTol) continue;  // simple current
    if (!found || D[i] < min) { min = D[i]; found = true; }
  }
  std::vector<int> out;
  if (!found) return out;
  for (int i = 0; i < ctx.size(); ++i) {
    if (std::abs(D[i] - 1.0) <= kQdimClassTol) continue;
    if (std::abs(D[i] - min) <= kQdimClassTol) out.push_back(i);
  }
  return out;
}

}  // namespace afr
