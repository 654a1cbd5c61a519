#include "afr/weights.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "afr/error.hpp"

namespace afr {

namespace {

std::uint64_t pack_labels(std::span<const std::int64_t> labels) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::int64_t x = labels[i];
    if (x < -120 || x > 120) throw InternalError("weight label out of packing range");
    key |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(x + 121)) << (8 * i);
  }
  return key;
}

std::string wide_key(std::span<const std::int64_t> labels) {
  std::string key;
  key.reserve(labels.size() * 3);
  for (auto x : labels) {
    key += std::to_string(x);
    key += ',';
  }
  return key;
}

}  // namespace

std::string weight_to_string(const Weight& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i];
  }
  return os.str();
}

Perm compose(const Perm& p, const Perm& q) {
  Perm out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = p[q[i]];
  return out;
}

Perm inverse_perm(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::int32_t>(i);
  return out;
}

int perm_order(const Perm& p) {
  int n = static_cast<int>(p.size());
  int ord = 1;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    do { seen[j] = true; j = p[j]; ++len; } while (j != i);
    ord = static_cast<int>(std::lcm(ord, len));
  }
  return ord;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<std::int32_t>(i)) return false;
  return true;
}

std::string cycle_notation(const Perm& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<std::int32_t>(i)) { seen[i] = true; continue; }
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    do {
      if (!first) os << ' ';
      os << j;
      first = false;
      seen[j] = true;
      j = static_cast<std::size_t>(p[j]);
    } while (j != i);
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

int LevelContext::index_of(const Weight& w) const {
  std::vector<std::int64_t> labels(w.begin(), w.end());
  int idx = find_index(labels);
  if (idx < 0)
    throw UsageError("weight " + weight_to_string(w) + " is not in P+ of " + name());
  return idx;
}

int LevelContext::find_index(std::span<const std::int64_t> labels) const {
  if (packed_) {
    std::uint64_t key;
    try {
      key = pack_labels(labels);
    } catch (const InternalError&) {
      return -1;
    }
    auto it = packed_index_.find(key);
    return it == packed_index_.end() ? -1 : it->second;
  }
  auto it = wide_index_.find(wide_key(labels));
  return it == wide_index_.end() ? -1 : it->second;
}

int LevelContext::index_of_shifted(std::span<const std::int64_t> v) const {
  std::vector<std::int64_t> labels(v.begin(), v.end());
  for (auto& x : labels) x -= 1;
  int idx = find_index(labels);
  if (idx < 0) throw InternalError("interior alcove point is not in P+ (fold bug)");
  return idx;
}

int LevelContext::level0(const Weight& w) const {
  std::int64_t l0 = level;
  for (int i = 0; i < alg->rank; ++i) l0 -= alg->comarks[i + 1] * w[i];
  return static_cast<int>(l0);
}

std::string LevelContext::name() const {
  return alg->id.name() + "k" + std::to_string(level);
}

LevelContext enumerate_pplus(const AlgebraData& alg, int level) {
  if (level < 1) throw UsageError("level must be >= 1");
  LevelContext ctx;
  ctx.alg = &alg;
  ctx.level = level;
  ctx.kappa = level + alg.dual_coxeter;

  const int r = alg.rank;
  Weight cur(r, 0);
  // lexicographic descent over lambda_1..lambda_r
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == r) {
      ctx.pplus.push_back(cur);
      return;
    }
    const int a = alg.comarks[pos + 1];
    for (int v = 0; v * a <= remaining; ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v * a);
    }
    cur[pos] = 0;
  };
  recurse(recurse, 0, level);

  ctx.packed_ = r <= 8 && level <= 120;
  for (std::size_t i = 0; i < ctx.pplus.size(); ++i) {
    std::vector<std::int64_t> labels(ctx.pplus[i].begin(), ctx.pplus[i].end());
    if (ctx.packed_)
      ctx.packed_index_[pack_labels(labels)] = static_cast<std::int32_t>(i);
    else
      ctx.wide_index_[wide_key(labels)] = static_cast<std::int32_t>(i);
  }
  ctx.index_of_zero = 0;  // all-zero labels sort first
  return ctx;
}

Weight charge_conjugate(const LevelContext& ctx, const Weight& w) {
  ctx.index_of(w);  // validates membership
  const int r = ctx.rank();
  Weight out = w;
  switch (ctx.alg->id.family) {
    case Family::A:
      std::reverse(out.begin(), out.end());
      break;
    case Family::D:
      if (r % 2 == 1) std::swap(out[r - 2], out[r - 1]);
      break;
    case Family::E:
      if (r == 6) {
        out[0] = w[4]; out[1] = w[3]; out[2] = w[2];
        out[3] = w[1]; out[4] = w[0]; out[5] = w[5];
      }
      break;
    default:
      break;
  }
  return out;
}

int charge_conjugate_index(const LevelContext& ctx, int idx) {
  return ctx.index_of(charge_conjugate(ctx, ctx.weight(idx)));
}

Perm charge_conjugation_perm(const LevelContext& ctx) {
  Perm p(ctx.size());
  for (int i = 0; i < ctx.size(); ++i) p[i] = charge_conjugate_index(ctx, i);
  return p;
}

namespace {

/// Label permutations (1-based node maps on 1..r) of the unextended diagram.
std::vector<std::vector<int>> label_symmetries(const AlgebraData& alg) {
  const int r = alg.rank;
  std::vector<int> id(r + 1);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> out{id};
  auto add = [&](std::vector<int> m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  };
  switch (alg.id.family) {
    case Family::A:
      if (r >= 2) {
        auto m = id;
        for (int i = 1; i <= r; ++i) m[i] = r + 1 - i;
        add(m);
      }
      break;
    case Family::D:
      if (r == 4) {
        // all permutations of the outer nodes 1, 3, 4
        std::vector<int> outer{1, 3, 4};
        std::sort(outer.begin(), outer.end());
        do {
          auto m = id;
          m[1] = outer[0]; m[3] = outer[1]; m[4] = outer[2];
          add(m);
        } while (std::next_permutation(outer.begin(), outer.end()));
      } else {
        auto m = id;
        std::swap(m[r - 1], m[r]);
        add(m);
      }
      break;
    case Family::E:
      if (r == 6) {
        auto m = id;
        m[1] = 5; m[2] = 4; m[4] = 2; m[5] = 1;
        add(m);
      }
      break;
    default:
      break;
  }
  return out;
}

}  // namespace

std::vector<Perm> conjugations(const LevelContext& ctx) {
  std::vector<Perm> out;
  for (const auto& m : label_symmetries(*ctx.alg)) {
    Perm p(ctx.size());
    Weight img(ctx.rank());
    for (int i = 0; i < ctx.size(); ++i) {
      const Weight& w = ctx.weight(i);
      for (int node = 1; node <= ctx.rank(); ++node) img[node - 1] = w[m[node] - 1];
      p[i] = ctx.index_of(img);
    }
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

const std::vector<ExtSymmetry>& extended_symmetries(const AlgebraData& alg) {
  static std::mutex mu;
  static std::map<AlgebraId, std::unique_ptr<std::vector<ExtSymmetry>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(alg.id);
  if (it != cache.end()) return *it->second;

  const int r = alg.rank;
  std::vector<int> id(r + 1);
  std::iota(id.begin(), id.end(), 0);

  std::vector<std::vector<int>> gens;
  switch (alg.id.family) {
    case Family::A: {
      // rotation: label of node i moves to node i+1
      std::vector<int> rot(r + 1);
      for (int i = 0; i <= r; ++i) rot[(i + 1) % (r + 1)] = i;
      gens.push_back(rot);
      std::vector<int> refl(r + 1);
      for (int i = 0; i <= r; ++i) refl[i] = (r + 1 - i) % (r + 1);
      gens.push_back(refl);
      break;
    }
    case Family::B: {
      auto m = id;
      std::swap(m[0], m[1]);
      gens.push_back(m);
      break;
    }
    case Family::C: {
      std::vector<int> m(r + 1);
      for (int i = 0; i <= r; ++i) m[i] = r - i;
      gens.push_back(m);
      break;
    }
    case Family::D: {
      auto jv = id;
      std::swap(jv[0], jv[1]);
      std::swap(jv[r - 1], jv[r]);
      gens.push_back(jv);
      auto c1 = id;
      std::swap(c1[r - 1], c1[r]);
      gens.push_back(c1);
      if (r % 2 == 0) {
        std::vector<int> js(r + 1);
        for (int i = 0; i <= r; ++i) js[i] = r - i;
        gens.push_back(js);
      } else {
        // J_s lambda = (lambda_{r-1}, lambda_r, lambda_{r-2}, ..., lambda_1, lambda_0)
        std::vector<int> js(r + 1);
        js[0] = r - 1;
        js[1] = r;
        for (int i = 2; i <= r; ++i) js[i] = r - i;
        gens.push_back(js);
      }
      if (r == 4) {
        for (const auto& m4 : label_symmetries(alg)) gens.push_back(m4);
      }
      break;
    }
    case Family::E: {
      if (r == 6) {
        // rotation of the three legs and the reflection (charge conjugation)
        gens.push_back({5, 0, 6, 3, 2, 1, 4});
        gens.push_back({0, 5, 4, 3, 2, 1, 6});
      } else if (r == 7) {
        std::vector<int> m(r + 1);
        for (int i = 0; i <= 6; ++i) m[i] = 6 - i;
        m[7] = 7;
        gens.push_back(m);
      }
      break;
    }
    default:
      break;
  }

  auto group = std::make_unique<std::vector<ExtSymmetry>>();
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue{id};
  seen.insert(id);
  while (!queue.empty()) {
    auto cur = queue.back();
    queue.pop_back();
    group->push_back(ExtSymmetry{cur});
    for (const auto& g : gens) {
      std::vector<int> next(r + 1);
      for (int i = 0; i <= r; ++i) next[i] = cur[g[i]];
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::sort(group->begin(), group->end(),
            [](const ExtSymmetry& a, const ExtSymmetry& b) { return a.node_map < b.node_map; });
  auto& slot = cache[alg.id];
  slot = std::move(group);
  return *slot;
}

Weight apply_extended(const LevelContext& ctx, const ExtSymmetry& s, const Weight& w) {
  const int r = ctx.rank();
  std::vector<int> ext(r + 1);
  ext[0] = ctx.level0(w);
  for (int i = 1; i <= r; ++i) ext[i] = w[i - 1];
  Weight out(r);
  for (int i = 1; i <= r; ++i) out[i - 1] = ext[s.node_map[i]];
  return out;
}

std::vector<int> extended_orbit(const LevelContext& ctx, int idx) {
  std::set<int> orbit;
  for (const auto& s : extended_symmetries(*ctx.alg))
    orbit.insert(ctx.index_of(apply_extended(ctx, s, ctx.weight(idx))));
  return {orbit.begin(), orbit.end()};
}

std::int64_t a_series_charge(const Weight& w) {
  std::int64_t t = 0;
  for (std::size_t j = 0; j < w.size(); ++j) t += static_cast<std::int64_t>(j + 1) * w[j];
  return t;
}

}  // namespace afr
