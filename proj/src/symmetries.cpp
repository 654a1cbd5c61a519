#include "afr/symmetries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "afr/error.hpp"

namespace afr {

namespace {

long long positive_mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

long long mod_inverse(long long a, long long n) {
  long long t = 0, newt = 1, r = n, newr = positive_mod(a, n);
  while (newr != 0) {
    long long q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1) throw InternalError("mod_inverse of a non-unit");
  return positive_mod(t, n);
}

bool verify_bijection(const FusionTable& ta, const FusionTable& tb, const Perm& perm) {
  const int n = ta.size();
  if (tb.size() != n || static_cast<int>(perm.size()) != n) return false;
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n || hit[perm[i]]) return false;
    hit[perm[i]] = true;
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const auto& row = ta.product(a, b);
      if (row.size() != tb.product(perm[a], perm[b]).size()) return false;
      for (auto [c, v] : row)
        if (tb.coeff(perm[a], perm[b], perm[c]) != v) return false;
    }
  return true;
}

/// n * Q as an exact integer; simple-current charges live in (1/n)Z mod 1.
long long scaled_charge(const SimpleCurrent& j, int idx) {
  Rational q = j.charge[idx] * j.order;
  if (denominator(q) != 1)
    throw InternalError("simple-current charge denominator does not divide the order");
  return to_int64(BigInt(numerator(q)));
}

std::vector<Perm> current_powers(const SimpleCurrent& j) {
  std::vector<Perm> pow(static_cast<std::size_t>(j.order));
  pow[0].resize(j.perm.size());
  std::iota(pow[0].begin(), pow[0].end(), 0);
  for (int e = 1; e < j.order; ++e) pow[e] = compose(j.perm, pow[e - 1]);
  return pow;
}

const SimpleCurrent& find_current(const std::vector<SimpleCurrent>& currents,
                                  const LevelContext& ctx, const Weight& rep) {
  for (const auto& c : currents)
    if (c.rep == rep) return c;
  throw InternalError(ctx.name() + ": expected simple current " + weight_to_string(rep) +
                      " is missing");
}

Weight fundamental_rep(const LevelContext& ctx, int node, int mult) {
  Weight w(ctx.rank(), 0);
  w[node - 1] = static_cast<std::int32_t>(mult);
  return w;
}

}  // namespace

std::string source_name(SymmetrySource s) {
  switch (s) {
    case SymmetrySource::Conjugation: return "conjugation";
    case SymmetrySource::SimpleCurrent: return "simple-current";
    case SymmetrySource::SimpleCurrentMatrix: return "simple-current-matrix";
    case SymmetrySource::Galois: return "galois";
    case SymmetrySource::RankLevel: return "rank-level";
    case SymmetrySource::Exceptional: return "exceptional";
    case SymmetrySource::BruteForce: return "brute-force";
    case SymmetrySource::Composite: return "composite";
  }
  return "?";
}

GaloisPermutation galois_perm(const LevelContext& ctx, const SMatrix& S, long long ell) {
  const AlgebraData& alg = *ctx.alg;
  const long long modulus = ctx.kappa * alg.conductor;
  if (std::gcd(positive_mod(ell, modulus), modulus) != 1)
    throw UsageError("ell = " + std::to_string(ell) + " is not coprime to kappa*conductor = " +
                     std::to_string(modulus));

  GaloisPermutation out;
  out.ell = ell;
  const int n = ctx.size();
  out.perm.resize(n);
  out.signs.resize(n);
  std::vector<std::int64_t> v(alg.rank);
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    const Weight& w = ctx.weight(i);
    for (int j = 0; j < alg.rank; ++j) v[j] = ell * (w[j] + 1);
    const int sign = fold_affine_shifted(alg, ctx.kappa, v);
    if (sign == 0) throw InternalError("Galois fold hit a wall for coprime ell (fold bug)");
    out.perm[i] = static_cast<std::int32_t>(ctx.index_of_shifted(v));
    out.signs[i] = sign;
    if (hit[out.perm[i]]) throw InternalError("Galois map is not injective");
    hit[out.perm[i]] = true;
  }

  for (int la = 0; la < n; ++la)
    for (int mu = 0; mu < n; ++mu) {
      const auto diff = static_cast<double>(out.signs[la]) * S(out.perm[la], mu) -
                        static_cast<double>(out.signs[mu]) * S(la, out.perm[mu]);
      out.relation_residual = std::max(out.relation_residual, std::abs(diff));
    }
  if (out.relation_residual > S.tol)
    throw InternalError(ctx.name() + ": Galois S relation residual " +
                        std::to_string(out.relation_residual) + " exceeds tolerance");
  return out;
}

FusionSymmetry sc_automorphism(const LevelContext& ctx, const FusionTable& table,
                               const SimpleCurrent& j, int a) {
  const int n_ord = j.order;
  const long long t_jj = scaled_charge(j, j.rep_index);
  const long long unit = positive_mod(a * t_jj + 1, n_ord);
  if (std::gcd(unit == 0 ? static_cast<long long>(n_ord) : unit,
               static_cast<long long>(n_ord)) != 1)
    throw NotAPermutationError("pi[" + std::to_string(a) +
                               "] is not a permutation: gcd(n a Q_j(j)+1, n) != 1");

  const auto pow = current_powers(j);
  FusionSymmetry out;
  out.source = SymmetrySource::SimpleCurrent;
  out.label = "pi[" + std::to_string(a) + "]";
  out.perm.resize(ctx.size());
  for (int la = 0; la < ctx.size(); ++la) {
    const long long e = positive_mod(a * scaled_charge(j, la), n_ord);
    out.perm[la] = pow[static_cast<std::size_t>(e)][la];
  }
  if (!is_fusion_symmetry(table, out.perm))
    throw InternalError("simple-current automorphism failed fusion verification");

  const long long b = positive_mod(-static_cast<long long>(a) * mod_inverse(unit, n_ord), n_ord);
  Perm partner(ctx.size());
  for (int la = 0; la < ctx.size(); ++la) {
    const long long e = positive_mod(b * scaled_charge(j, la), n_ord);
    partner[la] = pow[static_cast<std::size_t>(e)][la];
  }
  out.partner = std::move(partner);
  return out;
}

FusionSymmetry sc_automorphism_matrix(const LevelContext& ctx, const FusionTable& table,
                                      const std::vector<SimpleCurrent>& currents,
                                      std::array<int, 4> abcd) {
  const AlgebraData& alg = *ctx.alg;
  if (alg.id.family != Family::D || alg.rank % 2 != 0)
    throw UsageError("matrix simple-current automorphisms require D with even rank");
  const int r = alg.rank, k = ctx.level;
  const SimpleCurrent& jv = find_current(currents, ctx, fundamental_rep(ctx, 1, k));
  const SimpleCurrent& js = find_current(currents, ctx, fundamental_rep(ctx, r, k));

  const auto [a, b, c, d] = abcd;
  FusionSymmetry out;
  out.source = SymmetrySource::SimpleCurrentMatrix;
  out.label = "pi[" + std::to_string(a) + std::to_string(b) + ";" + std::to_string(c) +
              std::to_string(d) + "]";
  out.perm.resize(ctx.size());
  std::vector<bool> hit(ctx.pplus.size(), false);
  for (int la = 0; la < ctx.size(); ++la) {
    const long long qv = scaled_charge(jv, la);  // 2 Q_v(lambda) mod 2
    const long long qs2 = scaled_charge(js, la);  // order(J_s) Q_s(lambda)
    // J_s has order 2 for even rank, so qs2 = 2 Q_s mod 2 as well
    const long long ev = positive_mod(a * qv + b * qs2, 2);
    const long long es = positive_mod(c * qv + d * qs2, 2);
    int img = la;
    if (ev) img = jv.perm[img];
    if (es) img = js.perm[img];
    out.perm[la] = static_cast<std::int32_t>(img);
    if (hit[img]) throw NotAPermutationError(out.label + " is not invertible for " + ctx.name());
    hit[img] = true;
  }
  if (!is_fusion_symmetry(table, out.perm))
    throw NotAPermutationError(out.label + " fails fusion verification for " + ctx.name());
  if (k % 2 == 0) {
    // partner carries the transposed parameter matrix
    Perm partner(ctx.size());
    for (int la = 0; la < ctx.size(); ++la) {
      const long long qv = scaled_charge(jv, la);
      const long long qs2 = scaled_charge(js, la);
      const long long ev = positive_mod(a * qv + c * qs2, 2);
      const long long es = positive_mod(b * qv + d * qs2, 2);
      int img = la;
      if (ev) img = jv.perm[img];
      if (es) img = js.perm[img];
      partner[la] = static_cast<std::int32_t>(img);
    }
    out.partner = std::move(partner);
  }
  return out;
}

std::optional<FusionSymmetry> galois_automorphism(const LevelContext& ctx, const SMatrix& S,
                                                  const FusionTable& table,
                                                  const std::vector<SimpleCurrent>& currents,
                                                  long long ell) {
  GaloisPermutation gp = galois_perm(ctx, S, ell);
  const int zero_img = gp.perm[ctx.index_of_zero];
  if (std::abs(qdim(ctx, ctx.weight(zero_img)) - 1.0) > kQdimClassTol) return std::nullopt;
  const SimpleCurrent& j = find_current(currents, ctx, ctx.weight(zero_img));
  if (j.order > 2) throw InternalError("Galois fusion-symmetry current has order > 2");
  FusionSymmetry out;
  out.source = SymmetrySource::Galois;
  out.label = "pi{" + std::to_string(ell) + "}";
  out.perm = compose(j.perm, gp.perm);
  if (!is_fusion_symmetry(table, out.perm))
    throw InternalError(out.label + " failed fusion verification for " + ctx.name());
  out.partner = inverse_perm(out.perm);
  return out;
}

std::vector<int> rank_level_tau(const LevelContext& src, const LevelContext& dst) {
  auto effective = [](const LevelContext& ctx) -> int {
    const AlgebraId id = ctx.alg->id;
    if (id.family == Family::C) return id.rank;
    if (id.family == Family::A && id.rank == 1) return 1;  // C1 read as A1
    throw UsageError("rank-level duality needs symplectic contexts, got " + ctx.name());
  };
  const int r = effective(src), k = src.level;
  if (effective(dst) != k || dst.level != r)
    throw UsageError("rank-level duality target mismatch: " + src.name() + " vs " + dst.name());

  std::vector<int> map(src.pplus.size());
  std::vector<bool> hit(dst.pplus.size(), false);
  for (int i = 0; i < src.size(); ++i) {
    const Weight& w = src.weight(i);
    std::vector<int> rows(r);
    for (int l = 0; l < r; ++l) {
      int s = 0;
      for (int j = l; j < r; ++j) s += w[j];
      rows[l] = s;
    }
    Weight dual(k, 0);
    int prev = 0;  // mu_{j+1}
    for (int j = k; j >= 1; --j) {
      int col = 0;
      for (int l = 0; l < r; ++l) col += rows[l] >= j ? 1 : 0;
      dual[j - 1] = col - prev;
      prev = col;
    }
    map[i] = dst.index_of(dual);
    if (hit[map[i]]) throw InternalError("rank-level transpose is not injective");
    hit[map[i]] = true;
  }
  return map;
}

std::vector<FusionSymmetry> exceptional_catalog(const LevelContext& ctx, const FusionTable& table) {
  const AlgebraId id = ctx.alg->id;
  const int k = ctx.level;
  std::vector<FusionSymmetry> out;

  using Cycles = std::vector<std::vector<Weight>>;
  auto emit = [&](const std::string& label, const Cycles& cycles) {
    FusionSymmetry sym;
    sym.source = SymmetrySource::Exceptional;
    sym.label = label;
    sym.perm.resize(ctx.size());
    std::iota(sym.perm.begin(), sym.perm.end(), 0);
    for (const auto& cyc : cycles)
      for (std::size_t i = 0; i < cyc.size(); ++i)
        sym.perm[ctx.index_of(cyc[i])] = static_cast<std::int32_t>(
            ctx.index_of(cyc[(i + 1) % cyc.size()]));
    if (!is_fusion_symmetry(table, sym.perm))
      throw InternalError("exceptional catalog entry " + label + " failed verification for " +
                          ctx.name() + " (transcription bug)");
    out.push_back(std::move(sym));
  };

  if (id == AlgebraId{Family::E, 7} && k == 3) {
    // pi3 sends J^i L1 -> J^i (2 L6) -> J^i L2 with J the diagram reversal
    const ExtSymmetry* rev = nullptr;
    for (const auto& s : extended_symmetries(*ctx.alg))
      if (!std::is_sorted(s.node_map.begin(), s.node_map.end())) rev = &s;
    if (!rev) throw InternalError("E7 diagram symmetry not found");
    std::vector<Weight> base{{1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 2, 0}, {0, 1, 0, 0, 0, 0, 0}};
    std::vector<Weight> shifted;
    for (const auto& w : base) shifted.push_back(apply_extended(ctx, *rev, w));
    emit("pi3", {base, shifted});
  } else if (id == AlgebraId{Family::E, 8} && k == 4) {
    emit("pi4", {{{1, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 0}}});
  } else if (id == AlgebraId{Family::E, 8} && k == 5) {
    emit("pi5", {{{0, 0, 0, 0, 0, 0, 1, 0}, {2, 0, 0, 0, 0, 0, 0, 0}},
                 {{0, 0, 0, 0, 0, 0, 0, 1}, {1, 1, 0, 0, 0, 0, 0, 0}},
                 {{0, 0, 0, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 0, 1, 0}}});
  } else if (id == AlgebraId{Family::F, 4} && k == 3) {
    emit("pi3", {{{0, 1, 0, 0}, {0, 0, 0, 1}}, {{1, 0, 0, 0}, {0, 0, 0, 3}}});
  } else if (id == AlgebraId{Family::F, 4} && k == 4) {
    emit("pi4", {{{0, 0, 0, 1}, {1, 0, 0, 0}, {2, 0, 0, 0}, {0, 0, 0, 4}},
                 {{0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 3}, {0, 0, 1, 0}},
                 {{1, 0, 1, 0}, {0, 0, 1, 2}, {1, 0, 0, 1}, {1, 0, 0, 2}}});
  } else if (id == AlgebraId{Family::G, 2} && k == 3) {
    emit("pi3", {{{1, 0}, {0, 3}, {0, 1}}});
  } else if (id == AlgebraId{Family::G, 2} && k == 4) {
    emit("pi4", {{{1, 0}, {0, 4}}, {{2, 0}, {0, 1}}});
  }
  return out;
}

bool is_fusion_symmetry(const FusionTable& table, const Perm& perm) {
  return verify_bijection(table, table, perm);
}

Perm s_partner(const SMatrix& S, const Perm& perm) {
  const int n = S.size();
  Perm out(n);
  std::vector<bool> used(n, false);
  for (int mu = 0; mu < n; ++mu) {
    int match = -1;
    for (int c = 0; c < n; ++c) {
      bool ok = true;
      for (int la = 0; la < n && ok; ++la)
        ok = std::abs(S(perm[la], c) - S(la, mu)) <= S.tol;
      if (!ok) continue;
      if (match >= 0) throw InternalError("s_partner: matching column is not unique");
      match = c;
    }
    if (match < 0 || used[match])
      throw InternalError("s_partner: no matching column (invalid symmetry or precision loss)");
    used[match] = true;
    out[mu] = static_cast<std::int32_t>(match);
  }
  return out;
}

namespace {

/// Signature of one index that any fusion-ring bijection must preserve.
struct IndexSignature {
  int qdim_bucket = 0;
  int current_order = 0;  // 0 when not a simple current
  std::size_t self_support = 0;
  std::vector<std::int64_t> self_coeffs;  // sorted

  auto tie() const { return std::tie(qdim_bucket, current_order, self_support, self_coeffs); }
  bool operator<(const IndexSignature& o) const { return tie() < o.tie(); }
};

/// Order of the fusion permutation of a q-dimension-1 index, 0 when its rows
/// do not form a permutation matrix.
int table_current_order(const FusionTable& table, int rep) {
  const int n = table.size();
  Perm perm(n);
  for (int la = 0; la < n; ++la) {
    const auto& row = table.product(rep, la);
    if (row.size() != 1 || row[0].second != 1) return 0;
    perm[la] = row[0].first;
  }
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    if (hit[perm[i]]) return 0;
    hit[perm[i]] = true;
  }
  return perm_order(perm);
}

std::vector<IndexSignature> ring_signatures(const LevelContext& ctx, const FusionTable& table,
                                            const std::vector<double>& D,
                                            const std::vector<int>& bucket) {
  const int n = ctx.size();
  std::vector<IndexSignature> sig(n);
  for (int i = 0; i < n; ++i) {
    sig[i].qdim_bucket = bucket[i];
    sig[i].current_order =
        std::abs(D[i] - 1.0) <= kQdimClassTol ? table_current_order(table, i) : 0;
    const auto& row = table.product(i, i);
    sig[i].self_support = row.size();
    for (auto [c, v] : row) sig[i].self_coeffs.push_back(v);
    std::sort(sig[i].self_coeffs.begin(), sig[i].self_coeffs.end());
  }
  return sig;
}

struct SearchState {
  const FusionTable* ta = nullptr;
  const FusionTable* tb = nullptr;
  const std::vector<std::vector<int>>* cand = nullptr;
  std::vector<int> order;     // position -> source index
  std::vector<int> img, pre;  // partial bijection, both directions
  // for each index c, the pairs (a, b, N) with c in the support of a x b
  std::vector<std::vector<std::array<std::int64_t, 3>>> rev_a, rev_b;
  std::vector<Perm> results;
  std::size_t max_results = std::numeric_limits<std::size_t>::max();

  bool feasible(int x, int y) const {
    const int n = ta->size();
    for (int a = 0; a < n; ++a) {
      const int ia = a == x ? y : img[a];
      if (ia < 0) continue;
      const auto& ra = ta->product(x, a);
      const auto& rb = tb->product(y, ia);
      if (ra.size() != rb.size()) return false;
      for (auto [c, v] : ra) {
        const int ic = c == x ? y : img[c];
        if (ic >= 0 && tb->coeff(y, ia, ic) != v) return false;
      }
      for (auto [c, v] : rb) {
        const int pc = c == y ? x : pre[c];
        if (pc >= 0 && ta->coeff(x, a, pc) != v) return false;
      }
    }
    for (const auto& e : rev_a[x]) {
      const int a = static_cast<int>(e[0]), b = static_cast<int>(e[1]);
      const int ia = a == x ? y : img[a];
      const int ib = b == x ? y : img[b];
      if (ia >= 0 && ib >= 0 && tb->coeff(ia, ib, y) != e[2]) return false;
    }
    for (const auto& e : rev_b[y]) {
      const int a = static_cast<int>(e[0]), b = static_cast<int>(e[1]);
      const int pa = a == y ? x : pre[a];
      const int pb = b == y ? x : pre[b];
      if (pa >= 0 && pb >= 0 && ta->coeff(pa, pb, x) != e[2]) return false;
    }
    return true;
  }

  bool dfs(std::size_t t) {
    if (t == order.size()) {
      Perm perm(img.begin(), img.end());
      if (verify_bijection(*ta, *tb, perm)) results.push_back(std::move(perm));
      return results.size() >= max_results;
    }
    const int x = order[t];
    for (int y : (*cand)[x]) {
      if (pre[y] >= 0 || !feasible(x, y)) continue;
      img[x] = y;
      pre[y] = x;
      const bool stop = dfs(t + 1);
      img[x] = -1;
      pre[y] = -1;
      if (stop) return true;
    }
    return false;
  }
};

std::vector<std::vector<std::array<std::int64_t, 3>>> reverse_index(const FusionTable& t) {
  std::vector<std::vector<std::array<std::int64_t, 3>>> rev(t.size());
  for (int a = 0; a < t.size(); ++a)
    for (int b = a; b < t.size(); ++b)
      for (auto [c, v] : t.product(a, b)) rev[c].push_back({a, b, v});
  return rev;
}

}  // namespace

std::vector<Perm> fusion_bijection_search(const FusionTable& ta, const FusionTable& tb,
                                          const std::vector<std::vector<int>>& candidates,
                                          std::size_t max_results) {
  const int n = ta.size();
  if (tb.size() != n) return {};
  SearchState st;
  st.ta = &ta;
  st.tb = &tb;
  st.cand = &candidates;
  st.img.assign(n, -1);
  st.pre.assign(n, -1);
  st.rev_a = reverse_index(ta);
  st.rev_b = reverse_index(tb);
  if (max_results != 0) st.max_results = max_results;
  st.order.resize(n);
  std::iota(st.order.begin(), st.order.end(), 0);
  std::stable_sort(st.order.begin(), st.order.end(),
                   [&](int a, int b) { return candidates[a].size() < candidates[b].size(); });
  st.dfs(0);
  std::sort(st.results.begin(), st.results.end());
  return st.results;
}

std::optional<std::vector<std::vector<int>>> matched_class_candidates(const LevelContext& ca,
                                                                      const FusionTable& ta,
                                                                      const LevelContext& cb,
                                                                      const FusionTable& tb) {
  if (ca.size() != cb.size()) return std::nullopt;
  const int n = ca.size();
  const auto Da = qdims(ca);
  const auto Db = qdims(cb);

  // joint q-dimension buckets, chained at the class tolerance
  struct Entry { double d; int ring; int idx; };
  std::vector<Entry> all;
  all.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all.push_back({Da[i], 0, i});
  for (int i = 0; i < n; ++i) all.push_back({Db[i], 1, i});
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.d < b.d; });
  std::vector<int> bucket_a(n), bucket_b(n);
  int bucket = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i > 0 && all[i].d - all[i - 1].d > kQdimClassTol) ++bucket;
    (all[i].ring == 0 ? bucket_a : bucket_b)[all[i].idx] = bucket;
  }

  const auto sig_a = ring_signatures(ca, ta, Da, bucket_a);
  const auto sig_b = ring_signatures(cb, tb, Db, bucket_b);

  std::map<IndexSignature, std::vector<int>> groups_b;
  for (int i = 0; i < n; ++i) groups_b[sig_b[i]].push_back(i);

  std::vector<std::vector<int>> cand(n);
  std::map<IndexSignature, int> count_a;
  for (int i = 0; i < n; ++i) {
    auto it = groups_b.find(sig_a[i]);
    if (it == groups_b.end()) return std::nullopt;
    cand[i] = it->second;
    ++count_a[sig_a[i]];
  }
  for (const auto& [sig, cnt] : count_a)
    if (cnt != static_cast<int>(groups_b.at(sig).size())) return std::nullopt;

  cand[ca.index_of_zero] = {cb.index_of_zero};  // the unit maps to the unit
  return cand;
}

std::vector<FusionSymmetry> enumerate_automorphisms(const LevelContext& ctx,
                                                    const FusionTable& table, const SMatrix& S,
                                                    int search_bound) {
  (void)S;
  if (ctx.size() > search_bound)
    throw SearchBoundError(ctx.name() + ": |P+| = " + std::to_string(ctx.size()) +
                           " exceeds the search bound " + std::to_string(search_bound));
  auto cand = matched_class_candidates(ctx, table, ctx, table);
  if (!cand) throw InternalError("self-matching of q-dimension classes failed");
  auto perms = fusion_bijection_search(table, table, *cand, 0);

  std::set<Perm> set(perms.begin(), perms.end());
  for (const auto& p : perms) {
    if (!set.count(inverse_perm(p)))
      throw InternalError("automorphism set not closed under inverse");
    for (const auto& q : perms)
      if (!set.count(compose(p, q)))
        throw InternalError("automorphism set not closed under product");
  }

  std::vector<FusionSymmetry> out;
  for (auto& p : perms) {
    FusionSymmetry sym;
    sym.perm = std::move(p);
    sym.source = SymmetrySource::BruteForce;
    sym.label = is_identity(sym.perm) ? "id" : "brute";
    out.push_back(std::move(sym));
  }
  return out;
}

std::vector<FusionSymmetry> expected_automorphisms(const LevelContext& ctx,
                                                   const FusionTable& table, const SMatrix& S) {
  const AlgebraData& alg = *ctx.alg;
  const int r = alg.rank, k = ctx.level;
  const auto currents = simple_currents(ctx, S);

  std::vector<FusionSymmetry> gens;
  for (const auto& p : conjugations(ctx)) {
    if (is_identity(p)) continue;
    FusionSymmetry sym;
    sym.perm = p;
    sym.source = SymmetrySource::Conjugation;
    sym.label = "C";
    sym.partner = p;  // (C, C) is an S-symmetry
    if (!is_fusion_symmetry(table, sym.perm))
      throw InternalError("conjugation failed fusion verification");
    gens.push_back(std::move(sym));
  }

  auto push_sc = [&](const SimpleCurrent& j, int a) {
    const long long unit = positive_mod(a * scaled_charge(j, j.rep_index) + 1, j.order);
    if (std::gcd(unit == 0 ? static_cast<long long>(j.order) : unit,
                 static_cast<long long>(j.order)) != 1)
      return;  // parameters do not give a permutation
    auto sym = sc_automorphism(ctx, table, j, a);
    if (!is_identity(sym.perm)) gens.push_back(std::move(sym));
  };
  auto push_galois = [&](long long m) {
    // lift the kappa-residue to a representative coprime to kappa * conductor
    const long long modulus = ctx.kappa * alg.conductor;
    long long ell = m;
    while (std::gcd(ell, modulus) != 1) {
      ell += ctx.kappa;
      if (ell > modulus + ctx.kappa)
        throw InternalError("no coprime lift for the Galois residue " + std::to_string(m));
    }
    auto sym = galois_automorphism(ctx, S, table, currents, ell);
    if (!sym)
      throw InternalError(ctx.name() + ": expected Galois fusion-symmetry pi{" +
                          std::to_string(ell) + "} does not exist");
    if (!is_identity(sym->perm)) gens.push_back(std::move(*sym));
  };

  switch (alg.id.family) {
    case Family::A: {
      const auto& j = find_current(currents, ctx, fundamental_rep(ctx, 1, k));
      for (int a = 0; a <= r; ++a)
        if (std::gcd(1 + static_cast<long long>(k) * a, static_cast<long long>(r) + 1) == 1)
          push_sc(j, a);
      break;
    }
    case Family::B: {
      push_sc(find_current(currents, ctx, fundamental_rep(ctx, 1, k)), 1);
      if (k == 2)
        for (long long m = 2; m <= r; ++m)
          if (std::gcd(m, ctx.kappa) == 1) push_galois(m);
      break;
    }
    case Family::C: {
      push_sc(find_current(currents, ctx, fundamental_rep(ctx, r, k)), 1);
      if (k == r) {
        FusionSymmetry sym;
        sym.source = SymmetrySource::RankLevel;
        sym.label = "pi_rld";
        auto map = rank_level_tau(ctx, ctx);
        sym.perm.assign(map.begin(), map.end());
        if (!is_fusion_symmetry(table, sym.perm))
          throw InternalError("rank-level automorphism failed fusion verification");
        sym.partner = sym.perm;  // (tau, tau) is an S-symmetry
        if (!is_identity(sym.perm)) gens.push_back(std::move(sym));
      }
      break;
    }
    case Family::D: {
      if (r % 2 == 1) {
        const auto& js = find_current(currents, ctx, fundamental_rep(ctx, r, k));
        for (int a = 0; a < js.order; ++a) push_sc(js, a);
      } else {
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
              for (int d = 0; d < 2; ++d) {
                try {
                  auto sym = sc_automorphism_matrix(ctx, table, currents, {a, b, c, d});
                  if (!is_identity(sym.perm)) gens.push_back(std::move(sym));
                } catch (const NotAPermutationError&) {
                }
              }
      }
      if (k == 2 && r > 4)
        for (long long m = 3; m < r; ++m)
          if (std::gcd(m, ctx.kappa) == 1) push_galois(m);
      break;
    }
    case Family::E: {
      if (r == 6) {
        const auto& j = find_current(currents, ctx, fundamental_rep(ctx, 1, k));
        for (int a = 0; a < 3; ++a)
          if ((a * k) % 3 != 1) push_sc(j, a);
      } else if (r == 7) {
        push_sc(find_current(currents, ctx, fundamental_rep(ctx, 6, k)), 1);
      }
      for (auto& sym : exceptional_catalog(ctx, table)) gens.push_back(std::move(sym));
      break;
    }
    case Family::F:
    case Family::G:
      for (auto& sym : exceptional_catalog(ctx, table)) gens.push_back(std::move(sym));
      break;
  }

  // close under composition
  std::map<Perm, FusionSymmetry> group;
  {
    FusionSymmetry id_sym;
    id_sym.perm.resize(ctx.size());
    std::iota(id_sym.perm.begin(), id_sym.perm.end(), 0);
    id_sym.label = "id";
    id_sym.partner = id_sym.perm;
    group.emplace(id_sym.perm, id_sym);
  }
  for (const auto& g : gens) group.emplace(g.perm, g);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> current;
    current.reserve(group.size());
    for (const auto& [p, s] : group) current.push_back(p);
    for (const auto& p : current)
      for (const auto& q : current) {
        Perm prod = compose(p, q);
        if (group.count(prod)) continue;
        FusionSymmetry sym;
        sym.perm = prod;
        sym.source = SymmetrySource::Composite;
        sym.label = group.at(p).label + "*" + group.at(q).label;
        if (!is_fusion_symmetry(table, sym.perm))
          throw InternalError("composite of verified symmetries failed verification");
        group.emplace(std::move(prod), std::move(sym));
        grew = true;
      }
  }

  std::vector<FusionSymmetry> out;
  out.reserve(group.size());
  for (auto& [p, s] : group) out.push_back(std::move(s));
  return out;
}

}  // namespace afr
