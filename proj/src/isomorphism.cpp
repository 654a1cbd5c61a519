#include "afr/isomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "afr/error.hpp"

namespace afr {

bool Fingerprint::matches(const Fingerprint& other, double tol) const {
  if (cardinality != other.cardinality) return false;
  if (sc_orders != other.sc_orders) return false;
  if (charge_profile != other.charge_profile) return false;
  if (qdim_multiset.size() != other.qdim_multiset.size()) return false;
  for (std::size_t i = 0; i < qdim_multiset.size(); ++i)
    if (std::abs(qdim_multiset[i] - other.qdim_multiset[i]) > tol) return false;

  // Galois simple-current predicate on the integers where both are defined.
  const long long lcm = std::lcm(galois_modulus, other.galois_modulus);
  std::set<long long> mine(galois_sc_residues.begin(), galois_sc_residues.end());
  std::set<long long> theirs(other.galois_sc_residues.begin(), other.galois_sc_residues.end());
  for (long long ell = 1; ell < lcm; ++ell) {
    if (std::gcd(ell, galois_modulus) != 1 || std::gcd(ell, other.galois_modulus) != 1) continue;
    if (mine.count(ell % galois_modulus) != theirs.count(ell % other.galois_modulus)) return false;
  }
  return true;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "#P+=" << cardinality << " sc-orders=[";
  for (std::size_t i = 0; i < sc_orders.size(); ++i) os << (i ? "," : "") << sc_orders[i];
  os << "] qdims=[";
  for (std::size_t i = 0; i < qdim_multiset.size(); ++i) {
    if (i) os << ",";
    os << qdim_multiset[i];
  }
  os << "] charges=[";
  for (std::size_t i = 0; i < charge_profile.size(); ++i)
    os << (i ? ";" : "") << charge_profile[i];
  os << "] galois-sc(mod " << galois_modulus << ")=[";
  for (std::size_t i = 0; i < galois_sc_residues.size(); ++i)
    os << (i ? "," : "") << galois_sc_residues[i];
  os << "]";
  return os.str();
}

Fingerprint fingerprint(const LevelContext& ctx, const SMatrix& S, const FusionTable& table) {
  (void)table;
  Fingerprint fp;
  fp.cardinality = ctx.size();

  const auto currents = simple_currents(ctx, S);
  for (const auto& c : currents) fp.sc_orders.push_back(c.order);
  std::sort(fp.sc_orders.begin(), fp.sc_orders.end());

  fp.qdim_multiset = qdims(ctx);
  std::sort(fp.qdim_multiset.begin(), fp.qdim_multiset.end());

  const auto orbit = qdim_minimal_orbit(ctx);
  for (const auto& c : currents) {
    std::vector<std::string> vals;
    for (int idx : orbit) vals.push_back(mod1(c.charge[idx]).str());
    std::sort(vals.begin(), vals.end());
    std::ostringstream os;
    os << "n=" << c.order << ":";
    for (std::size_t i = 0; i < vals.size(); ++i) os << (i ? "," : "") << vals[i];
    fp.charge_profile.push_back(os.str());
  }
  std::sort(fp.charge_profile.begin(), fp.charge_profile.end());

  const AlgebraData& alg = *ctx.alg;
  fp.galois_modulus = 2 * ctx.kappa * alg.conductor;
  std::vector<std::int64_t> v(alg.rank);
  for (long long ell = 1; ell < fp.galois_modulus; ++ell) {
    if (std::gcd(ell, ctx.kappa * alg.conductor) != 1) continue;
    for (int j = 0; j < alg.rank; ++j) v[j] = ell;
    const int sign = fold_affine_shifted(alg, ctx.kappa, v);
    if (sign == 0) throw InternalError("Galois fold hit a wall for coprime ell");
    const int img = ctx.index_of_shifted(v);
    if (std::abs(qdim(ctx, ctx.weight(img)) - 1.0) <= kQdimClassTol)
      fp.galois_sc_residues.push_back(ell);
  }
  return fp;
}

std::optional<std::vector<int>> find_isomorphism(const LevelContext& ca, const FusionTable& ta,
                                                 const LevelContext& cb, const FusionTable& tb,
                                                 int search_bound) {
  if (ca.size() != cb.size()) return std::nullopt;
  if (ca.size() > search_bound)
    throw SearchBoundError("isomorphism search: |P+| = " + std::to_string(ca.size()) +
                           " exceeds the search bound " + std::to_string(search_bound));
  if (ca.pplus == cb.pplus) {
    // identical contexts: the identity is the canonical answer
    std::vector<int> id(ca.size());
    std::iota(id.begin(), id.end(), 0);
    Perm idp(id.begin(), id.end());
    bool same = true;
    for (int a = 0; a < ca.size() && same; ++a)
      for (int b = a; b < ca.size() && same; ++b)
        same = ta.product(a, b) == tb.product(a, b);
    if (same) return id;
  }
  auto cand = matched_class_candidates(ca, ta, cb, tb);
  if (!cand) return std::nullopt;
  auto found = fusion_bijection_search(ta, tb, *cand, 1);
  if (found.empty()) return std::nullopt;
  return std::vector<int>(found[0].begin(), found[0].end());
}

std::vector<std::pair<ContextKey, ContextKey>> theorem51_pairs() {
  std::vector<std::pair<ContextKey, ContextKey>> out;
  auto add = [&](Family f1, int r1, int k1, Family f2, int r2, int k2) {
    out.push_back({ContextKey{{f1, r1}, k1}, ContextKey{{f2, r2}, k2}});
  };

  // A1 level k is the symplectic dual of C_k level 1
  for (int k = 2; k <= 5; ++k) add(Family::A, 1, k, Family::C, k, 1);
  // symplectic rank-level duality across the desk ranks
  for (int r = 2; r <= 5; ++r)
    for (int k = r + 1; k <= 5; ++k) add(Family::C, r, k, Family::C, k, r);
  // level-1 coincidences
  const ContextKey chain[] = {{{Family::B, 3}, 1},
                              {{Family::B, 4}, 1},
                              {{Family::A, 1}, 2},
                              {{Family::C, 2}, 1},
                              {{Family::E, 8}, 2}};
  for (std::size_t i = 0; i < std::size(chain); ++i)
    for (std::size_t j = i + 1; j < std::size(chain); ++j) out.push_back({chain[i], chain[j]});
  add(Family::A, 3, 1, Family::D, 5, 1);
  add(Family::A, 2, 1, Family::E, 6, 1);
  add(Family::A, 1, 1, Family::E, 7, 1);
  add(Family::F, 4, 1, Family::G, 2, 1);
  // exceptional pairs
  add(Family::F, 4, 2, Family::E, 8, 3);
  add(Family::F, 4, 3, Family::G, 2, 4);
  return out;
}

}  // namespace afr
