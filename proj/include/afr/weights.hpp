#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "afr/liealg.hpp"
#include "afr/rational.hpp"

namespace afr {

/// Dynkin labels lambda_1..lambda_r (lambda_0 is derived from the level).
using Weight = std::vector<std::int32_t>;
/// Permutation of P+ indices.
using Perm = std::vector<std::int32_t>;

std::string weight_to_string(const Weight& w);
Perm compose(const Perm& p, const Perm& q);  // (p*q)[i] = p[q[i]]
Perm inverse_perm(const Perm& p);
int perm_order(const Perm& p);
bool is_identity(const Perm& p);
std::string cycle_notation(const Perm& p);

/// The level-k weight set P+ of one affine algebra, with the canonical index
/// order: lexicographically ascending on (lambda_1..lambda_r), so the weight
/// k Lambda_0 always has index 0.
struct LevelContext {
  const AlgebraData* alg = nullptr;
  int level = 0;
  std::int64_t kappa = 0;
  std::vector<Weight> pplus;
  int index_of_zero = 0;

  int size() const { return static_cast<int>(pplus.size()); }
  const Weight& weight(int idx) const { return pplus[idx]; }
  int rank() const { return alg->rank; }

  /// Index of a weight; throws UsageError when not in P+.
  int index_of(const Weight& w) const;
  /// Index lookup that does not throw.
  int find_index(std::span<const std::int64_t> labels) const;
  /// Index of the interior alcove point v (= weight + rho, all labels >= 1).
  int index_of_shifted(std::span<const std::int64_t> v) const;

  int level0(const Weight& w) const;  // lambda_0 = k - sum a_i lambda_i
  std::string name() const;           // e.g. "A3k2"

 private:
  friend LevelContext enumerate_pplus(const AlgebraData&, int);
  std::unordered_map<std::uint64_t, std::int32_t> packed_index_;
  std::unordered_map<std::string, std::int32_t> wide_index_;  // rank > 8 fallback
  bool packed_ = false;
};

LevelContext enumerate_pplus(const AlgebraData& alg, int level);

/// Charge conjugation as the per-family label permutation.
Weight charge_conjugate(const LevelContext& ctx, const Weight& w);
int charge_conjugate_index(const LevelContext& ctx, int idx);
Perm charge_conjugation_perm(const LevelContext& ctx);

/// Symmetries of the unextended diagram, as index permutations of P+.
/// Always contains the identity and charge conjugation.
std::vector<Perm> conjugations(const LevelContext& ctx);

/// A symmetry of the extended diagram as a permutation of nodes 0..r:
/// node_map[i] is the node whose old label moves to node i.
struct ExtSymmetry {
  std::vector<int> node_map;
  bool operator==(const ExtSymmetry&) const = default;
};

/// The full symmetry group of the extended diagram.
const std::vector<ExtSymmetry>& extended_symmetries(const AlgebraData& alg);
Weight apply_extended(const LevelContext& ctx, const ExtSymmetry& s, const Weight& w);
/// Orbit of a weight under the extended diagram symmetries, sorted indices.
std::vector<int> extended_orbit(const LevelContext& ctx, int idx);

/// A weight of q-dimension 1 with its permutation J, order n and charge
/// table Q_j (exact rationals mod 1).
struct SimpleCurrent {
  int rep_index = 0;
  Weight rep;
  Perm perm;
  int order = 1;
  std::vector<Rational> charge;

  bool is_identity_current() const { return order == 1; }
};

class SMatrix;  // characters module

/// All simple currents of the context (the identity included), each with a
/// permutation validated against Eq-level S-matrix phases and cross-checked
/// against its fusion row. Charges are solved from the S phases on the grid
/// 1/(order * conductor * kappa).
std::vector<SimpleCurrent> simple_currents(const LevelContext& ctx, const SMatrix& S);

/// A-series grading t(lambda) = sum_j j lambda_j.
std::int64_t a_series_charge(const Weight& w);

}  // namespace afr
