#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afr/symmetries.hpp"

namespace afr {

/// Isomorphism invariants of one fusion ring. Equal fingerprints are
/// necessary (not sufficient) for a ring isomorphism.
struct Fingerprint {
  int cardinality = 0;
  std::vector<int> sc_orders;                 // sorted element orders of the current group
  std::vector<double> qdim_multiset;          // sorted q-dimensions
  std::vector<std::string> charge_profile;    // per current: order + charges on the minimal orbit
  long long galois_modulus = 0;               // 2 kappa N
  std::vector<long long> galois_sc_residues;  // ell mod 2 kappa N with D(0^(ell)) = 1

  /// Pairwise comparison; the Galois sets are compared as predicates over the
  /// integers coprime to both moduli, so rings with different kappa N remain
  /// comparable.
  bool matches(const Fingerprint& other, double tol = 1e-7) const;
  std::string to_string() const;
};

Fingerprint fingerprint(const LevelContext& ctx, const SMatrix& S, const FusionTable& table);

/// Explicit bijection search between two fusion rings. Candidates come from
/// jointly bucketed q-dimension classes; the fingerprint short-circuit is the
/// caller's job (pass force to search anyway). Returns the first bijection in
/// canonical order, or nullopt when a complete search finds none.
std::optional<std::vector<int>> find_isomorphism(const LevelContext& ca, const FusionTable& ta,
                                                 const LevelContext& cb, const FusionTable& tb,
                                                 int search_bound = 400);

/// One side of an expected isomorphism.
struct ContextKey {
  AlgebraId id;
  int level;
  bool operator==(const ContextKey&) const = default;
  auto operator<=>(const ContextKey&) const = default;
  std::string name() const { return id.name() + "k" + std::to_string(level); }
};

/// The static expected-isomorphism list at desk scale: symplectic rank-level
/// duality for r,k <= 5, A1 level k vs C_k level 1, the level-1 coincidences
/// and the two exceptional pairs.
std::vector<std::pair<ContextKey, ContextKey>> theorem51_pairs();

}  // namespace afr
