#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afr/fusion.hpp"

namespace afr {

/// Galois-induced permutation lambda -> lambda^(ell) with the fold signs
/// eps'_ell; satisfies eps'(lambda) S_{lambda^(ell),mu} = eps'(mu) S_{lambda,mu^(ell)}.
struct GaloisPermutation {
  long long ell = 1;
  Perm perm;
  std::vector<int> signs;
  double relation_residual = 0;  // worst violation of the S relation
};

GaloisPermutation galois_perm(const LevelContext& ctx, const SMatrix& S, long long ell);

enum class SymmetrySource {
  Conjugation,
  SimpleCurrent,
  SimpleCurrentMatrix,
  Galois,
  RankLevel,
  Exceptional,
  BruteForce,
  Composite,
};

std::string source_name(SymmetrySource s);

/// A permutation of P+ preserving all fusion coefficients, with provenance
/// and (when constructed) the Lemma-2.2 partner permutation.
struct FusionSymmetry {
  Perm perm;
  SymmetrySource source = SymmetrySource::Composite;
  std::string label;  // e.g. "C", "pi[1]", "pi{5}", "pi_rld", "pi4"
  std::optional<Perm> partner;

  std::string to_string() const { return cycle_notation(perm) + " " + label; }
};

/// Simple-current automorphism pi[a]: lambda -> J^{n a Q_j(lambda)} lambda.
/// Throws NotAPermutationError unless gcd(n a Q_j(j) + 1, n) = 1.
FusionSymmetry sc_automorphism(const LevelContext& ctx, const FusionTable& table,
                               const SimpleCurrent& j, int a);

/// D-series (even rank) matrix construction
/// J_v^{2aQ_v+2bQ_s} J_s^{2cQ_v+2dQ_s}; parameters mod 2. Throws
/// NotAPermutationError when the map is not invertible.
FusionSymmetry sc_automorphism_matrix(const LevelContext& ctx, const FusionTable& table,
                                      const std::vector<SimpleCurrent>& currents,
                                      std::array<int, 4> abcd);

/// Galois fusion-symmetry pi{ell}: lambda -> J(lambda^(ell)), defined exactly
/// when 0^(ell) is a simple current; nullopt otherwise.
std::optional<FusionSymmetry> galois_automorphism(const LevelContext& ctx, const SMatrix& S,
                                                  const FusionTable& table,
                                                  const std::vector<SimpleCurrent>& currents,
                                                  long long ell);

/// Young-diagram transpose bijection P+(C_{r,k}) -> P+(C_{k,r}); rank-1
/// symplectic contexts may be passed as A1. Returns dst indices per src index.
std::vector<int> rank_level_tau(const LevelContext& src, const LevelContext& dst);

/// Hardcoded exceptional permutations for E7 k3, E8 k4/k5, F4 k3/k4,
/// G2 k3/k4; each re-verified against the table (failure is fatal).
std::vector<FusionSymmetry> exceptional_catalog(const LevelContext& ctx, const FusionTable& table);

/// Full check of N_{pi a, pi b}^{pi c} = N_{ab}^c over the sparse support.
bool is_fusion_symmetry(const FusionTable& table, const Perm& perm);

/// The unique column permutation pi' with S_{pi lambda, pi' mu} = S_{lambda mu}.
Perm s_partner(const SMatrix& S, const Perm& perm);

/// Exhaustive backtracking enumeration of the full automorphism group,
/// pruned by q-dimension classes and local fusion invariants.
std::vector<FusionSymmetry> enumerate_automorphisms(const LevelContext& ctx,
                                                    const FusionTable& table, const SMatrix& S,
                                                    int search_bound = 400);

/// The group generated by the classification-theorem elements for this
/// context, every element verified against the table.
std::vector<FusionSymmetry> expected_automorphisms(const LevelContext& ctx,
                                                   const FusionTable& table, const SMatrix& S);

/// Shared backtracking core, also used by the isomorphism search: find
/// bijections src index -> dst index respecting both tables, restricted to
/// the given candidate sets. Stops after max_results solutions.
std::vector<Perm> fusion_bijection_search(const FusionTable& ta, const FusionTable& tb,
                                          const std::vector<std::vector<int>>& candidates,
                                          std::size_t max_results);

/// Candidate sets from matched q-dimension classes refined by local fusion
/// invariants; empty result means provably no bijection.
std::optional<std::vector<std::vector<int>>> matched_class_candidates(const LevelContext& ca,
                                                                      const FusionTable& ta,
                                                                      const LevelContext& cb,
                                                                      const FusionTable& tb);

}  // namespace afr
