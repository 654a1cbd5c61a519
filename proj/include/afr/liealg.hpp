#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "afr/rational.hpp"

namespace afr {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

inline char family_letter(Family f) { return static_cast<char>(f); }
Family family_from_letter(char c);

/// A simple Lie algebra X_r. Valid ranks: A r>=1, B r>=3, C r>=2, D r>=4,
/// E 6..8, F 4, G 2.
struct AlgebraId {
  Family family;
  int rank;

  std::string name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }
  bool operator==(const AlgebraId&) const = default;
  auto operator<=>(const AlgebraId&) const = default;
};

/// Result of folding a (rho-shifted) vector into the dominant chamber or the
/// fundamental alcove. det_sign is the parity of the reflections used, or 0
/// when the shifted vector landed on a reflection wall.
struct FoldResult {
  std::vector<std::int64_t> weight;
  int det_sign = 0;
};

/// Static root-system data, generated from the Cartan matrix at startup.
/// All vectors live in the fundamental-weight (Dynkin-label) basis.
struct AlgebraData {
  AlgebraId id;
  int rank = 0;

  /// cartan[i][j] = <alpha_i, alpha_j^vee>; row i is alpha_i in the label basis.
  std::vector<std::vector<int>> cartan;
  /// Nonzero entries of each Cartan row, for the reflection hot path.
  std::vector<std::vector<std::pair<int, int>>> cartan_sparse;
  /// d_i = (alpha_i|alpha_i)/2, with long roots of norm 2.
  std::vector<Rational> half_norm;
  /// Comarks a_0^vee..a_r^vee (index 0 is the affine node, always 1).
  std::vector<int> comarks;
  int dual_coxeter = 0;  // h^vee = sum of comarks

  /// quad_form[i][j] = (Lambda_i|Lambda_j), exact.
  std::vector<std::vector<Rational>> quad_form;
  /// conductor * quad_form, integral by definition of the conductor.
  std::vector<std::vector<std::int64_t>> quad_form_scaled;
  /// Least common denominator N of all (Lambda_i|Lambda_j).
  std::int64_t conductor = 1;

  /// Positive roots in the label basis, with their heights.
  std::vector<std::vector<int>> positive_roots;
  std::vector<int> root_height;
  std::vector<int> theta;  // highest root
  std::vector<int> rho;    // all labels 1

  /// Orthogonal-type components lambda(l) as exact linear functionals on the
  /// labels; populated for families A, B, C, D (used by the closed-form
  /// character identities and by rank-level duality).
  std::vector<std::vector<Rational>> ortho_rows;

  /// Level change of the reflection s_i: sum_j a_j^vee cartan[i][j].
  std::vector<std::int64_t> level_delta;

  std::size_t num_positive_roots() const { return positive_roots.size(); }

  /// conductor * (v|w) for integer label vectors; exact in int64.
  std::int64_t inner_scaled(std::span<const std::int64_t> v, std::span<const std::int64_t> w) const;
  Rational inner(std::span<const std::int64_t> v, std::span<const std::int64_t> w) const;
};

/// Cached immutable root-system data; throws UsageError on invalid ranks.
const AlgebraData& algebra_data(AlgebraId id);

/// (v|w) as exact rationals, vectors in the fundamental-weight basis.
Rational weight_inner(const AlgebraData& alg, std::span<const std::int64_t> v,
                      std::span<const std::int64_t> w);

/// Fold v by the shifted finite Weyl action: fold v+rho to the dominant
/// chamber, return the result minus rho and det of the folding element
/// (0 when v+rho hits a wall).
FoldResult finite_fold(const AlgebraData& alg, std::vector<std::int64_t> v);

/// Fold an already rho-shifted vector into the interior alcove at level kappa:
/// result has all labels >= 1 including the affine one, or det_sign = 0.
FoldResult affine_fold(const AlgebraData& alg, std::int64_t kappa, std::vector<std::int64_t> v);

/// In-place primitives behind the two fold operations. Return the det sign.
int fold_finite_shifted(const AlgebraData& alg, std::span<std::int64_t> v);
int fold_affine_shifted(const AlgebraData& alg, std::int64_t kappa, std::span<std::int64_t> v);
/// Unshifted fold to the dominant orbit representative (no sign).
void fold_dominant(const AlgebraData& alg, std::span<std::int64_t> v);

}  // namespace afr
