#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "afr/weights.hpp"

namespace afr {

/// The weight system of the irreducible module L(lambda): multiplicities of
/// the dominant weights (Freudenthal) plus the fully expanded list of
/// distinct weights, Weyl-orbit by Weyl-orbit.
struct WeightSystem {
  Weight highest;
  std::int64_t dim = 0;

  std::vector<Weight> dominant;
  std::vector<std::int64_t> dominant_mult;

  /// Distinct weights flattened to rank-strided rows; weight_mult is parallel.
  std::vector<std::int32_t> weights_flat;
  std::vector<std::int64_t> weight_mult;

  int rank = 0;
  std::size_t count() const { return weight_mult.size(); }
  std::span<const std::int32_t> weight_at(std::size_t i) const {
    return {weights_flat.data() + i * static_cast<std::size_t>(rank),
            static_cast<std::size_t>(rank)};
  }
  /// Multiplicity of an arbitrary weight vector (0 when not a weight).
  std::int64_t multiplicity(const AlgebraData& alg, std::span<const std::int64_t> w) const;
};

/// Cached per (algebra, highest weight); immutable once built.
const WeightSystem& weight_multiplicities(const AlgebraData& alg, const Weight& highest);

/// Product-formula dimension of L(lambda), exact.
std::int64_t weyl_dim(const AlgebraData& alg, const Weight& highest);

/// q-dimension D(lambda) from the positive-root sine product.
double qdim(const LevelContext& ctx, const Weight& w);
std::vector<double> qdims(const LevelContext& ctx);

/// Finite character of L(lambda) at the element attached to mu:
/// sum over the weight system of mult(w) exp(-2 pi i (w|mu+rho)/kappa).
std::complex<double> chi(const LevelContext& ctx, const Weight& lambda, const Weight& mu);

/// Dense Kac-Peterson matrix over P+ with its structural residuals.
class SMatrix {
 public:
  Eigen::MatrixXcd m;
  double tol = 1e-9;
  /// Borrowed; the owning context must outlive the matrix.
  const LevelContext* ctx = nullptr;

  double symmetry_residual = 0;   // ||S - S^T||_max
  double unitarity_residual = 0;  // ||S S^H - I||_max
  double s2c_residual = 0;        // ||S^2 - C||_max
  double row0_min = 0;            // min over mu of Re S_{0 mu}

  std::complex<double> operator()(int a, int b) const { return m(a, b); }
  int size() const { return static_cast<int>(m.rows()); }
};

/// Assemble S: row 0 from q-dimensions and unitarity, the rest from chi.
/// Throws InternalError when the unitarity residual exceeds tol.
SMatrix smatrix(const LevelContext& ctx, double tol = 1e-9);

/// All non-simple-current weights whose q-dimension ties the minimum,
/// within the class tolerance. Sorted indices.
std::vector<int> qdim_minimal_orbit(const LevelContext& ctx);

/// Shared tolerance for q-dimension classes and simple-current detection.
inline constexpr double kQdimClassTol = 1e-7;

}  // namespace afr
