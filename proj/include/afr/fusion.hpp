#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "afr/characters.hpp"

namespace afr {

/// Sparse nonnegative-integer structure constants N_{lambda mu}^nu over P+.
class FusionTable {
 public:
  using Row = std::vector<std::pair<std::int32_t, std::int64_t>>;  // sorted by nu

  /// Borrowed; the owning context must outlive the table.
  const LevelContext* ctx = nullptr;

  int size() const { return n_; }
  std::int64_t coeff(int a, int b, int c) const;
  const Row& product(int a, int b) const;

  // storage for unordered pairs a <= b
  std::vector<Row> rows_;
  int n_ = 0;
  std::size_t tri(int a, int b) const {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(a) * n_ - static_cast<std::size_t>(a) * (a - 1) / 2 +
           static_cast<std::size_t>(b - a);
  }
};

/// Finite tensor-product multiplicities by Racah-Speiser folding over the
/// smaller weight system.
std::map<Weight, std::int64_t> tensor_mult(const AlgebraData& alg, const Weight& lambda,
                                           const Weight& mu);

/// Kac-Walton fusion product at the context level.
std::map<Weight, std::int64_t> fusion_product(const LevelContext& ctx, const Weight& lambda,
                                              const Weight& mu);
FusionTable::Row fusion_product_indexed(const LevelContext& ctx, int a, int b);

FusionTable build_table(const LevelContext& ctx);

/// Line-oriented sparse cache with the canonical P+ order in the header.
void save_table(const LevelContext& ctx, const FusionTable& table, std::ostream& os);
FusionTable load_table(const LevelContext& ctx, std::istream& is);

/// Verlinde sum for one triple; throws RoundingError past the 1e-6 budget.
std::int64_t verlinde_fusion(const SMatrix& S, int a, int b, int c);

/// Genus-g Verlinde dimension with punctures.
std::int64_t verlinde_genus(const SMatrix& S, int genus, std::span<const int> punctures);

/// N_a = S diag(S_{ad}/S_{0d}) S^H, for the whole-table oracle check.
Eigen::MatrixXcd verlinde_matrix(const SMatrix& S, int a);

struct VerlindeCheck {
  double max_residual = 0;      // worst |entry - nearest integer| over all triples
  long long mismatches = 0;     // rounded entries that disagree with the table
};
VerlindeCheck verlinde_table_check(const FusionTable& table, const SMatrix& S);

inline constexpr double kRoundingTol = 1e-6;

}  // namespace afr
