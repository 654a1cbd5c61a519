#pragma once

// Test-only tensor-product oracle for sl(n): Littlewood-Richardson skew
// tableaux counted by brute-force enumeration. Independent of the folding
// route used by the library.

#include <cstdint>
#include <vector>

#include "afr/weights.hpp"

namespace lr {

using Partition = std::vector<int>;  // weakly decreasing, padded with zeros

inline Partition partition_of(const afr::Weight& w) {
  const int r = static_cast<int>(w.size());
  Partition rows(r + 1, 0);
  for (int l = 0; l < r; ++l)
    for (int i = l; i < r; ++i) rows[l] += w[i];
  return rows;  // last row 0
}

inline long long boxes(const Partition& p) {
  long long b = 0;
  for (int x : p) b += x;
  return b;
}

// Number of LR skew tableaux of shape nu/lambda with content mu:
// semistandard rows/columns plus the lattice-word condition on the
// right-to-left row reading word.
inline long long lr_coefficient(const Partition& lambda, const Partition& mu,
                                const Partition& nu) {
  const int rows = static_cast<int>(nu.size());
  for (int i = 0; i < rows; ++i)
    if ((i < static_cast<int>(lambda.size()) ? lambda[i] : 0) > nu[i]) return 0;
  if (boxes(nu) != boxes(lambda) + boxes(mu)) return 0;

  // cells of the skew shape in reverse reading order (top row right-to-left
  // first), so the lattice condition can be enforced incrementally
  struct Cell { int row, col; };
  std::vector<Cell> cells;
  for (int i = 0; i < rows; ++i) {
    const int lo = i < static_cast<int>(lambda.size()) ? lambda[i] : 0;
    for (int c = nu[i] - 1; c >= lo; --c) cells.push_back({i, c});
  }

  const int values = static_cast<int>(mu.size());
  std::vector<std::vector<int>> fill(rows);
  for (int i = 0; i < rows; ++i) fill[i].assign(nu[i], 0);
  std::vector<int> used(values + 2, 0);

  long long count = 0;
  auto rec = [&](auto&& self, std::size_t at) -> void {
    if (at == cells.size()) {
      ++count;
      return;
    }
    const auto [i, c] = cells[at];
    for (int v = 1; v <= values; ++v) {
      if (used[v] >= (v <= values ? mu[v - 1] : 0)) continue;
      if (used[v] + 1 > used[v - 1] && v > 1) continue;  // lattice word
      // row weakly increasing left to right: the cell to the right is filled
      if (c + 1 < nu[i] && fill[i][c + 1] != 0 && v > fill[i][c + 1]) continue;
      // column strictly increasing: the cell above is filled
      if (i > 0 && c < nu[i - 1]) {
        const int above = c < static_cast<int>(fill[i - 1].size()) ? fill[i - 1][c] : 0;
        const bool above_in_skew =
            c >= (i - 1 < static_cast<int>(lambda.size()) ? lambda[i - 1] : 0);
        if (above_in_skew && above != 0 && v <= above) continue;
        if (above_in_skew && above == 0) continue;  // cannot happen in this order
      }
      fill[i][c] = v;
      ++used[v];
      self(self, at + 1);
      --used[v];
      fill[i][c] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

// Tensor multiplicity of nu inside lambda (x) mu for sl(n): lift the target
// to the unique n-row partition in the right box count.
inline long long tensor_mult_sl(int n, const afr::Weight& lambda, const afr::Weight& mu,
                                const afr::Weight& nu) {
  Partition pl = partition_of(lambda), pm = partition_of(mu), pn = partition_of(nu);
  pl.resize(n, 0);
  pm.resize(n, 0);
  pn.resize(n, 0);
  const long long deficit = boxes(pl) + boxes(pm) - boxes(pn);
  if (deficit < 0 || deficit % n != 0) return 0;
  for (auto& x : pn) x += static_cast<int>(deficit / n);
  return lr_coefficient(pl, pm, pn);
}

// Product of hook lengths of the partition attached to an A-series weight.
inline long long hook_product(const afr::Weight& w) {
  Partition p = partition_of(w);
  while (!p.empty() && p.back() == 0) p.pop_back();
  std::vector<int> conj;
  for (int c = 0; !p.empty() && c < p[0]; ++c) {
    int h = 0;
    for (int x : p) h += x > c ? 1 : 0;
    conj.push_back(h);
  }
  long long prod = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int j = 0; j < p[i]; ++j)
      prod *= (p[i] - j) + (conj[j] - static_cast<int>(i)) - 1;
  return prod;
}

}  // namespace lr
