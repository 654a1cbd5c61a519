#include <algorithm>
#include <cmath>
#include <complex>

#include "afr/characters.hpp"
#include "afr/error.hpp"
#include "afr/fusion.hpp"
#include "afr/weights.hpp"

namespace afr {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Largest |S_{J lambda, mu} - phi(mu) S_{lambda mu}| over all entries, with
/// the column phases phi read off row 0.
double phase_residual(const SMatrix& S, const Perm& perm) {
  const int n = S.size();
  double worst = 0;
  for (int mu = 0; mu < n; ++mu) {
    const std::complex<double> phi = S(perm[0], mu) / S(0, mu);
    for (int la = 0; la < n; ++la)
      worst = std::max(worst, std::abs(S(perm[la], mu) - phi * S(la, mu)));
    worst = std::max(worst, std::abs(std::abs(phi) - 1.0));
  }
  return worst;
}

/// Permutation of P+ induced by the fusion row of a q-dimension-1 weight:
/// j x lambda is a single weight with coefficient 1.
Perm fusion_route_perm(const LevelContext& ctx, int rep) {
  Perm perm(ctx.size());
  for (int la = 0; la < ctx.size(); ++la) {
    const auto row = fusion_product_indexed(ctx, rep, la);
    if (row.size() != 1 || row[0].second != 1)
      throw InternalError("simple-current fusion row is not a permutation row");
    perm[la] = row[0].first;
  }
  return perm;
}

}  // namespace

std::vector<SimpleCurrent> simple_currents(const LevelContext& ctx, const SMatrix& S) {
  const int n = ctx.size();
  std::vector<SimpleCurrent> out;

  const double s00 = S(0, 0).real();
  std::vector<int> reps;
  for (int i = 0; i < n; ++i)
    if (std::abs(S(i, 0).real() / s00 - 1.0) <= kQdimClassTol) reps.push_back(i);

  const auto& ext = extended_symmetries(*ctx.alg);
  const Weight zero(ctx.rank(), 0);

  for (int rep : reps) {
    SimpleCurrent sc;
    sc.rep_index = rep;
    sc.rep = ctx.weight(rep);

    if (rep == ctx.index_of_zero) {
      sc.perm.resize(n);
      for (int i = 0; i < n; ++i) sc.perm[i] = i;
      sc.order = 1;
      sc.charge.assign(n, Rational(0));
      out.push_back(std::move(sc));
      continue;
    }

    // Diagram route: an extended symmetry sending 0 to the rep whose induced
    // permutation satisfies the S phase relation.
    bool have_perm = false;
    for (const auto& sym : ext) {
      if (apply_extended(ctx, sym, zero) != sc.rep) continue;
      Perm cand(n);
      for (int i = 0; i < n; ++i) cand[i] = ctx.index_of(apply_extended(ctx, sym, ctx.weight(i)));
      if (phase_residual(S, cand) <= 1e-7) {
        sc.perm = std::move(cand);
        have_perm = true;
        break;
      }
    }
    Perm fusion_perm = fusion_route_perm(ctx, rep);
    if (have_perm) {
      if (sc.perm != fusion_perm)
        throw InternalError("diagram and fusion routes disagree on a simple-current permutation");
    } else {
      // covers the anomalous E8 level-2 current
      sc.perm = std::move(fusion_perm);
      if (phase_residual(S, sc.perm) > 1e-7)
        throw InternalError("fusion-route simple current fails the S phase relation");
    }

    sc.order = perm_order(sc.perm);
    const std::int64_t grid = static_cast<std::int64_t>(sc.order) * ctx.alg->conductor * ctx.kappa;
    sc.charge.resize(n);
    for (int mu = 0; mu < n; ++mu) {
      const std::complex<double> phi = S(sc.perm[0], mu) / S(0, mu);
      const double q = std::arg(phi) / kTwoPi;
      auto snapped = snap_to_grid(q, grid, 1e-7);
      if (!snapped)
        throw RoundingError(ctx.name() + ": simple-current charge does not fit the rational grid");
      sc.charge[mu] = *snapped;
    }
    out.push_back(std::move(sc));
  }

  // Group closure: the permutations must be closed under composition.
  for (const auto& a : out)
    for (const auto& b : out) {
      const Perm prod = compose(a.perm, b.perm);
      const bool found = std::any_of(out.begin(), out.end(),
                                     [&](const SimpleCurrent& c) { return c.perm == prod; });
      if (!found) throw InternalError("simple currents are not closed under composition");
    }
  return out;
}

}  // namespace afr
