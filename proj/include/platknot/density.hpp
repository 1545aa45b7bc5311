#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "platknot/extension.hpp"

namespace platknot {

using BigInt = boost::multiprecision::cpp_int;

struct DensityRow {
  std::size_t k = 0;
  BigInt space;        // |C|^{2k}
  BigInt rhat;         // |R-hat_k|
  BigInt rhat0;        // |R-hat^0_k| (zero Schur invariant); 0 without a multiplier
  double ratio = 0;    // rhat / space
  double ratio0 = 0;   // rhat0 / space
  double deviation = 0;   // |ratio - 1/|G||
  double deviation0 = 0;  // |ratio0 - 1/(|G| |M|)|
};

inline double big_ratio(const BigInt& num, const BigInt& den) {
  using boost::multiprecision::cpp_rational;
  return static_cast<double>(cpp_rational(num, den));
}

namespace detail {

// counts[k] = number of (x_1,y_1,...,x_k,y_k), x in X, y in Y, with trivial product
inline std::vector<BigInt> identity_mass(const FiniteGroup& g, const std::vector<Elem>& X, const std::vector<Elem>& Y,
                                         std::size_t k_max) {
  std::vector<std::uint64_t> pair(g.order(), 0);
  for (auto x : X)
    for (auto y : Y) ++pair[g.mul(x, y)];
  std::vector<Elem> support;
  for (Elem h = 0; h < g.order(); ++h)
    if (pair[h]) support.push_back(h);
  std::vector<BigInt> dist(g.order(), 0);
  dist[g.identity()] = 1;
  std::vector<BigInt> out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<BigInt> next(g.order(), 0);
    for (Elem a = 0; a < g.order(); ++a) {
      if (dist[a] == 0) continue;
      for (auto h : support) next[g.mul(a, h)] += dist[a] * pair[h];
    }
    dist = std::move(next);
    out.push_back(dist[g.identity()]);
  }
  return out;
}

}  // namespace detail

/// Exact |R-hat_k| and |R-hat^0_k| for k = 1..k_max by dynamic programming on
/// the distribution of partial products.
inline std::vector<DensityRow> density_scan(const FiniteGroup& g, const ConjClass& C, const ReducedMultiplier* rm,
                                            std::size_t k_max, std::size_t budget = 100'000'000) {
  if (!is_perfect(g)) fail(ErrorCode::BaseNotPerfect, "density scan needs a perfect group");
  const auto cover_order = rm ? rm->quotient.cover.order() : g.order();
  if (static_cast<double>(k_max) * static_cast<double>(cover_order) * static_cast<double>(cover_order) >
      static_cast<double>(budget))
    fail(ErrorCode::BudgetExceeded, "density scan exceeds budget");
  std::vector<Elem> Cinv;
  for (auto x : C.members) Cinv.push_back(g.inv(x));
  auto rhat = detail::identity_mass(g, C.members, Cinv, k_max);
  std::vector<BigInt> rhat0(k_max, 0);
  std::size_t mult = 1;
  if (rm) {
    const auto& cov = rm->quotient.cover;
    std::vector<Elem> L, Linv;
    for (auto x : C.members) {
      L.push_back(rm->lift(x));
      Linv.push_back(cov.inv(rm->lift(x)));
    }
    rhat0 = detail::identity_mass(cov, L, Linv, k_max);
    mult = rm->multiplier_order();
  }
  std::vector<DensityRow> rows;
  BigInt space = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    space *= C.size();
    space *= C.size();
    DensityRow r;
    r.k = k;
    r.space = space;
    r.rhat = rhat[k - 1];
    r.rhat0 = rhat0[k - 1];
    r.ratio = big_ratio(r.rhat, space);
    r.ratio0 = big_ratio(r.rhat0, space);
    r.deviation = std::fabs(r.ratio - 1.0 / static_cast<double>(g.order()));
    r.deviation0 = std::fabs(r.ratio0 - 1.0 / static_cast<double>(g.order() * mult));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace platknot
