#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "stagegame/types.hpp"

namespace stagegame::detail {

inline constexpr long kIterationCap = 10'000'000;

/// Certified Banach iteration from 0 for a `contraction`-Lipschitz map.
/// Stops once residual * c/(1-c) <= tol, which bounds the sup distance to
/// the fixed point by tol.
template <typename Apply>
SolveResult fixed_point_iterate(int dim, double contraction, double tol,
                                Apply&& apply, const char* who) {
  if (!(tol > 0.0)) throw ValidationError(std::string(who) + ": tol must be > 0");
  if (!(contraction >= 0.0) || contraction >= 1.0)
    throw ValidationError(std::string(who) + ": contraction factor not in [0,1)");
  SolveResult res;
  res.contraction = contraction;
  std::vector<double> z(dim, 0.0), next(dim, 0.0);
  const double factor =
      contraction > 0.0 ? contraction / (1.0 - contraction) : 0.0;
  for (long k = 1; k <= kIterationCap; ++k) {
    apply(z.data(), next.data());
    double diff = 0.0;
    for (int w = 0; w < dim; ++w) diff = std::max(diff, std::abs(next[w] - z[w]));
    z.swap(next);
    res.iterations = k;
    res.residual = diff;
    res.certified_error = diff * factor;
    if (res.certified_error <= tol) {
      res.value.values = std::move(z);
      return res;
    }
  }
  throw IterationLimitError(std::string(who) + ": iteration cap " +
                            std::to_string(kIterationCap) +
                            " reached; last residual " +
                            std::to_string(res.residual));
}

}  // namespace stagegame::detail
