#pragma once

#include <vector>

#include "stagegame/game.hpp"
#include "stagegame/types.hpp"

namespace stagegame {

/// Square row-major matrix used for generators and their semigroups.
struct SquareMatrix {
  int n = 0;
  std::vector<double> a;

  SquareMatrix() = default;
  explicit SquareMatrix(int dim) : n(dim), a(std::size_t(dim) * dim, 0.0) {}
  double at(int i, int j) const { return a[std::size_t(i) * n + j]; }
  double& at(int i, int j) { return a[std::size_t(i) * n + j]; }
  static SquareMatrix identity(int dim);
};

/// Row-stochastic transition matrix P^t = e^{tQ} for one action pair.
struct Semigroup {
  SquareMatrix p;
  double t = 0.0;
  void validate() const;  // rows sum to 1 within 1e-10, entries in [0,1]
};

/// Generator matrix of the action pair (i, j): rows Q[w][i][j][.].  Needs
/// state-independent action counts so the pair exists everywhere.
SquareMatrix generator_matrix(const GameSpec& game, int i, int j);

/// e^{tQ} by uniformization: Poisson-weighted powers of Id + Q/r with
/// r the max exit rate, truncated when the Poisson tail drops below 1e-14.
/// Row-stochastic by construction (entries clamped to [0,1]).
Semigroup transition_semigroup(const SquareMatrix& q, double t);

/// Stage payoff of the discretized continuous-time game:
/// g^h(w,i,j) = integral_0^h (e^{tQ(i,j)} g(.,i,j))(w) dt, by adaptive
/// Simpson with absolute tolerance 1e-12.  Flat tensor in the same layout
/// as GameSpec::payoff_data.
std::vector<double> integrated_payoff(const GameSpec& game, double h);

/// Discounted stage payoff integral_0^h lambda e^{-lambda t}
/// (e^{tQ(i,j)} g(.,i,j))(w) dt, same quadrature and layout.
std::vector<double> discounted_integrated_payoff(const GameSpec& game,
                                                 double lambda, double h);

/// (T-bar_h f)(w) = val{ g^h + P^h f }.
ValueVector apply_barT_h(const GameSpec& game, double h, const ValueVector& f);

/// V-bar_H = composition of T-bar_{h_i} from 0 along the partition.
ValueVector discretized_finite_value(const GameSpec& game, const Partition& H);

/// w-bar_lambda^h: fixed point of
/// f -> val{ integral_0^h lambda e^{-lambda t} g_t + e^{-lambda h} P^h f },
/// an e^{-lambda h}-contraction, certified within tol.
SolveResult discretized_discounted_value(const GameSpec& game, double lambda,
                                         double h, double tol);

/// Precomputed semigroups and integrated payoffs for one (game, h); lets
/// iteration-heavy callers apply T-bar_h without repeating the quadrature.
class DiscretizedStage {
 public:
  DiscretizedStage(const GameSpec& game, double h);
  void apply(const double* f, double* out) const;
  const GameSpec& game() const { return *game_; }
  double h() const { return h_; }

 private:
  const GameSpec* game_;
  double h_;
  int m_, n_;
  std::vector<Semigroup> semigroups_;   // per (i,j), row-major
  std::vector<double> stage_payoff_;    // g^h
};

}  // namespace stagegame
