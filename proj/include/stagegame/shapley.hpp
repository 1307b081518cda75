#pragma once

#include <optional>

#include "stagegame/game.hpp"
#include "stagegame/types.hpp"

namespace stagegame {

/// Stage-duration / discount parameter bundle.  mu is the equivalent plain
/// discount factor of the (lambda, h)-discounted duration game:
/// mu = lambda / (1 + lambda - lambda h).
struct DurationParams {
  double h = 1.0;
  double lambda = 1.0;
  double alpha = 1.0;
  double mu = 1.0;

  static DurationParams make(double lambda, double h, double alpha = 1.0);
};

double mu_from(double lambda, double h);          // lambda/(1+lambda-lambda*h)
double mu_tilde(double lambda, double alpha);     // lambda/(alpha+lambda-lambda*alpha)

/// One-stage value recursion (T f)(w) = val{ g(w) + (Id + Q) f }.
ValueVector apply_T(const GameSpec& game, const ValueVector& f);
/// Allocation-free form for hot loops; f and out must not alias.
void apply_T_into(const GameSpec& game, const double* f, double* out);

/// T_h = (1-h) Id + h T, for h in [0,1].
ValueVector apply_T_h(const GameSpec& game, double h, const ValueVector& f);
/// Same operator through the exact-game form val{ h g + (Id + h Q) f };
/// agrees with apply_T_h to machine precision (checked in tests).
ValueVector apply_T_h_direct(const GameSpec& game, double h, const ValueVector& f);

struct ValueIteration {
  ValueVector total;                      // V = T_h^n(0)
  std::optional<ValueVector> normalized;  // V / (n h); absent for n = 0
};

/// n-stage values of the exact game with stage duration h.
ValueIteration value_iterate(const GameSpec& game, long n, double h = 1.0);

/// Unnormalized discounted value W_lambda, the unique fixed point of
/// f -> T((1-lambda) f), certified within tol in sup norm.
SolveResult discounted_value(const GameSpec& game, double lambda, double tol);
/// Normalized value w_lambda = lambda W_lambda with the scaled certificate.
SolveResult normalized_discounted_value(const GameSpec& game, double lambda,
                                        double tol);

/// Auxiliary one-stage operator D_lambda^h z = lambda T_h(((1-lambda h)/lambda) z);
/// a (1 - lambda h)-contraction whose fixed point is w_lambda^h.
ValueVector apply_D(const GameSpec& game, double lambda, double h,
                    const ValueVector& z);

/// w_lambda^h: value of the lambda-discounted game with stage duration h.
/// Equals w_mu for mu = lambda/(1+lambda-lambda h).
SolveResult discounted_value_duration(const GameSpec& game, double lambda,
                                      double h, double tol);

/// Tilted operator T~_alpha f = (1-alpha) f + T(alpha f); the Shapley
/// operator of the kernel-scaled game (g, alpha Q).
ValueVector apply_T_tilde(const GameSpec& game, double alpha,
                          const ValueVector& f);

/// Fixed point of z -> lambda T~_alpha(((1-lambda)/lambda) z); equals w_mu
/// with mu = lambda/(alpha+lambda-lambda alpha).  alpha = 0 is rejected:
/// the tilt degenerates to a translation and no longer contracts toward a
/// normalized value.
SolveResult discounted_tilde(const GameSpec& game, double alpha, double lambda,
                             double tol);

/// sup-norm residual of w in the duration fixed-point equation
/// w = val[ h lambda g + (1 - h lambda) P_h w ].
double duration_equation_residual(const GameSpec& game, double lambda, double h,
                                  const ValueVector& w);
/// sup-norm residual of w in  w = val[ g + ((1 - h lambda)/lambda) Q w ].
double generator_equation_residual(const GameSpec& game, double lambda, double h,
                                   const ValueVector& w);
/// sup-norm residual of w in  w = val[ g + (Q/lambda) w ]  (the h -> 0 limit
/// equation solved by w-hat_lambda = w_{lambda/(1+lambda)}).
double hat_equation_residual(const GameSpec& game, double lambda,
                             const ValueVector& w);
/// sup-norm residual of w in  w = val[ g + R w ] for the game's own kernel R.
double kernel_equation_residual(const GameSpec& game, const ValueVector& w);

/// sup norm of T(0): the constant appearing in every bound.
double t_zero_norm(const GameSpec& game);

}  // namespace stagegame
