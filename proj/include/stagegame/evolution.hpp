#pragma once

#include "stagegame/game.hpp"
#include "stagegame/types.hpp"

namespace stagegame {

struct EvolutionResult {
  ValueVector f;
  double t = 0.0;
  long steps_used = 0;
  double certified_error = 0.0;  // ||z - Tz|| * sqrt(delta * t)
  double delta = 0.0;            // uniform internal step actually used
};

/// Solves df/dt = (T - Id) f, f_0 = z, up to time t by uniform explicit
/// Euler, with the step chosen so the scheme-vs-flow certificate
/// ||z - Tz|| sqrt(delta t) lands under tol.  Throws IterationLimitError
/// (reporting the required step) past 1e8 steps.
EvolutionResult evolve(const GameSpec& game, const ValueVector& z, double t,
                       double tol);

/// z_k from z_{k+1} = T_{h_{k+1}} z_k along the partition, starting at z.
ValueVector euler_scheme(const GameSpec& game, const ValueVector& z,
                         const Partition& H);

struct PartitionValue {
  ValueVector total;       // U(H_t)
  ValueVector normalized;  // u(H_t) = U / t
};

/// Value of the game played over the stage durations of H (composition of
/// the exact-game operators from 0), with its duration-normalized form.
PartitionValue partition_value(const GameSpec& game, const Partition& H);

/// V-hat_t = f_t(0): limit of partition values with vanishing mesh.
ValueVector limit_value(const GameSpec& game, double t, double tol);

/// W_lambda^H = lim_n D^{h_1} o ... o D^{h_n} (0) for a divergent step
/// sequence; truncated once the accumulated contraction factor
/// prod (1 - lambda h_i) is below tol/(||T(0)|| + 1), which certifies a
/// sup-norm truncation error <= tol.
SolveResult discounted_product(const GameSpec& game, double lambda,
                               const StepGenerator& gen, double tol);

/// Finite product D^{h_1} o ... o D^{h_n} (z) (inner step applied first).
ValueVector finite_discounted_product(const GameSpec& game, double lambda,
                                      const Partition& H, const ValueVector& z);

}  // namespace stagegame
