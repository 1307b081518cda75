#include "stagegame/evolution.hpp"

#include <cmath>
#include <sstream>

#include "stagegame/shapley.hpp"

namespace stagegame {

namespace {
constexpr long kMaxEulerSteps = 100'000'000;
constexpr long kMaxProductSteps = 10'000'000;
}  // namespace

EvolutionResult evolve(const GameSpec& game, const ValueVector& z, double t,
                       double tol) {
  if (t < 0.0) throw ValidationError("evolve: t must be >= 0");
  if (!(tol > 0.0)) throw ValidationError("evolve: tol must be > 0");
  if (static_cast<int>(z.size()) != game.num_states())
    throw ValidationError("evolve: dimension mismatch");

  EvolutionResult res;
  res.f = z;
  res.t = t;
  if (t == 0.0) return res;

  ValueVector tz = apply_T(game, z);
  const double r0 = sup_dist(z, tz);
  if (r0 == 0.0) return res;  // z fixed by T: the flow is constant

  double delta = std::min({1.0, t, (tol / r0) * (tol / r0) / t});
  const double raw_steps = std::ceil(t / delta);
  if (raw_steps > static_cast<double>(kMaxEulerSteps)) {
    std::ostringstream os;
    os << "evolve: required step " << delta << " needs " << raw_steps
       << " steps (cap " << kMaxEulerSteps << "); loosen tol";
    throw IterationLimitError(os.str());
  }
  const long steps = static_cast<long>(raw_steps);
  delta = t / static_cast<double>(steps);

  const int ns = game.num_states();
  std::vector<double> cur = z.values, next(ns);
  for (long k = 0; k < steps; ++k) {
    apply_T_into(game, cur.data(), next.data());
    for (int w = 0; w < ns; ++w) cur[w] += delta * (next[w] - cur[w]);
  }
  res.f.values = std::move(cur);
  res.steps_used = steps;
  res.delta = delta;
  res.certified_error = r0 * std::sqrt(delta * t);
  return res;
}

ValueVector euler_scheme(const GameSpec& game, const ValueVector& z,
                         const Partition& H) {
  H.validate();
  if (static_cast<int>(z.size()) != game.num_states())
    throw ValidationError("euler_scheme: dimension mismatch");
  const int ns = game.num_states();
  std::vector<double> cur = z.values, next(ns);
  for (double h : H.steps) {
    apply_T_into(game, cur.data(), next.data());
    for (int w = 0; w < ns; ++w) cur[w] += h * (next[w] - cur[w]);
  }
  ValueVector out;
  out.values = std::move(cur);
  return out;
}

PartitionValue partition_value(const GameSpec& game, const Partition& H) {
  if (H.empty()) throw ValidationError("partition_value: empty partition");
  PartitionValue pv;
  pv.total = euler_scheme(game, ValueVector(game.num_states(), 0.0), H);
  pv.normalized = scaled(pv.total, 1.0 / H.total());
  return pv;
}

ValueVector limit_value(const GameSpec& game, double t, double tol) {
  if (!(t > 0.0)) throw ValidationError("limit_value: t must be > 0");
  return evolve(game, ValueVector(game.num_states(), 0.0), t, tol).f;
}

ValueVector finite_discounted_product(const GameSpec& game, double lambda,
                                      const Partition& H, const ValueVector& z) {
  H.validate();
  ValueVector cur = z;
  for (std::size_t k = H.size(); k-- > 0;)
    cur = apply_D(game, lambda, H.steps[k], cur);
  return cur;
}

SolveResult discounted_product(const GameSpec& game, double lambda,
                               const StepGenerator& gen, double tol) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw ValidationError("discounted_product: lambda must be in (0,1]");
  if (!(tol > 0.0)) throw ValidationError("discounted_product: tol must be > 0");

  const double c = t_zero_norm(game);
  const double threshold = tol / (c + 1.0);

  // The composition applies step 1 outermost, so materialize the prefix
  // whose accumulated contraction certifies the truncation, then fold
  // backwards.  From a start at 0 every tail product stays within ||T(0)||,
  // which is what makes the threshold rule a genuine certificate.
  std::vector<double> steps;
  double rho = 1.0;
  for (std::size_t i = 0; rho > threshold; ++i) {
    if (static_cast<long>(i) >= kMaxProductSteps)
      throw IterationLimitError(
          "discounted_product: contraction did not certify within 1e7 steps");
    auto h = gen.step(i);
    if (!h) {
      std::ostringstream os;
      os << "discounted_product: step generator exhausted after " << i
         << " steps with contraction " << rho << " > certificate threshold "
         << threshold;
      throw IterationLimitError(os.str());
    }
    if (!(*h > 0.0) || *h > 1.0)
      throw ValidationError("discounted_product: step outside (0,1]");
    steps.push_back(*h);
    rho *= (1.0 - lambda * *h);
  }

  SolveResult res;
  ValueVector cur(game.num_states(), 0.0);
  for (std::size_t k = steps.size(); k-- > 0;)
    cur = apply_D(game, lambda, steps[k], cur);
  res.value = std::move(cur);
  res.iterations = static_cast<long>(steps.size());
  res.certified_error = rho * c;
  res.residual = 0.0;
  res.contraction = rho;
  return res;
}

}  // namespace stagegame
