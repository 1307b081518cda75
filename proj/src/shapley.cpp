#include "stagegame/shapley.hpp"

#include <cmath>
#include <string>

#include "stagegame/fixed_point.hpp"
#include "stagegame/matgame.hpp"

namespace stagegame {

namespace {

void check_dim(const GameSpec& game, const ValueVector& f, const char* who) {
  if (static_cast<int>(f.size()) != game.num_states())
    throw ValidationError(std::string(who) + ": value vector has dimension " +
                          std::to_string(f.size()) + ", game has " +
                          std::to_string(game.num_states()) + " states");
}

template <typename Apply>
SolveResult fixed_point(const GameSpec& game, double contraction, double tol,
                        Apply&& apply, const char* who) {
  return detail::fixed_point_iterate(game.num_states(), contraction, tol,
                                     std::forward<Apply>(apply), who);
}

}  // namespace

DurationParams DurationParams::make(double lambda, double h, double alpha) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw ValidationError("lambda must be in (0,1]");
  if (!(h > 0.0) || h > 1.0) throw ValidationError("h must be in (0,1]");
  if (alpha < 0.0 || alpha > 1.0) throw ValidationError("alpha must be in [0,1]");
  DurationParams p;
  p.lambda = lambda;
  p.h = h;
  p.alpha = alpha;
  p.mu = mu_from(lambda, h);
  return p;
}

double mu_from(double lambda, double h) {
  return lambda / (1.0 + lambda - lambda * h);
}

double mu_tilde(double lambda, double alpha) {
  return lambda / (alpha + lambda - lambda * alpha);
}

void apply_T_into(const GameSpec& game, const double* f, double* out) {
  const int ns = game.num_states();
  thread_local std::vector<double> mat;
  for (int w = 0; w < ns; ++w) {
    const int m = game.actions1[w], n = game.actions2[w];
    mat.resize(std::size_t(m) * n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        const double* q = game.q_row(w, i, j);
        double dot = f[w];
        for (int wp = 0; wp < ns; ++wp) dot += q[wp] * f[wp];
        mat[std::size_t(i) * n + j] = game.payoff(w, i, j) + dot;
      }
    }
    out[w] = matrix_game_value(mat.data(), m, n);
  }
}

ValueVector apply_T(const GameSpec& game, const ValueVector& f) {
  check_dim(game, f, "apply_T");
  ValueVector out(f.size());
  apply_T_into(game, f.values.data(), out.values.data());
  return out;
}

ValueVector apply_T_h(const GameSpec& game, double h, const ValueVector& f) {
  if (h < 0.0 || h > 1.0) throw ValidationError("apply_T_h: h must be in [0,1]");
  check_dim(game, f, "apply_T_h");
  ValueVector out = apply_T(game, f);
  for (std::size_t w = 0; w < f.size(); ++w)
    out[w] = (1.0 - h) * f[w] + h * out[w];
  return out;
}

ValueVector apply_T_h_direct(const GameSpec& game, double h,
                             const ValueVector& f) {
  if (h < 0.0 || h > 1.0)
    throw ValidationError("apply_T_h_direct: h must be in [0,1]");
  check_dim(game, f, "apply_T_h_direct");
  const int ns = game.num_states();
  ValueVector out(f.size());
  std::vector<double> mat;
  for (int w = 0; w < ns; ++w) {
    const int m = game.actions1[w], n = game.actions2[w];
    mat.resize(std::size_t(m) * n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        const double* q = game.q_row(w, i, j);
        double dot = f[w];
        for (int wp = 0; wp < ns; ++wp) dot += h * q[wp] * f[wp];
        mat[std::size_t(i) * n + j] = h * game.payoff(w, i, j) + dot;
      }
    }
    out[w] = matrix_game_value(mat.data(), m, n);
  }
  return out;
}

ValueIteration value_iterate(const GameSpec& game, long n, double h) {
  if (n < 0) throw ValidationError("value_iterate: n must be >= 0");
  if (!(h > 0.0) || h > 1.0)
    throw ValidationError("value_iterate: h must be in (0,1]");
  const int ns = game.num_states();
  ValueIteration out;
  std::vector<double> z(ns, 0.0), tz(ns, 0.0);
  for (long k = 0; k < n; ++k) {
    apply_T_into(game, z.data(), tz.data());
    for (int w = 0; w < ns; ++w) z[w] = (1.0 - h) * z[w] + h * tz[w];
  }
  out.total.values = z;
  if (n >= 1) {
    ValueVector v(ns);
    const double dur = static_cast<double>(n) * h;
    for (int w = 0; w < ns; ++w) v[w] = z[w] / dur;
    out.normalized = std::move(v);
  }
  return out;
}

SolveResult discounted_value(const GameSpec& game, double lambda, double tol) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw ValidationError("discounted_value: lambda must be in (0,1]");
  const int ns = game.num_states();
  std::vector<double> scratch(ns);
  return fixed_point(
      game, 1.0 - lambda, tol,
      [&](const double* z, double* out) {
        for (int w = 0; w < ns; ++w) scratch[w] = (1.0 - lambda) * z[w];
        apply_T_into(game, scratch.data(), out);
      },
      "discounted_value");
}

SolveResult normalized_discounted_value(const GameSpec& game, double lambda,
                                        double tol) {
  SolveResult res = discounted_value(game, lambda, tol);
  for (double& v : res.value.values) v *= lambda;
  res.residual *= lambda;
  res.certified_error *= lambda;
  return res;
}

ValueVector apply_D(const GameSpec& game, double lambda, double h,
                    const ValueVector& z) {
  DurationParams::make(lambda, h);
  check_dim(game, z, "apply_D");
  const double scale = (1.0 - lambda * h) / lambda;
  ValueVector out = apply_T_h(game, h, scaled(z, scale));
  for (double& v : out.values) v *= lambda;
  return out;
}

SolveResult discounted_value_duration(const GameSpec& game, double lambda,
                                      double h, double tol) {
  DurationParams::make(lambda, h);
  const int ns = game.num_states();
  const double scale = (1.0 - lambda * h) / lambda;
  std::vector<double> scratch(ns), tz(ns);
  return fixed_point(
      game, 1.0 - lambda * h, tol,
      [&](const double* z, double* out) {
        for (int w = 0; w < ns; ++w) scratch[w] = scale * z[w];
        apply_T_into(game, scratch.data(), tz.data());
        for (int w = 0; w < ns; ++w)
          out[w] = lambda * ((1.0 - h) * scratch[w] + h * tz[w]);
      },
      "discounted_value_duration");
}

ValueVector apply_T_tilde(const GameSpec& game, double alpha,
                          const ValueVector& f) {
  if (alpha < 0.0 || alpha > 1.0)
    throw ValidationError("apply_T_tilde: alpha must be in [0,1]");
  check_dim(game, f, "apply_T_tilde");
  ValueVector out = apply_T(game, scaled(f, alpha));
  for (std::size_t w = 0; w < f.size(); ++w) out[w] += (1.0 - alpha) * f[w];
  return out;
}

SolveResult discounted_tilde(const GameSpec& game, double alpha, double lambda,
                             double tol) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ValidationError(
        "discounted_tilde: alpha must be in (0,1]; alpha = 0 degenerates to a "
        "translation with no normalized value");
  if (!(lambda > 0.0) || lambda > 1.0)
    throw ValidationError("discounted_tilde: lambda must be in (0,1]");
  const int ns = game.num_states();
  const double scale = (1.0 - lambda) / lambda;
  std::vector<double> scratch(ns), tz(ns);
  return fixed_point(
      game, 1.0 - lambda, tol,
      [&](const double* z, double* out) {
        for (int w = 0; w < ns; ++w) scratch[w] = alpha * scale * z[w];
        apply_T_into(game, scratch.data(), tz.data());
        for (int w = 0; w < ns; ++w)
          out[w] = lambda * ((1.0 - alpha) * scale * z[w] + tz[w]);
      },
      "discounted_tilde");
}

namespace {

// Residual of w in w = val[ a g + (b Id + c Q) w ].
double affine_equation_residual(const GameSpec& game, double a, double b,
                                double c, const ValueVector& w) {
  const int ns = game.num_states();
  double res = 0.0;
  std::vector<double> mat;
  for (int s = 0; s < ns; ++s) {
    const int m = game.actions1[s], n = game.actions2[s];
    mat.resize(std::size_t(m) * n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        const double* q = game.q_row(s, i, j);
        double dot = b * w[s];
        for (int wp = 0; wp < ns; ++wp) dot += c * q[wp] * w[wp];
        mat[std::size_t(i) * n + j] = a * game.payoff(s, i, j) + dot;
      }
    }
    res = std::max(res, std::abs(matrix_game_value(mat.data(), m, n) - w[s]));
  }
  return res;
}

}  // namespace

double duration_equation_residual(const GameSpec& game, double lambda, double h,
                                  const ValueVector& w) {
  DurationParams::make(lambda, h);
  check_dim(game, w, "duration_equation_residual");
  // val[ h l g + (1 - h l)(Id + h Q) w ]
  const double hl = h * lambda;
  return affine_equation_residual(game, hl, 1.0 - hl, (1.0 - hl) * h, w);
}

double generator_equation_residual(const GameSpec& game, double lambda, double h,
                                   const ValueVector& w) {
  DurationParams::make(lambda, h);
  check_dim(game, w, "generator_equation_residual");
  return affine_equation_residual(game, 1.0, 0.0, (1.0 - h * lambda) / lambda, w);
}

double hat_equation_residual(const GameSpec& game, double lambda,
                             const ValueVector& w) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw ValidationError("hat_equation_residual: lambda must be in (0,1]");
  check_dim(game, w, "hat_equation_residual");
  return affine_equation_residual(game, 1.0, 0.0, 1.0 / lambda, w);
}

double kernel_equation_residual(const GameSpec& game, const ValueVector& w) {
  check_dim(game, w, "kernel_equation_residual");
  return affine_equation_residual(game, 1.0, 0.0, 1.0, w);
}

double t_zero_norm(const GameSpec& game) {
  ValueVector zero(game.num_states(), 0.0);
  return apply_T(game, zero).sup_norm();
}

}  // namespace stagegame
