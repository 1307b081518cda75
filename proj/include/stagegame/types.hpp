#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stagegame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a model invariant (bad generator row, bad range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A file or flag could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its cap before reaching its certificate.
class IterationLimitError : public Error {
 public:
  using Error::Error;
};

/// Real-valued function on the state space, with sup-norm semantics.
struct ValueVector {
  std::vector<double> values;

  ValueVector() = default;
  explicit ValueVector(std::size_t n, double fill = 0.0) : values(n, fill) {}
  ValueVector(std::initializer_list<double> init) : values(init) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  const double& operator[](std::size_t i) const { return values[i]; }

  double sup_norm() const;
  bool all_finite() const;
};

double sup_dist(const ValueVector& a, const ValueVector& b);
ValueVector scaled(const ValueVector& v, double c);
ValueVector shifted(const ValueVector& v, double c);

/// Finite sequence of stage durations h_i in (0,1].
struct Partition {
  std::vector<double> steps;

  static Partition uniform(double total, int n);
  static Partition list(std::vector<double> steps);
  /// Steps h0, h0*ratio, h0*ratio^2, ... truncated so they sum to `total`
  /// exactly.  Throws if the series cannot reach `total`.
  static Partition geometric(double h0, double ratio, double total);

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  double total() const;        // sigma_k
  double sum_squares() const;  // tau_k
  double mesh() const;         // max step
  void validate() const;       // every step in (0,1]
};

/// Result of a contraction fixed-point solve with an a-posteriori bound:
/// sup-distance to the true fixed point is at most
/// residual * contraction / (1 - contraction) = certified_error.
struct SolveResult {
  ValueVector value;
  long iterations = 0;
  double residual = 0.0;
  double certified_error = 0.0;
  double contraction = 0.0;
};

/// Lazily consumed sequence of stage durations.  Uniform and cycled
/// generators are inexhaustible; finite ones report exhaustion through
/// step() returning nullopt.
class StepGenerator {
 public:
  static StepGenerator uniform(double h);
  static StepGenerator cycle(std::vector<double> steps);
  static StepGenerator finite(std::vector<double> steps);
  static StepGenerator finite(const Partition& p) { return finite(p.steps); }

  std::optional<double> step(std::size_t i) const;
  double max_step() const;
  bool is_infinite() const;
  std::string describe() const;

 private:
  enum class Kind { Uniform, Cycle, Finite };
  StepGenerator(Kind kind, double h, std::vector<double> steps);
  Kind kind_;
  double h_;
  std::vector<double> steps_;
};

}  // namespace stagegame
