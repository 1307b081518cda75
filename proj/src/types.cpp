#include "stagegame/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stagegame {

double ValueVector::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

bool ValueVector::all_finite() const {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

double sup_dist(const ValueVector& a, const ValueVector& b) {
  if (a.size() != b.size())
    throw ValidationError("sup_dist: dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ValueVector scaled(const ValueVector& v, double c) {
  ValueVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

ValueVector shifted(const ValueVector& v, double c) {
  ValueVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + c;
  return out;
}

Partition Partition::uniform(double total, int n) {
  if (n <= 0) throw ValidationError("uniform partition needs n >= 1");
  if (!(total > 0.0)) throw ValidationError("uniform partition needs total > 0");
  Partition p;
  p.steps.assign(static_cast<std::size_t>(n), total / n);
  p.validate();
  return p;
}

Partition Partition::list(std::vector<double> steps) {
  Partition p;
  p.steps = std::move(steps);
  p.validate();
  return p;
}

Partition Partition::geometric(double h0, double ratio, double total) {
  if (!(h0 > 0.0) || !(ratio > 0.0))
    throw ValidationError("geometric partition needs h0 > 0 and ratio > 0");
  if (ratio < 1.0) {
    double reach = h0 / (1.0 - ratio);
    if (total > reach + 1e-12) {
      std::ostringstream os;
      os << "geometric partition cannot reach total " << total
         << "; series sums to " << reach;
      throw ValidationError(os.str());
    }
  }
  Partition p;
  double remaining = total;
  double h = h0;
  while (remaining > 1e-12) {
    double step = std::min(h, remaining);
    p.steps.push_back(step);
    remaining -= step;
    h *= ratio;
    if (p.steps.size() > 10'000'000)
      throw ValidationError("geometric partition exceeds 1e7 steps");
  }
  p.validate();
  return p;
}

double Partition::total() const {
  double s = 0.0;
  for (double h : steps) s += h;
  return s;
}

double Partition::sum_squares() const {
  double s = 0.0;
  for (double h : steps) s += h * h;
  return s;
}

double Partition::mesh() const {
  double m = 0.0;
  for (double h : steps) m = std::max(m, h);
  return m;
}

void Partition::validate() const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || steps[i] > 1.0 || !std::isfinite(steps[i]))
      throw ValidationError("partition step " + std::to_string(i) +
                            " not in (0,1]: " + std::to_string(steps[i]));
  }
}

StepGenerator::StepGenerator(Kind kind, double h, std::vector<double> steps)
    : kind_(kind), h_(h), steps_(std::move(steps)) {}

StepGenerator StepGenerator::uniform(double h) {
  if (!(h > 0.0) || h > 1.0)
    throw ValidationError("uniform step generator needs h in (0,1]");
  return StepGenerator(Kind::Uniform, h, {});
}

StepGenerator StepGenerator::cycle(std::vector<double> steps) {
  if (steps.empty()) throw ValidationError("cycle generator needs steps");
  Partition::list(steps);  // range check
  return StepGenerator(Kind::Cycle, 0.0, std::move(steps));
}

StepGenerator StepGenerator::finite(std::vector<double> steps) {
  Partition::list(steps);  // range check
  return StepGenerator(Kind::Finite, 0.0, std::move(steps));
}

std::optional<double> StepGenerator::step(std::size_t i) const {
  switch (kind_) {
    case Kind::Uniform:
      return h_;
    case Kind::Cycle:
      return steps_[i % steps_.size()];
    case Kind::Finite:
      if (i < steps_.size()) return steps_[i];
      return std::nullopt;
  }
  return std::nullopt;
}

double StepGenerator::max_step() const {
  if (kind_ == Kind::Uniform) return h_;
  double m = 0.0;
  for (double h : steps_) m = std::max(m, h);
  return m;
}

bool StepGenerator::is_infinite() const { return kind_ != Kind::Finite; }

std::string StepGenerator::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Uniform:
      os << "uniform:h=" << h_;
      break;
    case Kind::Cycle:
      os << "cycle:";
      for (std::size_t i = 0; i < steps_.size(); ++i)
        os << (i ? "," : "") << steps_[i];
      break;
    case Kind::Finite:
      os << "list:";
      for (std::size_t i = 0; i < steps_.size(); ++i)
        os << (i ? "," : "") << steps_[i];
      break;
  }
  return os.str();
}

}  // namespace stagegame
