#pragma once

#include <functional>
#include <vector>

namespace qgaa {

using Objective = std::function<double(const std::vector<double>&)>;

enum class OptimizerKind { cobyla, adam };

struct CobylaResult {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  bool budget_exhausted = false;
};

/// Derivative-free minimizer in the COBYLA family: a linear model is
/// interpolated on an n+1-point simplex and minimized over a trust region
/// whose radius shrinks from rho_begin to rho_end. Guarantees
/// f(result.x) <= f(x0); throws if the objective returns NaN.
CobylaResult cobyla_minimize(const Objective& f, std::vector<double> x0,
                             int budget = 5000, double rho_begin = 0.5,
                             double rho_end = 1e-6);

struct AdamState {
  int step_count = 0;
  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  explicit AdamState(std::size_t dim, double lr_ = 0.01)
      : m(dim, 0.0), v(dim, 0.0), lr(lr_) {}
};

/// Standard bias-corrected Adam update, in place. Throws on NaN gradients.
void adam_step(AdamState& state, const std::vector<double>& grad,
               std::vector<double>& params);

struct ScheduleConfig {
  double factor = 1.0;  // in (0, 1]
  int period = 1;       // iterations per decay
};

/// base_lr * factor^floor(iteration / period)
double schedule_lr(const ScheduleConfig& cfg, int iteration, double base_lr);

}  // namespace qgaa
