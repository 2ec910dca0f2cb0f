#include "qgaa/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qgaa {

namespace {

// Solve the n x n linear system A g = b by Gaussian elimination with partial
// pivoting; returns false if A is numerically singular.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& g) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double k = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= k * a[col][c];
      b[r] -= k * b[col];
    }
  }
  g.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * g[j];
    g[i] = s / a[i][i];
  }
  return true;
}

}  // namespace

CobylaResult cobyla_minimize(const Objective& f, std::vector<double> x0,
                             int budget, double rho_begin, double rho_end) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("empty parameter vector");
  CobylaResult res;
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    if (std::isnan(v)) throw std::runtime_error("objective returned NaN");
    ++res.evaluations;
    return v;
  };

  // simplex vertices and values; vertex 0 is kept as the incumbent best
  std::vector<std::vector<double>> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  fs[0] = eval(xs[0]);
  double rho = rho_begin;   // lower trust radius, monotone decreasing
  double delta = rho_begin; // current step length in [rho, rho_begin]

  auto rebuild = [&]() -> bool {
    for (std::size_t i = 1; i <= n; ++i) {
      if (res.evaluations >= budget) return false;
      xs[i] = xs[0];
      xs[i][i - 1] += rho;
      fs[i] = eval(xs[i]);
    }
    return true;
  };
  if (!rebuild()) {
    res.x = xs[0];
    res.f = fs[0];
    res.budget_exhausted = true;
    return res;
  }

  auto promote_best = [&]() {
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
      if (fs[i] < fs[best]) best = i;
    if (best != 0) {
      std::swap(xs[0], xs[best]);
      std::swap(fs[0], fs[best]);
    }
  };
  promote_best();

  // Shrink vertices toward the incumbent, preserving the simplex shape so it
  // stays adapted to curved valleys. Falls back to the caller on budget end.
  auto contract = [&]() -> bool {
    for (std::size_t i = 1; i <= n; ++i) {
      if (res.evaluations >= budget) return false;
      for (std::size_t j = 0; j < n; ++j)
        xs[i][j] = xs[0][j] + 0.5 * (xs[i][j] - xs[0][j]);
      fs[i] = eval(xs[i]);
    }
    return true;
  };

  bool just_rebuilt = true;
  while (res.evaluations < budget && rho >= rho_end) {
    // linear model f(x0 + d) ~ f0 + g.d interpolating the simplex
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = xs[i + 1][j] - xs[0][j];
      b[i] = fs[i + 1] - fs[0];
    }
    std::vector<double> g;
    const bool ok = solve_linear(std::move(a), std::move(b), g);
    const double gnorm =
        ok ? std::sqrt(std::inner_product(g.begin(), g.end(), g.begin(), 0.0))
           : 0.0;
    if (!ok || gnorm < 1e-14) {
      // degenerate geometry or flat model: refresh the simplex at scale rho,
      // shrinking only if a fresh simplex was already degenerate
      if (just_rebuilt) rho = std::max(rho * 0.5, rho_end * 0.5);
      delta = rho;
      if (rho < rho_end || !rebuild()) break;
      just_rebuilt = true;
      promote_best();
      continue;
    }
    just_rebuilt = false;

    std::vector<double> trial = xs[0];
    for (std::size_t j = 0; j < n; ++j) trial[j] -= delta * g[j] / gnorm;
    const double ft = eval(trial);

    // replace the worst vertex so the simplex tracks the incumbent
    std::size_t worst = 1;
    for (std::size_t i = 2; i <= n; ++i)
      if (fs[i] > fs[worst]) worst = i;
    if (ft < fs[worst]) {
      xs[worst] = std::move(trial);
      fs[worst] = ft;
    }

    if (ft < fs[0]) {
      const std::vector<double> prev_best = xs[0];
      promote_best();
      delta = std::min(delta * 1.6, rho_begin);
      // pattern move: successive accepted steps zigzag across a curved
      // valley, but their net displacement tracks it — extrapolate along it
      std::vector<double> dir(n);
      for (std::size_t j = 0; j < n; ++j) dir[j] = xs[0][j] - prev_best[j];
      std::vector<double> best_pat;
      double best_fp = fs[0];
      std::vector<double> pat = xs[0];
      while (res.evaluations < budget) {
        for (std::size_t j = 0; j < n; ++j) {
          pat[j] += dir[j];
          dir[j] *= 2.0;
        }
        const double fp = eval(pat);
        if (fp >= best_fp) break;
        best_fp = fp;
        best_pat = pat;
      }
      if (!best_pat.empty()) {
        std::size_t w = 1;
        for (std::size_t i = 2; i <= n; ++i)
          if (fs[i] > fs[w]) w = i;
        xs[w] = std::move(best_pat);
        fs[w] = best_fp;
        promote_best();
      }
    } else if (delta > rho * 1.0001) {
      delta = std::max(delta * 0.5, rho);
    } else {
      // no progress at the lower radius: shrink and contract around best
      rho *= 0.5;
      delta = rho;
      if (rho < rho_end || !contract()) break;
      promote_best();
    }
  }

  res.x = xs[0];
  res.f = fs[0];
  res.budget_exhausted = res.evaluations >= budget;
  return res;
}

void adam_step(AdamState& s, const std::vector<double>& grad,
               std::vector<double>& params) {
  if (grad.size() != params.size() || grad.size() != s.m.size())
    throw std::invalid_argument("adam dimension mismatch");
  for (double g : grad)
    if (std::isnan(g)) throw std::runtime_error("NaN gradient");
  ++s.step_count;
  const double bc1 = 1.0 - std::pow(s.beta1, s.step_count);
  const double bc2 = 1.0 - std::pow(s.beta2, s.step_count);
  for (std::size_t i = 0; i < params.size(); ++i) {
    s.m[i] = s.beta1 * s.m[i] + (1.0 - s.beta1) * grad[i];
    s.v[i] = s.beta2 * s.v[i] + (1.0 - s.beta2) * grad[i] * grad[i];
    const double mhat = s.m[i] / bc1;
    const double vhat = s.v[i] / bc2;
    params[i] -= s.lr * mhat / (std::sqrt(vhat) + s.eps);
  }
}

double schedule_lr(const ScheduleConfig& cfg, int iteration, double base_lr) {
  if (iteration < 0) throw std::invalid_argument("negative iteration");
  if (cfg.factor <= 0.0 || cfg.factor > 1.0 || cfg.period < 1)
    throw std::invalid_argument("bad schedule config");
  return base_lr * std::pow(cfg.factor, iteration / cfg.period);
}

}  // namespace qgaa
