#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace ccfour {

/// Nelder-Mead downhill simplex in N dimensions with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <std::size_t N>
class NelderMead {
 public:
  using Point = std::array<double, N>;
  using Objective = std::function<double(const Point&)>;

  struct Options {
    /// Stop when every vertex is within this distance of the best one.
    double xtol = 1e-12;
    /// Stop as soon as the best value drops to this level.
    double ftarget = 0.0;
    int max_evaluations = 2000;
  };

  struct Result {
    Point best{};
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
    std::array<Point, N + 1> simplex{};
    std::array<double, N + 1> values{};
  };

  static Result minimize(const Objective& f, const Point& start, double step,
                         const Options& opt) {
    Result r;
    std::array<Point, N + 1>& x = r.simplex;
    std::array<double, N + 1>& fx = r.values;
    const auto eval = [&](const Point& p) {
      ++r.evaluations;
      return f(p);
    };

    x[0] = start;
    for (std::size_t i = 0; i < N; ++i) {
      x[i + 1] = start;
      x[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= N; ++i) fx[i] = eval(x[i]);

    std::array<std::size_t, N + 1> order{};
    while (true) {
      for (std::size_t i = 0; i <= N; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
      const std::size_t best = order[0];
      const std::size_t worst = order[N];
      const std::size_t second = order[N - 1];

      double spread = 0.0;
      for (std::size_t i = 0; i <= N; ++i) {
        for (std::size_t k = 0; k < N; ++k) {
          spread = std::max(spread, std::abs(x[i][k] - x[best][k]));
        }
      }
      if (fx[best] <= opt.ftarget || spread <= opt.xtol) {
        r.converged = true;
        break;
      }
      if (r.evaluations >= opt.max_evaluations) break;

      Point centroid{};
      for (std::size_t i = 0; i <= N; ++i) {
        if (i == worst) continue;
        for (std::size_t k = 0; k < N; ++k) centroid[k] += x[i][k] / static_cast<double>(N);
      }
      const auto along = [&](double t) {
        Point p;
        for (std::size_t k = 0; k < N; ++k) p[k] = centroid[k] + t * (x[worst][k] - centroid[k]);
        return p;
      };

      const Point reflected = along(-1.0);
      const double f_reflected = eval(reflected);
      if (f_reflected < fx[best]) {
        const Point expanded = along(-2.0);
        const double f_expanded = eval(expanded);
        if (f_expanded < f_reflected) {
          x[worst] = expanded;
          fx[worst] = f_expanded;
        } else {
          x[worst] = reflected;
          fx[worst] = f_reflected;
        }
        continue;
      }
      if (f_reflected < fx[second]) {
        x[worst] = reflected;
        fx[worst] = f_reflected;
        continue;
      }
      const bool outside = f_reflected < fx[worst];
      const Point contracted = along(outside ? -0.5 : 0.5);
      const double f_contracted = eval(contracted);
      if (f_contracted < (outside ? f_reflected : fx[worst])) {
        x[worst] = contracted;
        fx[worst] = f_contracted;
        continue;
      }
      for (std::size_t i = 0; i <= N; ++i) {
        if (i == best) continue;
        for (std::size_t k = 0; k < N; ++k) x[i][k] = x[best][k] + 0.5 * (x[i][k] - x[best][k]);
        fx[i] = eval(x[i]);
      }
    }

    const auto best_it = std::min_element(fx.begin(), fx.end());
    const auto index = static_cast<std::size_t>(best_it - fx.begin());
    r.best = x[index];
    r.value = fx[index];
    return r;
  }
};

}  // namespace ccfour
