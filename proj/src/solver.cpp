#include "ccfour/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include <Eigen/Dense>
#include <boost/math/tools/toms748_solve.hpp>

#include "ccfour/errors.hpp"
#include "ccfour/simplex.hpp"
#include "parallel.hpp"

namespace ccfour {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeGap = 1e-9;
constexpr double kAreaZero = 1e-14;
// Objective value outside the target region or where no root gives positive masses.
constexpr double kPenalty = 1e3;
constexpr double kDuplicateLambda = 1e-7;
constexpr double kUnboundedSpan = 1e6;

// Symmetric mass sets produce distinct configurations with equal kind and lambda,
// so duplicates must also agree pair by pair.
bool same_configuration(const CentralConfiguration& a, const CentralConfiguration& b) {
  if (!(a.kind == b.kind) || std::abs(a.lambda - b.lambda) >= kDuplicateLambda) return false;
  for (int k = 0; k < 6; ++k) {
    if (std::abs(a.distances.at(k) - b.distances.at(k)) >= kDuplicateLambda) return false;
  }
  return true;
}

struct Candidate {
  CentralConfiguration config;
  Vec4 mismatch{};
  double norm2 = 0.0;
};

std::vector<double> scan_roots(const WeightedAreas& A, int points, double tol) {
  const LambdaInterval iv = admissible_lambda_interval(A);
  const auto cm = [&](double lambda) {
    return cayley_menger_normalized(distances_from_lambda(A, lambda));
  };
  const int per_side = std::max(points / 2, 2);
  std::vector<double> roots;

  const auto scan = [&](double a, double b) {
    if (!(a < b)) return;
    double x0 = a;
    double f0 = cm(a);
    for (int k = 1; k <= per_side; ++k) {
      const double x1 = k == per_side ? b : a + (b - a) * k / per_side;
      const double f1 = cm(x1);
      if (f0 == 0.0) {
        roots.push_back(x0);
      } else if (std::signbit(f0) != std::signbit(f1) && f1 != 0.0) {
        std::uintmax_t iterations = 200;
        const auto bracket = boost::math::tools::toms748_solve(
            cm, x0, x1, f0, f1, [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; },
            iterations);
        roots.push_back(0.5 * (bracket.first + bracket.second));
      }
      x0 = x1;
      f0 = f1;
    }
    if (f0 == 0.0) roots.push_back(x0);
  };

  const double lo = std::isfinite(iv.lo) ? iv.lo : -kUnboundedSpan;
  const double hi = std::isfinite(iv.hi) ? iv.hi : kUnboundedSpan;
  scan(lo + kEdgeGap, -kEdgeGap);
  scan(kEdgeGap, hi - kEdgeGap);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::optional<Candidate> candidate_at(const Tetrahedron& tetra, const Eigen::Vector3d& unit,
                                      double lambda) {
  const MassVector& masses = tetra.masses;
  const WeightedAreas A = weighted_areas(tetra, unit);
  try {
    const DistanceSet d = distances_from_lambda(A, lambda);
    const PlanarConfig plane = embed_planar(d);
    const MassVector recovered = recovered_masses(plane.S, A, masses.total());

    Candidate c;
    for (int j = 0; j < 4; ++j) {
      c.mismatch[static_cast<std::size_t>(j)] = (recovered[j] - masses[j]) / masses.total();
    }
    double worst = 0.0;
    for (double v : c.mismatch) {
      c.norm2 += v * v;
      worst = std::max(worst, std::abs(v));
    }

    CentralConfiguration& cfg = c.config;
    cfg.kind = classify(plane.S);
    cfg.lambda = lambda;
    cfg.distances = d;
    cfg.recovered = recovered;
    cfg.residuals.mass_mismatch = worst;
    cfg.residuals.cm = cayley_menger_normalized(d);
    cfg.residuals.sigma_minus_1 = sigma(masses, d) - 1.0;
    if (unit.z() < 0.0) {
      cfg.direction = Direction::from_unit(-unit);
      cfg.areas = weighted_areas(tetra, Eigen::Vector3d(-unit));
    } else {
      cfg.direction = Direction::from_unit(unit);
      cfg.areas = A;
    }
    return c;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Best root at `unit` whose configuration has the target pattern.
std::optional<Candidate> best_at(const Tetrahedron& tetra, const Eigen::Vector3d& unit,
                                 const ConfigurationType& target, int scan_points, double tol) {
  const WeightedAreas A = weighted_areas(tetra, unit);
  if (!(classify(A.A, kAreaZero * A.C) == target)) return std::nullopt;
  std::optional<Candidate> best;
  for (double lambda : scan_roots(A, scan_points, tol)) {
    auto c = candidate_at(tetra, unit, lambda);
    if (!c || !(c->config.kind == target)) continue;
    if (!best || c->norm2 < best->norm2) best = std::move(c);
  }
  return best;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> tangent_basis(const Eigen::Vector3d& n) {
  int k = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(n(i)) < std::abs(n(k))) k = i;
  }
  const Eigen::Vector3d axis = Eigen::Vector3d::Unit(k);
  const Eigen::Vector3d u = n.cross(axis).normalized();
  return {u, n.cross(u)};
}

int worker_count(const SolverSettings& s) {
  if (s.threads > 0) return s.threads;
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

}  // namespace

void SolverSettings::validate() const {
  const bool ok = lambda_scan_points > 0 && lambda_root_tol > 0.0 && angle_tol > 0.0 &&
                  mass_tol > 0.0 && grid_theta > 0 && grid_phi > 0 &&
                  grid_lambda_scan_points > 0 && seeds_per_region > 0 && max_iterations > 0 &&
                  threads >= 0;
  if (!ok) throw PreconditionError("solver settings must be positive");
}

std::vector<double> lambda_roots(const WeightedAreas& A, const SolverSettings& settings) {
  return scan_roots(A, settings.lambda_scan_points, settings.lambda_root_tol);
}

std::optional<Vec4> mass_mismatch(const Tetrahedron& tetra, const Direction& dir, double lambda) {
  auto c = candidate_at(tetra, dir.unit(), lambda);
  if (!c) return std::nullopt;
  return c->mismatch;
}

std::optional<CentralConfiguration> evaluate_candidate(const Tetrahedron& tetra,
                                                       const Eigen::Vector3d& unit,
                                                       double lambda) {
  auto c = candidate_at(tetra, unit, lambda);
  if (!c) return std::nullopt;
  return std::move(c->config);
}

TuneResult tune_direction(const Tetrahedron& tetra, const Direction& start,
                          const ConfigurationType& target, const SolverSettings& settings) {
  settings.validate();
  using Simplex = NelderMead<2>;
  using Point = Simplex::Point;

  const Eigen::Vector3d n0 = start.unit();
  const auto [eu, ev] = tangent_basis(n0);
  const auto to_unit = [&](const Point& x) -> Eigen::Vector3d {
    return (n0 + x[0] * eu + x[1] * ev).normalized();
  };
  const auto coarse = [&](const Point& x) {
    return best_at(tetra, to_unit(x), target, settings.grid_lambda_scan_points,
                   settings.lambda_root_tol);
  };

  TuneResult out;
  const auto objective = [&](const Point& x) {
    const auto c = coarse(x);
    return c ? c->norm2 : kPenalty;
  };

  // Gauss-Newton on the 4-vector mismatch, from wherever the simplex stopped.
  const auto polish = [&](Point x) {
    std::optional<Candidate> current = coarse(x);
    constexpr double h = 1e-7;
    for (int iter = 0; iter < 50 && current && current->norm2 > 0.0; ++iter) {
      Eigen::Matrix<double, 4, 2> J;
      bool ok = true;
      for (int k = 0; k < 2 && ok; ++k) {
        Point xp = x, xm = x;
        xp[static_cast<std::size_t>(k)] += h;
        xm[static_cast<std::size_t>(k)] -= h;
        const auto cp = coarse(xp);
        const auto cm = coarse(xm);
        out.evaluations += 2;
        if (!cp || !cm) {
          ok = false;
          break;
        }
        for (int j = 0; j < 4; ++j) {
          const auto sj = static_cast<std::size_t>(j);
          J(j, k) = (cp->mismatch[sj] - cm->mismatch[sj]) / (2.0 * h);
        }
      }
      if (!ok) break;
      const Eigen::Vector4d r(current->mismatch.data());
      Eigen::Vector2d step = J.colPivHouseholderQr().solve(-r);
      bool improved = false;
      for (int halving = 0; halving < 12; ++halving) {
        const Point trial{x[0] + step(0), x[1] + step(1)};
        auto ct = coarse(trial);
        ++out.evaluations;
        if (ct && ct->norm2 < current->norm2) {
          x = trial;
          current = std::move(ct);
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved || step.norm() <= settings.angle_tol) break;
    }
    return std::make_pair(x, current);
  };

  // A loose simplex stage hands over to Gauss-Newton; if that stalls away from
  // zero the simplex runs again to full tolerance.
  Simplex::Options opt;
  opt.xtol = settings.angle_tol;
  opt.ftarget = 1e-8;
  opt.max_evaluations = settings.max_iterations;
  const double step = 0.3 * (kPi / 2) / settings.grid_theta;
  auto nm = Simplex::minimize(objective, Point{0.0, 0.0}, step, opt);
  out.evaluations += nm.evaluations;
  if (nm.value >= kPenalty) {
    out.objective = nm.value;
    out.status = TuneResult::Status::BoundaryHit;
    return out;
  }
  auto [x, current] = polish(nm.best);
  const auto good = [&](const std::optional<Candidate>& c) {
    return c && c->config.residuals.mass_mismatch <= 1e-3 * settings.mass_tol;
  };
  if (!good(current)) {
    opt.ftarget = std::pow(1e-3 * settings.mass_tol, 2);
    nm = Simplex::minimize(objective, nm.best, 0.1 * step, opt);
    out.evaluations += nm.evaluations;
    std::tie(x, current) = polish(nm.best);
  }
  out.objective = current ? current->norm2 : kPenalty;

  // Final pass with the full lambda scan.
  auto final_candidate = best_at(tetra, to_unit(x), target, settings.lambda_scan_points,
                                 settings.lambda_root_tol);
  if (final_candidate && final_candidate->config.residuals.mass_mismatch <= settings.mass_tol) {
    out.status = TuneResult::Status::Converged;
    out.objective = final_candidate->norm2;
    out.solution = std::move(final_candidate->config);
    return out;
  }
  const bool touches_boundary =
      std::any_of(nm.values.begin(), nm.values.end(), [](double v) { return v >= kPenalty; });
  out.status = touches_boundary ? TuneResult::Status::BoundaryHit : TuneResult::Status::NoSolution;
  return out;
}

std::vector<CentralConfiguration> solve_all(const MassVector& masses,
                                            const SolverSettings& settings) {
  settings.validate();
  const Tetrahedron tetra = build_tetrahedron(masses);
  const int nt = settings.grid_theta;
  const int np = settings.grid_phi;
  const auto patterns = all_patterns();

  struct Sample {
    Direction dir;
    int pattern = -1;
    double value = std::numeric_limits<double>::infinity();
  };
  std::vector<Sample> grid(static_cast<std::size_t>(nt) * static_cast<std::size_t>(np));
  parallel_for(nt, worker_count(settings), [&](int i) {
    const double theta = (i + 0.5) * (kPi / 2) / nt;
    for (int j = 0; j < np; ++j) {
      Sample& s = grid[static_cast<std::size_t>(i * np + j)];
      s.dir = Direction{theta, j * 2.0 * kPi / np};
      const ConfigurationType type = [&] {
        const WeightedAreas A = weighted_areas(tetra, s.dir);
        return classify(A.A, kAreaZero * A.C);
      }();
      for (int p = 0; p < 7; ++p) {
        if (patterns[static_cast<std::size_t>(p)] == type) s.pattern = p;
      }
      if (s.pattern < 0) continue;
      const auto c = best_at(tetra, s.dir.unit(), type, settings.grid_lambda_scan_points,
                             settings.lambda_root_tol);
      if (c) s.value = c->norm2;
    }
  });

  // Seeds: grid-local minima of the mismatch inside each sign-pattern region.
  std::vector<std::vector<int>> seeds(7);
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const Sample& s = grid[static_cast<std::size_t>(i * np + j)];
      if (s.pattern < 0 || !std::isfinite(s.value)) continue;
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di == 0 && dj == 0) || i + di < 0 || i + di >= nt) continue;
          const Sample& o = grid[static_cast<std::size_t>((i + di) * np + (j + dj + np) % np)];
          if (o.pattern == s.pattern && o.value < s.value) {
            minimum = false;
            break;
          }
        }
      }
      if (minimum) seeds[static_cast<std::size_t>(s.pattern)].push_back(i * np + j);
    }
  }

  std::vector<std::pair<int, int>> jobs;  // (grid index, pattern)
  for (int p = 0; p < 7; ++p) {
    auto& list = seeds[static_cast<std::size_t>(p)];
    std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
      return grid[static_cast<std::size_t>(a)].value < grid[static_cast<std::size_t>(b)].value;
    });
    const auto keep = std::min<std::size_t>(list.size(),
                                            static_cast<std::size_t>(settings.seeds_per_region));
    for (std::size_t k = 0; k < keep; ++k) jobs.emplace_back(list[k], p);
  }

  struct Job {
    Direction start;
    int pattern;
  };
  std::vector<Job> queue;
  for (const auto& [index, p] : jobs) queue.push_back({grid[static_cast<std::size_t>(index)].dir, p});

  std::vector<CentralConfiguration> out;
  const auto merge = [&](CentralConfiguration c) {
    const auto dup = std::find_if(out.begin(), out.end(),
                                  [&](const CentralConfiguration& o) { return same_configuration(o, c); });
    if (dup == out.end()) {
      out.push_back(std::move(c));
      return true;
    }
    if (c.residuals.mass_mismatch < dup->residuals.mass_mismatch) *dup = std::move(c);
    return false;
  };

  // Solutions can sit closer together than one grid cell, so every new solution
  // seeds a ring of restarts around itself.
  const double ring = 0.6 * (kPi / 2) / nt;
  for (int round = 0; round < 4 && !queue.empty(); ++round) {
    std::vector<std::optional<CentralConfiguration>> tuned(queue.size());
    parallel_for(static_cast<int>(queue.size()), worker_count(settings), [&](int k) {
      const Job& job = queue[static_cast<std::size_t>(k)];
      TuneResult r = tune_direction(tetra, job.start, patterns[static_cast<std::size_t>(job.pattern)],
                                    settings);
      if (r.status == TuneResult::Status::Converged) tuned[static_cast<std::size_t>(k)] = r.solution;
    });
    std::vector<CentralConfiguration> fresh;
    for (auto& t : tuned) {
      if (t && merge(*t)) fresh.push_back(*t);
    }
    queue.clear();
    for (const CentralConfiguration& c : fresh) {
      int p = 0;
      while (!(patterns[static_cast<std::size_t>(p)] == c.kind)) ++p;
      const Eigen::Vector3d n = c.direction.unit();
      const auto [eu, ev] = tangent_basis(n);
      for (double radius : {0.5 * ring, ring, 2.0 * ring}) {
        for (int k = 0; k < 8; ++k) {
          const double a = k * kPi / 4;
          const Eigen::Vector3d s = n + radius * (std::cos(a) * eu + std::sin(a) * ev);
          queue.push_back({Direction::from_unit(s), p});
        }
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.kind.label() < b.kind.label();
  });
  return out;
}

KiteResult solve_kite(const MassVector& masses, const SolverSettings& settings) {
  settings.validate();
  if (std::abs(masses[2] - masses[3]) > 1e-12 * std::max(masses[2], masses[3])) {
    throw PreconditionError("kite search needs m3 == m4");
  }
  const Tetrahedron tetra = build_tetrahedron(masses);
  const auto unit_at = [](double t) { return Eigen::Vector3d(0.0, std::sin(t), std::cos(t)); };
  const auto pattern_at = [&](double t) {
    const WeightedAreas A = weighted_areas(tetra, unit_at(t));
    return classify(A.A, kAreaZero * A.C);
  };
  const auto mismatch_at = [&](double t) {
    return best_at(tetra, unit_at(t), pattern_at(t), settings.grid_lambda_scan_points,
                   settings.lambda_root_tol);
  };

  const int n = std::max(16 * settings.grid_phi, 64);
  struct Point {
    double t;
    ConfigurationType pattern;
    std::optional<Vec4> mismatch;
  };
  std::vector<Point> line(static_cast<std::size_t>(n));
  parallel_for(n, worker_count(settings), [&](int k) {
    Point& p = line[static_cast<std::size_t>(k)];
    p.t = -kPi / 2 + (k + 0.5) * kPi / n;
    p.pattern = pattern_at(p.t);
    if (p.pattern.kind != ConfigurationType::Kind::Boundary) {
      if (auto c = mismatch_at(p.t)) p.mismatch = c->mismatch;
    }
  });

  KiteResult out;
  for (const Point& p : line) {
    if (p.pattern.kind == ConfigurationType::Kind::Boundary) continue;
    if (out.sectors.empty() || !(out.sectors.back().pattern == p.pattern)) {
      out.sectors.push_back(KiteSector{p.pattern, p.t, p.t, 0});
    }
    out.sectors.back().t_end = p.t;
  }

  std::vector<double> ts;
  for (std::size_t k = 0; k + 1 < line.size(); ++k) {
    const Point& a = line[k];
    const Point& b = line[k + 1];
    if (!a.mismatch || !b.mismatch || !(a.pattern == b.pattern)) continue;
    // Either of the first two components pins the single free direction.
    for (std::size_t comp = 0; comp < 2; ++comp) {
      const double fa = (*a.mismatch)[comp];
      const double fb = (*b.mismatch)[comp];
      if (fa == 0.0) {
        ts.push_back(a.t);
        continue;
      }
      if (std::signbit(fa) == std::signbit(fb) || fb == 0.0) continue;
      try {
        std::uintmax_t iterations = 200;
        const auto g = [&](double t) {
          const auto c = mismatch_at(t);
          if (!c) throw NotPlanar("no valid root inside kite bracket");
          return c->mismatch[comp];
        };
        const auto bracket = boost::math::tools::toms748_solve(
            g, a.t, b.t, fa, fb,
            [](double lo, double hi) {
              return std::abs(hi - lo) <=
                     4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo));
            },
            iterations);
        ts.push_back(0.5 * (bracket.first + bracket.second));
      } catch (const Error&) {
      }
    }
  }

  for (double t : ts) {
    const ConfigurationType pattern = pattern_at(t);
    auto c = best_at(tetra, unit_at(t), pattern, settings.lambda_scan_points,
                     settings.lambda_root_tol);
    if (!c || c->config.residuals.mass_mismatch > settings.mass_tol) continue;
    CentralConfiguration cfg = std::move(c->config);
    cfg.direction = t >= 0.0 ? Direction{t, kPi / 2} : Direction{-t, 3 * kPi / 2};
    const bool dup = std::any_of(out.solutions.begin(), out.solutions.end(),
                                 [&](const auto& o) { return same_configuration(o, cfg); });
    if (dup) continue;
    for (KiteSector& s : out.sectors) {
      if (s.pattern == pattern && t >= s.t_begin - kPi / n && t <= s.t_end + kPi / n) ++s.solutions;
    }
    out.solutions.push_back(std::move(cfg));
  }
  std::stable_sort(out.solutions.begin(), out.solutions.end(),
                   [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  return out;
}

}  // namespace ccfour
