#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccfour/dziobek.hpp"
#include "ccfour/errors.hpp"
#include "ccfour/solver.hpp"
#include "oracle_values.hpp"

using namespace ccfour;

namespace {

constexpr double kPi = std::numbers::pi;

bool same(const oracle::Solution& o, const CentralConfiguration& c, double tol = 1e-9) {
  if (o.kind != c.kind.label() || std::abs(o.lambda - c.lambda) > tol) return false;
  for (int k = 0; k < 6; ++k) {
    if (std::abs(o.r[static_cast<std::size_t>(k)] - c.distances.at(k)) > tol) return false;
  }
  return true;
}

template <std::size_t N>
void check_against(const std::array<oracle::Solution, N>& expected,
                   const std::vector<CentralConfiguration>& got) {
  CHECK(got.size() == N);
  for (const auto& o : expected) {
    const bool found = std::any_of(got.begin(), got.end(), [&](const auto& c) { return same(o, c); });
    INFO("missing ", o.kind, " lambda ", o.lambda);
    CHECK(found);
  }
}

void check_residuals(const std::vector<CentralConfiguration>& sols) {
  for (const auto& c : sols) {
    CHECK(c.residuals.mass_mismatch <= 1e-8);
    CHECK(std::abs(c.residuals.cm) <= 1e-10);
    CHECK(std::abs(c.residuals.sigma_minus_1) <= 1e-9);
    CHECK(c.lambda < 0.0);
    CHECK(c.direction.theta <= kPi / 2);
    const PlanarConfig p = embed_planar(c.distances);
    CHECK(std::abs(p.S[0] + p.S[1] + p.S[2] + p.S[3]) <= 1e-10 * std::abs(p.S[0]) * 4);
    CHECK(classify(p.S) == c.kind);
  }
}

const double kSquare = (1.0 - 2.0 * std::numbers::sqrt2) / (1.0 + 2.0 * std::numbers::sqrt2);

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("settings validation") {
  SolverSettings s;
  CHECK_NOTHROW(s.validate());
  s.grid_theta = 0;
  CHECK_THROWS_AS(s.validate(), PreconditionError);
  s = {};
  s.mass_tol = -1;
  CHECK_THROWS_AS(s.validate(), PreconditionError);
}

TEST_CASE("lambda roots at a tabulated direction") {
  const Tetrahedron t = build_tetrahedron(MassVector(10, 13, 15, 17));
  const auto roots = lambda_roots(weighted_areas(t, Direction{0.139240050165164, 4.8453912490189}), {});
  CHECK(std::is_sorted(roots.begin(), roots.end()));
  CHECK(std::any_of(roots.begin(), roots.end(), [](double r) { return std::abs(r + 2.32656490060845) <= 1e-9; }));
  for (double r : roots) CHECK(std::abs(r) > 1e-9);
}

TEST_CASE("lambda roots for square symmetric areas") {
  WeightedAreas A;
  A.A = {1, -1, 1, -1};
  const auto roots = lambda_roots(A, {});
  CHECK(std::any_of(roots.begin(), roots.end(), [](double r) { return std::abs(r - kSquare) <= 1e-12; }));
  CHECK(cayley_menger(distances_from_lambda(A, 0.0)) == doctest::Approx(4.0));
}

TEST_CASE("mismatch vanishes at the reference solutions") {
  const Tetrahedron t = build_tetrahedron(MassVector(10, 13, 15, 17));
  for (const auto& o : oracle::general) {
    const auto mm = mass_mismatch(t, Direction{o.theta, o.phi}, o.lambda);
    REQUIRE(mm.has_value());
    for (double v : *mm) CHECK(std::abs(v) <= 1e-8);
  }
}

TEST_CASE("mismatch is smooth in theta") {
  const Tetrahedron t = build_tetrahedron(MassVector(10, 13, 15, 17));
  const oracle::Solution& o = oracle::general[1];
  const Direction d{o.theta + 1e-3, o.phi};
  const auto root_near = [&](const Direction& dir) {
    const auto roots = lambda_roots(weighted_areas(t, dir), {});
    return *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
      return std::abs(a - o.lambda) < std::abs(b - o.lambda);
    });
  };
  const auto component = [&](double dtheta) {
    const Direction e{d.theta + dtheta, d.phi};
    return (*mass_mismatch(t, e, root_near(e)))[0];
  };
  const auto base = mass_mismatch(t, d, root_near(d));
  REQUIRE(base.has_value());
  CHECK(std::abs((*base)[0]) > 1e-6);
  const double h = 1e-4;
  const double slope = (component(h) - component(-h)) / (2 * h);
  const double half = (component(h / 2) - component(-h / 2)) / h;
  CHECK(std::abs(slope - half) <= 0.01 * std::abs(half));
}

TEST_CASE("mismatch components obey two linear constraints") {
  const Tetrahedron t = build_tetrahedron(MassVector(10, 13, 15, 17));
  const Direction d{0.2, 4.7};
  const WeightedAreas A = weighted_areas(t, d);
  for (double r : lambda_roots(A, {})) {
    const auto mm = mass_mismatch(t, d, r);
    if (!mm) continue;
    double sum = 0, weighted = 0;
    for (int j = 0; j < 4; ++j) {
      sum += (*mm)[static_cast<std::size_t>(j)];
      weighted += A[j] * (*mm)[static_cast<std::size_t>(j)];
    }
    CHECK(std::abs(sum) <= 1e-12);
    CHECK(std::abs(weighted) <= 1e-12);
  }
}

TEST_CASE("tuning from tabulated starts") {
  const Tetrahedron t = build_tetrahedron(MassVector(10, 13, 15, 17));
  const TuneResult a = tune_direction(t, Direction{0.14, 4.85}, ConfigurationType::concave(0), {});
  REQUIRE(a.status == TuneResult::Status::Converged);
  CHECK(same(oracle::general[1], *a.solution));
  CHECK(a.solution->direction.theta == doctest::Approx(0.139240050165164).epsilon(1e-6));
  CHECK(a.solution->direction.phi == doctest::Approx(4.8453912490189).epsilon(1e-6));

  const TuneResult b = tune_direction(t, Direction{0.86, 1.64}, ConfigurationType::convex(1), {});
  REQUIRE(b.status == TuneResult::Status::Converged);
  CHECK(same(oracle::general[10], *b.solution));
}

TEST_CASE("equal masses converge to the square in a convex region") {
  const Tetrahedron t = build_tetrahedron(MassVector(1, 1, 1, 1));
  const TuneResult r = tune_direction(t, Direction{0.9, 1.4}, ConfigurationType::convex(1), {});
  REQUIRE(r.status == TuneResult::Status::Converged);
  const CentralConfiguration& c = *r.solution;
  for (int j = 0; j < 4; ++j) CHECK(std::abs(c.lambda * c.areas[j] * c.areas[j] - kSquare) <= 1e-10);
  const double side = std::pow(1.0 - kSquare, -1.0 / 3.0);
  CHECK(c.distances(0, 2) == doctest::Approx(side).epsilon(1e-10));
  CHECK(c.distances(0, 1) == doctest::Approx(side * std::numbers::sqrt2).epsilon(1e-10));
}

TEST_CASE("tuning outside any region reports a boundary hit") {
  const Tetrahedron t = build_tetrahedron(MassVector(10, 13, 15, 17));
  const TuneResult r = tune_direction(t, Direction{kPi / 2, 1.0}, ConfigurationType::concave(0), {});
  CHECK(r.status != TuneResult::Status::Converged);
  CHECK_FALSE(r.solution.has_value());
}

TEST_CASE("census for general masses") {
  const auto sols = solve_all(MassVector(10, 13, 15, 17));
  check_against(oracle::general, sols);
  check_residuals(sols);
  CHECK(std::is_sorted(sols.begin(), sols.end(),
                       [](const auto& a, const auto& b) { return a.lambda < b.lambda; }));
}

TEST_CASE("census for equal masses") {
  const auto sols = solve_all(MassVector(1, 1, 1, 1));
  check_against(oracle::equal, sols);
  check_residuals(sols);
  const auto squares = std::count_if(sols.begin(), sols.end(), [](const auto& c) {
    return c.kind.kind == ConfigurationType::Kind::Convex;
  });
  CHECK(squares == 3);
}

TEST_CASE("census for two equal masses") {
  const auto sols = solve_all(MassVector(10, 8, 9, 9));
  check_against(oracle::relabeled, sols);
  check_residuals(sols);
  const auto lit = solve_all(MassVector(8, 10, 9, 9));
  check_against(oracle::literal, lit);
}

TEST_CASE("identical inputs give identical outputs") {
  SolverSettings one;
  one.threads = 1;
  const auto a = solve_all(MassVector(3, 5, 7, 11));
  const auto b = solve_all(MassVector(3, 5, 7, 11));
  const auto c = solve_all(MassVector(3, 5, 7, 11), one);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lambda == b[i].lambda);
    CHECK(a[i].direction.theta == b[i].direction.theta);
    CHECK(a[i].direction.phi == b[i].direction.phi);
    CHECK(a[i].distances.values() == b[i].distances.values());
    CHECK(a[i].lambda == c[i].lambda);
    CHECK(a[i].distances.values() == c[i].distances.values());
  }
}

TEST_CASE("label-free invariant under permutations") {
  const Vec4 m{10, 13, 15, 17};
  const auto base = solve_all(MassVector(m));
  const double total = 55.0;
  for (const std::array<int, 4>& p : {std::array<int, 4>{1, 0, 2, 3}, std::array<int, 4>{3, 2, 1, 0}}) {
    const Vec4 q{m[static_cast<std::size_t>(p[0])], m[static_cast<std::size_t>(p[1])],
                 m[static_cast<std::size_t>(p[2])], m[static_cast<std::size_t>(p[3])]};
    const auto perm = solve_all(MassVector(q));
    REQUIRE(perm.size() == base.size());
    std::vector<double> x, y;
    for (const auto& c : base) x.push_back(c.lambda * (total - m[0]));
    for (const auto& c : perm) y.push_back(c.lambda * (total - q[0]));
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x[i] - y[i]) <= 1e-7 * (total - m[0]));
  }
}

TEST_CASE("kite search") {
  const KiteResult k = solve_kite(MassVector(8, 10, 9, 9));
  check_against(oracle::literal_kite, k.solutions);
  check_residuals(k.solutions);
  for (const auto& c : k.solutions) {
    CHECK(std::abs(c.distances(0, 2) - c.distances(0, 3)) <= 1e-12);
    CHECK(std::abs(c.distances(1, 2) - c.distances(1, 3)) <= 1e-12);
  }
  REQUIRE(k.sectors.size() == 3);
  int concave = 0, convex = 0;
  for (const auto& s : k.sectors) {
    (s.pattern.kind == ConfigurationType::Kind::Concave ? concave : convex) += 1;
    CHECK(s.t_begin < s.t_end);
    if (s.pattern == ConfigurationType::concave(0)) CHECK(s.solutions == 0);
  }
  CHECK(concave == 2);
  CHECK(convex == 1);
}

TEST_CASE("kite solutions are rediscovered by the full census") {
  for (const Vec4& m : {Vec4{8, 10, 9, 9}, Vec4{10, 8, 9, 9}}) {
    const auto kite = solve_kite(MassVector(m)).solutions;
    const auto all = solve_all(MassVector(m));
    for (const auto& c : kite) {
      CHECK(std::any_of(all.begin(), all.end(), [&](const auto& s) { return std::abs(s.lambda - c.lambda) <= 1e-7; }));
    }
  }
}

TEST_CASE("kite precondition") {
  CHECK_THROWS_AS(solve_kite(MassVector(1, 2, 3, 4)), PreconditionError);
}

}
