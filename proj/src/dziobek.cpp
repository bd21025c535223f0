#include "ccfour/dziobek.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "ccfour/errors.hpp"

namespace ccfour {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative threshold below which a weighted area is treated as zero.
constexpr double kAreaZero = 1e-14;
constexpr double kPlanarTol = 1e-10;
constexpr double kEmbedTol = 1e-9;

double wrap_phi(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return phi;
}

double det3(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
}

}  // namespace

Eigen::Vector3d Direction::unit() const {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

Direction Direction::canonical() const {
  double t = std::remainder(theta, kTwoPi);
  double p = phi;
  if (t < 0.0) {
    t = -t;
    p += kPi;
  }
  return {t, wrap_phi(p)};
}

Direction Direction::antipode() const {
  const Direction c = canonical();
  return Direction{kPi - c.theta, c.phi + kPi}.canonical();
}

Direction Direction::hemisphere() const {
  const Direction c = canonical();
  return c.theta > kPi / 2 ? c.antipode() : c;
}

Direction Direction::from_unit(const Eigen::Vector3d& n) {
  const Eigen::Vector3d u = n.normalized();
  const double rho = std::hypot(u.x(), u.y());
  return Direction{std::atan2(rho, u.z()), std::atan2(u.y(), u.x())}.canonical();
}

WeightedAreas weighted_areas(const Tetrahedron& tetra, const Eigen::Vector3d& unit) {
  const MassVector& m = tetra.masses;
  WeightedAreas out;
  out.C = std::sqrt((m.total() - m[0]) / m.mu());
  const Eigen::Vector4d a = out.C * (tetra.E.transpose() * unit);
  for (int j = 0; j < 4; ++j) out.A[static_cast<std::size_t>(j)] = a(j);
  return out;
}

WeightedAreas weighted_areas(const Tetrahedron& tetra, const Direction& dir) {
  return weighted_areas(tetra, dir.unit());
}

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  // r12 r13 r14 r23 r24 r34
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  if (i < 0 || j > 3 || i == j) throw PreconditionError("invalid particle pair");
  return table[i][j];
}

std::string pair_key(int k) {
  const auto [i, j] = kPairs.at(static_cast<std::size_t>(k));
  return "r" + std::to_string(i + 1) + std::to_string(j + 1);
}

int pair_index_from_key(std::string_view key) {
  if (key.size() != 3 || key[0] != 'r') return -1;
  const int i = key[1] - '1';
  const int j = key[2] - '1';
  if (i < 0 || i > 3 || j < 0 || j > 3 || i == j) return -1;
  return pair_index(i, j);
}

DistanceSet::DistanceSet(const std::array<double, 6>& r) : r_(r) {
  for (int k = 0; k < 6; ++k) {
    const double v = r_[static_cast<std::size_t>(k)];
    if (!std::isfinite(v) || v <= 0.0) {
      throw PreconditionError("distance " + pair_key(k) + " must be positive and finite");
    }
  }
}

double DistanceSet::max() const { return *std::max_element(r_.begin(), r_.end()); }

DistanceSet DistanceSet::scaled(double s) const {
  std::array<double, 6> r = r_;
  for (double& v : r) v *= s;
  return DistanceSet(r);
}

LambdaInterval admissible_lambda_interval(const WeightedAreas& A) {
  for (int j = 0; j < 4; ++j) {
    if (std::abs(A[j]) <= kAreaZero * A.C) {
      throw DegenerateDirection("weighted area A" + std::to_string(j + 1) +
                                " vanishes: three particles are collinear");
    }
  }
  LambdaInterval out{-std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
  for (const auto& [i, j] : kPairs) {
    const double p = A[i] * A[j];
    if (p > 0.0) {
      out.lo = std::max(out.lo, -1.0 / p);
    } else {
      out.hi = std::min(out.hi, -1.0 / p);
    }
  }
  return out;
}

DistanceSet distances_from_lambda(const WeightedAreas& A, double lambda) {
  std::array<double, 6> r{};
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[static_cast<std::size_t>(k)];
    const double base = 1.0 + lambda * A[i] * A[j];
    if (!(base > 0.0)) {
      throw LambdaDomainError(i, j, "lambda = " + std::to_string(lambda) +
                                        " leaves the admissible interval at pair " +
                                        pair_key(k));
    }
    r[static_cast<std::size_t>(k)] = 1.0 / std::cbrt(base);
  }
  return DistanceSet(r);
}

double cayley_menger(const DistanceSet& d) {
  Eigen::Matrix<double, 5, 5> M = Eigen::Matrix<double, 5, 5>::Zero();
  for (int i = 1; i < 5; ++i) {
    M(0, i) = 1.0;
    M(i, 0) = 1.0;
  }
  for (const auto& [i, j] : kPairs) {
    const double r = d(i, j);
    M(i + 1, j + 1) = M(j + 1, i + 1) = r * r;
  }
  return M.determinant();
}

double cayley_menger_normalized(const DistanceSet& d) {
  const double s = d.max();
  const double s2 = s * s;
  return cayley_menger(d) / (s2 * s2 * s2);
}

Vec4 directed_areas(const std::array<Point2, 4>& p) {
  return {det3(p[1], p[2], p[3]), det3(p[0], p[3], p[2]), det3(p[0], p[1], p[3]),
          det3(p[0], p[2], p[1])};
}

PlanarConfig embed_planar(const DistanceSet& d) {
  const double scale = d.max();
  const double slack = 1e-12 * scale;
  const auto check_triangle = [&](int a, int b, int c) {
    const double ab = d(a, b), ac = d(a, c), bc = d(b, c);
    if (ab > ac + bc + slack || ac > ab + bc + slack || bc > ab + ac + slack) {
      throw NotRealizable("triangle inequality fails for particles " + std::to_string(a + 1) +
                          ", " + std::to_string(b + 1) + ", " + std::to_string(c + 1));
    }
  };
  check_triangle(0, 1, 2);
  check_triangle(0, 1, 3);

  const double cm = cayley_menger_normalized(d);
  if (std::abs(cm) > kPlanarTol) {
    throw NotPlanar("Cayley-Menger determinant " + std::to_string(cm) + " is not zero");
  }

  const double r12 = d(0, 1);
  const auto place = [&](double from1, double from2) {
    const double x = (from1 * from1 - from2 * from2 + r12 * r12) / (2.0 * r12);
    const double y2 = from1 * from1 - x * x;
    return Point2{x, std::sqrt(std::max(y2, 0.0))};
  };

  PlanarConfig out;
  out.points[0] = Point2{0.0, 0.0};
  out.points[1] = Point2{r12, 0.0};
  out.points[2] = place(d(0, 2), d(1, 2));
  const Point2 up = place(d(0, 3), d(1, 3));
  const Point2 down{up.x(), -up.y()};
  const double miss_up = std::abs((up - out.points[2]).norm() - d(2, 3));
  const double miss_down = std::abs((down - out.points[2]).norm() - d(2, 3));
  out.points[3] = miss_up <= miss_down ? up : down;

  double worst = 0.0;
  for (const auto& [i, j] : kPairs) {
    worst = std::max(worst, std::abs((out.points[i] - out.points[j]).norm() - d(i, j)));
  }
  if (worst > kEmbedTol * scale) {
    throw NotPlanar("embedding misses a distance by " + std::to_string(worst));
  }
  out.S = directed_areas(out.points);
  return out;
}

MassVector recovered_masses(const Vec4& S, const WeightedAreas& A, double total) {
  Vec4 q{};
  for (int j = 0; j < 4; ++j) {
    if (A[j] == 0.0) {
      throw DegenerateDirection("weighted area A" + std::to_string(j + 1) + " is zero");
    }
    q[static_cast<std::size_t>(j)] = S[static_cast<std::size_t>(j)] / A[j];
  }
  const bool positive = std::all_of(q.begin(), q.end(), [](double v) { return v > 0.0; });
  const bool negative = std::all_of(q.begin(), q.end(), [](double v) { return v < 0.0; });
  if (!positive && !negative) {
    throw InconsistentOrientation("ratios S_j / A_j have mixed signs");
  }
  const double sum = q[0] + q[1] + q[2] + q[3];
  for (double& v : q) v *= total / sum;
  return MassVector(q);
}

double sigma(const MassVector& masses, const DistanceSet& d) {
  double num = 0.0, den = 0.0;
  for (const auto& [i, j] : kPairs) {
    const double w = masses[i] * masses[j];
    const double r = d(i, j);
    num += w / r;
    den += w * r * r;
  }
  return num / den;
}

ConfigurationType ConfigurationType::concave(int interior) {
  ConfigurationType t;
  t.kind = Kind::Concave;
  t.interior = interior;
  return t;
}

ConfigurationType ConfigurationType::convex(int partner_of_first) {
  ConfigurationType t;
  t.kind = Kind::Convex;
  std::array<int, 2> rest{};
  int n = 0;
  for (int j = 1; j < 4; ++j) {
    if (j != partner_of_first) rest[static_cast<std::size_t>(n++)] = j;
  }
  t.diagonals = {{{0, partner_of_first}, {rest[0], rest[1]}}};
  return t;
}

std::string ConfigurationType::label() const {
  switch (kind) {
    case Kind::Concave:
      return "concave_" + std::to_string(interior + 1);
    case Kind::Convex:
      return "convex_" + std::to_string(diagonals[0].first + 1) +
             std::to_string(diagonals[0].second + 1) + "_" +
             std::to_string(diagonals[1].first + 1) + std::to_string(diagonals[1].second + 1);
    case Kind::Boundary:
      break;
  }
  return "boundary";
}

ConfigurationType ConfigurationType::from_label(std::string_view label) {
  for (const ConfigurationType& t : all_patterns()) {
    if (t.label() == label) return t;
  }
  if (label == "boundary") return boundary();
  throw PreconditionError("unknown configuration label '" + std::string(label) + "'");
}

bool ConfigurationType::operator==(const ConfigurationType& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Concave:
      return interior == other.interior;
    case Kind::Convex:
      return diagonals[0].second == other.diagonals[0].second;
    case Kind::Boundary:
      break;
  }
  return true;
}

ConfigurationType classify(const Vec4& values, double zero_tol) {
  int positives = 0;
  for (double v : values) {
    if (!(std::abs(v) > zero_tol)) return ConfigurationType::boundary();
    if (v > 0.0) ++positives;
  }
  const bool first_positive = values[0] > 0.0;
  if (positives == 1 || positives == 3) {
    const bool odd_is_positive = positives == 1;
    for (int j = 0; j < 4; ++j) {
      if ((values[static_cast<std::size_t>(j)] > 0.0) == odd_is_positive) {
        return ConfigurationType::concave(j);
      }
    }
  }
  if (positives == 2) {
    for (int j = 1; j < 4; ++j) {
      if ((values[static_cast<std::size_t>(j)] > 0.0) == first_positive) {
        return ConfigurationType::convex(j);
      }
    }
  }
  return ConfigurationType::boundary();
}

const std::array<ConfigurationType, 7>& all_patterns() {
  static const std::array<ConfigurationType, 7> patterns{
      ConfigurationType::concave(0), ConfigurationType::concave(1),
      ConfigurationType::concave(2), ConfigurationType::concave(3),
      ConfigurationType::convex(1),  ConfigurationType::convex(2),
      ConfigurationType::convex(3)};
  return patterns;
}

}  // namespace ccfour
