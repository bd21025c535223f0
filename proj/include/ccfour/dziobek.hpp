#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

#include "ccfour/tetra.hpp"

namespace ccfour {

/// Spherical coordinates of the unit normal that is rotated onto axis 3.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector3d unit() const;

  /// theta in [0, pi], phi in [0, 2 pi).
  Direction canonical() const;

  /// Same line through the origin, with cos(theta) >= 0.
  Direction hemisphere() const;

  /// Antipodal direction (pi - theta, phi + pi), canonicalized.
  Direction antipode() const;

  static Direction from_unit(const Eigen::Vector3d& n);
};

/// Weighted directed areas A_j = S_j / m_j, scaled by C = sqrt((m - m1) / mu).
struct WeightedAreas {
  Vec4 A{};
  double C = 1.0;

  double operator[](int j) const { return A[static_cast<std::size_t>(j)]; }
};

WeightedAreas weighted_areas(const Tetrahedron& tetra, const Direction& dir);
WeightedAreas weighted_areas(const Tetrahedron& tetra, const Eigen::Vector3d& unit);

/// Unordered particle pairs in storage order r12, r13, r14, r23, r24, r34 (0-based).
inline constexpr std::array<std::pair<int, int>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Storage slot of the unordered pair {i, j}, i != j, both 0-based.
int pair_index(int i, int j);

/// "r12" ... "r34" for slot k.
std::string pair_key(int k);

/// Inverse of pair_key; accepts either order ("r31" is slot of {1,3}). Returns -1 on failure.
int pair_index_from_key(std::string_view key);

/// Six positive mutual distances.
class DistanceSet {
 public:
  DistanceSet() = default;
  explicit DistanceSet(const std::array<double, 6>& r);

  double operator()(int i, int j) const { return r_[static_cast<std::size_t>(pair_index(i, j))]; }
  double at(int k) const { return r_[static_cast<std::size_t>(k)]; }
  const std::array<double, 6>& values() const { return r_; }
  double max() const;

  DistanceSet scaled(double s) const;

 private:
  std::array<double, 6> r_{1, 1, 1, 1, 1, 1};
};

/// Open interval (lo, hi) containing 0 on which every 1 + lambda A_j A_k > 0.
/// An unconstrained side is +/- infinity.
struct LambdaInterval {
  double lo;
  double hi;

  bool contains(double lambda) const { return lambda > lo && lambda < hi; }
};

/// Throws DegenerateDirection when some |A_j| <= 1e-14 C.
LambdaInterval admissible_lambda_interval(const WeightedAreas& A);

/// r_jk = (1 + lambda A_j A_k)^(-1/3). Throws LambdaDomainError naming the first
/// pair whose base is not positive.
DistanceSet distances_from_lambda(const WeightedAreas& A, double lambda);

/// Bordered 5x5 Cayley-Menger determinant, equal to 288 V^2.
double cayley_menger(const DistanceSet& d);

/// Cayley-Menger determinant divided by (max r)^6, so that it is scale free.
double cayley_menger_normalized(const DistanceSet& d);

using Point2 = Eigen::Vector2d;

struct PlanarConfig {
  std::array<Point2, 4> points;
  Vec4 S{};
};

/// Twice the signed triangle areas with the column orders
/// S1:(2,3,4)  S2:(1,4,3)  S3:(1,2,4)  S4:(1,3,2).
Vec4 directed_areas(const std::array<Point2, 4>& p);
inline Vec4 directed_areas(const PlanarConfig& p) { return directed_areas(p.points); }

/// Realizes a coplanar distance set. Particle 1 at the origin, particle 2 on +x,
/// particle 3 with y >= 0. Throws NotRealizable or NotPlanar.
PlanarConfig embed_planar(const DistanceSet& d);

/// Masses proportional to S_j / A_j, rescaled to sum to `total`.
/// Throws InconsistentOrientation when the ratios do not share a sign.
MassVector recovered_masses(const Vec4& S, const WeightedAreas& A, double total);

/// (sum m_j m_k / r_jk) / (sum m_j m_k r_jk^2).
double sigma(const MassVector& masses, const DistanceSet& d);

/// Concave (one sign differs), convex (2-2 split) or boundary (some zero entry).
struct ConfigurationType {
  enum class Kind { Concave, Convex, Boundary };

  Kind kind = Kind::Boundary;
  /// 0-based interior particle, concave only.
  int interior = -1;
  /// Diagonal pairs, convex only; first pair contains particle 0.
  std::array<std::pair<int, int>, 2> diagonals{{{-1, -1}, {-1, -1}}};

  static ConfigurationType concave(int interior);
  static ConfigurationType convex(int partner_of_first);
  static ConfigurationType boundary() { return {}; }

  /// "concave_1", "convex_14_23", "boundary".
  std::string label() const;
  static ConfigurationType from_label(std::string_view label);

  bool operator==(const ConfigurationType& other) const;
};

/// Classifies by signs. Entries with |x| <= zero_tol count as zero.
ConfigurationType classify(const Vec4& values, double zero_tol = 0.0);

/// The seven non-boundary patterns: concave_1..4 then the three convex ones.
const std::array<ConfigurationType, 7>& all_patterns();

}  // namespace ccfour
