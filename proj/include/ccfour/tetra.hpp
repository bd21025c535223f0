#pragma once

#include <array>

#include <Eigen/Core>

namespace ccfour {

using Vec4 = std::array<double, 4>;

/// Mass scale mu = cbrt(m1 m2 m3 m4 / (m1 + m2 + m3 + m4)).
/// Throws MassError naming the first non-positive or non-finite entry.
double reduced_mass(const Vec4& masses);

/// Four validated positive masses together with their total and mass scale.
class MassVector {
 public:
  explicit MassVector(const Vec4& masses);
  MassVector(double m1, double m2, double m3, double m4) : MassVector(Vec4{m1, m2, m3, m4}) {}

  double operator[](int j) const { return m_[static_cast<std::size_t>(j)]; }
  const Vec4& values() const { return m_; }
  double total() const { return total_; }
  double mu() const { return mu_; }

  bool operator==(const MassVector& other) const { return m_ == other.m_; }

 private:
  Vec4 m_;
  double total_;
  double mu_;
};

using VertexMatrix = Eigen::Matrix<double, 3, 4>;

/// Orthocentric tetrahedron whose vertices (columns of E) carry the four masses.
/// The center of mass sits at the origin and E diag(m) E^T = mu I.
struct Tetrahedron {
  MassVector masses;
  VertexMatrix E;

  Eigen::Vector3d vertex(int j) const { return E.col(j); }

  /// Signed volume det[v2-v1, v3-v1, v4-v1] / 6.
  double signed_volume() const;
};

/// Vertex coordinates fixed so that particle 1 lies on axis 3, particle 2 in the
/// plane of axes 2 and 3, and particles 3 and 4 on a line parallel to axis 1.
Tetrahedron build_tetrahedron(const MassVector& masses);

}  // namespace ccfour
