#include "ccfour/tetra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "ccfour/errors.hpp"

namespace ccfour {

namespace {

void check_masses(const Vec4& masses) {
  for (int j = 0; j < 4; ++j) {
    const double mj = masses[static_cast<std::size_t>(j)];
    if (!std::isfinite(mj) || mj <= 0.0) {
      throw MassError(j, "mass " + std::to_string(j + 1) + " must be positive and finite, got " +
                             std::to_string(mj));
    }
  }
}

}  // namespace

double reduced_mass(const Vec4& masses) {
  check_masses(masses);
  const double total = masses[0] + masses[1] + masses[2] + masses[3];
  return std::cbrt(masses[0] * masses[1] * masses[2] * masses[3] / total);
}

MassVector::MassVector(const Vec4& masses)
    : m_(masses), total_(0.0), mu_(reduced_mass(masses)) {
  total_ = m_[0] + m_[1] + m_[2] + m_[3];
}

double Tetrahedron::signed_volume() const {
  Eigen::Matrix3d edges;
  edges.col(0) = E.col(1) - E.col(0);
  edges.col(1) = E.col(2) - E.col(0);
  edges.col(2) = E.col(3) - E.col(0);
  return edges.determinant() / 6.0;
}

Tetrahedron build_tetrahedron(const MassVector& masses) {
  const double m1 = masses[0], m2 = masses[1], m3 = masses[2], m4 = masses[3];
  const double m = masses.total();
  const double mu = masses.mu();
  const double rest = m - m1;
  const double pair34 = m3 + m4;

  // Particles 2, 3, 4 share the same height below the center of mass.
  const double low = -std::sqrt(mu * m1 / (rest * m));
  const double side = -std::sqrt(mu * m2 / (pair34 * rest));

  VertexMatrix E;
  E.col(0) << 0.0, 0.0, std::sqrt(mu * rest / (m1 * m));
  E.col(1) << 0.0, std::sqrt(mu * pair34 / (m2 * rest)), low;
  E.col(2) << std::sqrt(mu * m4 / (m3 * pair34)), side, low;
  E.col(3) << -std::sqrt(mu * m3 / (m4 * pair34)), side, low;
  return Tetrahedron{masses, E};
}

}  // namespace ccfour
