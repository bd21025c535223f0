#pragma once

#include <optional>
#include <vector>

#include "ccfour/dziobek.hpp"
#include "ccfour/tetra.hpp"

namespace ccfour {

struct SolverSettings {
  /// Uniform scan samples over the admissible lambda interval (both sides of 0).
  int lambda_scan_points = 2000;
  /// Bracket width at which a lambda root is accepted.
  double lambda_root_tol = 1e-13;
  /// Simplex size (radians) at which the angle search stops.
  double angle_tol = 1e-12;
  /// Largest relative mass mismatch at acceptance.
  double mass_tol = 1e-10;
  /// Multistart grid, theta over [0, pi/2] and phi over [0, 2 pi).
  int grid_theta = 64;
  int grid_phi = 128;
  /// Scan samples used while evaluating the multistart grid.
  int grid_lambda_scan_points = 64;
  /// Seeds tuned per sign-pattern region.
  int seeds_per_region = 6;
  int max_iterations = 2000;
  /// Worker threads for the grid and seed phases. 0 means hardware concurrency.
  int threads = 0;

  /// Throws PreconditionError unless every field is positive (threads may be 0).
  void validate() const;
};

struct Residuals {
  /// max_j |m_hat_j - m_j| / m
  double mass_mismatch = 0.0;
  /// Cayley-Menger determinant over (max r)^6
  double cm = 0.0;
  double sigma_minus_1 = 0.0;
  bool operator==(const Residuals&) const = default;
};

struct CentralConfiguration {
  ConfigurationType kind;
  double lambda = 0.0;
  Direction direction;
  WeightedAreas areas;
  DistanceSet distances;
  MassVector recovered{1, 1, 1, 1};
  Residuals residuals;

  /// Every tabulated solution has lambda < 0; a positive value is reported, not rejected.
  bool positive_lambda() const { return lambda > 0.0; }
};

/// Planar roots of lambda -> cayley_menger(distances_from_lambda(A, lambda)),
/// excluding 1e-9 neighborhoods of 0 and of the interval endpoints. Ascending.
std::vector<double> lambda_roots(const WeightedAreas& A, const SolverSettings& settings);

/// (m_hat - m) / m with m_hat the masses recovered at this root. Empty when the
/// candidate is invalid (not realizable, not planar or mixed orientation).
std::optional<Vec4> mass_mismatch(const Tetrahedron& tetra, const Direction& dir, double lambda);

/// Assembles and scores a configuration at a planar root. Empty when invalid.
std::optional<CentralConfiguration> evaluate_candidate(const Tetrahedron& tetra,
                                                       const Eigen::Vector3d& unit, double lambda);

struct TuneResult {
  enum class Status { Converged, NoSolution, BoundaryHit };

  Status status = Status::NoSolution;
  std::optional<CentralConfiguration> solution;
  int evaluations = 0;
  /// Best squared mismatch norm reached.
  double objective = 0.0;
};

/// Derivative-free simplex search over the direction, restricted to the
/// sign-pattern region `target`, for a root whose recovered masses equal the
/// given ones. Finishes with a Gauss-Newton polish on the same root branch.
TuneResult tune_direction(const Tetrahedron& tetra, const Direction& start,
                          const ConfigurationType& target, const SolverSettings& settings);

/// Multistart census of planar central configurations over the hemisphere.
/// Sorted by lambda, then by label.
std::vector<CentralConfiguration> solve_all(const MassVector& masses,
                                            const SolverSettings& settings = {});

struct KiteSector {
  ConfigurationType pattern;
  /// Signed tilt t in (-pi/2, pi/2): direction (0, sin t, cos t).
  double t_begin = 0.0;
  double t_end = 0.0;
  int solutions = 0;
};

struct KiteResult {
  std::vector<CentralConfiguration> solutions;
  std::vector<KiteSector> sectors;
};

/// One-angle search in the symmetry plane for m3 == m4 (relative 1e-12).
/// Throws PreconditionError otherwise.
KiteResult solve_kite(const MassVector& masses, const SolverSettings& settings = {});

}  // namespace ccfour
