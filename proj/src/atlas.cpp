#include "ccfour/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <thread>

#include <Eigen/Dense>

#include "parallel.hpp"

namespace ccfour {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAreaZero = 1e-14;
constexpr double kBandWidth = 1e-3;

constexpr double kCanvas = 640.0;
constexpr double kMargin = 20.0;

const char* pattern_color(const ConfigurationType& t) {
  static const std::map<std::string, const char*> colors{
      {"concave_1", "#e41a1c"},    {"concave_2", "#377eb8"},    {"concave_3", "#4daf4a"},
      {"concave_4", "#984ea3"},    {"convex_12_34", "#ff7f00"}, {"convex_13_24", "#ffd92f"},
      {"convex_14_23", "#a65628"},
  };
  const auto it = colors.find(t.label());
  return it == colors.end() ? "#bdbdbd" : it->second;
}

const char* circle_color(int i) {
  static const char* colors[4] = {"#000000", "#444444", "#777777", "#aaaaaa"};
  return colors[i];
}

struct Canvas {
  double scale = (kCanvas / 2.0 - kMargin) / (kPi / 2.0);

  double x(double u) const { return kCanvas / 2.0 + scale * u; }
  double y(double v) const { return kCanvas / 2.0 - scale * v; }
};

}  // namespace

ConfigurationType sign_pattern(const Tetrahedron& tetra, const Direction& dir) {
  const WeightedAreas A = weighted_areas(tetra, dir);
  return classify(A.A, kAreaZero * A.C);
}

std::pair<double, double> project(const Direction& dir) {
  return {dir.theta * std::cos(dir.phi) + 0.0, dir.theta * std::sin(dir.phi) + 0.0};
}

std::array<std::vector<Direction>, 4> great_circles(const Tetrahedron& tetra, int resolution) {
  std::array<std::vector<Direction>, 4> circles;
  const int n = std::max(resolution, 3);
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector3d v = tetra.vertex(i).normalized();
    const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
    auto& out = circles[static_cast<std::size_t>(i)];
    out.reserve(static_cast<std::size_t>(n));

    if (v.head<2>().norm() <= 1e-15) {
      for (int k = 0; k < n; ++k) {
        out.push_back(Direction{kPi / 2.0, 2.0 * kPi * k / n}.canonical());
      }
      continue;
    }
    const Eigen::Vector3d e1 = v.cross(z).normalized();
    Eigen::Vector3d e2 = v.cross(e1).normalized();
    if (e2.z() < 0.0) e2 = -e2;
    for (int k = 0; k < n; ++k) {
      const double t = kPi * k / (n - 1);
      Eigen::Vector3d p = std::cos(t) * e1 + std::sin(t) * e2;
      p -= p.dot(v) * v;
      if (p.z() < 0.0) p.z() = 0.0;
      out.push_back(Direction::from_unit(p));
    }
  }
  return circles;
}

std::vector<RegionSample> sample_hemisphere(const Tetrahedron& tetra, int n_theta, int n_phi) {
  n_theta = std::max(n_theta, 2);
  n_phi = std::max(n_phi, 2);
  std::vector<RegionSample> samples(static_cast<std::size_t>(n_theta) * n_phi);
  const int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  parallel_for(n_theta, workers, [&](int i) {
    for (int j = 0; j < n_phi; ++j) {
      RegionSample& s = samples[static_cast<std::size_t>(i) * n_phi + j];
      s.direction = {i * (kPi / 2.0) / (n_theta - 1), j * 2.0 * kPi / n_phi};
      s.pattern = sign_pattern(tetra, s.direction);
      std::tie(s.u, s.v) = project(s.direction);
    }
  });
  return samples;
}

std::map<std::string, int> pattern_census(const std::vector<RegionSample>& samples) {
  std::map<std::string, int> census;
  for (const auto& s : samples) ++census[s.pattern.label()];
  return census;
}

void write_region_csv(std::ostream& out, const std::vector<RegionSample>& samples) {
  const auto old = out.precision(15);
  out << "theta,phi,u,v,pattern_label\n";
  for (const auto& s : samples) {
    out << s.direction.theta << ',' << s.direction.phi << ',' << s.u << ',' << s.v << ','
        << s.pattern.label() << '\n';
  }
  out.precision(old);
}

void write_region_svg(std::ostream& out, const Tetrahedron& tetra,
                      const std::vector<RegionSample>& samples,
                      const std::array<std::vector<Direction>, 4>& circles,
                      const std::vector<CentralConfiguration>& solutions) {
  const Canvas c;
  const auto old = out.precision(6);
  out << std::fixed;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
      << kCanvas << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double cell = 2.0;
  if (samples.size() > 1) {
    int n_phi = 1;
    while (static_cast<std::size_t>(n_phi) < samples.size() &&
           samples[static_cast<std::size_t>(n_phi)].direction.theta == samples[0].direction.theta) {
      ++n_phi;
    }
    const double dtheta = samples.back().direction.theta /
                          std::max<std::size_t>(1, samples.size() / n_phi - 1);
    cell = std::max(1.0, 0.6 * c.scale * dtheta);
  }

  out << "<g stroke=\"none\">\n";
  for (const auto& s : samples) {
    const WeightedAreas A = weighted_areas(tetra, s.direction);
    const bool band = std::any_of(A.A.begin(), A.A.end(),
                                  [&](double a) { return std::abs(a) <= kBandWidth * A.C; });
    const char* fill = band ? "#bdbdbd" : pattern_color(s.pattern);
    out << "<circle cx=\"" << c.x(s.u) << "\" cy=\"" << c.y(s.v) << "\" r=\"" << cell
        << "\" fill=\"" << fill << "\"/>\n";
  }
  out << "</g>\n";

  out << "<circle cx=\"" << c.x(0) << "\" cy=\"" << c.y(0) << "\" r=\"" << c.scale * kPi / 2.0
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i < 4; ++i) {
    const auto& circle = circles[static_cast<std::size_t>(i)];
    if (circle.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << circle_color(i)
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& d : circle) {
      const auto [u, v] = project(d);
      out << c.x(u) << ',' << c.y(v) << ' ';
    }
    out << "\"/>\n";
  }

  for (const auto& s : solutions) {
    const auto [u, v] = project(s.direction.hemisphere());
    out << "<circle cx=\"" << c.x(u) << "\" cy=\"" << c.y(v)
        << "\" r=\"4\" fill=\"black\" stroke=\"white\"><title>" << s.kind.label()
        << "</title></circle>\n";
  }
  out << "</svg>\n";
  out << std::defaultfloat;
  out.precision(old);
}

}  // namespace ccfour
