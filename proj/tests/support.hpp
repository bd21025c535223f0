#pragma once

#include <cmath>
#include <random>

#include "ccfour/tetra.hpp"

namespace ccfour::test {

inline Vec4 random_masses(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(0.1), std::log(100.0));
  return {std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))};
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace ccfour::test
