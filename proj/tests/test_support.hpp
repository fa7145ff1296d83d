#pragma once

#include <cmath>
#include <random>

#include "doctest.h"
#include "lienard/function_model.hpp"
#include "lienard/system.hpp"

namespace lienard::test {

/// Fixed-seed generator so every run draws the same samples.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline FunctionModel polynomial(const std::string& name, std::vector<double> coeffs) {
  return FunctionModel(name, {Segment{0.0, kInf, Polynomial{std::move(coeffs)}}});
}

/// x' = y - F(x), y' = -x with a single polynomial F.
inline LienardSystem poly_system(std::vector<double> F_coeffs) {
  return LienardSystem("poly", polynomial("F", std::move(F_coeffs)), polynomial("g", {0.0, 1.0}));
}

}  // namespace lienard::test
