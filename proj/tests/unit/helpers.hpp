#pragma once

#include "wbes/state_energy.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace testutil {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed = 12345) : gen(seed) {}
  double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); }

  // h in [0.1,10], |v| <= 5, |b| <= 5
  wbes::Vec4d state() { return wbes::conserved(uni(0.1, 10), uni(-5, 5), uni(-5, 5), uni(-5, 5)); }
  wbes::Vec3d metric(double range = 3.0) { return wbes::Vec3d(uni(-range, range), uni(-range, range), uni(-range, range)); }
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

template <class A, class B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// copy of a field's values, safe to iterate when the field is a temporary
template <class Field>
auto values(const Field& f) {
  return f.data();
}

}  // namespace testutil
