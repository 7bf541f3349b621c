#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace wbes {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

using Vec3d = Vec3<double>;
using Vec4d = Vec4<double>;
using Mat3d = Mat3<double>;
using Mat4d = Mat4<double>;

/// Depths at or below this value are treated as a positivity violation.
inline constexpr double kDepthFloor = 1e-13;

// Error hierarchy. Every solver failure derives from wbes::Error so callers can
// map categories onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PositivityError : public Error {
 public:
  explicit PositivityError(const std::string& what, int i = -1, int j = -1, double h = 0.0)
      : Error(what), i_(i), j_(j), h_(h) {}
  int i() const { return i_; }
  int j() const { return j_; }
  double depth() const { return h_; }

 private:
  int i_, j_;
  double h_;
};

class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

class MeshTanglingError : public Error {
 public:
  explicit MeshTanglingError(const std::string& what, int i = -1, int j = -1, double jac = 0.0)
      : Error(what), i_(i), j_(j), jac_(jac) {}
  int i() const { return i_; }
  int j() const { return j_; }
  double jacobian() const { return jac_; }

 private:
  int i_, j_;
  double jac_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace wbes
