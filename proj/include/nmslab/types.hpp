#pragma once

#include <complex>

#include <Eigen/Dense>

namespace nmslab {

using Real = double;
using Complex = std::complex<Real>;

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using CMat4 = Eigen::Matrix4cd;
using CVec4 = Eigen::Vector4cd;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;
using CVecX = Eigen::VectorXcd;

namespace consts {
// CODATA 2018 exact values.
inline constexpr Real hbar = 1.054571817e-34;   // J s
inline constexpr Real c0 = 299792458.0;         // m/s
inline constexpr Real k_boltzmann = 1.380649e-23;  // J/K
inline constexpr Real pi = 3.141592653589793238462643383279502884;
inline constexpr Real two_pi = 2.0 * pi;
}  // namespace consts

inline constexpr Complex im_unit{0.0, 1.0};

}  // namespace nmslab
