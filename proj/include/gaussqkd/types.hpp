#pragma once

#include <Eigen/Dense>
#include <complex>

namespace gaussqkd {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMat = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

// Default tolerances; every check taking a tol argument can override them.
inline constexpr double kSymplecticTol = 1e-9;  // symplectic / symmetry checks
inline constexpr double kPhysicalTol = 1e-8;    // physicality (gamma + iJ >= 0)

}  // namespace gaussqkd
