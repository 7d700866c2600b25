#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace inls {

using Real = double;
using Complex = std::complex<double>;

using ArrayXr = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;

inline constexpr Real pi = std::numbers::pi_v<Real>;

// Exact variational constants of the ground state Q(x) = (1 + |x|/2)^{-1}:
// kinetic = potential = 8*pi/3, energy = 2*pi/3, sharp embedding constant 3/(8*pi).
inline constexpr Real kinetic_Q = 8.0 * pi / 3.0;
inline constexpr Real potential_Q = 8.0 * pi / 3.0;
inline constexpr Real energy_Q = 2.0 * pi / 3.0;
inline constexpr Real sharp_C1 = 3.0 / (8.0 * pi);

}  // namespace inls
