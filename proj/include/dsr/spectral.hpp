#ifndef DSR_SPECTRAL_HPP
#define DSR_SPECTRAL_HPP

#include <Eigen/Core>

#include "dsr/grid.hpp"

namespace dsr {

/// Unitary DFT pair. forward_modes returns amplitudes a_j such that
///   psi_i = (1/sqrt(n)) sum_j a_j exp(+i p_j x_i),
/// with p_j = grid.mode_momentum(j). Parseval holds exactly:
/// sum |a_j|^2 = sum |psi_i|^2.
Eigen::VectorXcd forward_modes(const ScalarField& field);

ScalarField inverse_modes(const Grid1D& grid, const Eigen::VectorXcd& modes);

}  // namespace dsr

#endif  // DSR_SPECTRAL_HPP
