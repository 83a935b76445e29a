#include "dsr/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

namespace dsr {

Eigen::VectorXcd forward_modes(const ScalarField& field) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out;
  fft.fwd(out, field.values);
  out /= std::sqrt(static_cast<double>(field.grid.size()));
  return out;
}

ScalarField inverse_modes(const Grid1D& grid, const Eigen::VectorXcd& modes) {
  if (modes.size() != grid.size()) {
    throw std::invalid_argument("inverse_modes: mode count does not match grid");
  }
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out;
  fft.inv(out, modes);
  out *= std::sqrt(static_cast<double>(grid.size()));
  return {grid, std::move(out)};
}

}  // namespace dsr
