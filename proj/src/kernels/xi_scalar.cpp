#include "xi_kernels_impl.hpp"

#include <cmath>

namespace qpd::kernels::detail {

void exp_scalar(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(in[i]);
}

void xi_iterate_scalar(const double* x, double* out, std::size_t n, double rho, int depth,
                       bool subtract_input) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x0 = x[i];
    double v = x0;
    for (int k = 0; k < depth; ++k) v = v * std::exp(rho - v);
    out[i] = subtract_input ? v - x0 : v;
  }
}

}  // namespace qpd::kernels::detail
