#pragma once

#include <cstddef>

namespace qpd::kernels::detail {

void exp_scalar(const double* in, double* out, std::size_t n);
void xi_iterate_scalar(const double* x, double* out, std::size_t n, double rho, int depth,
                       bool subtract_input);

#if defined(QPD_HAVE_AVX2_TU)
void exp_avx2(const double* in, double* out, std::size_t n);
void xi_iterate_avx2(const double* x, double* out, std::size_t n, double rho, int depth,
                     bool subtract_input);
#endif

}  // namespace qpd::kernels::detail
