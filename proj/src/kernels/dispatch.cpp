#include "qpd/kernels/xi_kernels.hpp"

#include "qpd/error.hpp"
#include "xi_kernels_impl.hpp"

namespace qpd::kernels {

namespace {

void check_sizes(std::size_t in, std::size_t out) {
  if (in != out) throw Error(ErrorCode::DimensionMismatch, "kernel input and output lengths differ");
}

void require(Backend b) {
  if (!available(b))
    throw Error(ErrorCode::InvalidArgument,
                std::string("kernel backend ") + std::string(to_string(b)) + " is not available");
}

}  // namespace

std::string_view to_string(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool available(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(QPD_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Backend best_backend() noexcept { return available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar; }

void exp_batch(std::span<const double> in, std::span<double> out, Backend b) {
  check_sizes(in.size(), out.size());
  require(b);
#if defined(QPD_HAVE_AVX2_TU)
  if (b == Backend::Avx2) return detail::exp_avx2(in.data(), out.data(), in.size());
#endif
  detail::exp_scalar(in.data(), out.data(), in.size());
}

namespace {

void iterate(std::span<const double> x, std::span<double> out, double rho, int depth, Backend b,
             bool subtract) {
  check_sizes(x.size(), out.size());
  require(b);
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "negative iteration depth");
#if defined(QPD_HAVE_AVX2_TU)
  if (b == Backend::Avx2) return detail::xi_iterate_avx2(x.data(), out.data(), x.size(), rho, depth, subtract);
#endif
  detail::xi_iterate_scalar(x.data(), out.data(), x.size(), rho, depth, subtract);
}

}  // namespace

void xi_iterate(std::span<const double> x, std::span<double> out, double rho, int depth, Backend b) {
  iterate(x, out, rho, depth, b, false);
}

void xi_cycle_residual(std::span<const double> x, std::span<double> out, double rho, int depth,
                       Backend b) {
  iterate(x, out, rho, depth, b, true);
}

}  // namespace qpd::kernels
