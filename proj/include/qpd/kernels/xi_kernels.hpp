#pragma once

// Batch evaluation of the scalar map xi(x) = x exp(rho - x) and its
// iterates. These are the data-parallel inner loops of the period-3 grid
// scan. Every routine has a scalar reference implementation; wider variants
// are selected at runtime and are tested for equivalence against it.

#include <span>
#include <string_view>

namespace qpd::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b) noexcept;

/// Whether the backend was compiled in and the running CPU supports it.
bool available(Backend b) noexcept;

/// Widest available backend.
Backend best_backend() noexcept;

/// out[i] = exp(in[i]). in and out must have equal length; they may alias.
void exp_batch(std::span<const double> in, std::span<double> out, Backend b);

/// out[i] = xi^depth(x[i]) for x[i] >= 0.
void xi_iterate(std::span<const double> x, std::span<double> out, double rho, int depth, Backend b);

/// out[i] = xi^depth(x[i]) - x[i]; roots are the period-`depth` points.
void xi_cycle_residual(std::span<const double> x, std::span<double> out, double rho, int depth,
                       Backend b);

}  // namespace qpd::kernels
