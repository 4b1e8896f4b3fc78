#pragma once

#include <cstddef>

#include "scn/activation.hpp"

// Raw-pointer kernel signatures shared by the ISA-specific translation units.
// SIMD units must not include headers with inline code shared with the rest of
// the library (they are compiled with wider -m flags).

namespace scn::kernels::scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void activate(ActivationKind kind, double* z, std::size_t n);
}  // namespace scn::kernels::scalar

namespace scn::kernels::avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void activate(ActivationKind kind, double* z, std::size_t n);
}  // namespace scn::kernels::avx2

namespace scn::kernels::neon {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void activate(ActivationKind kind, double* z, std::size_t n);
}  // namespace scn::kernels::neon
