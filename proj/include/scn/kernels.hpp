#pragma once

// Inner-loop kernels with a scalar reference implementation and SIMD variants
// picked at runtime from the host CPU. Every variant computes the same
// quantity; results may differ from the scalar path by floating-point
// reassociation only.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "scn/activation.hpp"

namespace scn::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Best ISA supported by both the build and the running CPU.
Isa detect_isa();

/// ISA currently used by the dispatching entry points below. Defaults to
/// detect_isa(), or to scalar when SCN_ISA=scalar is set in the environment.
Isa active_isa();

/// Overrides the dispatch target. Throws std::invalid_argument when the
/// requested ISA is unavailable on this build/CPU.
void set_active_isa(Isa isa);

/// ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

double dot(std::span<const double> x, std::span<const double> y);

/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

/// z[i] = g(z[i]) in place.
void activate_inplace(ActivationKind kind, std::span<double> z);

/// Explicit-ISA entry points, used by the equivalence tests.
double dot(Isa isa, std::span<const double> x, std::span<const double> y);
void axpy(Isa isa, double a, std::span<const double> x, std::span<double> y);
void activate_inplace(Isa isa, ActivationKind kind, std::span<double> z);

}  // namespace scn::kernels
