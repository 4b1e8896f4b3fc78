#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_internal.hpp"
#include "scn/kernels.hpp"

namespace scn::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return cpu_has_avx2();
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa initial_isa() {
  if (const char* env = std::getenv("SCN_ISA"); env != nullptr && std::string(env) == "scalar") {
    return Isa::Scalar;
  }
  return detect_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operands differ in length");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

Isa detect_isa() {
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("ISA not available: " + std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (isa_available(Isa::Avx2)) out.push_back(Isa::Avx2);
  if (isa_available(Isa::Neon)) out.push_back(Isa::Neon);
  return out;
}

double dot(Isa isa, std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size());
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::dot(x.data(), y.data(), x.size());
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::dot(x.data(), y.data(), x.size());
#endif
    default: return scalar::dot(x.data(), y.data(), x.size());
  }
}

void axpy(Isa isa, double a, std::span<const double> x, std::span<double> y) {
  check_lengths(x.size(), y.size());
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: avx2::axpy(a, x.data(), y.data(), x.size()); return;
#endif
#if defined(__aarch64__)
    case Isa::Neon: neon::axpy(a, x.data(), y.data(), x.size()); return;
#endif
    default: scalar::axpy(a, x.data(), y.data(), x.size()); return;
  }
}

void activate_inplace(Isa isa, ActivationKind kind, std::span<double> z) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: avx2::activate(kind, z.data(), z.size()); return;
#endif
#if defined(__aarch64__)
    case Isa::Neon: neon::activate(kind, z.data(), z.size()); return;
#endif
    default: scalar::activate(kind, z.data(), z.size()); return;
  }
}

double dot(std::span<const double> x, std::span<const double> y) { return dot(active_isa(), x, y); }

void axpy(double a, std::span<const double> x, std::span<double> y) { axpy(active_isa(), a, x, y); }

void activate_inplace(ActivationKind kind, std::span<double> z) {
  activate_inplace(active_isa(), kind, z);
}

}  // namespace scn::kernels
