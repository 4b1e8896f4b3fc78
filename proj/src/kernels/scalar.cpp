#include <cmath>

#include "kernels_internal.hpp"

namespace scn {

double activate(ActivationKind kind, double t) {
  switch (kind) {
    case ActivationKind::Sigmoid:
      return 1.0 / (1.0 + std::exp(-t));
    case ActivationKind::Tanh:
      return std::tanh(t);
    case ActivationKind::Gaussian:
      return std::exp(-t * t);
    case ActivationKind::Sine:
      return std::sin(t);
    case ActivationKind::Cosine:
      return std::cos(t);
  }
  return 0.0;
}

std::string_view to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::Tanh: return "tanh";
    case ActivationKind::Gaussian: return "gaussian";
    case ActivationKind::Sine: return "sine";
    case ActivationKind::Cosine: return "cosine";
  }
  return "unknown";
}

std::optional<ActivationKind> parse_activation(std::string_view name) {
  for (auto k : {ActivationKind::Sigmoid, ActivationKind::Tanh, ActivationKind::Gaussian,
                 ActivationKind::Sine, ActivationKind::Cosine}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

namespace kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void activate(ActivationKind kind, double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = scn::activate(kind, z[i]);
}

}  // namespace kernels::scalar
}  // namespace scn
