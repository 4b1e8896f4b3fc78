#pragma once

#include <optional>
#include <string_view>

namespace scn {

/// Hidden-node basis function family. Gaussian is exp(-t^2); the rest are the
/// usual textbook functions.
enum class ActivationKind { Sigmoid, Tanh, Gaussian, Sine, Cosine };

std::string_view to_string(ActivationKind kind);
std::optional<ActivationKind> parse_activation(std::string_view name);

/// Reference scalar evaluation of g(t).
double activate(ActivationKind kind, double t);

}  // namespace scn
