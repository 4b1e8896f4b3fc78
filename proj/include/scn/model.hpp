#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scn/activation.hpp"
#include "scn/linalg.hpp"

namespace scn {

/// One random basis function g(w^T x + b).
struct HiddenNode {
  std::vector<double> w;
  double b = 0.0;
  ActivationKind activation = ActivationKind::Sigmoid;
  double lambda_used = 1.0;  // scope [-lambda, lambda] the parameters were drawn from

  bool operator==(const HiddenNode&) const = default;
};

/// Per-column min/max for min-max scaling of inputs and targets. A column
/// with max == min maps to 0.5.
struct NormMeta {
  std::vector<double> x_min, x_max;
  std::vector<double> t_min, t_max;

  static NormMeta identity(std::size_t d, std::size_t m);

  Matrix normalize_inputs(const Matrix& x) const;
  Matrix normalize_targets(const Matrix& t) const;
  Matrix denormalize_targets(const Matrix& t) const;

  bool operator==(const NormMeta&) const = default;
};

/// f_L(x) = sum_j beta_j g_j(x), trained on normalized data. Immutable.
class ScnModel {
 public:
  ScnModel(std::size_t input_dim, std::size_t output_dim, std::vector<HiddenNode> nodes,
           Matrix output_weights, NormMeta norm_meta);

  /// Zero-node model, f_0 = 0.
  static ScnModel empty(std::size_t input_dim, std::size_t output_dim, NormMeta norm_meta);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<HiddenNode>& nodes() const { return nodes_; }
  const Matrix& output_weights() const { return output_weights_; }
  const NormMeta& norm_meta() const { return norm_meta_; }

 private:
  std::size_t input_dim_;
  std::size_t output_dim_;
  std::vector<HiddenNode> nodes_;
  Matrix output_weights_;
  NormMeta norm_meta_;
};

/// h_i = g(w^T x_i + b) for every row of X (already normalized).
Vector node_activation_vector(const HiddenNode& node, const Matrix& x);

/// Same as node_activation_vector, written into caller storage of length N.
void node_activation_into(const HiddenNode& node, const Matrix& x, std::span<double> out);

/// H = [h_1, ..., h_L], N x L.
Matrix hidden_matrix(std::span<const HiddenNode> nodes, const Matrix& x);

/// Prediction in normalized target space from normalized inputs.
Matrix predict_normalized(const ScnModel& model, const Matrix& x_normalized);

/// Prediction in original target units from raw inputs.
Matrix predict(const ScnModel& model, const Matrix& x_raw);

/// T - H B; returns T when H has no columns.
Matrix residual(const Matrix& h, const Matrix& b, const Matrix& t);

}  // namespace scn
