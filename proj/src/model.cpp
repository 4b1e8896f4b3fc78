#include "scn/model.hpp"

#include <stdexcept>
#include <string>

#include "scn/kernels.hpp"

namespace scn {
namespace {

void check_meta_sizes(const std::vector<double>& lo, const std::vector<double>& hi, Eigen::Index cols,
                      const char* what) {
  if (lo.size() != static_cast<std::size_t>(cols) || hi.size() != static_cast<std::size_t>(cols)) {
    throw std::invalid_argument(std::string(what) + ": normalization metadata has " +
                                std::to_string(lo.size()) + " entries for " + std::to_string(cols) +
                                " columns");
  }
}

Matrix scale_columns(const Matrix& m, const std::vector<double>& lo, const std::vector<double>& hi) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double span = hi[j] - lo[j];
    if (span > 0.0) {
      out.col(j) = (m.col(j).array() - lo[j]) / span;
    } else {
      out.col(j).setConstant(0.5);
    }
  }
  return out;
}

}  // namespace

NormMeta NormMeta::identity(std::size_t d, std::size_t m) {
  return {std::vector<double>(d, 0.0), std::vector<double>(d, 1.0), std::vector<double>(m, 0.0),
          std::vector<double>(m, 1.0)};
}

Matrix NormMeta::normalize_inputs(const Matrix& x) const {
  check_meta_sizes(x_min, x_max, x.cols(), "normalize_inputs");
  return scale_columns(x, x_min, x_max);
}

Matrix NormMeta::normalize_targets(const Matrix& t) const {
  check_meta_sizes(t_min, t_max, t.cols(), "normalize_targets");
  return scale_columns(t, t_min, t_max);
}

Matrix NormMeta::denormalize_targets(const Matrix& t) const {
  check_meta_sizes(t_min, t_max, t.cols(), "denormalize_targets");
  Matrix out(t.rows(), t.cols());
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    const double span = t_max[j] - t_min[j];
    if (span > 0.0) {
      out.col(j) = t.col(j).array() * span + t_min[j];
    } else {
      out.col(j).setConstant(t_min[j]);
    }
  }
  return out;
}

ScnModel::ScnModel(std::size_t input_dim, std::size_t output_dim, std::vector<HiddenNode> nodes,
                   Matrix output_weights, NormMeta norm_meta)
    : input_dim_(input_dim),
      output_dim_(output_dim),
      nodes_(std::move(nodes)),
      output_weights_(std::move(output_weights)),
      norm_meta_(std::move(norm_meta)) {
  if (input_dim_ < 1 || output_dim_ < 1) throw std::invalid_argument("ScnModel: d and m must be >= 1");
  if (static_cast<std::size_t>(output_weights_.rows()) != nodes_.size() ||
      static_cast<std::size_t>(output_weights_.cols()) != output_dim_) {
    throw std::invalid_argument("ScnModel: output weights must be L x m");
  }
  for (const auto& node : nodes_) {
    if (node.w.size() != input_dim_) throw std::invalid_argument("ScnModel: node weight length != d");
  }
  check_meta_sizes(norm_meta_.x_min, norm_meta_.x_max, static_cast<Eigen::Index>(input_dim_), "ScnModel");
  check_meta_sizes(norm_meta_.t_min, norm_meta_.t_max, static_cast<Eigen::Index>(output_dim_), "ScnModel");
  require_finite(output_weights_, "ScnModel output weights");
}

ScnModel ScnModel::empty(std::size_t input_dim, std::size_t output_dim, NormMeta norm_meta) {
  return ScnModel(input_dim, output_dim, {}, Matrix(0, static_cast<Eigen::Index>(output_dim)),
                  std::move(norm_meta));
}

void node_activation_into(const HiddenNode& node, const Matrix& x, std::span<double> out) {
  if (static_cast<std::size_t>(x.cols()) != node.w.size()) {
    throw std::invalid_argument("node_activation: X has " + std::to_string(x.cols()) +
                                " columns, node expects " + std::to_string(node.w.size()));
  }
  if (out.size() != static_cast<std::size_t>(x.rows())) {
    throw std::invalid_argument("node_activation: output length != N");
  }
  std::fill(out.begin(), out.end(), node.b);
  for (Eigen::Index j = 0; j < x.cols(); ++j) kernels::axpy(node.w[j], col_span(x, j), out);
  kernels::activate_inplace(node.activation, out);
}

Vector node_activation_vector(const HiddenNode& node, const Matrix& x) {
  Vector h(x.rows());
  node_activation_into(node, x, as_span(h));
  return h;
}

Matrix hidden_matrix(std::span<const HiddenNode> nodes, const Matrix& x) {
  Matrix h(x.rows(), static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    node_activation_into(nodes[j], x, col_span(h, static_cast<Eigen::Index>(j)));
  }
  return h;
}

Matrix predict_normalized(const ScnModel& model, const Matrix& x_normalized) {
  if (static_cast<std::size_t>(x_normalized.cols()) != model.input_dim()) {
    throw std::invalid_argument("predict: input has " + std::to_string(x_normalized.cols()) +
                                " columns, model expects " + std::to_string(model.input_dim()));
  }
  const auto m = static_cast<Eigen::Index>(model.output_dim());
  if (model.node_count() == 0) return Matrix::Zero(x_normalized.rows(), m);
  return hidden_matrix(model.nodes(), x_normalized) * model.output_weights();
}

Matrix predict(const ScnModel& model, const Matrix& x_raw) {
  if (static_cast<std::size_t>(x_raw.cols()) != model.input_dim()) {
    throw std::invalid_argument("predict: input has " + std::to_string(x_raw.cols()) +
                                " columns, model expects " + std::to_string(model.input_dim()));
  }
  const Matrix xn = model.norm_meta().normalize_inputs(x_raw);
  return model.norm_meta().denormalize_targets(predict_normalized(model, xn));
}

Matrix residual(const Matrix& h, const Matrix& b, const Matrix& t) {
  if (h.rows() != t.rows() || h.cols() != b.rows() || b.cols() != t.cols()) {
    throw std::invalid_argument("residual: shapes are not conformable");
  }
  if (h.cols() == 0) return t;
  return t - h * b;
}

}  // namespace scn
