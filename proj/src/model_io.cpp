#include "scn/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scn {
namespace {

using nlohmann::json;

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ModelFormatError(std::string("model file: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("model file: bad field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string model_to_json(const ModelFile& file) {
  const ScnModel& model = file.model;
  json nodes = json::array();
  for (const auto& node : model.nodes()) {
    nodes.push_back({{"w", node.w}, {"b", node.b}, {"lambda_used", node.lambda_used}});
  }
  json weights = json::array();
  const Matrix& beta = model.output_weights();
  for (Eigen::Index i = 0; i < beta.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index q = 0; q < beta.cols(); ++q) row.push_back(beta(i, q));
    weights.push_back(std::move(row));
  }
  const NormMeta& meta = model.norm_meta();
  const auto activation =
      model.nodes().empty() ? ActivationKind::Sigmoid : model.nodes().front().activation;

  json doc = {
      {"format_version", kModelFormatVersion},
      {"input_dim", model.input_dim()},
      {"output_dim", model.output_dim()},
      {"activation", std::string(to_string(activation))},
      {"nodes", std::move(nodes)},
      {"output_weights", std::move(weights)},
      {"norm_meta",
       {{"x_min", meta.x_min}, {"x_max", meta.x_max}, {"t_min", meta.t_min}, {"t_max", meta.t_max}}},
      {"training_summary",
       {{"algorithm", file.summary.algorithm},
        {"seed", file.summary.seed},
        {"final_train_rmse", file.summary.final_train_rmse},
        {"stop_reason", file.summary.stop_reason}}},
  };
  return doc.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("model file: ") + e.what());
  }
  const int version = get_field<int>(doc, "format_version");
  if (version != kModelFormatVersion) {
    throw ModelFormatError("model file: unsupported format_version " + std::to_string(version));
  }
  const auto d = get_field<std::size_t>(doc, "input_dim");
  const auto m = get_field<std::size_t>(doc, "output_dim");
  const auto act_name = get_field<std::string>(doc, "activation");
  const auto activation = parse_activation(act_name);
  if (!activation) throw ModelFormatError("model file: unknown activation '" + act_name + "'");

  std::vector<HiddenNode> nodes;
  for (const auto& jn : get_field<json>(doc, "nodes")) {
    HiddenNode node;
    node.w = get_field<std::vector<double>>(jn, "w");
    node.b = get_field<double>(jn, "b");
    node.lambda_used = get_field<double>(jn, "lambda_used");
    node.activation = *activation;
    nodes.push_back(std::move(node));
  }
  const auto rows = get_field<std::vector<std::vector<double>>>(doc, "output_weights");
  Matrix beta(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) throw ModelFormatError("model file: output_weights row length != output_dim");
    for (std::size_t q = 0; q < m; ++q) beta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q)) = rows[i][q];
  }
  const json jm = get_field<json>(doc, "norm_meta");
  NormMeta meta{get_field<std::vector<double>>(jm, "x_min"), get_field<std::vector<double>>(jm, "x_max"),
                get_field<std::vector<double>>(jm, "t_min"), get_field<std::vector<double>>(jm, "t_max")};
  const json js = get_field<json>(doc, "training_summary");
  TrainingSummary summary{get_field<std::string>(js, "algorithm"), get_field<std::uint64_t>(js, "seed"),
                          get_field<double>(js, "final_train_rmse"), get_field<std::string>(js, "stop_reason")};
  try {
    return ModelFile{ScnModel(d, m, std::move(nodes), std::move(beta), std::move(meta)), std::move(summary)};
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(std::string("model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const ModelFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << model_to_json(file);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

void write_report(std::ostream& out, const TrainingTrace& trace) {
  out << "L,train_rmse,test_rmse,r_at_acceptance,lambda_used,candidates_tried,elapsed_s\n";
  out.precision(17);
  for (const auto& r : trace.records) {
    out << r.l << ',' << r.train_rmse << ',';
    if (r.test_rmse) out << *r.test_rmse;
    out << ',' << r.r_at_acceptance << ',' << r.lambda_used << ',' << r.candidates_tried << ','
        << r.elapsed_s << '\n';
  }
}

void write_report(const std::filesystem::path& path, const TrainingTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_report(out, trace);
}

}  // namespace scn
