#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "scn/model.hpp"
#include "scn/trainer.hpp"

namespace scn {

inline constexpr int kModelFormatVersion = 1;

struct TrainingSummary {
  std::string algorithm;
  std::uint64_t seed = 0;
  double final_train_rmse = 0.0;
  std::string stop_reason;

  bool operator==(const TrainingSummary&) const = default;
};

struct ModelFile {
  ScnModel model;
  TrainingSummary summary;
};

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON text of a model file. Doubles are written with round-trip precision
/// and object keys in sorted order, so equal models give equal bytes.
std::string model_to_json(const ModelFile& file);
ModelFile model_from_json(const std::string& text);

void save_model(const std::filesystem::path& path, const ModelFile& file);
ModelFile load_model(const std::filesystem::path& path);

/// Per-node report: L,train_rmse,test_rmse,r_at_acceptance,lambda_used,candidates_tried,elapsed_s
void write_report(std::ostream& out, const TrainingTrace& trace);
void write_report(const std::filesystem::path& path, const TrainingTrace& trace);

}  // namespace scn
