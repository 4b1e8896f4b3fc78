#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "scn/activation.hpp"

namespace scn {

enum class Algorithm { ScI, ScII, ScIII, Irvfl };

/// How r grows when no candidate passes the supervisory test.
enum class TauMode {
  DeterministicHalf,  // tau = (1 - r) / 2
  Random,             // tau uniform in (0, 1 - r)
};

/// Nesting of the node search loops.
enum class SearchOrder {
  ContractionFirst,  // every scope is tried at the current r before r grows
  ScopeFirst,        // r grows inside each scope before moving to the next one
};

/// What epsilon is compared against in the stopping test.
enum class ToleranceScale {
  Rmse,       // ||e||_F / sqrt(N)
  Frobenius,  // ||e||_F
};

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view to_string(TauMode m);
std::optional<TauMode> parse_tau_mode(std::string_view name);
std::string_view to_string(ToleranceScale s);
std::optional<ToleranceScale> parse_tolerance_scale(std::string_view name);
std::string_view to_string(SearchOrder o);
std::optional<SearchOrder> parse_search_order(std::string_view name);

inline const std::vector<double>& default_upsilon() {
  static const std::vector<double> v{1, 5, 15, 30, 50, 100, 150, 200};
  return v;
}

struct ScnConfig {
  Algorithm algorithm = Algorithm::ScIII;
  std::size_t l_max = 50;
  double epsilon = 0.05;
  ToleranceScale tolerance_scale = ToleranceScale::Rmse;
  std::size_t t_max = 200;
  std::vector<double> upsilon = default_upsilon();
  double r0 = 0.9;
  std::size_t max_r_rounds_per_lambda = 20;  // r growths; each scope is tried at most this + 1 times
  TauMode tau_mode = TauMode::DeterministicHalf;
  SearchOrder search_order = SearchOrder::ContractionFirst;
  std::size_t window = 0;  // K, SC-II only
  ActivationKind activation = ActivationKind::Sigmoid;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;  // threads for candidate scoring; does not affect results

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

}  // namespace scn
