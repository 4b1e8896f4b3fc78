#include <stdexcept>
#include <string>

#include "scn/config.hpp"

namespace scn {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ScI: return "sc1";
    case Algorithm::ScII: return "sc2";
    case Algorithm::ScIII: return "sc3";
    case Algorithm::Irvfl: return "irvfl";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::ScI, Algorithm::ScII, Algorithm::ScIII, Algorithm::Irvfl}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view to_string(TauMode m) {
  return m == TauMode::Random ? "random" : "half";
}

std::optional<TauMode> parse_tau_mode(std::string_view name) {
  if (name == "random") return TauMode::Random;
  if (name == "half") return TauMode::DeterministicHalf;
  return std::nullopt;
}

std::string_view to_string(ToleranceScale s) {
  return s == ToleranceScale::Frobenius ? "frobenius" : "rmse";
}

std::optional<ToleranceScale> parse_tolerance_scale(std::string_view name) {
  if (name == "frobenius") return ToleranceScale::Frobenius;
  if (name == "rmse") return ToleranceScale::Rmse;
  return std::nullopt;
}

std::string_view to_string(SearchOrder o) {
  return o == SearchOrder::ScopeFirst ? "scope-first" : "contraction-first";
}

std::optional<SearchOrder> parse_search_order(std::string_view name) {
  if (name == "scope-first") return SearchOrder::ScopeFirst;
  if (name == "contraction-first") return SearchOrder::ContractionFirst;
  return std::nullopt;
}

void ScnConfig::validate() const {
  if (!(r0 > 0.0 && r0 < 1.0)) throw std::invalid_argument("r0 must lie in (0, 1)");
  if (upsilon.empty()) throw std::invalid_argument("upsilon must not be empty");
  for (double lambda : upsilon) {
    if (!(lambda > 0.0)) throw std::invalid_argument("upsilon entries must be > 0");
  }
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  if (max_r_rounds_per_lambda < 1) throw std::invalid_argument("max_r_rounds_per_lambda must be >= 1");
  if (algorithm == Algorithm::ScII && window < 1) {
    throw std::invalid_argument("SC-II requires a window size K >= 1");
  }
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

}  // namespace scn
