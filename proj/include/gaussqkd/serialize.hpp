#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "gaussqkd/state.hpp"

namespace gaussqkd {

// States serialize as {n_modes, d, gamma} with gamma row-major and doubles
// printed with 17 significant digits (round-trip exact for IEEE-754 binary64).

inline std::string format_double_17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline nlohmann::json state_to_json(const GaussianState<double>& state) {
  nlohmann::json j;
  j["n_modes"] = state.n_modes;
  auto d = nlohmann::json::array();
  for (Eigen::Index i = 0; i < state.d.size(); ++i) d.push_back(state.d(i));
  j["d"] = std::move(d);
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < state.gamma.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < state.gamma.cols(); ++c) row.push_back(state.gamma(r, c));
    rows.push_back(std::move(row));
  }
  j["gamma"] = std::move(rows);
  return j;
}

inline GaussianState<double> state_from_json(const nlohmann::json& j) {
  const auto n = j.at("n_modes").get<Eigen::Index>();
  const auto& dj = j.at("d");
  const auto& gj = j.at("gamma");
  if (static_cast<Eigen::Index>(dj.size()) != 2 * n ||
      static_cast<Eigen::Index>(gj.size()) != 2 * n)
    throw MalformedMatrix("state_from_json: dimensions inconsistent with n_modes");
  Vec<double> d(2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) d(i) = dj.at(i).get<double>();
  Mat<double> g(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < 2 * n; ++r) {
    if (static_cast<Eigen::Index>(gj.at(r).size()) != 2 * n)
      throw MalformedMatrix("state_from_json: gamma row has wrong length");
    for (Eigen::Index c = 0; c < 2 * n; ++c) g(r, c) = gj.at(r).at(c).get<double>();
  }
  return GaussianState<double>(std::move(d), std::move(g));
}

/// Serialized text form; numbers are re-printed at 17 significant digits.
inline std::string state_to_json_string(const GaussianState<double>& state) {
  std::string out = "{\"n_modes\": " + std::to_string(state.n_modes) + ", \"d\": [";
  for (Eigen::Index i = 0; i < state.d.size(); ++i) {
    if (i) out += ", ";
    out += format_double_17(state.d(i));
  }
  out += "], \"gamma\": [";
  for (Eigen::Index r = 0; r < state.gamma.rows(); ++r) {
    if (r) out += ", ";
    out += "[";
    for (Eigen::Index c = 0; c < state.gamma.cols(); ++c) {
      if (c) out += ", ";
      out += format_double_17(state.gamma(r, c));
    }
    out += "]";
  }
  out += "]}";
  return out;
}

inline GaussianState<double> state_from_json_string(const std::string& text) {
  return state_from_json(nlohmann::json::parse(text));
}

}  // namespace gaussqkd
