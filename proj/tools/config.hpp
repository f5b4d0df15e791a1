#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace bstar::cli {

struct RunConfig {
  std::string command;  // analytic | simulate | verify
  std::string target;
  int d = 2;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> beta;
  double a = 0.0;
  double b = 0.0;
  std::optional<int> k;
  std::size_t reps = 100;
  std::size_t n_max = 1000000;
  std::size_t caps = 10000;
  std::size_t grid = 100000;
  std::size_t draws = 10000;
  std::size_t points = 1000;
  double r_max = 0.9;
  std::uint64_t seed = 20240601;
  int threads = 1;
  double z_max = 3.0;
  double budget = 0.0;  // tolerated NotTerminated fraction
  std::string route = "auto";
  std::string preset;
  std::string out;  // output file or directory; empty means stdout
  bool off = false;
  bool json = false;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig from_json(const nlohmann::json& j);

// Throws bstar::ParameterError naming the violated condition.
void validate(const RunConfig& c);

// Version, seed, parameters and timestamp; SOURCE_DATE_EPOCH pins the timestamp.
nlohmann::json provenance(const RunConfig& c);

}  // namespace bstar::cli
