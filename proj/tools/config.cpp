#include "config.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <set>

#include "bstar/errors.hpp"

namespace bstar::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

template <class T>
void put_opt(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get_opt(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j[key].is_null()) v = j[key].get<T>();
}

template <class T>
void get(const nlohmann::json& j, const char* key, T& v) {
  if (j.contains(key)) v = j[key].get<T>();
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(e));
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["target"] = c.target;
  j["d"] = c.d;
  put_opt(j, "alpha", c.alpha);
  put_opt(j, "lambda", c.lambda);
  put_opt(j, "mu", c.mu);
  put_opt(j, "beta", c.beta);
  j["a"] = c.a;
  j["b"] = c.b;
  put_opt(j, "k", c.k);
  j["reps"] = c.reps;
  j["n_max"] = c.n_max;
  j["caps"] = c.caps;
  j["grid"] = c.grid;
  j["draws"] = c.draws;
  j["points"] = c.points;
  j["r_max"] = c.r_max;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["z_max"] = c.z_max;
  j["budget"] = c.budget;
  j["route"] = c.route;
  j["preset"] = c.preset;
  j["out"] = c.out;
  j["off"] = c.off;
  j["json"] = c.json;
  return j;
}

RunConfig from_json(const nlohmann::json& j) {
  RunConfig c;
  get(j, "command", c.command);
  get(j, "target", c.target);
  get(j, "d", c.d);
  get_opt(j, "alpha", c.alpha);
  get_opt(j, "lambda", c.lambda);
  get_opt(j, "mu", c.mu);
  get_opt(j, "beta", c.beta);
  get(j, "a", c.a);
  get(j, "b", c.b);
  get_opt(j, "k", c.k);
  get(j, "reps", c.reps);
  get(j, "n_max", c.n_max);
  get(j, "caps", c.caps);
  get(j, "grid", c.grid);
  get(j, "draws", c.draws);
  get(j, "points", c.points);
  get(j, "r_max", c.r_max);
  get(j, "seed", c.seed);
  get(j, "threads", c.threads);
  get(j, "z_max", c.z_max);
  get(j, "budget", c.budget);
  get(j, "route", c.route);
  get(j, "preset", c.preset);
  get(j, "out", c.out);
  get(j, "off", c.off);
  get(j, "json", c.json);
  return c;
}

void validate(const RunConfig& c) {
  static const std::set<std::string> commands{"analytic", "simulate", "verify"};
  if (!commands.count(c.command)) throw ParameterError("unknown command '" + c.command + "'");
  if (c.d < 1) throw ParameterError("d >= 1 required (d=" + std::to_string(c.d) + ")");
  if (c.alpha && !(*c.alpha > 0.0)) throw ParameterError("alpha > 0 required");
  if (c.lambda && !(*c.lambda > 0.0)) throw ParameterError("lambda > 0 required");
  if (c.mu && !(*c.mu > 0.0)) throw ParameterError("mu > 0 required");
  if (c.beta && !(*c.beta > 0.5 * c.d)) {
    throw ParameterError("beta > d/2 required (beta=" + std::to_string(*c.beta) + ", d/2=" +
                         std::to_string(0.5 * c.d) + ")");
  }
  if (c.a < 0.0 || c.b < 0.0) throw ParameterError("a >= 0 and b >= 0 required");
  if (c.threads < 1) throw ParameterError("threads >= 1 required");
  if (!(c.z_max > 0.0)) throw ParameterError("z_max > 0 required");
  if (c.budget < 0.0 || c.budget > 1.0) throw ParameterError("0 <= budget <= 1 required");
  if (!(c.r_max > 0.0 && c.r_max < 1.0)) throw ParameterError("0 < r_max < 1 required");
  if (c.n_max == 0) throw ParameterError("n_max >= 1 required");
  static const std::set<std::string> routes{"auto", "quadrature", "half", "bessel"};
  if (!routes.count(c.route)) throw ParameterError("route must be one of auto, quadrature, half, bessel");
}

nlohmann::json provenance(const RunConfig& c) {
  nlohmann::json p;
  p["tool"] = "bstar";
  p["version"] = kVersion;
  p["seed"] = c.seed;
  p["timestamp"] = utc_timestamp();
  p["config"] = to_json(c);
  return p;
}

}  // namespace bstar::cli
