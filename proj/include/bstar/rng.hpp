#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace bstar {

// Reproducible random stream keyed by (seed, stream id).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  double uniform();  // open interval (0,1)
  double normal();
  double exponential();
  Eigen::VectorXd gaussian(int d);
  Eigen::VectorXd direction(int d);  // uniform on the unit sphere
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Seed taken from BSTAR_SEED when set, otherwise the fallback.
std::uint64_t default_seed(std::uint64_t fallback = 20240601);

}  // namespace bstar
