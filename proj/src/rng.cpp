#include "bstar/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace bstar {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::uint64_t s = seed ^ (0x5851f42d4c957f2dULL * (stream + 1));
  std::uint32_t words[8];
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t v = splitmix64(s);
    words[2 * i] = static_cast<std::uint32_t>(v);
    words[2 * i + 1] = static_cast<std::uint32_t>(v >> 32);
  }
  std::seed_seq seq(words, words + 8);
  engine_.seed(seq);
}

double RngStream::uniform() {
  while (true) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::exponential() { return -std::log(uniform()); }

Eigen::VectorXd RngStream::gaussian(int d) {
  Eigen::VectorXd g(d);
  for (int i = 0; i < d; ++i) g[i] = normal();
  return g;
}

Eigen::VectorXd RngStream::direction(int d) {
  if (d == 1) return Eigen::VectorXd::Constant(1, uniform() < 0.5 ? -1.0 : 1.0);
  while (true) {
    Eigen::VectorXd g = gaussian(d);
    const double n = g.norm();
    if (n > 1e-300) return g / n;
  }
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("BSTAR_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
    }
  }
  return fallback;
}

}  // namespace bstar
