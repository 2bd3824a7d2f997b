#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fcl/dsl/metric.hpp"

namespace fcl {

struct Domain {
  enum class Kind { ball, box } kind = Kind::ball;
  double size = 0.85;  // radius of the ball, or half-width A of the box [-A, A]^n

  // "ball:R" or "box:A"; InvalidArgument otherwise.
  static Domain parse(std::string_view text);
  std::string to_string() const;
};

struct SamplerConfig {
  int count = 10;
  std::uint64_t seed = 0;
  Domain domain;
};

// Uniform doubles and normals from mt19937_64 with fixed bit-level recipes,
// so a seed gives the same stream on every standard library.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();                   // [0, 1)
  double uniform(double lo, double hi);
  double normal();                    // Box-Muller

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Points uniform in the domain (restricted to the metric's own domain),
// directions uniform on the Euclidean unit sphere. EmptyDomain when 1e5
// consecutive draws are rejected.
std::vector<BasePoint> sample_points(const MetricField& metric, const SamplerConfig& config);

inline constexpr int kMaxRejections = 100000;

}  // namespace fcl
