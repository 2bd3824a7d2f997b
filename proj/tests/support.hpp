#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fcl/dsl/metric.hpp"
#include "fcl/geometry/tensor.hpp"

namespace fcl::test {

// splitmix64; kept separate from the engine's sampler so tests do not draw
// their inputs from the code they check.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  std::vector<double> in_ball(int n, double r) {
    std::vector<double> v(n);
    while (true) {
      double s = 0.0;
      for (double& c : v) {
        c = uniform(-r, r);
        s += c * c;
      }
      if (s <= r * r) return v;
    }
  }
  // Direction with entries in [-1, 1] and norm at least 0.3.
  std::vector<double> direction(int n) {
    std::vector<double> v(n);
    while (true) {
      double s = 0.0;
      for (double& c : v) {
        c = uniform(-1.0, 1.0);
        s += c * c;
      }
      if (s >= 0.09) return v;
    }
  }
  BasePoint point(int n, double r = 0.8) {
    std::vector<double> x = in_ball(n, r);
    return BasePoint(std::move(x), direction(n));
  }

 private:
  std::uint64_t s_;
};

inline std::string metrics_dir() { return FCL_METRICS_DIR; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline MetricField catalog(const std::string& name) { return compile_metric(read_file(metrics_dir() + "/" + name + ".fm")); }

inline MetricField metric(const std::string& source) { return compile_metric(source); }

inline double max_abs_diff(const Tensor<double>& a, const Tensor<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace fcl::test
