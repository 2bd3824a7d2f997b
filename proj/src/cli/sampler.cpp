#include "fcl/cli/sampler.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace fcl {

Domain Domain::parse(std::string_view text) {
  const auto colon = text.find(':');
  auto bad = [&] {
    return Error(ErrorCode::InvalidArgument, "domain must be ball:R or box:A, got '" + std::string(text) + "'");
  };
  if (colon == std::string_view::npos) throw bad();
  const std::string_view kind = text.substr(0, colon);
  const std::string value(text.substr(colon + 1));
  Domain d;
  if (kind == "ball") {
    d.kind = Kind::ball;
  } else if (kind == "box") {
    d.kind = Kind::box;
  } else {
    throw bad();
  }
  std::size_t used = 0;
  try {
    d.size = std::stod(value, &used);
  } catch (const std::exception&) {
    throw bad();
  }
  if (used != value.size() || !(d.size > 0.0) || !std::isfinite(d.size)) throw bad();
  return d;
}

std::string Domain::to_string() const {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, size);
  return (kind == Kind::ball ? "ball:" : "box:") + std::string(buf, res.ptr);
}

double PortableRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double PortableRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double PortableRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<BasePoint> sample_points(const MetricField& metric, const SamplerConfig& config) {
  if (config.count < 0) throw Error(ErrorCode::InvalidArgument, "sample count must be nonnegative");
  const int n = metric.dim();
  PortableRng rng(config.seed);
  std::vector<BasePoint> out;
  out.reserve(config.count);
  const double a = config.domain.size;
  int rejected = 0;
  while (static_cast<int>(out.size()) < config.count) {
    std::vector<double> x(n);
    double r2 = 0.0;
    for (double& c : x) {
      c = rng.uniform(-a, a);
      r2 += c * c;
    }
    std::vector<double> y(n);
    double y2 = 0.0;
    for (double& c : y) {
      c = rng.normal();
      y2 += c * c;
    }
    const bool in_ball = config.domain.kind == Domain::Kind::box || r2 <= a * a;
    if (!in_ball || !metric.admissible(x) || std::sqrt(y2) < 1e-9) {
      if (++rejected >= kMaxRejections)
        throw Error(ErrorCode::EmptyDomain, "no admissible point in " + config.domain.to_string() + " after " +
                                                std::to_string(kMaxRejections) + " draws");
      continue;
    }
    rejected = 0;
    const double norm = std::sqrt(y2);
    for (double& c : y) c /= norm;
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

}  // namespace fcl
