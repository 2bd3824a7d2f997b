#include "fcl/taylor/fd_oracle.hpp"

#include <utility>
#include <vector>

#include "fcl/error.hpp"

namespace fcl {

namespace {

// Weights (offset in units of h, weight * h^order) of the second-order
// central stencil for a derivative of the given order.
std::vector<std::pair<int, double>> stencil(int order) {
  switch (order) {
    case 0: return {{0, 1.0}};
    case 1: return {{1, 0.5}, {-1, -0.5}};
    case 2: return {{1, 1.0}, {0, -2.0}, {-1, 1.0}};
    case 3: return {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}};
  }
  throw Error(ErrorCode::OrderExceeded, "finite differences support derivatives up to order 3");
}

double central_difference(const ScalarField& field, const BasePoint& base, const std::vector<int>& exps, double h) {
  const int n = base.dim();
  std::vector<int> vars;
  for (int v = 0; v < 2 * n; ++v)
    if (exps[v] > 0) vars.push_back(v);

  std::vector<double> x(base.x().begin(), base.x().end());
  std::vector<double> y(base.y().begin(), base.y().end());
  double total = 0.0;
  double scale = 1.0;
  for (int v : vars)
    for (int k = 0; k < exps[v]; ++k) scale *= h;

  // Recursive tensor product over the active variables.
  auto recurse = [&](auto&& self, std::size_t depth, double weight) -> void {
    if (depth == vars.size()) {
      total += weight * field(x, y);
      return;
    }
    const int v = vars[depth];
    double& coord = v < n ? x[v] : y[v - n];
    const double saved = coord;
    for (const auto& [offset, w] : stencil(exps[v])) {
      coord = saved + offset * h;
      self(self, depth + 1, weight * w);
    }
    coord = saved;
  };
  recurse(recurse, 0, 1.0);
  return total / scale;
}

}  // namespace

double fd_oracle(const ScalarField& field, const BasePoint& base, const MultiIndex& m, double step) {
  if (step < 1e-8) throw Error(ErrorCode::StepUnderflow, "finite-difference step below 1e-8");
  if (m.dim() != base.dim()) throw Error(ErrorCode::InvalidArgument, "multi-index dimension mismatch");
  if (m.order() > 3) throw Error(ErrorCode::OrderExceeded, "finite differences support derivatives up to order 3");
  const std::vector<int> exps = m.exponents();
  if (m.order() == 0) return field(base.x(), base.y());
  const double coarse = central_difference(field, base, exps, 2.0 * step);
  const double fine = central_difference(field, base, exps, step);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace fcl
