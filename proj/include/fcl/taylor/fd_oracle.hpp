#pragma once

#include <functional>
#include <span>

#include "fcl/taylor/base_point.hpp"
#include "fcl/taylor/monomial_table.hpp"

namespace fcl {

using ScalarField = std::function<double(std::span<const double> x, std::span<const double> y)>;

// Central-difference estimate of the mixed partial d^|m| f / dx^alpha dy^beta
// at `base`, built as a tensor product of one-dimensional central stencils
// and refined by one Richardson step on (2h, h), so `step` is the finest
// spacing used. Independent of the jet
// machinery; intended as a test oracle. Requires |m| <= 3 and step >= 1e-8.
double fd_oracle(const ScalarField& field, const BasePoint& base, const MultiIndex& m, double step);

}  // namespace fcl
