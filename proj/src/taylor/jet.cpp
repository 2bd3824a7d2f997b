#include "fcl/taylor/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcl/error.hpp"

namespace fcl {

std::shared_ptr<const JetSpace> JetSpace::make(BasePoint base, int max_order) {
  const int vars = 2 * base.dim();
  return std::make_shared<const JetSpace>(JetSpace{std::move(base), &MonomialTable::get(vars, max_order)});
}

namespace {

void check_order(const JetSpacePtr& space, int order) {
  if (order < 0) throw Error(ErrorCode::OrderExceeded, "jet order must be nonnegative");
  if (order > space->table->max_degree())
    throw Error(ErrorCode::OrderExceeded, "jet order " + std::to_string(order) + " exceeds table degree " +
                                              std::to_string(space->table->max_degree()));
}

std::size_t count_nonzero(std::span<const double> c) {
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](double v) { return v != 0.0; }));
}

// out += a * b truncated at `order`.
void multiply_accumulate(const MonomialTable& table, int order, std::span<const double> a,
                         std::span<const double> b, std::span<double> out) {
  const int n = table.count_upto(order);
  if (count_nonzero(a.first(n)) > count_nonzero(b.first(n))) std::swap(a, b);
  for (int ia = 0; ia < n; ++ia) {
    const double av = a[ia];
    if (av == 0.0) continue;
    const int len = table.count_upto(order - table.degree(ia));
    const int* row = table.product_row(ia);
    for (int ib = 0; ib < len; ++ib) out[row[ib]] += av * b[ib];
  }
}

// sum_k series[k] * (a - a(0))^k, truncated at a's order.
Jet compose(const Jet& a, const std::vector<double>& series) {
  Jet u = a;
  u += -a.value();
  Jet result = a.constant_like(series.back());
  for (int k = static_cast<int>(series.size()) - 2; k >= 0; --k) {
    result = result * u;
    result += series[k];
  }
  return result;
}

}  // namespace

Jet Jet::constant(JetSpacePtr space, int order, double value) {
  check_order(space, order);
  std::vector<double> c(space->table->count_upto(order), 0.0);
  c[0] = value;
  return Jet(std::move(space), order, std::move(c));
}

Jet Jet::variable(JetSpacePtr space, int order, int var) {
  Jet j = constant(space, order, space->base.coordinate(var));
  if (order >= 1) {
    // Degree-one monomials follow the constant in table order.
    j.coeffs_[1 + var] = 1.0;
  }
  return j;
}

Jet Jet::y(JetSpacePtr space, int order, int i) {
  const int n = space->base.dim();
  return variable(std::move(space), order, n + i);
}

Jet Jet::from_coefficients(JetSpacePtr space, int order, std::vector<double> coeffs) {
  check_order(space, order);
  if (static_cast<int>(coeffs.size()) != space->table->count_upto(order))
    throw Error(ErrorCode::InvalidArgument, "coefficient count does not match jet order");
  return Jet(std::move(space), order, std::move(coeffs));
}

double Jet::coefficient(const MultiIndex& m) const {
  if (m.dim() != dim()) throw Error(ErrorCode::InvalidArgument, "multi-index dimension mismatch");
  if (m.order() > order_)
    throw Error(ErrorCode::OrderExceeded, "multi-index order " + std::to_string(m.order()) + " exceeds jet order " +
                                              std::to_string(order_));
  return coeffs_[table().index_of(m.exponents())];
}

Jet Jet::derivative(int var) const {
  if (order_ < 1) throw Error(ErrorCode::OrderExceeded, "cannot differentiate an order-0 jet");
  if (var < 0 || var >= num_vars()) throw Error(ErrorCode::InvalidArgument, "derivative variable out of range");
  const MonomialTable& t = table();
  const int n = t.count_upto(order_ - 1);
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) {
    const int s = t.successor(i, var);
    c[i] = static_cast<double>(t.exponents(i)[var] + 1) * coeffs_[s];
  }
  return Jet(space_, order_ - 1, std::move(c));
}

Jet Jet::truncated(int order) const {
  if (order > order_) throw Error(ErrorCode::OrderExceeded, "cannot raise the order of a jet");
  check_order(space_, order);
  std::vector<double> c(coeffs_.begin(), coeffs_.begin() + table().count_upto(order));
  return Jet(space_, order, std::move(c));
}

Jet Jet::zero_like() const { return Jet(space_, order_, std::vector<double>(coeffs_.size(), 0.0)); }

Jet Jet::constant_like(double value) const {
  Jet j = zero_like();
  j.coeffs_[0] = value;
  return j;
}

void Jet::check_compatible(const Jet& other) const {
  if (space_ == other.space_) return;
  if (space_->table->num_vars() != other.space_->table->num_vars() || !(space_->base == other.space_->base))
    throw Error(ErrorCode::InvalidArgument, "jets are expanded at different base points");
}

Jet& Jet::operator+=(const Jet& other) {
  check_compatible(other);
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  check_compatible(other);
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Jet& Jet::add_product(const Jet& a, const Jet& b) {
  check_compatible(a);
  check_compatible(b);
  const int order = std::min({order_, a.order_, b.order_});
  if (order < order_) *this = truncated(order);
  multiply_accumulate(table(), order, a.coeffs_, b.coeffs_, coeffs_);
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  const int order = std::min(a.order_, b.order_);
  Jet out(a.space_, order, std::vector<double>(a.table().count_upto(order), 0.0));
  multiply_accumulate(a.table(), order, a.coeffs_, b.coeffs_, out.coeffs_);
  return out;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(Jet a) { return a *= -1.0; }
Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a += -s; }
Jet operator-(double s, Jet a) {
  a *= -1.0;
  return a += s;
}
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) {
  if (std::abs(s) < kJetDegeneracyThreshold) throw Error(ErrorCode::DivisionByZeroJet, "scalar divisor is zero");
  return a *= 1.0 / s;
}
Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

Jet reciprocal(const Jet& a) {
  const double a0 = a.value();
  if (std::abs(a0) < kJetDegeneracyThreshold)
    throw Error(ErrorCode::DivisionByZeroJet, "divisor constant term " + std::to_string(a0) + " is below threshold");
  // 1/(a0 + u) = sum_k (-1)^k u^k / a0^(k+1)
  std::vector<double> series(a.order() + 1);
  double term = 1.0 / a0;
  for (double& s : series) {
    s = term;
    term *= -1.0 / a0;
  }
  return compose(a, series);
}

Jet sqrt(const Jet& a) {
  const double a0 = a.value();
  if (a0 < kJetDegeneracyThreshold)
    throw Error(ErrorCode::NegativeSqrtJet, "sqrt argument constant term " + std::to_string(a0) + " is not positive");
  // sqrt(a0 + u) = sum_k binom(1/2, k) a0^(1/2 - k) u^k
  std::vector<double> series(a.order() + 1);
  double binom = 1.0;
  double power = std::sqrt(a0);
  for (int k = 0; k <= a.order(); ++k) {
    series[k] = binom * power;
    binom *= (0.5 - k) / (k + 1);
    power /= a0;
  }
  return compose(a, series);
}

Jet pow_int(const Jet& a, int exponent) {
  if (exponent < 0) return reciprocal(pow_int(a, -exponent));
  Jet result = a.constant_like(1.0);
  Jet base = a;
  int e = exponent;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Jet jet_arith(const Jet& a, const Jet& b, JetOp op, int exponent) {
  switch (op) {
    case JetOp::add: return a + b;
    case JetOp::sub: return a - b;
    case JetOp::mul: return a * b;
    case JetOp::div: return a / b;
    case JetOp::sqrt: return sqrt(a);
    case JetOp::pow_int: return pow_int(a, exponent);
    case JetOp::neg: return -a;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown jet operation");
}

double extract_partial(const Jet& j, const MultiIndex& m) { return m.factorial() * j.coefficient(m); }

double euler_defect(const Jet& j, double degree) {
  double sum = -degree * j.value();
  const int n = j.dim();
  for (int i = 0; i < n; ++i) sum += j.base().y()[i] * extract_partial(j, MultiIndex::dy(n, i));
  return sum;
}

}  // namespace fcl
