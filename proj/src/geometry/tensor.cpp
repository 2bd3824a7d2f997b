#include "fcl/geometry/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace fcl {

std::string variance_signature(const std::vector<Slot>& variance) {
  std::string s;
  for (Slot v : variance) s += v == Slot::upper ? 'u' : 'l';
  return s;
}

std::vector<Slot> slots(const char* signature) {
  std::vector<Slot> v;
  for (const char* c = signature; *c; ++c) v.push_back(*c == 'u' ? Slot::upper : Slot::lower);
  return v;
}

double max_abs(const Tensor<double>& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

namespace {
void check_same_shape(const Tensor<double>& a, const Tensor<double>& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "tensor shape mismatch");
}
}  // namespace

double scaled_residual(const Tensor<double>& a, const Tensor<double>& b) {
  check_same_shape(a, b);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
  if (std::isnan(diff)) return diff;
  return diff / (1.0 + std::max(max_abs(a), max_abs(b)));
}

double scaled_norm(const Tensor<double>& t) {
  const double m = max_abs(t);
  return m / (1.0 + m);
}

Tensor<double> values(const JetTensor& t) {
  std::vector<double> v;
  v.reserve(t.size());
  for (const Jet& j : t.data()) v.push_back(j.value());
  return Tensor<double>(t.dim(), t.variance(), std::move(v));
}

TensorValue value_at(const JetTensor& t) {
  if (t.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty tensor");
  return TensorValue(values(t), t.data().front().base());
}

int lowest_order(const JetTensor& t) {
  int m = 1 << 20;
  for (const Jet& j : t.data()) m = std::min(m, j.order());
  return m;
}

JetTensor scalar_tensor(Jet j) { return JetTensor(0, {}, std::vector<Jet>{std::move(j)}); }

JetTensor operator+(const JetTensor& a, const JetTensor& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "tensor shape mismatch");
  std::vector<Jet> d;
  d.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a.data()[i] + b.data()[i]);
  return JetTensor(a.dim(), a.variance(), std::move(d));
}

JetTensor operator-(const JetTensor& a, const JetTensor& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "tensor shape mismatch");
  std::vector<Jet> d;
  d.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a.data()[i] - b.data()[i]);
  return JetTensor(a.dim(), a.variance(), std::move(d));
}

JetTensor operator*(const JetTensor& a, const Jet& s) {
  std::vector<Jet> d;
  d.reserve(a.size());
  for (const Jet& j : a.data()) d.push_back(j * s);
  return JetTensor(a.dim(), a.variance(), std::move(d));
}

JetTensor operator*(const JetTensor& a, double s) {
  std::vector<Jet> d;
  d.reserve(a.size());
  for (const Jet& j : a.data()) d.push_back(j * s);
  return JetTensor(a.dim(), a.variance(), std::move(d));
}

Tensor<double> operator-(const Tensor<double>& a, const Tensor<double>& b) {
  check_same_shape(a, b);
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a.data()[i] - b.data()[i];
  return Tensor<double>(a.dim(), a.variance(), std::move(d));
}

Tensor<double> operator+(const Tensor<double>& a, const Tensor<double>& b) {
  check_same_shape(a, b);
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a.data()[i] + b.data()[i];
  return Tensor<double>(a.dim(), a.variance(), std::move(d));
}

Tensor<double> operator*(const Tensor<double>& a, double s) {
  std::vector<double> d(a.data());
  for (double& v : d) v *= s;
  return Tensor<double>(a.dim(), a.variance(), std::move(d));
}

}  // namespace fcl
