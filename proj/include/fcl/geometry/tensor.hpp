#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fcl/error.hpp"
#include "fcl/taylor/base_point.hpp"
#include "fcl/taylor/jet.hpp"

namespace fcl {

enum class Slot : std::uint8_t { upper, lower };

inline constexpr int kMaxRank = 6;
using Index = std::array<int, kMaxRank>;

// Visits every index tuple of the given rank in row-major order.
template <class Fn>
void for_each_index(int rank, int dim, Fn&& fn) {
  Index idx{};
  if (rank == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int slot = rank - 1;
    while (slot >= 0 && ++idx[slot] == dim) idx[slot--] = 0;
    if (slot < 0) return;
  }
}

// Dense multi-index array with a per-slot variance signature; entries are
// stored row-major. T is double for values at a point and Jet for the local
// Taylor germ of a tensor field.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, std::vector<Slot> variance, std::vector<T> data)
      : dim_(dim), variance_(std::move(variance)), data_(std::move(data)) {
    if (static_cast<int>(variance_.size()) > kMaxRank) throw Error(ErrorCode::InvalidArgument, "tensor rank too large");
    if (data_.size() != expected_size()) throw Error(ErrorCode::InvalidArgument, "tensor data has wrong size");
  }
  Tensor(int dim, std::vector<Slot> variance, const T& fill)
      : dim_(dim), variance_(std::move(variance)), data_(expected_size(), fill) {}

  template <class Fn>
  static Tensor generate(int dim, std::vector<Slot> variance, Fn&& fn) {
    std::vector<T> data;
    const int rank = static_cast<int>(variance.size());
    for_each_index(rank, dim, [&](const Index& i) { data.push_back(fn(i)); });
    return Tensor(dim, std::move(variance), std::move(data));
  }

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return static_cast<int>(variance_.size()); }
  const std::vector<Slot>& variance() const noexcept { return variance_; }
  std::size_t size() const noexcept { return data_.size(); }
  const std::vector<T>& data() const noexcept { return data_; }
  std::vector<T>& data() noexcept { return data_; }

  std::size_t flat(const Index& idx) const noexcept {
    std::size_t f = 0;
    for (int s = 0; s < rank(); ++s) f = f * dim_ + idx[s];
    return f;
  }
  T& operator[](const Index& idx) noexcept { return data_[flat(idx)]; }
  const T& operator[](const Index& idx) const noexcept { return data_[flat(idx)]; }

  template <class... I>
  T& operator()(I... i) noexcept {
    return (*this)[Index{static_cast<int>(i)...}];
  }
  template <class... I>
  const T& operator()(I... i) const noexcept {
    return (*this)[Index{static_cast<int>(i)...}];
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for_each_index(rank(), dim_, [&](const Index& i) { fn(i, data_[flat(i)]); });
  }

 private:
  std::size_t expected_size() const {
    std::size_t s = 1;
    for (std::size_t k = 0; k < variance_.size(); ++k) s *= static_cast<std::size_t>(dim_);
    return s;
  }

  int dim_ = 0;
  std::vector<Slot> variance_;
  std::vector<T> data_;
};

using JetTensor = Tensor<Jet>;

// A tensor evaluated at one base point.
class TensorValue : public Tensor<double> {
 public:
  TensorValue(Tensor<double> t, BasePoint base) : Tensor<double>(std::move(t)), base_(std::move(base)) {}
  const BasePoint& base() const noexcept { return base_; }

 private:
  BasePoint base_;
};

// "u"/"l" per slot, e.g. "ulll" for B^i_jkl.
std::string variance_signature(const std::vector<Slot>& variance);
std::vector<Slot> slots(const char* signature);

double max_abs(const Tensor<double>& t);
// max|a - b| / (1 + max(max|a|, max|b|)); the dimensionless residual used by
// every identity and predicate check.
double scaled_residual(const Tensor<double>& a, const Tensor<double>& b);
// Same with a zero right-hand side.
double scaled_norm(const Tensor<double>& t);

// Constant terms of every entry.
Tensor<double> values(const JetTensor& t);
TensorValue value_at(const JetTensor& t);
// Lowest order among the entries.
int lowest_order(const JetTensor& t);

JetTensor scalar_tensor(Jet j);
JetTensor operator+(const JetTensor& a, const JetTensor& b);
JetTensor operator-(const JetTensor& a, const JetTensor& b);
JetTensor operator*(const JetTensor& a, const Jet& s);
JetTensor operator*(const JetTensor& a, double s);
Tensor<double> operator-(const Tensor<double>& a, const Tensor<double>& b);
Tensor<double> operator+(const Tensor<double>& a, const Tensor<double>& b);
Tensor<double> operator*(const Tensor<double>& a, double s);

}  // namespace fcl
