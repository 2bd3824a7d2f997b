#include "fcl/taylor/monomial_table.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "fcl/error.hpp"

namespace fcl {

MultiIndex MultiIndex::dx(int n, int i, int power) {
  MultiIndex m = zero(n);
  m.alpha.at(i) = power;
  return m;
}

MultiIndex MultiIndex::dy(int n, int i, int power) {
  MultiIndex m = zero(n);
  m.beta.at(i) = power;
  return m;
}

int MultiIndex::order() const noexcept {
  return std::accumulate(alpha.begin(), alpha.end(), 0) + std::accumulate(beta.begin(), beta.end(), 0);
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exponents())
    for (int k = 2; k <= e; ++k) f *= k;
  return f;
}

std::vector<int> MultiIndex::exponents() const {
  std::vector<int> e(alpha);
  e.insert(e.end(), beta.begin(), beta.end());
  return e;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dim() != other.dim()) throw Error(ErrorCode::InvalidArgument, "multi-index dimension mismatch");
  MultiIndex m = *this;
  for (int i = 0; i < dim(); ++i) {
    m.alpha[i] += other.alpha[i];
    m.beta[i] += other.beta[i];
  }
  return m;
}

namespace {

// Appends all exponent vectors of total degree `degree`, lexicographically
// descending.
void enumerate_degree(int num_vars, int degree, std::vector<int>& current, int var,
                      std::vector<std::vector<int>>& out) {
  if (var == num_vars - 1) {
    current[var] = degree;
    out.push_back(current);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[var] = e;
    enumerate_degree(num_vars, degree - e, current, var + 1, out);
  }
}

}  // namespace

MonomialTable::MonomialTable(int num_vars, int max_degree) : num_vars_(num_vars), max_degree_(max_degree) {
  if (num_vars < 1 || max_degree < 0) throw Error(ErrorCode::InvalidArgument, "invalid monomial table shape");

  std::vector<std::vector<int>> monomials;
  std::vector<int> current(num_vars, 0);
  for (int d = 0; d <= max_degree; ++d) {
    enumerate_degree(num_vars, d, current, 0, monomials);
    count_upto_.push_back(static_cast<int>(monomials.size()));
  }

  const int count = static_cast<int>(monomials.size());
  degree_.resize(count);
  exponents_.resize(static_cast<std::size_t>(count) * num_vars);
  factorial_.resize(count);
  std::vector<std::pair<std::uint64_t, int>> keyed;
  keyed.reserve(count);
  for (int i = 0; i < count; ++i) {
    degree_[i] = std::accumulate(monomials[i].begin(), monomials[i].end(), 0);
    double f = 1.0;
    for (int v = 0; v < num_vars; ++v) {
      exponents_[static_cast<std::size_t>(i) * num_vars + v] = static_cast<std::uint8_t>(monomials[i][v]);
      for (int k = 2; k <= monomials[i][v]; ++k) f *= k;
    }
    factorial_[i] = f;
    keyed.emplace_back(key(monomials[i]), i);
  }
  std::sort(keyed.begin(), keyed.end());
  for (const auto& [k, i] : keyed) {
    sorted_keys_.push_back(k);
    sorted_index_.push_back(i);
  }

  successor_.assign(static_cast<std::size_t>(count) * num_vars, -1);
  std::vector<int> e(num_vars);
  for (int i = 0; i < count_upto(max_degree - 1); ++i) {
    for (int v = 0; v < num_vars; ++v) {
      e = monomials[i];
      ++e[v];
      successor_[static_cast<std::size_t>(i) * num_vars + v] = index_of(e);
    }
  }

  row_offset_.resize(count);
  std::size_t offset = 0;
  for (int a = 0; a < count; ++a) {
    row_offset_[a] = offset;
    offset += count_upto(max_degree - degree_[a]);
  }
  products_.resize(offset);
  for (int a = 0; a < count; ++a) {
    const int len = count_upto(max_degree - degree_[a]);
    for (int b = 0; b < len; ++b) {
      for (int v = 0; v < num_vars; ++v) e[v] = monomials[a][v] + monomials[b][v];
      products_[row_offset_[a] + b] = index_of(e);
    }
  }
}

std::uint64_t MonomialTable::key(std::span<const int> exponents) const {
  std::uint64_t k = 0;
  for (int e : exponents) k = k * static_cast<std::uint64_t>(max_degree_ + 1) + static_cast<std::uint64_t>(e);
  return k;
}

int MonomialTable::index_of(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != num_vars_)
    throw Error(ErrorCode::InvalidArgument, "exponent vector has wrong length");
  int total = 0;
  for (int e : exponents) {
    if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    total += e;
  }
  if (total > max_degree_) return -1;
  const std::uint64_t k = key(exponents);
  const auto it = std::lower_bound(sorted_keys_.begin(), sorted_keys_.end(), k);
  return sorted_index_[static_cast<std::size_t>(it - sorted_keys_.begin())];
}

const MonomialTable& MonomialTable::get(int num_vars, int degree) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::unique_ptr<MonomialTable>>> registry;
  constexpr int kMinimumDegree = 7;

  std::lock_guard lock(mutex);
  auto& tables = registry[num_vars];
  if (!tables.empty() && tables.back()->max_degree() >= degree) return *tables.back();
  tables.push_back(std::make_unique<MonomialTable>(num_vars, std::max(degree, kMinimumDegree)));
  return *tables.back();
}

}  // namespace fcl
