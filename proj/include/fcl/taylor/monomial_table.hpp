#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fcl {

// Exponents of one monomial in the jet variables (x^1..x^n, y^1..y^n), split
// into the x-part (alpha) and the y-part (beta).
struct MultiIndex {
  std::vector<int> alpha;
  std::vector<int> beta;

  static MultiIndex zero(int n) { return {std::vector<int>(n, 0), std::vector<int>(n, 0)}; }
  static MultiIndex dx(int n, int i, int power = 1);
  static MultiIndex dy(int n, int i, int power = 1);

  int dim() const noexcept { return static_cast<int>(alpha.size()); }
  int order() const noexcept;
  // alpha! * beta!
  double factorial() const;
  std::vector<int> exponents() const;

  MultiIndex operator+(const MultiIndex& other) const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

// Graded enumeration of all monomials in `num_vars` variables up to a
// maximum degree. Monomials are numbered degree by degree, so the monomials
// of degree <= d always form the prefix [0, count_upto(d)). A jet of order K
// therefore uses the same indices regardless of the table's maximum degree.
class MonomialTable {
 public:
  MonomialTable(int num_vars, int max_degree);

  int num_vars() const noexcept { return num_vars_; }
  int max_degree() const noexcept { return max_degree_; }
  int count_upto(int degree) const noexcept { return degree < 0 ? 0 : count_upto_[degree]; }
  int degree(int index) const noexcept { return degree_[index]; }
  std::span<const std::uint8_t> exponents(int index) const noexcept {
    return {exponents_.data() + static_cast<std::size_t>(index) * num_vars_, static_cast<std::size_t>(num_vars_)};
  }
  // Index of the monomial with the given exponents, or -1 if the degree
  // exceeds max_degree().
  int index_of(std::span<const int> exponents) const;
  // Index of m * var, valid for degree(m) < max_degree().
  int successor(int index, int var) const noexcept { return successor_[static_cast<std::size_t>(index) * num_vars_ + var]; }
  // Product row for monomial a: row[b] = index of a * b for b < count_upto(max_degree - degree(a)).
  const int* product_row(int index) const noexcept { return products_.data() + row_offset_[index]; }
  double factorial(int index) const noexcept { return factorial_[index]; }

  // Shared table with max_degree >= `degree`; tables live for the whole process.
  static const MonomialTable& get(int num_vars, int degree);

 private:
  std::uint64_t key(std::span<const int> exponents) const;

  int num_vars_;
  int max_degree_;
  std::vector<int> count_upto_;
  std::vector<int> degree_;
  std::vector<std::uint8_t> exponents_;
  std::vector<int> successor_;
  std::vector<std::size_t> row_offset_;
  std::vector<int> products_;
  std::vector<double> factorial_;
  std::vector<std::uint64_t> sorted_keys_;
  std::vector<int> sorted_index_;
};

}  // namespace fcl
