#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fcl/dsl/expr.hpp"

namespace fcl {

enum class MetricKind { euclidean, riemannian, randers, funk, custom };

std::string_view to_string(MetricKind kind);

// Parsed metric definition. `matrix` holds a_ij(x) for riemannian and randers,
// `covector` holds b_i(x) for randers, `f2` holds the F^2 expression of a
// custom metric.
struct MetricSpec {
  MetricKind kind = MetricKind::euclidean;
  int dim = 2;
  std::vector<std::vector<ExprPtr>> matrix;
  std::vector<ExprPtr> covector;
  ExprPtr f2;
};

bool structurally_equal(const MetricSpec& a, const MetricSpec& b);

// Canonical source text; parse_metric(to_source(s)) is structurally equal to s.
std::string to_source(const MetricSpec& spec);

// Grammar (whitespace-insensitive, '#' starts a comment):
//   metric   := "euclidean" "(" INT ")" | "funk" "(" INT ")"
//             | "riemannian" "(" INT ")" "{" matrix "}"
//             | "randers" "(" INT ")" "{" matrix ";" covector "}"
//             | "custom" "(" INT ")" "{" expr "}"
//   matrix   := row (";" row)*        row := expr ("," expr)*
//   covector := expr ("," expr)*
// Matrix and covector entries may reference x only. Throws ParseError with
// the 1-based line:column of the offending token.
MetricSpec parse_metric(std::string_view text);

// Parses a bare expression in n dimensions (used by tests and tools).
ExprPtr parse_expression(std::string_view text, int dim, bool allow_y = true);

}  // namespace fcl
