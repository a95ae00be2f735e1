#ifndef EQUICONN_LINEAR_HPP
#define EQUICONN_LINEAR_HPP

#include <optional>
#include <vector>

#include "equiconn/rational.hpp"

namespace equiconn {

/// A linear system over the Gaussian rationals, one row per equation.
struct LinearSystem {
  explicit LinearSystem(std::size_t num_unknowns) : num_unknowns(num_unknowns) {}

  void add_row(std::vector<Scalar> coeffs, Scalar rhs);

  std::size_t num_unknowns;
  std::vector<std::pair<std::vector<Scalar>, Scalar>> rows;
};

struct LinearSolution {
  std::vector<Scalar> particular;              // one solution, free variables set to 0
  std::vector<std::vector<Scalar>> kernel_basis;  // basis of the homogeneous solutions
};

/// Exact fraction-free Gaussian elimination (Bareiss update). Pivots are
/// chosen by lowest row index, then lowest column index, so results are
/// reproducible. Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const LinearSystem& sys);

/// Exact rank of a rectangular Scalar matrix (rows of equal length).
std::size_t rank_exact(const std::vector<std::vector<Scalar>>& rows);

/// Expresses `target` in the span of `columns` (each a length-n vector):
/// returns c with sum_l c[l]*columns[l] == target, or nullopt when target is
/// outside the span. The coefficient choice zeroes free variables.
std::optional<std::vector<Scalar>> solve_in_span(const std::vector<std::vector<Scalar>>& columns,
                                                 const std::vector<Scalar>& target);

}  // namespace equiconn

#endif
