#include "equiconn/linear.hpp"

#include "equiconn/errors.hpp"

namespace equiconn {

void LinearSystem::add_row(std::vector<Scalar> coeffs, Scalar rhs) {
  if (coeffs.size() != num_unknowns)
    throw DimensionError("linear system row has " + std::to_string(coeffs.size()) +
                         " coefficients, expected " + std::to_string(num_unknowns));
  rows.emplace_back(std::move(coeffs), std::move(rhs));
}

namespace {

struct Echelon {
  // Augmented matrix after forward elimination; column n is the rhs.
  std::vector<std::vector<Scalar>> m;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t n;                                            // number of unknowns
  bool consistent;
};

// Bareiss forward elimination. Exact; division by the previous pivot always
// leaves an exact quotient for integral input and is exact field division
// otherwise.
Echelon eliminate(const LinearSystem& sys) {
  Echelon e;
  e.n = sys.num_unknowns;
  e.consistent = true;
  for (const auto& [coeffs, rhs] : sys.rows) {
    std::vector<Scalar> row = coeffs;
    row.push_back(rhs);
    e.m.push_back(std::move(row));
  }

  const std::size_t rows = e.m.size();
  std::size_t next = 0;  // next pivot row slot
  Scalar prev_pivot(1);
  for (std::size_t col = 0; col < e.n && next < rows; ++col) {
    std::size_t pivot_row = rows;
    for (std::size_t i = next; i < rows; ++i) {
      if (!e.m[i][col].is_zero()) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row == rows) continue;  // free column
    std::swap(e.m[next], e.m[pivot_row]);
    const Scalar pivot = e.m[next][col];
    for (std::size_t i = next + 1; i < rows; ++i) {
      const Scalar factor = e.m[i][col];
      for (std::size_t j = col + 1; j <= e.n; ++j) {
        e.m[i][j] = (e.m[i][j] * pivot - factor * e.m[next][j]) / prev_pivot;
      }
      e.m[i][col] = Scalar(0);
    }
    prev_pivot = pivot;
    e.pivots.emplace_back(next, col);
    ++next;
  }
  for (std::size_t i = next; i < rows; ++i) {
    if (!e.m[i][e.n].is_zero()) {
      e.consistent = false;
      break;
    }
  }
  return e;
}

// Back substitution with the free variables preassigned in x.
void back_substitute(const Echelon& e, std::vector<Scalar>& x, bool homogeneous) {
  for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
    const auto [row, col] = *it;
    Scalar acc = homogeneous ? Scalar(0) : e.m[row][e.n];
    for (std::size_t j = col + 1; j < e.n; ++j) acc -= e.m[row][j] * x[j];
    x[col] = acc / e.m[row][col];
  }
}

}  // namespace

std::optional<LinearSolution> solve_linear(const LinearSystem& sys) {
  Echelon e = eliminate(sys);
  if (!e.consistent) return std::nullopt;

  LinearSolution out;
  out.particular.assign(e.n, Scalar(0));
  back_substitute(e, out.particular, /*homogeneous=*/false);

  std::vector<bool> is_pivot(e.n, false);
  for (const auto& [row, col] : e.pivots) is_pivot[col] = true;
  for (std::size_t f = 0; f < e.n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> k(e.n, Scalar(0));
    k[f] = Scalar(1);
    back_substitute(e, k, /*homogeneous=*/true);
    out.kernel_basis.push_back(std::move(k));
  }
  return out;
}

std::size_t rank_exact(const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  LinearSystem sys(n);
  for (const auto& r : rows) sys.add_row(r, Scalar(0));
  return eliminate(sys).pivots.size();
}

std::optional<std::vector<Scalar>> solve_in_span(const std::vector<std::vector<Scalar>>& columns,
                                                 const std::vector<Scalar>& target) {
  const std::size_t k = columns.size();
  const std::size_t n = target.size();
  LinearSystem sys(k);
  for (std::size_t row = 0; row < n; ++row) {
    std::vector<Scalar> coeffs(k);
    for (std::size_t l = 0; l < k; ++l) {
      if (columns[l].size() != n) throw DimensionError("span columns have mismatched lengths");
      coeffs[l] = columns[l][row];
    }
    sys.add_row(std::move(coeffs), target[row]);
  }
  auto sol = solve_linear(sys);
  if (!sol) return std::nullopt;
  return sol->particular;
}

}  // namespace equiconn
