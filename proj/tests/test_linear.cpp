#include <doctest.h>

#include "equiconn/linear.hpp"
#include "support.hpp"

using namespace equiconn;

namespace {

// Residual check: every returned solution must satisfy each row exactly.
void check_satisfies(const LinearSystem& sys, const std::vector<Scalar>& x) {
  for (const auto& [coeffs, rhs] : sys.rows) {
    Scalar acc(0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * x[i];
    CHECK(acc == rhs);
  }
}

}  // namespace

TEST_CASE("two equations, unique solution") {
  LinearSystem sys(2);
  sys.add_row({Scalar(1), Scalar(1)}, Scalar(2));
  sys.add_row({Scalar(1), Scalar(-1)}, Scalar(0));
  auto sol = solve_linear(sys);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == std::vector<Scalar>{Scalar(1), Scalar(1)});
  CHECK(sol->kernel_basis.empty());
}

TEST_CASE("inconsistent system") {
  LinearSystem sys(1);
  sys.add_row({Scalar(0)}, Scalar(1));
  CHECK_FALSE(solve_linear(sys).has_value());
}

TEST_CASE("underdetermined system exposes its kernel") {
  LinearSystem sys(2);
  sys.add_row({Scalar(1), Scalar(1)}, Scalar(0));
  auto sol = solve_linear(sys);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == std::vector<Scalar>{Scalar(0), Scalar(0)});
  REQUIRE(sol->kernel_basis.size() == 1);
  const auto& k = sol->kernel_basis[0];
  CHECK(k[0] == -k[1]);
  CHECK(k[1] != Scalar(0));
}

TEST_CASE("random systems: substitution holds for particular and kernel shifts") {
  SplitMix64 rng(0x11e40001ULL);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng.below(5);
    const std::size_t m = 1 + rng.below(6);
    LinearSystem sys(n);
    // Build a consistent system by planting a solution.
    std::vector<Scalar> planted;
    for (std::size_t i = 0; i < n; ++i) planted.push_back(equiconn::testing::random_scalar(rng, true));
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<Scalar> row;
      Scalar rhs(0);
      for (std::size_t i = 0; i < n; ++i) {
        row.push_back(equiconn::testing::random_scalar(rng, true));
        rhs += row.back() * planted[i];
      }
      sys.add_row(std::move(row), rhs);
    }
    auto sol = solve_linear(sys);
    REQUIRE(sol.has_value());
    check_satisfies(sys, sol->particular);
    for (const auto& k : sol->kernel_basis) {
      std::vector<Scalar> shifted = sol->particular;
      for (std::size_t i = 0; i < n; ++i) shifted[i] += k[i];
      check_satisfies(sys, shifted);
    }
    // rank + nullity = number of unknowns
    std::vector<std::vector<Scalar>> coeff_rows;
    for (const auto& [coeffs, rhs] : sys.rows) coeff_rows.push_back(coeffs);
    CHECK(rank_exact(coeff_rows) + sol->kernel_basis.size() == n);
  }
}

TEST_CASE("rank of exact matrices") {
  CHECK(rank_exact({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}) == 1);
  CHECK(rank_exact({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}) == 2);
  CHECK(rank_exact({}) == 0);
}

TEST_CASE("span membership") {
  // target (1,1,0) in span{(1,0,0),(0,1,0)}
  auto c = solve_in_span({{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(0)}},
                         {Scalar(1), Scalar(1), Scalar(0)});
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Scalar(1));
  CHECK((*c)[1] == Scalar(1));
  CHECK_FALSE(solve_in_span({{Scalar(1), Scalar(0), Scalar(0)}}, {Scalar(0), Scalar(0), Scalar(1)})
                  .has_value());
}
