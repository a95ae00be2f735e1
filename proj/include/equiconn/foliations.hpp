#ifndef EQUICONN_FOLIATIONS_HPP
#define EQUICONN_FOLIATIONS_HPP

#include <cstdint>
#include <optional>

#include "equiconn/connections.hpp"

namespace equiconn {

/// A distribution given by a polynomial frame plus the sample points at
/// which pointwise conditions (rank, involutivity, flatness) are checked.
/// Sampling is exact: points have Gaussian-rational coordinates.
struct Foliation {
  ChartPtr chart;
  std::vector<VectorField> frame;
  std::vector<std::vector<Scalar>> sample_points;

  std::size_t rank() const { return frame.size(); }
};

Foliation make_foliation(ChartPtr chart, std::vector<VectorField> frame,
                         std::vector<std::vector<Scalar>> sample_points);

/// Draws `count` integer points in a small box, skipping points where the
/// frame loses rank; deterministic for a fixed seed.
std::vector<std::vector<Scalar>> default_sample_points(const std::vector<VectorField>& frame,
                                                       std::size_t count, std::uint64_t seed);

/// Partial connection D(s_i) = (s_i, delta_i) defined on the frame fields.
struct PartialConnection {
  Foliation foliation;
  LieAlgebraPtr algebra_h;
  std::vector<LieValuedFunction> deltas;
};

PartialConnection make_partial_connection(Foliation foliation,
                                          std::vector<LieValuedFunction> deltas);

struct InvolutiveResult {
  bool involutive = false;
  // Witness: frame pair and sample point where [s_i, s_j] leaves the span.
  std::size_t i = 0, j = 0, sample_index = 0;
  std::optional<std::vector<Scalar>> bracket_value;

  explicit operator bool() const { return involutive; }
};

/// Pointwise span membership of all frame brackets at every sample point.
/// Throws DegenerateFrameError when the frame loses rank at a sample.
InvolutiveResult check_involutive(const Foliation& F);

struct FlatnessResult {
  bool flat = false;
  std::size_t i = 0, j = 0, sample_index = 0;
  std::optional<LieValue> defect;

  explicit operator bool() const { return flat; }
};

/// Pointwise curvature of D on frame pairs: vertical part of
/// [D(s_i), D(s_j)] minus D applied to [s_i, s_j] resolved in the frame.
FlatnessResult partial_curvature_flat(const PartialConnection& D,
                                      VerticalSign sigma = kDefaultVerticalSign);

struct StronglyAdaptedToDResult {
  bool holds = false;
  // failed_clause: 1 = restriction (delta_i == -A(s_i)), 2 = contraction.
  int failed_clause = 0;
  std::size_t index = 0;
  std::optional<LieValuedFunction> restriction_defect;
  std::optional<LieValuedOneForm> contraction_defect;

  explicit operator bool() const { return holds; }
};

/// eta restricted to the foliation coincides with D, and the curvature of
/// eta contracts to zero against every frame field. Both clauses are exact
/// polynomial identities.
StronglyAdaptedToDResult strongly_adapted_to_D(const Connection& eta, const PartialConnection& D,
                                               VerticalSign sigma = kDefaultVerticalSign);

}  // namespace equiconn

#endif
