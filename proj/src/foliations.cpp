#include "equiconn/foliations.hpp"

#include "equiconn/errors.hpp"
#include "equiconn/linear.hpp"
#include "equiconn/rng.hpp"

namespace equiconn {

namespace {

std::vector<std::vector<Scalar>> frame_columns(const Foliation& F,
                                               const std::vector<Scalar>& point) {
  std::vector<std::vector<Scalar>> cols;
  cols.reserve(F.frame.size());
  for (const auto& s : F.frame) cols.push_back(s.eval(point));
  return cols;
}

void require_full_rank(const Foliation& F, const std::vector<std::vector<Scalar>>& cols,
                       std::size_t sample_index) {
  if (rank_exact(cols) != F.rank())
    throw DegenerateFrameError("frame is rank-deficient at sample point " +
                               std::to_string(sample_index));
}

}  // namespace

Foliation make_foliation(ChartPtr chart, std::vector<VectorField> frame,
                         std::vector<std::vector<Scalar>> sample_points) {
  if (frame.empty()) throw ValidationError("foliation frame must be nonempty");
  for (const auto& s : frame)
    if (!same_chart(*chart, *s.chart))
      throw DimensionError("foliation frame fields live on different charts");
  if (frame.size() > chart->dim())
    throw DimensionError("foliation rank exceeds the chart dimension");
  for (const auto& p : sample_points)
    if (p.size() != chart->dim())
      throw DimensionError("foliation sample point has wrong coordinate count");
  return Foliation{std::move(chart), std::move(frame), std::move(sample_points)};
}

std::vector<std::vector<Scalar>> default_sample_points(const std::vector<VectorField>& frame,
                                                       std::size_t count, std::uint64_t seed) {
  if (frame.empty()) throw ValidationError("cannot sample an empty frame");
  const std::size_t n = frame[0].chart->dim();
  SplitMix64 rng(seed);
  std::vector<std::vector<Scalar>> points;
  const std::size_t max_tries = 64 * count + 64;
  for (std::size_t tries = 0; points.size() < count && tries < max_tries; ++tries) {
    std::vector<Scalar> p;
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) p.push_back(Scalar(rng.range(-4, 4)));
    std::vector<std::vector<Scalar>> cols;
    cols.reserve(frame.size());
    for (const auto& s : frame) cols.push_back(s.eval(p));
    if (rank_exact(cols) == frame.size()) points.push_back(std::move(p));
  }
  if (points.size() < count)
    throw DegenerateFrameError("could not find enough full-rank sample points for the frame");
  return points;
}

PartialConnection make_partial_connection(Foliation foliation,
                                          std::vector<LieValuedFunction> deltas) {
  if (deltas.size() != foliation.frame.size())
    throw DimensionError("partial connection needs one delta per frame field");
  for (const auto& d : deltas)
    if (d.num_vars() != foliation.chart->dim())
      throw DimensionError("partial connection delta has wrong variable count");
  LieAlgebraPtr algebra_h = deltas.front().algebra;
  return PartialConnection{std::move(foliation), std::move(algebra_h), std::move(deltas)};
}

InvolutiveResult check_involutive(const Foliation& F) {
  InvolutiveResult res;
  const std::size_t k = F.rank();
  for (std::size_t s = 0; s < F.sample_points.size(); ++s) {
    const auto& point = F.sample_points[s];
    const auto cols = frame_columns(F, point);
    require_full_rank(F, cols, s);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const std::vector<Scalar> br = vf_bracket(F.frame[i], F.frame[j]).eval(point);
        if (!solve_in_span(cols, br)) {
          res.involutive = false;
          res.i = i;
          res.j = j;
          res.sample_index = s;
          res.bracket_value = br;
          return res;
        }
      }
    }
  }
  res.involutive = true;
  return res;
}

FlatnessResult partial_curvature_flat(const PartialConnection& D, VerticalSign sigma) {
  const Foliation& F = D.foliation;
  const std::size_t k = F.rank();
  FlatnessResult res;
  for (std::size_t s = 0; s < F.sample_points.size(); ++s) {
    const auto& point = F.sample_points[s];
    const auto cols = frame_columns(F, point);
    require_full_rank(F, cols, s);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const InvariantField Di{F.frame[i], D.deltas[i]};
        const InvariantField Dj{F.frame[j], D.deltas[j]};
        const InvariantField br = invariant_bracket(Di, Dj, sigma);
        const auto coeffs = solve_in_span(cols, br.base.eval(point));
        if (!coeffs)
          throw ValidationError("frame is not involutive at sample point " + std::to_string(s) +
                                "; partial curvature is undefined");
        // Vertical defect: vert([D s_i, D s_j]) - sum_l c_l delta_l, at the point.
        LieValue defect = br.vert.eval(point);
        for (std::size_t l = 0; l < k; ++l) {
          const LieValue dl = D.deltas[l].eval(point);
          for (std::size_t c = 0; c < defect.coords.size(); ++c)
            defect.coords[c] -= (*coeffs)[l] * dl.coords[c];
        }
        if (!defect.is_zero()) {
          res.flat = false;
          res.i = i;
          res.j = j;
          res.sample_index = s;
          res.defect = std::move(defect);
          return res;
        }
      }
    }
  }
  res.flat = true;
  return res;
}

StronglyAdaptedToDResult strongly_adapted_to_D(const Connection& eta, const PartialConnection& D,
                                               VerticalSign sigma) {
  if (!same_chart(*eta.chart(), *D.foliation.chart))
    throw DimensionError("strongly_adapted_to_D: charts differ");
  if (!same_algebra(*eta.algebra(), *D.algebra_h))
    throw DimensionError("strongly_adapted_to_D: structure algebras differ");

  StronglyAdaptedToDResult res;
  // Clause (i): the restriction of eta to the frame is D, i.e. the eta-lift
  // of s_i has vertical part delta_i: delta_i + A(s_i) == 0.
  for (std::size_t i = 0; i < D.foliation.frame.size(); ++i) {
    LieValuedFunction defect = D.deltas[i] + apply_oneform(eta.form, D.foliation.frame[i]);
    if (!defect.is_zero()) {
      res.holds = false;
      res.failed_clause = 1;
      res.index = i;
      res.restriction_defect = std::move(defect);
      return res;
    }
  }
  // Clause (ii): i_{s_i} K(eta) == 0 as an exact identity.
  const LieValuedTwoForm K = curvature(eta, sigma);
  for (std::size_t i = 0; i < D.foliation.frame.size(); ++i) {
    LieValuedOneForm c = contract(K, D.foliation.frame[i]);
    if (!c.is_zero()) {
      res.holds = false;
      res.failed_clause = 2;
      res.index = i;
      res.contraction_defect = std::move(c);
      return res;
    }
  }
  res.holds = true;
  return res;
}

}  // namespace equiconn
