#ifndef EQUICONN_SCENE_HPP
#define EQUICONN_SCENE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "equiconn/connections.hpp"
#include "equiconn/foliations.hpp"

namespace equiconn {

/// One numeric/finite flow problem as declared in a scene file.
struct FlowProblemSpec {
  std::string name;
  VectorField xi;
  std::vector<VectorField> frame;                   // may be empty (closed-form-only problems)
  std::vector<std::vector<Scalar>> start_points;    // exact rationals, cast to double when run
  double t_max = 1.0;
  int steps = 1000;
  double tolerance = 1e-6;
  std::vector<std::vector<Scalar>> sample_points;   // exact, for the bracket condition
  std::optional<LieValuedFunction> psi;             // vertical lift part
  std::optional<std::vector<Poly>> flow_map;        // closed form, chart coords + trailing t
  std::vector<Scalar> t_values;
};

/// Everything one document can declare: chart, algebras, action, connection,
/// lifts, phi_0, foliation data and flow problems.
struct Scene {
  int schema = 1;
  std::string name;
  std::string description;
  std::uint64_t seed = 0;

  ChartPtr chart;
  LieAlgebraPtr algebra_h;
  LieAlgebraPtr algebra_g;                   // null when absent
  std::optional<GAction> action;
  std::optional<Connection> connection;
  std::optional<GConnection> gconnection;    // action + lifts
  std::optional<PhiZero> phi0;
  std::optional<Foliation> foliation;        // sample points possibly empty (defaults apply)
  std::optional<std::vector<LieValuedFunction>> deltas;  // partial connection data
  std::vector<FlowProblemSpec> flows;
};

struct SceneError {
  std::string path;     // JSON-pointer-style location in the document
  std::string message;  // expected vs found
};

struct SceneParseResult {
  std::optional<Scene> scene;
  std::vector<SceneError> errors;

  bool ok() const { return scene.has_value() && errors.empty(); }
};

SceneParseResult parse_scene_text(const std::string& text);
SceneParseResult parse_scene_file(const std::string& path);

nlohmann::json scene_to_json(const Scene& scene);
/// Canonical serialization: sorted keys, two-space indentation.
std::string scene_to_text(const Scene& scene);
/// Stable content hash of the canonical serialization.
std::uint64_t scene_content_hash(const Scene& scene);

/// Scalar <-> JSON quadruple [re_num, re_den, im_num, im_den]; entries are
/// JSON integers when they fit and decimal strings otherwise.
nlohmann::json scalar_to_json(const Scalar& s);
nlohmann::json poly_to_json(const Poly& p);

}  // namespace equiconn

#endif
