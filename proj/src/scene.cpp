#include "equiconn/scene.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "equiconn/errors.hpp"
#include "equiconn/rng.hpp"

namespace equiconn {

namespace {

using nlohmann::json;

// Leaf-level parse failure; caught at section boundaries and accumulated.
struct ParseFail {
  SceneError err;
};

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ParseFail{SceneError{path, message}};
}

std::string type_name(const json& j) { return j.type_name(); }

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object, found " + type_name(j));
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing required member");
  return *it;
}

const json* opt_member(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string, found " + type_name(j));
  return j.get<std::string>();
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number, found " + type_name(j));
  return j.get<double>();
}

long get_small_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer, found " + type_name(j));
  return j.get<long>();
}

mpz_class get_bigint(const json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail(path, "not a decimal integer string: \"" + j.get<std::string>() + "\"");
    }
  }
  fail(path, "expected an integer or decimal string, found " + type_name(j));
}

Scalar parse_scalar(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4)
    fail(path, "expected a scalar quadruple [re_num, re_den, im_num, im_den]");
  mpz_class parts[4];
  for (std::size_t k = 0; k < 4; ++k) parts[k] = get_bigint(j[k], path + "/" + std::to_string(k));
  if (parts[1] == 0 || parts[3] == 0) fail(path, "scalar denominators must be nonzero");
  return Scalar::from_parts(parts[0], parts[1], parts[2], parts[3]);
}

Poly parse_poly(const json& j, std::size_t num_vars, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of terms, found " + type_name(j));
  Poly p(num_vars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tpath = path + "/" + std::to_string(t);
    const json& term = j[t];
    if (!term.is_object()) fail(tpath, "expected a term object, found " + type_name(term));
    const Scalar c = parse_scalar(member(term, tpath, "coeff"), tpath + "/coeff");
    const json& exps = member(term, tpath, "exp");
    if (!exps.is_array() || exps.size() != num_vars)
      fail(tpath + "/exp", "expected " + std::to_string(num_vars) + " exponents");
    Poly::Exponents exp(num_vars);
    for (std::size_t v = 0; v < num_vars; ++v) {
      const long e = get_small_int(exps[v], tpath + "/exp/" + std::to_string(v));
      if (e < 0) fail(tpath + "/exp/" + std::to_string(v), "exponents must be nonnegative");
      exp[v] = static_cast<std::uint32_t>(e);
    }
    p.add_term(exp, c);
  }
  return p;
}

LieValuedFunction parse_lie_function(const json& j, const LieAlgebraPtr& algebra,
                                     std::size_t num_vars, const std::string& path) {
  if (!j.is_array() || j.size() != algebra->dim())
    fail(path, "expected " + std::to_string(algebra->dim()) +
                   " component polynomials (one per basis element)");
  LieValuedFunction f = LieValuedFunction::zero(algebra, num_vars);
  for (std::size_t k = 0; k < algebra->dim(); ++k)
    f.components[k] = parse_poly(j[k], num_vars, path + "/" + std::to_string(k));
  return f;
}

VectorField parse_vector_field(const json& j, const ChartPtr& chart, const std::string& path) {
  if (!j.is_array() || j.size() != chart->dim())
    fail(path, "expected " + std::to_string(chart->dim()) +
                   " component polynomials (one per coordinate)");
  VectorField v = VectorField::zero(chart);
  for (std::size_t k = 0; k < chart->dim(); ++k)
    v.components[k] = parse_poly(j[k], chart->dim(), path + "/" + std::to_string(k));
  return v;
}

std::vector<Scalar> parse_point(const json& j, std::size_t dim, const std::string& path) {
  if (!j.is_array() || j.size() != dim)
    fail(path, "expected a point with " + std::to_string(dim) + " coordinates");
  std::vector<Scalar> p;
  p.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k)
    p.push_back(parse_scalar(j[k], path + "/" + std::to_string(k)));
  return p;
}

LieAlgebraPtr parse_algebra(const json& j, const std::string& path) {
  const std::string name = get_string(member(j, path, "name"), path + "/name");
  const json& basis = member(j, path, "basis");
  if (!basis.is_array() || basis.empty()) fail(path + "/basis", "expected a nonempty label array");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < basis.size(); ++k)
    labels.push_back(get_string(basis[k], path + "/basis/" + std::to_string(k)));

  auto alg = std::make_shared<LieAlgebra>(name, labels);
  const std::size_t d = alg->dim();
  const json& brackets = member(j, path, "brackets");
  if (!brackets.is_array()) fail(path + "/brackets", "expected an array of bracket entries");
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Scalar>> seen;
  for (std::size_t t = 0; t < brackets.size(); ++t) {
    const std::string bpath = path + "/brackets/" + std::to_string(t);
    const json& entry = brackets[t];
    const long i = get_small_int(member(entry, bpath, "i"), bpath + "/i");
    const long jj = get_small_int(member(entry, bpath, "j"), bpath + "/j");
    if (i < 0 || jj < 0 || i >= static_cast<long>(d) || jj >= static_cast<long>(d))
      fail(bpath, "bracket indices out of range for dimension " + std::to_string(d));
    if (i == jj) fail(bpath, "bracket [e_i, e_i] must be omitted (it vanishes)");
    const json& cj = member(entry, bpath, "c");
    if (!cj.is_array() || cj.size() != d)
      fail(bpath + "/c", "expected " + std::to_string(d) + " coordinates");
    std::vector<Scalar> coords;
    for (std::size_t k = 0; k < d; ++k)
      coords.push_back(parse_scalar(cj[k], bpath + "/c/" + std::to_string(k)));

    const auto key = std::make_pair(static_cast<std::size_t>(std::min(i, jj)),
                                    static_cast<std::size_t>(std::max(i, jj)));
    std::vector<Scalar> normalized = coords;
    if (i > jj)
      for (auto& c : normalized) c = -c;
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (it->second != normalized)
        fail(bpath, "conflicting bracket entry for the pair (" + std::to_string(key.first) + ", " +
                        std::to_string(key.second) + ")");
      continue;
    }
    seen.emplace(key, normalized);
  }
  for (const auto& [key, coords] : seen)
    for (std::size_t k = 0; k < d; ++k)
      if (!coords[k].is_zero()) alg->set_bracket_coefficient(key.first, key.second, k, coords[k]);
  if (!check_jacobi(*alg))
    fail(path + "/brackets", "structure constants violate the Jacobi identity");
  return alg;
}

}  // namespace

SceneParseResult parse_scene_text(const std::string& text) {
  SceneParseResult result;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    result.errors.push_back({"/", std::string("not valid JSON: ") + e.what()});
    return result;
  }

  Scene scene;
  std::vector<SceneError>& errors = result.errors;
  auto section = [&errors](const std::string& path, auto&& body) {
    try {
      body();
    } catch (const ParseFail& f) {
      errors.push_back(f.err);
    } catch (const Error& e) {
      errors.push_back({path, e.what()});
    }
  };

  if (!doc.is_object()) {
    errors.push_back({"/", "expected a JSON object at the document root, found " + type_name(doc)});
    return result;
  }

  section("/schema", [&] {
    const long v = get_small_int(member(doc, "", "schema"), "/schema");
    if (v != 1) fail("/schema", "unsupported schema version " + std::to_string(v));
    scene.schema = 1;
  });
  section("/name", [&] { scene.name = get_string(member(doc, "", "name"), "/name"); });
  section("/description", [&] {
    if (const json* d = opt_member(doc, "description"))
      scene.description = get_string(*d, "/description");
  });
  section("/seed", [&] {
    if (const json* s = opt_member(doc, "seed")) {
      if (!s->is_number_unsigned() && !s->is_number_integer())
        fail("/seed", "expected an unsigned integer, found " + type_name(*s));
      scene.seed = s->get<std::uint64_t>();
    }
  });

  section("/chart", [&] {
    const json& c = member(doc, "", "chart");
    const json& coords = member(c, "/chart", "coords");
    if (!coords.is_array() || coords.empty())
      fail("/chart/coords", "expected a nonempty array of labels");
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < coords.size(); ++k)
      labels.push_back(get_string(coords[k], "/chart/coords/" + std::to_string(k)));
    scene.chart = make_chart(std::move(labels));
  });
  section("/algebra_h",
          [&] { scene.algebra_h = parse_algebra(member(doc, "", "algebra_h"), "/algebra_h"); });
  section("/algebra_g", [&] {
    if (const json* g = opt_member(doc, "algebra_g"))
      scene.algebra_g = parse_algebra(*g, "/algebra_g");
  });

  if (!scene.chart || !scene.algebra_h) {
    // Nothing below can be interpreted without the chart and h.
    return result;
  }
  const std::size_t n = scene.chart->dim();

  section("/connection", [&] {
    const json& cj = member(doc, "", "connection");
    if (!cj.is_array() || cj.size() != n)
      fail("/connection", "expected " + std::to_string(n) + " one-form components");
    LieValuedOneForm A = LieValuedOneForm::zero(scene.chart, scene.algebra_h);
    for (std::size_t i = 0; i < n; ++i)
      A.components[i] = parse_lie_function(cj[i], scene.algebra_h, n,
                                           "/connection/" + std::to_string(i));
    scene.connection = Connection{std::move(A)};
  });

  section("/action", [&] {
    const json* aj = opt_member(doc, "action");
    if (!aj) return;
    if (!scene.algebra_g) fail("/action", "an action requires algebra_g");
    const json& gens = member(*aj, "/action", "generators");
    if (!gens.is_array() || gens.size() != scene.algebra_g->dim())
      fail("/action/generators",
           "expected one generator per basis vector of algebra_g (" +
               std::to_string(scene.algebra_g->dim()) + ")");
    std::vector<VectorField> fields;
    for (std::size_t v = 0; v < gens.size(); ++v)
      fields.push_back(
          parse_vector_field(gens[v], scene.chart, "/action/generators/" + std::to_string(v)));
    scene.action = make_gaction(scene.algebra_g, std::move(fields));
  });

  section("/lifts", [&] {
    const json* lj = opt_member(doc, "lifts");
    if (!lj) return;
    if (!scene.action) fail("/lifts", "lifts require an action");
    if (!lj->is_array() || lj->size() != scene.action->dim_g())
      fail("/lifts", "expected one lift per basis vector of algebra_g (" +
                         std::to_string(scene.action->dim_g()) + ")");
    std::vector<InvariantField> lifts;
    for (std::size_t v = 0; v < lj->size(); ++v) {
      const std::string lpath = "/lifts/" + std::to_string(v);
      const json& entry = (*lj)[v];
      LieValuedFunction psi =
          parse_lie_function(member(entry, lpath, "psi"), scene.algebra_h, n, lpath + "/psi");
      VectorField base = scene.action->generators[v];
      if (const json* bj = opt_member(entry, "base"))
        base = parse_vector_field(*bj, scene.chart, lpath + "/base");
      lifts.push_back(InvariantField{std::move(base), std::move(psi)});
    }
    scene.gconnection = make_gconnection(*scene.action, std::move(lifts));
  });

  section("/phi0", [&] {
    const json* pj = opt_member(doc, "phi0");
    if (!pj) return;
    if (!scene.algebra_g) fail("/phi0", "phi0 requires algebra_g");
    if (!pj->is_array() || pj->size() != scene.algebra_g->dim())
      fail("/phi0", "expected one value per basis vector of algebra_g");
    PhiZero phi = PhiZero::zero(scene.algebra_g, scene.algebra_h, n);
    for (std::size_t v = 0; v < pj->size(); ++v)
      phi.values[v] =
          parse_lie_function((*pj)[v], scene.algebra_h, n, "/phi0/" + std::to_string(v));
    scene.phi0 = std::move(phi);
  });

  section("/foliation", [&] {
    const json* fj = opt_member(doc, "foliation");
    if (!fj) return;
    const json& frame = member(*fj, "/foliation", "frame");
    if (!frame.is_array() || frame.empty())
      fail("/foliation/frame", "expected a nonempty array of vector fields");
    std::vector<VectorField> fields;
    for (std::size_t k = 0; k < frame.size(); ++k)
      fields.push_back(
          parse_vector_field(frame[k], scene.chart, "/foliation/frame/" + std::to_string(k)));
    std::vector<std::vector<Scalar>> samples;
    if (const json* sj = opt_member(*fj, "sample_points")) {
      if (!sj->is_array()) fail("/foliation/sample_points", "expected an array of points");
      for (std::size_t k = 0; k < sj->size(); ++k)
        samples.push_back(
            parse_point((*sj)[k], n, "/foliation/sample_points/" + std::to_string(k)));
    }
    scene.foliation = make_foliation(scene.chart, std::move(fields), std::move(samples));
    if (const json* dj = opt_member(*fj, "deltas")) {
      if (!dj->is_array() || dj->size() != scene.foliation->frame.size())
        fail("/foliation/deltas", "expected one delta per frame field");
      std::vector<LieValuedFunction> deltas;
      for (std::size_t k = 0; k < dj->size(); ++k)
        deltas.push_back(parse_lie_function((*dj)[k], scene.algebra_h, n,
                                            "/foliation/deltas/" + std::to_string(k)));
      scene.deltas = std::move(deltas);
    }
  });

  section("/flows", [&] {
    const json* fj = opt_member(doc, "flows");
    if (!fj) return;
    if (!fj->is_array()) fail("/flows", "expected an array of flow problems");
    for (std::size_t k = 0; k < fj->size(); ++k) {
      const std::string fpath = "/flows/" + std::to_string(k);
      const json& entry = (*fj)[k];
      FlowProblemSpec spec;
      spec.name = get_string(member(entry, fpath, "name"), fpath + "/name");
      spec.xi = parse_vector_field(member(entry, fpath, "xi"), scene.chart, fpath + "/xi");
      if (const json* fr = opt_member(entry, "frame")) {
        if (!fr->is_array()) fail(fpath + "/frame", "expected an array of vector fields");
        for (std::size_t l = 0; l < fr->size(); ++l)
          spec.frame.push_back(parse_vector_field(
              (*fr)[l], scene.chart, fpath + "/frame/" + std::to_string(l)));
      }
      if (const json* sp = opt_member(entry, "start_points")) {
        if (!sp->is_array()) fail(fpath + "/start_points", "expected an array of points");
        for (std::size_t l = 0; l < sp->size(); ++l)
          spec.start_points.push_back(
              parse_point((*sp)[l], n, fpath + "/start_points/" + std::to_string(l)));
      }
      if (const json* t = opt_member(entry, "t_max"))
        spec.t_max = get_double(*t, fpath + "/t_max");
      if (const json* s = opt_member(entry, "steps"))
        spec.steps = static_cast<int>(get_small_int(*s, fpath + "/steps"));
      if (const json* t = opt_member(entry, "tolerance"))
        spec.tolerance = get_double(*t, fpath + "/tolerance");
      if (spec.steps < 1) fail(fpath + "/steps", "steps must be at least 1");
      if (!(spec.t_max > 0)) fail(fpath + "/t_max", "t_max must be positive");
      if (!(spec.tolerance > 0)) fail(fpath + "/tolerance", "tolerance must be positive");
      if (const json* sp = opt_member(entry, "sample_points")) {
        if (!sp->is_array()) fail(fpath + "/sample_points", "expected an array of points");
        for (std::size_t l = 0; l < sp->size(); ++l)
          spec.sample_points.push_back(
              parse_point((*sp)[l], n, fpath + "/sample_points/" + std::to_string(l)));
      }
      if (const json* pj = opt_member(entry, "psi"))
        spec.psi = parse_lie_function(*pj, scene.algebra_h, n, fpath + "/psi");
      if (const json* mj = opt_member(entry, "flow_map")) {
        if (!mj->is_array() || mj->size() != n)
          fail(fpath + "/flow_map", "expected " + std::to_string(n) + " components");
        std::vector<Poly> comps;
        for (std::size_t l = 0; l < n; ++l)
          comps.push_back(parse_poly((*mj)[l], n + 1, fpath + "/flow_map/" + std::to_string(l)));
        spec.flow_map = std::move(comps);
      }
      if (const json* tv = opt_member(entry, "t_values")) {
        if (!tv->is_array()) fail(fpath + "/t_values", "expected an array of scalars");
        for (std::size_t l = 0; l < tv->size(); ++l)
          spec.t_values.push_back(parse_scalar((*tv)[l], fpath + "/t_values/" + std::to_string(l)));
      }
      scene.flows.push_back(std::move(spec));
    }
  });

  if (errors.empty()) result.scene = std::move(scene);
  return result;
}

SceneParseResult parse_scene_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    SceneParseResult result;
    result.errors.push_back({"/", "cannot open file: " + path});
    return result;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene_text(buf.str());
}

namespace {

json bigint_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return json(static_cast<std::int64_t>(v.get_si()));
  return json(v.get_str());
}

json point_to_json(const std::vector<Scalar>& p) {
  json out = json::array();
  for (const auto& s : p) out.push_back(scalar_to_json(s));
  return out;
}

json lie_function_to_json(const LieValuedFunction& f) {
  json out = json::array();
  for (const auto& p : f.components) out.push_back(poly_to_json(p));
  return out;
}

json vector_field_to_json(const VectorField& v) {
  json out = json::array();
  for (const auto& p : v.components) out.push_back(poly_to_json(p));
  return out;
}

json algebra_to_json(const LieAlgebra& alg) {
  json out;
  out["name"] = alg.name();
  out["basis"] = alg.basis_labels();
  json brackets = json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j) {
      bool nonzero = false;
      json coords = json::array();
      for (std::size_t k = 0; k < alg.dim(); ++k) {
        nonzero = nonzero || !alg.c(i, j, k).is_zero();
        coords.push_back(scalar_to_json(alg.c(i, j, k)));
      }
      if (!nonzero) continue;
      json entry;
      entry["i"] = i;
      entry["j"] = j;
      entry["c"] = coords;
      brackets.push_back(entry);
    }
  out["brackets"] = brackets;
  return out;
}

}  // namespace

json scalar_to_json(const Scalar& s) {
  return json::array({bigint_to_json(s.re_num()), bigint_to_json(s.re_den()),
                      bigint_to_json(s.im_num()), bigint_to_json(s.im_den())});
}

json poly_to_json(const Poly& p) {
  json out = json::array();
  for (const auto& [exp, c] : p.terms()) {
    json term;
    term["coeff"] = scalar_to_json(c);
    term["exp"] = exp;
    out.push_back(term);
  }
  return out;
}

json scene_to_json(const Scene& scene) {
  json out;
  out["schema"] = scene.schema;
  out["name"] = scene.name;
  if (!scene.description.empty()) out["description"] = scene.description;
  out["seed"] = scene.seed;
  out["chart"] = json{{"coords", scene.chart->coord_labels}};
  out["algebra_h"] = algebra_to_json(*scene.algebra_h);
  if (scene.algebra_g) out["algebra_g"] = algebra_to_json(*scene.algebra_g);
  if (scene.connection) {
    json comps = json::array();
    for (const auto& f : scene.connection->form.components) comps.push_back(lie_function_to_json(f));
    out["connection"] = comps;
  }
  if (scene.action) {
    json gens = json::array();
    for (const auto& g : scene.action->generators) gens.push_back(vector_field_to_json(g));
    out["action"] = json{{"generators", gens}};
  }
  if (scene.gconnection) {
    json lifts = json::array();
    for (const auto& lift : scene.gconnection->lifts)
      lifts.push_back(json{{"psi", lie_function_to_json(lift.vert)}});
    out["lifts"] = lifts;
  }
  if (scene.phi0) {
    json values = json::array();
    for (const auto& f : scene.phi0->values) values.push_back(lie_function_to_json(f));
    out["phi0"] = values;
  }
  if (scene.foliation) {
    json f;
    json frame = json::array();
    for (const auto& s : scene.foliation->frame) frame.push_back(vector_field_to_json(s));
    f["frame"] = frame;
    if (!scene.foliation->sample_points.empty()) {
      json samples = json::array();
      for (const auto& p : scene.foliation->sample_points) samples.push_back(point_to_json(p));
      f["sample_points"] = samples;
    }
    if (scene.deltas) {
      json deltas = json::array();
      for (const auto& d : *scene.deltas) deltas.push_back(lie_function_to_json(d));
      f["deltas"] = deltas;
    }
    out["foliation"] = f;
  }
  if (!scene.flows.empty()) {
    json flows = json::array();
    for (const auto& spec : scene.flows) {
      json f;
      f["name"] = spec.name;
      f["xi"] = vector_field_to_json(spec.xi);
      if (!spec.frame.empty()) {
        json frame = json::array();
        for (const auto& s : spec.frame) frame.push_back(vector_field_to_json(s));
        f["frame"] = frame;
      }
      if (!spec.start_points.empty()) {
        json starts = json::array();
        for (const auto& p : spec.start_points) starts.push_back(point_to_json(p));
        f["start_points"] = starts;
      }
      f["t_max"] = spec.t_max;
      f["steps"] = spec.steps;
      f["tolerance"] = spec.tolerance;
      if (!spec.sample_points.empty()) {
        json samples = json::array();
        for (const auto& p : spec.sample_points) samples.push_back(point_to_json(p));
        f["sample_points"] = samples;
      }
      if (spec.psi) f["psi"] = lie_function_to_json(*spec.psi);
      if (spec.flow_map) {
        json comps = json::array();
        for (const auto& p : *spec.flow_map) comps.push_back(poly_to_json(p));
        f["flow_map"] = comps;
      }
      if (!spec.t_values.empty()) {
        json ts = json::array();
        for (const auto& t : spec.t_values) ts.push_back(scalar_to_json(t));
        f["t_values"] = ts;
      }
      flows.push_back(f);
    }
    out["flows"] = flows;
  }
  return out;
}

std::string scene_to_text(const Scene& scene) { return scene_to_json(scene).dump(2) + "\n"; }

std::uint64_t scene_content_hash(const Scene& scene) {
  const std::string text = scene_to_text(scene);
  return fnv1a64(text.data(), text.size());
}

}  // namespace equiconn
