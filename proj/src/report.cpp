#include "equiconn/report.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "equiconn/errors.hpp"
#include "equiconn/flow.hpp"
#include "equiconn/rng.hpp"

namespace equiconn {

namespace {

struct CheckSpec {
  const char* name;
  const char* anchor;
};

// Anchor strings point back into the write-up the fixtures come from.
constexpr CheckSpec kChecks[] = {
    {"adapted", "Eq. (a1)"},
    {"contraction-criterion", "Lemma 2 / Eq. (z)"},
    {"curvature", "end of 2.1 (curvature of a connection)"},
    {"foliation-involutive", "Section 5 (holomorphic foliation)"},
    {"g-curvature", "Eq. (b)"},
    {"lemma1-flow", "Lemma 1"},
    {"partial-flat", "Section 5 (flat partial connection)"},
    {"prop1-polyflow", "Proposition 1"},
    {"solve-phi0", "Theorem 1"},
    {"strongly-adapted", "Eq. (Jc)"},
    {"strongly-adapted-to-D", "Section 5 / Corollary 3"},
    {"theorem1-check", "Theorem 1 / Eq. (iii)"},
    {"tilde-eta", "Eq. (te)"},
};

const char* anchor_for(const std::string& name) {
  for (const auto& spec : kChecks)
    if (name == spec.name) return spec.anchor;
  throw ValidationError("unknown check name: " + name);
}

std::string label(const Scene& scene, std::size_t g_index) {
  return scene.algebra_g ? scene.algebra_g->basis_labels()[g_index]
                         : "v" + std::to_string(g_index + 1);
}

std::string coord(const Scene& scene, std::size_t i) { return scene.chart->coord_labels[i]; }

// Per-check execution context; fills one entry.
struct Runner {
  const Scene& scene;
  const CheckOptions& options;
  std::uint64_t effective_seed;

  Foliation foliation_with_samples() const {
    Foliation F = *scene.foliation;
    if (F.sample_points.empty())
      F.sample_points =
          default_sample_points(F.frame, 8, effective_seed ^ scene_content_hash(scene));
    return F;
  }

  void unsupported(ReportEntry& e, const std::string& missing) const {
    e.verdict = Verdict::unsupported;
    e.message = "scene has no " + missing;
  }

  void run(ReportEntry& e) const {
    const auto& vars = scene.chart->coord_labels;
    const VerticalSign sv = options.sigma;

    const bool needs_connection = e.check != "foliation-involutive" && e.check != "lemma1-flow";
    if (needs_connection && !scene.connection) return unsupported(e, "connection section");

    if (e.check == "curvature") {
      curvature(*scene.connection, sv);
      e.verdict = Verdict::pass;
    } else if (e.check == "g-curvature") {
      if (!scene.gconnection) return unsupported(e, "lifts section (G-connection)");
      g_curvature(*scene.gconnection, sv);
      e.verdict = Verdict::pass;
    } else if (e.check == "adapted") {
      if (!scene.gconnection) return unsupported(e, "lifts section (G-connection)");
      AdaptedResult r = is_adapted(*scene.connection, *scene.gconnection, sv);
      e.verdict = r.adapted ? Verdict::pass : Verdict::fail;
      if (!r.adapted)
        e.witness = "bracket with the lift of " + label(scene, r.basis_index) + " along d/d" +
                    coord(scene, r.coord_index) + " has vertical defect " +
                    r.defect->str(vars);
    } else if (e.check == "strongly-adapted") {
      if (!scene.gconnection) return unsupported(e, "lifts section (G-connection)");
      StronglyAdaptedResult r = is_strongly_adapted(*scene.connection, *scene.gconnection, sv);
      e.verdict = r.strongly_adapted ? Verdict::pass : Verdict::fail;
      if (!r.strongly_adapted) {
        std::string w = "adapted clause ";
        w += r.adapted_clause.adapted ? "pass" : "fail";
        if (!r.adapted_clause.adapted)
          w += " (defect " + r.adapted_clause.defect->str(vars) + " along d/d" +
               coord(scene, r.adapted_clause.coord_index) + ")";
        w += "; image clause ";
        w += r.image_ok ? "pass" : "fail";
        if (!r.image_ok)
          w += " (lift of " + label(scene, r.image_index) + " has vertical defect " +
               r.image_defect->str(vars) + ")";
        e.witness = w;
      }
    } else if (e.check == "tilde-eta") {
      if (!scene.action) return unsupported(e, "action section");
      tilde_eta(*scene.connection, *scene.action);
      e.verdict = Verdict::pass;
    } else if (e.check == "contraction-criterion") {
      if (!scene.action) return unsupported(e, "action section");
      ContractionResult r = contraction_criterion(*scene.connection, *scene.action, sv);
      e.verdict = r.vanishes ? Verdict::pass : Verdict::fail;
      if (!r.vanishes)
        e.witness = "contraction against the generator of " + label(scene, r.basis_index) +
                    " is " + r.contraction->str();
    } else if (e.check == "theorem1-check") {
      if (!scene.action) return unsupported(e, "action section");
      if (!scene.phi0) return unsupported(e, "phi0 section");
      Theorem1Result r = theorem1_check(*scene.phi0, *scene.connection, *scene.action, sv);
      e.verdict = r.holds ? Verdict::pass : Verdict::fail;
      if (!r.holds)
        e.witness = "entry (" + label(scene, r.basis_index) + ", d/d" +
                    coord(scene, r.coord_index) + ") of phi-tilde + Pi is " +
                    r.defect->str(vars);
    } else if (e.check == "solve-phi0") {
      if (!scene.action) return unsupported(e, "action section");
      SolvePhi0Result r =
          solve_phi0(*scene.connection, *scene.action, options.solve_max_degree, sv);
      e.verdict = r.found ? Verdict::pass : Verdict::fail;
      if (!r.found)
        e.witness = "no polynomial solution up to total degree " +
                    std::to_string(options.solve_max_degree);
    } else if (e.check == "foliation-involutive") {
      if (!scene.foliation) return unsupported(e, "foliation section");
      InvolutiveResult r = check_involutive(foliation_with_samples());
      e.verdict = r.involutive ? Verdict::pass : Verdict::fail;
      if (!r.involutive) {
        std::ostringstream w;
        w << "[s" << r.i + 1 << ", s" << r.j + 1 << "] leaves the span at sample "
          << r.sample_index << ": (";
        for (std::size_t c = 0; c < r.bracket_value->size(); ++c)
          w << (c ? ", " : "") << (*r.bracket_value)[c].str();
        w << ")";
        e.witness = w.str();
      }
    } else if (e.check == "partial-flat") {
      if (!scene.foliation) return unsupported(e, "foliation section");
      if (!scene.deltas) return unsupported(e, "foliation deltas (partial connection)");
      PartialConnection D = make_partial_connection(foliation_with_samples(), *scene.deltas);
      FlatnessResult r = partial_curvature_flat(D, sv);
      e.verdict = r.flat ? Verdict::pass : Verdict::fail;
      if (!r.flat) {
        std::ostringstream w;
        w << "curvature of D on (s" << r.i + 1 << ", s" << r.j + 1 << ") at sample "
          << r.sample_index << " is (";
        for (std::size_t c = 0; c < r.defect->coords.size(); ++c)
          w << (c ? ", " : "") << r.defect->coords[c].str();
        w << ")";
        e.witness = w.str();
      }
    } else if (e.check == "strongly-adapted-to-D") {
      if (!scene.foliation) return unsupported(e, "foliation section");
      if (!scene.deltas) return unsupported(e, "foliation deltas (partial connection)");
      PartialConnection D = make_partial_connection(*scene.foliation, *scene.deltas);
      StronglyAdaptedToDResult r = strongly_adapted_to_D(*scene.connection, D, sv);
      e.verdict = r.holds ? Verdict::pass : Verdict::fail;
      if (!r.holds) {
        if (r.failed_clause == 1)
          e.witness = "restriction clause fails: delta_" + std::to_string(r.index + 1) +
                      " + A(s" + std::to_string(r.index + 1) + ") = " +
                      r.restriction_defect->str(vars);
        else
          e.witness = "contraction clause fails: i_{s" + std::to_string(r.index + 1) +
                      "} K = " + r.contraction_defect->str();
      }
    } else if (e.check == "lemma1-flow") {
      bool any = false;
      for (const auto& spec : scene.flows) {
        if (spec.frame.empty()) continue;
        any = true;
        std::vector<std::vector<Scalar>> samples = spec.sample_points;
        if (samples.empty())
          samples = default_sample_points(spec.frame, 8, effective_seed ^ fnv1a64(
                        spec.name.data(), spec.name.size()));
        const bool bracket = bracket_condition(spec.xi, spec.frame, samples).holds;
        std::vector<Eigen::VectorXd> starts;
        for (const auto& p : spec.start_points) {
          Eigen::VectorXd v(p.size());
          for (std::size_t c = 0; c < p.size(); ++c)
            v[static_cast<Eigen::Index>(c)] = p[c].to_double();
          starts.push_back(std::move(v));
        }
        if (starts.empty())
          throw ValidationError("flow problem '" + spec.name + "' has no start points");
        const TransportReport tr =
            transport_frame(spec.xi, spec.frame, starts, spec.t_max, spec.steps);
        const bool transported_invariant = tr.max_deviation <= spec.tolerance;
        if (bracket != transported_invariant) {
          e.verdict = Verdict::fail;
          std::ostringstream w;
          w << "problem '" << spec.name << "': bracket condition "
            << (bracket ? "holds" : "fails") << " but max transport deviation is "
            << tr.max_deviation << " against tolerance " << spec.tolerance;
          e.witness = w.str();
          return;
        }
      }
      if (!any) return unsupported(e, "flow problem with a distribution frame");
      e.verdict = Verdict::pass;
    } else if (e.check == "prop1-polyflow") {
      bool any = false;
      for (const auto& spec : scene.flows) {
        if (!spec.flow_map) continue;
        any = true;
        const PolyMap phi = make_poly_map(
            make_chart([&] {
              auto labels = scene.chart->coord_labels;
              labels.push_back("@t");
              return labels;
            }()),
            scene.chart, *spec.flow_map);
        const LieValuedFunction psi =
            spec.psi ? *spec.psi
                     : LieValuedFunction::zero(scene.algebra_h, scene.chart->dim());
        std::vector<Scalar> ts = spec.t_values;
        if (ts.empty()) ts = {Scalar(1), Scalar(-1), Scalar(1, 2)};
        Prop1Result r = check_prop1_polyflow(*scene.connection, spec.xi, phi, psi, ts);
        if (!r.holds) {
          e.verdict = Verdict::fail;
          e.witness = "problem '" + spec.name + "': pulled-back form differs at t = " +
                      r.failing_t->str() + " by " + r.residual->str();
          return;
        }
      }
      if (!any) return unsupported(e, "flow problem with a closed-form flow map");
      e.verdict = Verdict::pass;
    } else {
      throw ValidationError("unknown check name: " + e.check);
    }
  }
};

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unsupported: return "unsupported";
    case Verdict::error: return "error";
  }
  return "error";
}

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& spec : kChecks) out.push_back(spec.name);
    return out;
  }();
  return names;
}

bool Report::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) {
    return e.verdict == Verdict::pass || e.verdict == Verdict::unsupported;
  });
}

bool Report::any_failed() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const ReportEntry& e) { return e.verdict == Verdict::fail; });
}

bool Report::any_errored() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const ReportEntry& e) { return e.verdict == Verdict::error; });
}

std::uint64_t Report::content_hash() const {
  std::ostringstream os;
  os << scene_name << '\x1f' << seed << '\x1f' << sigma_v << '\x1f';
  for (const auto& e : entries) {
    os << e.check << '\x1f' << verdict_name(e.verdict) << '\x1f'
       << (e.witness ? *e.witness : std::string()) << '\x1f' << e.message << '\x1f' << e.anchor
       << '\x1e';
  }
  const std::string text = os.str();
  return fnv1a64(text.data(), text.size());
}

Report run_checks(const Scene& scene, const std::vector<std::string>& checks,
                  const CheckOptions& options) {
  Report report;
  report.scene_name = scene.name;
  report.seed = options.seed_override.value_or(scene.seed);
  report.sigma_v = static_cast<int>(options.sigma);

  std::vector<std::string> requested = checks;
  std::sort(requested.begin(), requested.end());
  requested.erase(std::unique(requested.begin(), requested.end()), requested.end());

  Runner runner{scene, options, report.seed};
  for (const auto& name : requested) {
    ReportEntry entry;
    entry.check = name;
    entry.anchor = anchor_for(name);  // also rejects unknown names
    const auto start = std::chrono::steady_clock::now();
    try {
      runner.run(entry);
    } catch (const Error& err) {
      entry.verdict = Verdict::error;
      entry.witness.reset();
      entry.message = err.what();
    }
    entry.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    report.entries.push_back(std::move(entry));
  }
  return report;
}

nlohmann::json report_to_json(const Report& report) {
  nlohmann::json out;
  out["schema"] = 1;
  out["scene"] = report.scene_name;
  out["seed"] = report.seed;
  out["sigma_v"] = report.sigma_v;
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << report.content_hash();
  out["content_hash"] = hash.str();
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json ej;
    ej["check"] = e.check;
    ej["verdict"] = verdict_name(e.verdict);
    if (e.witness) ej["witness"] = *e.witness;
    if (!e.message.empty()) ej["message"] = e.message;
    ej["anchor"] = e.anchor;
    ej["time_ms"] = e.time_ms;
    entries.push_back(ej);
  }
  out["entries"] = entries;
  return out;
}

Report report_from_json(const nlohmann::json& j) {
  Report report;
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw ValidationError("not a report document (missing entries array)");
  report.scene_name = j.value("scene", std::string());
  report.seed = j.value("seed", std::uint64_t{0});
  report.sigma_v = j.value("sigma_v", -1);
  for (const auto& ej : j["entries"]) {
    ReportEntry e;
    e.check = ej.value("check", std::string());
    const std::string v = ej.value("verdict", std::string("error"));
    if (v == "pass")
      e.verdict = Verdict::pass;
    else if (v == "fail")
      e.verdict = Verdict::fail;
    else if (v == "unsupported")
      e.verdict = Verdict::unsupported;
    else
      e.verdict = Verdict::error;
    if (ej.contains("witness")) e.witness = ej["witness"].get<std::string>();
    e.message = ej.value("message", std::string());
    e.anchor = ej.value("anchor", std::string());
    e.time_ms = ej.value("time_ms", 0.0);
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::string report_to_text(const Report& report) {
  std::ostringstream os;
  os << "scene: " << report.scene_name << " (seed " << report.seed << ", sigma_v "
     << report.sigma_v << ")\n";
  std::size_t passed = 0, failed = 0, unsupported = 0, errored = 0;
  for (const auto& e : report.entries) {
    os << "  [" << verdict_name(e.verdict) << "] " << std::left << std::setw(24) << e.check
       << " " << std::setw(40) << e.anchor << std::right << std::fixed << std::setprecision(2)
       << e.time_ms << " ms\n";
    if (e.witness) os << "      witness: " << *e.witness << "\n";
    if (!e.message.empty()) os << "      note: " << e.message << "\n";
    switch (e.verdict) {
      case Verdict::pass: ++passed; break;
      case Verdict::fail: ++failed; break;
      case Verdict::unsupported: ++unsupported; break;
      case Verdict::error: ++errored; break;
    }
  }
  os << "  " << passed << " passed, " << failed << " failed, " << unsupported << " unsupported, "
     << errored << " errored\n";
  return os.str();
}

}  // namespace equiconn
