// Command-line front end: validates scene files, runs checks, solves for
// phi_0 and drives the numeric flow harness. Exit codes: 0 all requested
// checks pass, 1 some check fails (a mathematical verdict), 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "equiconn/flow.hpp"
#include "equiconn/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;

equiconn::Scene load_scene_or_exit(const std::string& path) {
  equiconn::SceneParseResult parsed = equiconn::parse_scene_file(path);
  if (!parsed.ok()) {
    std::cerr << "error: " << path << " is not a valid scene\n";
    for (const auto& err : parsed.errors)
      std::cerr << "  " << err.path << ": " << err.message << "\n";
    std::exit(kExitInputError);
  }
  return *parsed.scene;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(kExitInputError);
  }
  out << text;
}

int report_exit_code(const equiconn::Report& report) {
  if (report.any_errored()) return kExitInputError;
  if (report.any_failed()) return kExitFail;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adapted-connection checker for polynomial bundle data"};
  app.require_subcommand(1);

  std::string scene_path, format = "text", out_path, only_csv, problem_name, report_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int sigma_v = -1;
  std::size_t max_degree = 2;

  auto add_common = [&](CLI::App* cmd, bool with_sigma = true) {
    cmd->add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", out_path, "write the report to a file instead of stdout");
    cmd->add_option("--seed", seed, "override the scene seed for sampled checks")
        ->each([&](const std::string&) { seed_given = true; });
    if (with_sigma)
      cmd->add_option("--sigma-v", sigma_v, "vertical bracket sign convention (+1 or -1)")
          ->check(CLI::IsMember({-1, 1}));
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a scene file");
  validate->add_option("scene", scene_path, "scene JSON file")->required();

  CLI::App* check = app.add_subcommand("check", "run checks against a scene");
  check->add_option("scene", scene_path, "scene JSON file")->required();
  check->add_option("--only", only_csv, "comma-separated subset of checks to run");
  check->add_option("--max-degree", max_degree, "ansatz degree for the solve-phi0 check");
  add_common(check);

  CLI::App* solve = app.add_subcommand("solve-phi0", "solve for an adapted phi_0");
  solve->add_option("scene", scene_path, "scene JSON file")->required();
  solve->add_option("--max-degree", max_degree, "maximum total degree of the ansatz")
      ->required();
  add_common(solve);

  CLI::App* flow = app.add_subcommand("flow", "run one named flow problem");
  flow->add_option("scene", scene_path, "scene JSON file")->required();
  flow->add_option("--problem", problem_name, "flow problem name")->required();
  add_common(flow);

  CLI::App* report_cmd = app.add_subcommand("report", "re-render a saved report");
  report_cmd->add_option("report", report_path, "report JSON file")->required();
  report_cmd->add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  report_cmd->add_option("--out", out_path, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (validate->parsed()) {
      load_scene_or_exit(scene_path);
      std::cout << "ok: " << scene_path << " is a valid scene\n";
      return kExitPass;
    }

    if (check->parsed()) {
      const equiconn::Scene scene = load_scene_or_exit(scene_path);
      equiconn::CheckOptions options;
      if (seed_given) options.seed_override = seed;
      options.sigma = sigma_v == 1 ? equiconn::VerticalSign::plus : equiconn::VerticalSign::minus;
      options.solve_max_degree = max_degree;
      const std::vector<std::string> list =
          only_csv.empty() ? equiconn::all_check_names() : split_list(only_csv);
      const equiconn::Report report = equiconn::run_checks(scene, list, options);
      emit(format == "json" ? equiconn::report_to_json(report).dump(2) + "\n"
                            : equiconn::report_to_text(report),
           out_path);
      return report_exit_code(report);
    }

    if (solve->parsed()) {
      const equiconn::Scene scene = load_scene_or_exit(scene_path);
      if (!scene.action) {
        std::cerr << "error: scene has no action section\n";
        return kExitInputError;
      }
      const equiconn::VerticalSign sv =
          sigma_v == 1 ? equiconn::VerticalSign::plus : equiconn::VerticalSign::minus;
      const equiconn::SolvePhi0Result res =
          equiconn::solve_phi0(*scene.connection, *scene.action, max_degree, sv);
      if (format == "json") {
        nlohmann::json out;
        out["found"] = res.found;
        out["max_degree"] = max_degree;
        if (res.found) {
          nlohmann::json values = nlohmann::json::array();
          for (const auto& f : res.phi0->values) {
            nlohmann::json comps = nlohmann::json::array();
            for (const auto& p : f.components) comps.push_back(equiconn::poly_to_json(p));
            values.push_back(comps);
          }
          out["phi0"] = values;
          out["kernel_dimension"] = res.kernel.size();
        }
        emit(out.dump(2) + "\n", out_path);
      } else {
        std::ostringstream os;
        if (res.found) {
          os << "phi0 found (ansatz degree " << max_degree << ", kernel dimension "
             << res.kernel.size() << "):\n";
          for (std::size_t v = 0; v < res.phi0->values.size(); ++v)
            os << "  " << scene.algebra_g->basis_labels()[v] << " -> "
               << res.phi0->values[v].str(scene.chart->coord_labels) << "\n";
        } else {
          os << "no solution with polynomial entries up to total degree " << max_degree << "\n";
        }
        emit(os.str(), out_path);
      }
      return res.found ? kExitPass : kExitFail;
    }

    if (flow->parsed()) {
      const equiconn::Scene scene = load_scene_or_exit(scene_path);
      const equiconn::FlowProblemSpec* spec = nullptr;
      for (const auto& s : scene.flows)
        if (s.name == problem_name) spec = &s;
      if (!spec) {
        std::cerr << "error: no flow problem named '" << problem_name << "'\n";
        return kExitInputError;
      }
      std::ostringstream os;
      bool consistent = true;
      if (!spec->frame.empty()) {
        std::vector<std::vector<equiconn::Scalar>> samples = spec->sample_points;
        if (samples.empty())
          samples = equiconn::default_sample_points(
              spec->frame, 8, (seed_given ? seed : scene.seed) ^ 0x9e3779b9ULL);
        const bool bracket =
            equiconn::bracket_condition(spec->xi, spec->frame, samples).holds;
        std::vector<Eigen::VectorXd> starts;
        for (const auto& p : spec->start_points) {
          Eigen::VectorXd v(p.size());
          for (std::size_t c = 0; c < p.size(); ++c)
            v[static_cast<Eigen::Index>(c)] = p[c].to_double();
          starts.push_back(std::move(v));
        }
        const equiconn::TransportReport tr =
            equiconn::transport_frame(spec->xi, spec->frame, starts, spec->t_max, spec->steps);
        os << "problem: " << spec->name << "\n";
        os << "  bracket condition: " << (bracket ? "holds" : "fails") << "\n";
        os << "  max transport deviation: " << tr.max_deviation << " (tolerance "
           << spec->tolerance << ")\n";
        consistent = bracket == (tr.max_deviation <= spec->tolerance);
        os << "  flow-invariance matches the bracket condition: "
           << (consistent ? "yes" : "NO") << "\n";
      }
      if (spec->flow_map) {
        auto labels = scene.chart->coord_labels;
        labels.push_back("@t");
        const equiconn::PolyMap phi =
            equiconn::make_poly_map(equiconn::make_chart(labels), scene.chart, *spec->flow_map);
        const equiconn::LieValuedFunction psi =
            spec->psi ? *spec->psi
                      : equiconn::LieValuedFunction::zero(scene.algebra_h, scene.chart->dim());
        std::vector<equiconn::Scalar> ts = spec->t_values;
        if (ts.empty())
          ts = {equiconn::Scalar(1), equiconn::Scalar(-1), equiconn::Scalar(1, 2)};
        const equiconn::Prop1Result pr =
            equiconn::check_prop1_polyflow(*scene.connection, spec->xi, phi, psi, ts);
        os << "  closed-form flow preserves the connection: " << (pr.holds ? "yes" : "no")
           << "\n";
        if (!pr.holds) {
          os << "    at t = " << pr.failing_t->str() << ": residual " << pr.residual->str()
             << "\n";
          consistent = false;
        }
      }
      emit(os.str(), out_path);
      return consistent ? kExitPass : kExitFail;
    }

    if (report_cmd->parsed()) {
      std::ifstream in(report_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot open " << report_path << "\n";
        return kExitInputError;
      }
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: " << report_path << " is not valid JSON: " << e.what() << "\n";
        return kExitInputError;
      }
      const equiconn::Report report = equiconn::report_from_json(j);
      emit(format == "json" ? equiconn::report_to_json(report).dump(2) + "\n"
                            : equiconn::report_to_text(report),
           out_path);
      return report_exit_code(report);
    }
  } catch (const equiconn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
