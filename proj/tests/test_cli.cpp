#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <unistd.h>

// End-to-end exercises of the command-line surface: exit codes and output
// shape, driven through the shipped scene files.

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

std::string temp_path(const char* suffix) {
  static int counter = 0;
  return "/tmp/equiconn_cli_test_" + std::to_string(::getpid()) + "_" +
         std::to_string(counter++) + suffix;
}

RunResult run(const std::string& args) {
  const std::string out_file = temp_path(".out");
  const std::string cmd =
      std::string(EQUICONN_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WEXITSTATUS(raw);
  std::ifstream in(out_file);
  res.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  std::remove(out_file.c_str());
  return res;
}

std::string scene(const char* name) {
  return std::string(EQUICONN_SCENE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("validate accepts the shipped scenes") {
  for (const char* name : {"c2_translation.scene.json", "center_glr.scene.json",
                           "foliation_ydy.scene.json", "foliation_flat.scene.json",
                           "lemma1_flows.scene.json"}) {
    CAPTURE(name);
    CHECK(run("validate " + scene(name)).exit_code == 0);
  }
}

TEST_CASE("validate rejects a malformed document with exit code 2") {
  const std::string path = temp_path(".json");
  std::ofstream(path) << "{ not json";
  RunResult res = run("validate " + path);
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("not a valid scene") != std::string::npos);
  std::remove(path.c_str());
  CHECK(run("validate /no/such/file.json").exit_code == 2);
}

TEST_CASE("check exits 1 when a mathematical verdict fails") {
  RunResult res = run("check " + scene("c2_translation.scene.json") +
                      " --only adapted,strongly-adapted");
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("[fail] adapted") != std::string::npos);
}

TEST_CASE("check exits 0 when all requested checks pass") {
  RunResult res = run("check " + scene("center_glr.scene.json") +
                      " --only adapted,contraction-criterion,curvature");
  CHECK(res.exit_code == 0);
}

TEST_CASE("unknown check names are an input error") {
  CHECK(run("check " + scene("center_glr.scene.json") + " --only no-such-check").exit_code == 2);
}

TEST_CASE("json report renders and re-renders") {
  const std::string report_file = temp_path(".json");
  RunResult res = run("check " + scene("foliation_flat.scene.json") + " --format json --out " +
                      report_file);
  CHECK(res.exit_code == 0);
  RunResult rendered = run("report " + report_file + " --format text");
  CHECK(rendered.exit_code == 0);
  CHECK(rendered.output.find("strongly-adapted-to-D") != std::string::npos);
  std::remove(report_file.c_str());
}

TEST_CASE("solve-phi0 verb") {
  RunResult found = run("solve-phi0 " + scene("c2_translation.scene.json") + " --max-degree 1");
  CHECK(found.exit_code == 0);
  CHECK(found.output.find("phi0 found") != std::string::npos);
  RunResult none = run("solve-phi0 " + scene("c2_translation.scene.json") + " --max-degree 0");
  CHECK(none.exit_code == 1);
  CHECK(none.output.find("no solution") != std::string::npos);
}

TEST_CASE("flow verb runs a named problem") {
  RunResult res =
      run("flow " + scene("lemma1_flows.scene.json") + " --problem shear-tilts-horizontal");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("bracket condition: fails") != std::string::npos);
  CHECK(run("flow " + scene("lemma1_flows.scene.json") + " --problem nope").exit_code == 2);
}

TEST_CASE("sigma-v option is accepted for both settings") {
  CHECK(run("check " + scene("center_glr.scene.json") + " --only adapted --sigma-v=+1")
            .exit_code == 0);
  CHECK(run("check " + scene("center_glr.scene.json") + " --only adapted --sigma-v=-1")
            .exit_code == 0);
}
