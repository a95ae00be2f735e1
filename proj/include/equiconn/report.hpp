#ifndef EQUICONN_REPORT_HPP
#define EQUICONN_REPORT_HPP

#include "equiconn/scene.hpp"

namespace equiconn {

enum class Verdict { pass, fail, unsupported, error };

std::string verdict_name(Verdict v);

struct ReportEntry {
  std::string check;
  Verdict verdict = Verdict::error;
  std::optional<std::string> witness;  // present exactly when verdict == fail
  std::string message;                 // detail for unsupported/error entries
  std::string anchor;                  // pointer into the write-up, e.g. "Eq. (a1)"
  double time_ms = 0.0;
};

struct Report {
  std::string scene_name;
  std::uint64_t seed = 0;
  int sigma_v = -1;
  std::vector<ReportEntry> entries;  // sorted by check name

  bool all_passed() const;   // pass/unsupported only
  bool any_failed() const;   // some verdict == fail
  bool any_errored() const;  // some verdict == error
  /// Stable hash of everything except the timing fields.
  std::uint64_t content_hash() const;
};

struct CheckOptions {
  std::optional<std::uint64_t> seed_override;
  VerticalSign sigma = kDefaultVerticalSign;
  std::size_t solve_max_degree = 2;  // ansatz degree for the solve-phi0 check
};

/// All check names, in their canonical (sorted) order.
const std::vector<std::string>& all_check_names();

/// Runs the requested checks against a scene; unknown names throw
/// ValidationError, missing scene sections yield "unsupported" entries and
/// computation failures are captured as "error" entries.
Report run_checks(const Scene& scene, const std::vector<std::string>& checks,
                  const CheckOptions& options = {});

nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);
std::string report_to_text(const Report& report);

}  // namespace equiconn

#endif
