// CSV and JSON artifact writers plus the run orchestrator used by the CLI.

#ifndef ENDEX_OUTPUT_HPP
#define ENDEX_OUTPUT_HPP

#include <string>

#include <json.hpp>

#include "endex/config.hpp"
#include "endex/scenarios.hpp"

namespace endex {

inline constexpr const char* kToolName = "endexsim";
inline constexpr const char* kToolVersion = "1.0.0";

// Fixed column schema: param, c1, T1, c2, T2, p1, p1_eq, p2, p2_eq,
// conversion, max_re_lambda, stability. Calciner columns are empty in
// standalone mode. Numbers carry 12 significant digits.
void write_branch_csv(const std::string& path, const Branch& b, Mode mode);

// Fixed column schema: t, c1, T1, c2, T2, p1, p2 (t, c1, T1, p1 standalone).
void write_trajectory_csv(const std::string& path, const Trajectory& t, Mode mode);

nlohmann::json summary_json(const ScenarioResult& result, const RunConfig& cfg,
                            const std::vector<std::string>& written_files);

// Execute the configured scenario and write branch/trajectory CSVs plus
// summary.json under cfg.output_dir. Returns the process exit status:
// 0 success, 2 solver non-convergence (partial outputs carry truncated=true).
int run(const RunConfig& cfg);

}  // namespace endex

#endif  // ENDEX_OUTPUT_HPP
