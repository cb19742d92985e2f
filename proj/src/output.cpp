#include "endex/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace endex {

namespace {

// fixed 12-significant-digit formatting keeps regression diffs stable
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string cell(double v) { return std::isnan(v) ? std::string() : num(v); }

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

void write_branch_csv(const std::string& path, const Branch& b, Mode mode) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "param,c1,T1,c2,T2,p1,p1_eq,p2,p2_eq,conversion,max_re_lambda,stability\n";
    for (const auto& r : b.records) {
        const bool endex = mode == Mode::endex;
        out << num(r.param_value) << ',' << num(r.state[0]) << ',' << num(r.state[1]) << ','
            << (endex ? num(r.state[2]) : std::string()) << ','
            << (endex ? num(r.state[3]) : std::string()) << ',' << num(r.derived.p1) << ','
            << num(r.derived.p1_eq) << ',' << cell(r.derived.p2) << ','
            << cell(r.derived.p2_eq) << ',' << num(r.derived.conversion) << ','
            << num(r.stability.max_real_part) << ','
            << (r.stability.kind == StabilityClass::Kind::stable ? "stable" : "unstable")
            << '\n';
    }
}

void write_trajectory_csv(const std::string& path, const Trajectory& t, Mode mode) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (mode == Mode::endex) {
        out << "t,c1,T1,c2,T2,p1,p2\n";
        for (size_t i = 0; i < t.times.size(); ++i) {
            const Vec& s = t.states[i];
            out << num(t.times[i]) << ',' << num(s[0]) << ',' << num(s[1]) << ',' << num(s[2])
                << ',' << num(s[3]) << ',' << num(pressure_of(std::max(s[0], 0.0), s[1]))
                << ',' << num(pressure_of(std::max(s[2], 0.0), s[3])) << '\n';
        }
    } else {
        out << "t,c1,T1,p1\n";
        for (size_t i = 0; i < t.times.size(); ++i) {
            const Vec& s = t.states[i];
            out << num(t.times[i]) << ',' << num(s[0]) << ',' << num(s[1]) << ','
                << num(pressure_of(std::max(s[0], 0.0), s[1])) << '\n';
        }
    }
}

nlohmann::json summary_json(const ScenarioResult& result, const RunConfig& cfg,
                            const std::vector<std::string>& written_files) {
    using nlohmann::json;
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["timestamp"] = iso_timestamp();
    j["scenario"] = result.spec.name;

    int stable = 0, unstable = 0;
    bool truncated = false;
    json singular = json::array();
    for (const auto& lb : result.branches) {
        truncated = truncated || lb.branch.truncated;
        for (const auto& r : lb.branch.records)
            (r.stability.kind == StabilityClass::Kind::stable ? stable : unstable)++;
        for (const auto& sp : lb.branch.singular_points) {
            json s;
            s["branch"] = lb.label;
            s["kind"] = sp.kind == SingularKind::fold ? "fold" : "hopf";
            s["param"] = lb.branch.param;
            s["param_value"] = sp.param_value;
            s["state"] = sp.state;
            s["crossing_eigenvalue"] = {{"re", sp.crossing_eigenvalue.real()},
                                        {"im", sp.crossing_eigenvalue.imag()}};
            s["low_confidence"] = sp.low_confidence;
            singular.push_back(s);
        }
    }
    j["singular_points"] = singular;
    j["stability_counts"] = {{"stable", stable}, {"unstable", unstable}};

    int clamps = 0;
    json events = json::array();
    for (const auto& lt : result.trajectories)
        for (const auto& [time, what] : lt.trajectory.event_log) {
            if (what.find("clamp") != std::string::npos)
                ++clamps;
            else
                events.push_back({{"t", time}, {"what", what}, {"trajectory", lt.label}});
        }
    j["parameter_switches"] = events;
    j["clamp_events"] = clamps;

    j["truncated"] = truncated;
    j["notes"] = result.notes;
    if (result.error) j["error"] = *result.error;
    j["outputs"] = written_files;
    j["resolved_config"] = resolved_config_json(cfg);
    return j;
}

int run(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);

    ScenarioResult result;
    int status = 0;
    try {
        result = run_scenario(cfg.spec, cfg.tolerances);
    } catch (const std::exception& e) {
        // nothing usable was produced; record the failure in the summary
        result.spec = cfg.spec;
        result.error = e.what();
        status = 2;
    }
    if (result.error && status == 0) status = 2;

    std::vector<std::string> written;
    if (cfg.format.csv) {
        for (const auto& lb : result.branches) {
            const std::string path =
                (fs::path(cfg.output_dir) / ("branch_" + lb.label + ".csv")).string();
            write_branch_csv(path, lb.branch, cfg.spec.mode);
            written.push_back(path);
        }
        for (const auto& lt : result.trajectories) {
            const std::string path =
                (fs::path(cfg.output_dir) / ("trajectory_" + lt.label + ".csv")).string();
            write_trajectory_csv(path, lt.trajectory, cfg.spec.mode);
            written.push_back(path);
        }
    }
    if (cfg.format.json) {
        const std::string path = (fs::path(cfg.output_dir) / "summary.json").string();
        std::ofstream out(path);
        out << summary_json(result, cfg, written).dump(2) << '\n';
        written.push_back(path);
    }
    return status;
}

}  // namespace endex
