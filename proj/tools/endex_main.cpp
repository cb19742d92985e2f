// Command-line front end: steady-state solves, parameter sweeps, transient
// integration, named scenario campaigns, eigenvalue reports, and fold-locus
// continuation, with CSV/JSON artifacts for plotting and regression.

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "endex/config.hpp"
#include "endex/continuation.hpp"
#include "endex/output.hpp"
#include "endex/scenarios.hpp"

namespace fs = std::filesystem;
using namespace endex;

namespace {

constexpr int kExitSolver = 2;
constexpr int kExitConfig = 3;

struct CommonArgs {
    std::string config_path;
    std::string output_dir = "out";
    std::vector<std::string> set;  // name=value (SI units)
    std::string mode = "endex";
};

Mode parse_mode_flag(const std::string& m) {
    if (m == "endex") return Mode::endex;
    if (m == "standalone") return Mode::standalone;
    throw ConfigError("--mode must be endex or standalone");
}

// --set NAME=VALUE pairs are SI-valued; unit-checked entry goes through the
// config file instead.
ModelParams apply_set_flags(ModelParams P, const std::vector<std::string>& pairs) {
    for (const auto& kv : pairs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set needs NAME=VALUE, got " + kv);
        set_model_field(P, kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
    P.validate();
    return P;
}

void print_record(const SteadyStateRecord& r, Mode mode) {
    std::printf("state:\n  c1 = %.10g mol/m^3\n  T1 = %.10g K\n", r.state[0], r.state[1]);
    if (mode == Mode::endex)
        std::printf("  c2 = %.10g mol/m^3\n  T2 = %.10g K\n", r.state[2], r.state[3]);
    std::printf("derived:\n  p1 = %.10g Pa (p1_eq = %.10g Pa)\n", r.derived.p1, r.derived.p1_eq);
    if (mode == Mode::endex)
        std::printf("  p2 = %.10g Pa (p2_eq = %.10g Pa)\n", r.derived.p2, r.derived.p2_eq);
    std::printf("  conversion = %.6g\n", r.derived.conversion);
    std::printf("eigenvalues:\n");
    for (const auto& v : r.eigen.values)
        std::printf("  % .10g %+.10gi\n", v.real(), v.imag());
    std::printf("stability: %s%s (max Re = %.6g 1/s)\n",
                r.stability.kind == StabilityClass::Kind::stable ? "stable" : "unstable",
                r.stability.oscillatory ? ", oscillatory" : "", r.stability.max_real_part);
    std::printf("residual (scaled inf-norm): %.3g\n", r.residual_norm);
}

int cmd_steady(const CommonArgs& args) {
    ModelParams P = apply_set_flags(ModelParams{}, args.set);
    const Mode mode = parse_mode_flag(args.mode);
    const auto rec = solve_record(P, mode);
    print_record(rec, mode);
    return 0;
}

int cmd_eig(const CommonArgs& args, const std::vector<double>& state) {
    ModelParams P = apply_set_flags(ModelParams{}, args.set);
    const Mode mode = parse_mode_flag(args.mode);
    const size_t dim = mode == Mode::endex ? 4 : 2;
    if (state.size() != dim)
        throw ConfigError("eig needs --state with " + std::to_string(dim) + " components");
    auto rhs = [&](const Vec& y) {
        if (mode == Mode::endex) {
            const auto d = endex_rhs(EndexState{y[0], y[1], y[2], y[3]}, P);
            return Vec(d.begin(), d.end());
        }
        const auto d = standalone_rhs(CarboniserState{y[0], y[1]}, P);
        return Vec(d.begin(), d.end());
    };
    const auto eig = eigenvalues(fd_jacobian(rhs, state));
    const auto sc = classify(eig);
    for (const auto& v : eig.values)
        std::printf("% .12g %+.12gi\n", v.real(), v.imag());
    std::printf("stability: %s%s (max Re = %.6g 1/s)\n",
                sc.kind == StabilityClass::Kind::stable ? "stable" : "unstable",
                sc.oscillatory ? ", oscillatory" : "", sc.max_real_part);
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& param, double from, double to,
              int points) {
    ModelParams P = apply_set_flags(ModelParams{}, args.set);
    const Mode mode = parse_mode_flag(args.mode);
    const auto p = param_from_name(param);
    if (!p) throw ConfigError("unknown sweep parameter: " + param);

    RunConfig cfg;
    cfg.spec.name = "sweep_" + param;
    cfg.spec.base = P;
    cfg.spec.mode = mode;
    cfg.spec.kind = OutputKind::branch;
    cfg.spec.sweep = SweepSpec{*p, from, to, points};
    cfg.output_dir = args.output_dir;
    return endex::run(cfg);
}

int cmd_integrate(const CommonArgs& args, double t_end, bool from_zero_gas) {
    ModelParams P = apply_set_flags(ModelParams{}, args.set);
    RunConfig cfg;
    cfg.spec.name = "integrate";
    cfg.spec.base = P;
    cfg.spec.mode = parse_mode_flag(args.mode);
    cfg.spec.kind = OutputKind::trajectory;
    cfg.spec.t_end = t_end;
    cfg.spec.initial = from_zero_gas ? InitialCondition::zero_gas_steady_temps
                                     : InitialCondition::steady_state;
    cfg.output_dir = args.output_dir;
    return endex::run(cfg);
}

int run_one_scenario(const std::string& name, const std::string& out_root) {
    RunConfig cfg;
    cfg.spec = scenario_by_name(name);
    cfg.output_dir = (fs::path(out_root) / name).string();
    return endex::run(cfg);
}

int cmd_scenario(const CommonArgs& args, std::vector<std::string> names, int jobs) {
    if (names.size() == 1 && names[0] == "all") names = scenario_names();
    int status = 0;
    if (jobs <= 1) {
        for (const auto& n : names) {
            const int s = run_one_scenario(n, args.output_dir);
            std::printf("%-28s %s\n", n.c_str(), s == 0 ? "ok" : "FAILED");
            status = std::max(status, s);
        }
    } else {
        // independent scenarios, each writing to its own directory
        std::vector<std::pair<std::string, std::future<int>>> futs;
        size_t next = 0;
        while (next < names.size() || !futs.empty()) {
            while (next < names.size() && futs.size() < static_cast<size_t>(jobs)) {
                const std::string n = names[next++];
                futs.emplace_back(n, std::async(std::launch::async, run_one_scenario, n,
                                                args.output_dir));
            }
            const int s = futs.front().second.get();
            std::printf("%-28s %s\n", futs.front().first.c_str(), s == 0 ? "ok" : "FAILED");
            status = std::max(status, s);
            futs.erase(futs.begin());
        }
    }
    return status;
}

int cmd_fold_locus(const CommonArgs& args, const std::string& primary, double from, double to,
                   const std::string& second, double sfrom, double sto, int fold_index) {
    ModelParams P = apply_set_flags(ModelParams{}, args.set);
    const Mode mode = parse_mode_flag(args.mode);
    const auto p1 = param_from_name(primary);
    const auto p2 = param_from_name(second);
    if (!p1 || !p2) throw ConfigError("unknown parameter name in fold-locus");

    const Branch b = trace_branch(P, mode, *p1, from, to);
    std::vector<SingularPoint> folds;
    for (const auto& sp : b.singular_points)
        if (sp.kind == SingularKind::fold) folds.push_back(sp);
    if (folds.empty()) {
        std::fprintf(stderr, "no fold found on the %s branch [%g, %g]\n", primary.c_str(),
                     from, to);
        return kExitSolver;
    }
    if (fold_index < 0 || fold_index >= static_cast<int>(folds.size()))
        throw ConfigError("--fold-index out of range (found " +
                          std::to_string(folds.size()) + " folds)");

    const auto locus = trace_fold_locus(P, mode, *p1, folds[fold_index], *p2, sfrom, sto);
    fs::create_directories(args.output_dir);
    const std::string path = (fs::path(args.output_dir) / "fold_locus.csv").string();
    std::ofstream out(path);
    out << primary << ',' << second << '\n';
    for (const auto& pt : locus.points) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", pt[0], pt[1]);
        out << buf;
    }
    std::printf("%zu locus points -> %s%s\n", locus.points.size(), path.c_str(),
                locus.fold_lost ? " (fold lost before range end)" : "");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state, stability, and transient analysis of a thermally "
                 "coupled carboniser-calciner reactor pair"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    CommonArgs args;
    app.add_option("--out", args.output_dir, "output directory")->capture_default_str();
    app.add_option("--set", args.set, "parameter override NAME=VALUE (SI units)");
    app.add_option("--mode", args.mode, "endex | standalone")->capture_default_str();

    auto* steady = app.add_subcommand("steady", "solve one steady state and print it");

    std::vector<double> eig_state;
    auto* eig = app.add_subcommand("eig", "Jacobian eigenvalues at a given state");
    eig->add_option("--state", eig_state, "state components (c1 T1 [c2 T2])")->expected(-1);

    std::string sweep_param;
    double sweep_from = 0, sweep_to = 0;
    int sweep_points = 200;
    auto* sweep = app.add_subcommand("sweep", "trace a steady-state branch");
    sweep->add_option("--param", sweep_param, "bifurcation parameter")->required();
    sweep->add_option("--from", sweep_from, "start value (SI)")->required();
    sweep->add_option("--to", sweep_to, "end value (SI)")->required();
    sweep->add_option("--points", sweep_points, "resolution hint")->capture_default_str();

    double t_end = 200.0;
    bool from_zero_gas = false;
    auto* integ = app.add_subcommand("integrate", "integrate a transient");
    integ->add_option("--t-end", t_end, "horizon [s]")->capture_default_str();
    integ->add_flag("--zero-gas", from_zero_gas, "start from c = 0 at steady temperatures");

    std::vector<std::string> scenario_args;
    int jobs = 1;
    auto* scen = app.add_subcommand("scenario", "run named campaigns ('all' for every one)");
    scen->add_option("names", scenario_args, "scenario names")->required();
    scen->add_option("--jobs", jobs, "run up to N scenarios concurrently")
        ->capture_default_str();

    std::string fl_primary, fl_second;
    double fl_from = 0, fl_to = 0, fl_sfrom = 0, fl_sto = 0;
    int fold_index = 0;
    auto* fl = app.add_subcommand("fold-locus", "continue a fold in a second parameter");
    fl->add_option("--param", fl_primary, "primary bifurcation parameter")->required();
    fl->add_option("--from", fl_from)->required();
    fl->add_option("--to", fl_to)->required();
    fl->add_option("--second-param", fl_second, "second parameter")->required();
    fl->add_option("--second-from", fl_sfrom)->required();
    fl->add_option("--second-to", fl_sto)->required();
    fl->add_option("--fold-index", fold_index, "which detected fold to continue")
        ->capture_default_str();

    std::string config_path;
    auto* runc = app.add_subcommand("run", "run from a JSON config file");
    runc->add_option("config", config_path, "config path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (steady->parsed()) return cmd_steady(args);
        if (eig->parsed()) return cmd_eig(args, eig_state);
        if (sweep->parsed())
            return cmd_sweep(args, sweep_param, sweep_from, sweep_to, sweep_points);
        if (integ->parsed()) return cmd_integrate(args, t_end, from_zero_gas);
        if (scen->parsed()) return cmd_scenario(args, scenario_args, jobs);
        if (fl->parsed())
            return cmd_fold_locus(args, fl_primary, fl_from, fl_to, fl_second, fl_sfrom,
                                  fl_sto, fold_index);
        if (runc->parsed()) {
            RunConfig cfg = load_config(config_path);
            return endex::run(cfg);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const NonConvergenceError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolver;
    } catch (const SeedError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolver;
    }
    return 0;
}
