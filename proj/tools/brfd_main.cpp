#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "brfd/convergence.hpp"
#include "brfd/norms.hpp"
#include "brfd/problems.hpp"
#include "brfd/scheme.hpp"
#include "brfd/trisolve.hpp"
#include "brfd/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message) {}
};

struct StudyConfig {
    std::string problem = "mms_exp_sine_gsin";
    double x_a = 0.0;
    double x_b = 1.0;
    double T = 1.0;
    int J0 = 19;
    int N0 = 20;
    int levels = 4;
    std::string coupling = "tau_h";  // tau_h | fixed_tau | fixed_h
    double coupling_c = 1.0;
    std::string variant = "brfd";    // brfd | mbrfd | brfd_suboptimal_init | crank_nicolson
    double delta = 1.0;
    double newton_tol = 1e-12;
    int newton_max_iter = 25;
    int record_stride = 1;
    std::string csv_path;
    std::string json_path;
    int jobs = 1;
};

// Round-trip float formatting; locale independent.
std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void load_config_file(StudyConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("JSON parse failure: ") + e.what());
    }
    auto get = [&](const char* key, auto& target) {
        if (j.contains(key)) {
            try {
                target = j.at(key).get<std::decay_t<decltype(target)>>();
            } catch (const json::exception& e) {
                throw ConfigError(key, std::string("bad value: ") + e.what());
            }
        }
    };
    get("problem", cfg.problem);
    get("x_a", cfg.x_a);
    get("x_b", cfg.x_b);
    get("T", cfg.T);
    get("J0", cfg.J0);
    get("N0", cfg.N0);
    get("levels", cfg.levels);
    get("coupling", cfg.coupling);
    get("coupling_c", cfg.coupling_c);
    get("variant", cfg.variant);
    get("delta", cfg.delta);
    get("newton_tol", cfg.newton_tol);
    get("newton_max_iter", cfg.newton_max_iter);
    get("record_stride", cfg.record_stride);
    get("csv", cfg.csv_path);
    get("json", cfg.json_path);
    get("jobs", cfg.jobs);
}

void validate(const StudyConfig& cfg, bool for_study) {
    if (!(cfg.x_b > cfg.x_a)) throw ConfigError("x_b", "must exceed x_a");
    if (!(cfg.T > 0.0)) throw ConfigError("T", "must be positive");
    if (cfg.J0 < 1) throw ConfigError("J0", "must be >= 1");
    if (cfg.N0 < 1) throw ConfigError("N0", "must be >= 1");
    if (for_study && cfg.levels < 2) throw ConfigError("levels", "must be >= 2");
    if (cfg.coupling != "tau_h" && cfg.coupling != "fixed_tau" && cfg.coupling != "fixed_h")
        throw ConfigError("coupling", "must be one of tau_h, fixed_tau, fixed_h");
    if (!(cfg.coupling_c > 0.0)) throw ConfigError("coupling_c", "must be positive");
    if (cfg.variant != "brfd" && cfg.variant != "mbrfd" && cfg.variant != "brfd_suboptimal_init" &&
        cfg.variant != "crank_nicolson")
        throw ConfigError("variant",
                          "must be one of brfd, mbrfd, brfd_suboptimal_init, crank_nicolson");
    if (cfg.variant == "mbrfd" && !(cfg.delta > 0.0)) throw ConfigError("delta", "must be positive");
    if (!(cfg.newton_tol > 0.0)) throw ConfigError("newton_tol", "must be positive");
    if (cfg.newton_max_iter < 1) throw ConfigError("newton_max_iter", "must be >= 1");
    if (cfg.record_stride < 1) throw ConfigError("record_stride", "must be >= 1");
    if (cfg.jobs < 1) throw ConfigError("jobs", "must be >= 1");
    try {
        brfd::catalog_problem(cfg.problem, cfg.x_a, cfg.x_b);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("problem", e.what());
    }
}

brfd::SchemeVariant make_variant(const StudyConfig& cfg) {
    if (cfg.variant == "brfd") return brfd::SchemeVariant::brfd();
    if (cfg.variant == "mbrfd") return brfd::SchemeVariant::mbrfd(cfg.delta);
    if (cfg.variant == "brfd_suboptimal_init") return brfd::SchemeVariant::brfd_suboptimal_init();
    return brfd::SchemeVariant::crank_nicolson(cfg.newton_tol, cfg.newton_max_iter);
}

brfd::Coupling make_coupling(const StudyConfig& cfg) {
    if (cfg.coupling == "tau_h") return brfd::Coupling::TauProportionalToH;
    if (cfg.coupling == "fixed_tau") return brfd::Coupling::FixedTau;
    return brfd::Coupling::FixedH;
}

json config_echo(const StudyConfig& cfg) {
    return json{{"problem", cfg.problem},
                {"x_a", cfg.x_a},
                {"x_b", cfg.x_b},
                {"T", cfg.T},
                {"J0", cfg.J0},
                {"N0", cfg.N0},
                {"levels", cfg.levels},
                {"coupling", cfg.coupling},
                {"coupling_c", cfg.coupling_c},
                {"variant", cfg.variant},
                {"delta", cfg.delta},
                {"newton_tol", cfg.newton_tol},
                {"newton_max_iter", cfg.newton_max_iter},
                {"record_stride", cfg.record_stride},
                {"jobs", cfg.jobs}};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

int cmd_solve(const StudyConfig& cfg) {
    validate(cfg, false);
    const brfd::Problem problem = brfd::catalog_problem(cfg.problem, cfg.x_a, cfg.x_b);
    const brfd::Mesh mesh(cfg.x_a, cfg.x_b, cfg.J0);
    const brfd::TimeGrid tg(cfg.T, cfg.N0);
    const brfd::SchemeVariant variant = make_variant(cfg);

    const auto start = std::chrono::steady_clock::now();
    const brfd::Trajectory traj = brfd::run(problem, mesh, tg, variant, cfg.record_stride);
    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string csv_path = cfg.csv_path.empty() ? "brfd_solve.csv" : cfg.csv_path;
    std::ofstream csv = open_output(csv_path);
    csv << "t,x,U\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const double t = tg.t(traj.steps[i]);
        for (int j = 0; j <= mesh.J() + 1; ++j)
            csv << fmt17(t) << ',' << fmt17(mesh.node(j)) << ','
                << fmt17(traj.states[i][static_cast<std::size_t>(j)]) << '\n';
    }
    csv.close();

    const brfd::InteriorGridFunction& u_final = traj.states.back();
    double margin_min = std::numeric_limits<double>::infinity();
    for (double margin : traj.condition_margins) margin_min = std::min(margin_min, margin);

    json summary{{"schema_version", 1},
                 {"config", config_echo(cfg)},
                 {"final_time", tg.T()},
                 {"final_norms",
                  {{"l2", brfd::norm_l2(u_final, mesh)},
                   {"inf", brfd::norm_inf(u_final)},
                   {"h1", brfd::seminorm_h1(u_final, mesh)}}},
                 {"condition_margin_min", margin_min},
                 {"condition_warning", traj.condition_warning},
                 {"wall_time_s", wall_s}};
    if (traj.mollifier_identity_regime)
        summary["mbrfd_identity_regime"] = *traj.mollifier_identity_regime;
    if (problem.exact && cfg.record_stride == 1) {
        const brfd::LevelErrors errs = brfd::measure_errors(traj, problem, mesh, tg);
        summary["errors"] = {{"traj_h1", errs.traj_h1},
                             {"half_h1", errs.half_h1},
                             {"phi_h1", errs.phi_h1},
                             {"l2", errs.l2},
                             {"inf", errs.inf}};
    }
    const std::string json_path = cfg.json_path.empty() ? "brfd_solve.json" : cfg.json_path;
    open_output(json_path) << summary.dump(2) << '\n';

    std::printf("solve: %s, J=%d, N=%d, final |U|_inf = %s, wall %.3fs\n", cfg.problem.c_str(),
                cfg.J0, cfg.N0, fmt17(brfd::norm_inf(u_final)).c_str(), wall_s);
    if (traj.condition_warning)
        std::fprintf(stderr, "warning: step condition margin went negative (min %s)\n",
                     fmt17(margin_min).c_str());
    return kExitOk;
}

json order_fit_json(const brfd::OrderFit& fit) {
    return fit.slope;  // NaN serializes as null when fewer than two levels survive
}

int cmd_study(const StudyConfig& cfg) {
    validate(cfg, true);
    const brfd::Problem problem = brfd::catalog_problem(cfg.problem, cfg.x_a, cfg.x_b);
    brfd::RefinementPlan plan;
    plan.base_interior_nodes = cfg.J0;
    plan.base_steps = cfg.N0;
    plan.levels = cfg.levels;
    plan.coupling = make_coupling(cfg);
    plan.tau_over_h = cfg.coupling_c;
    const brfd::SchemeVariant variant = make_variant(cfg);

    const brfd::ConvergenceReport report =
        brfd::refinement_study(problem, cfg.x_a, cfg.x_b, cfg.T, plan, variant, cfg.jobs);

    const std::string csv_path = cfg.csv_path.empty() ? "brfd_study.csv" : cfg.csv_path;
    std::ofstream csv = open_output(csv_path);
    csv << "level,J,N,h,tau,err_traj_h1,err_half_h1,err_phi_h1,err_l2,err_inf,condition_margin\n";
    for (const brfd::LevelResult& lr : report.levels) {
        csv << lr.level << ',' << lr.J << ',' << lr.N << ',' << fmt17(lr.h) << ',' << fmt17(lr.tau)
            << ',' << fmt17(lr.err.traj_h1) << ',' << fmt17(lr.err.half_h1) << ','
            << fmt17(lr.err.phi_h1) << ',' << fmt17(lr.err.l2) << ',' << fmt17(lr.err.inf) << ','
            << fmt17(lr.condition_margin) << '\n';
    }
    csv.close();

    json levels = json::array();
    for (const brfd::LevelResult& lr : report.levels) {
        levels.push_back({{"level", lr.level},
                          {"J", lr.J},
                          {"N", lr.N},
                          {"h", lr.h},
                          {"tau", lr.tau},
                          {"err_traj_h1", lr.err.traj_h1},
                          {"err_half_h1", lr.err.half_h1},
                          {"err_phi_h1", lr.err.phi_h1},
                          {"err_l2", lr.err.l2},
                          {"err_inf", lr.err.inf},
                          {"condition_margin", lr.condition_margin}});
    }
    const bool at_floor = report.order_traj_h1.at_floor || report.order_half_h1.at_floor ||
                          report.order_phi_h1.at_floor;
    const bool pre_asymptotic = report.order_traj_h1.pre_asymptotic ||
                                report.order_half_h1.pre_asymptotic ||
                                report.order_phi_h1.pre_asymptotic;
    json out{{"schema_version", 1},
             {"config", config_echo(cfg)},
             {"levels", levels},
             {"fitted_orders",
              {{"traj_h1", order_fit_json(report.order_traj_h1)},
               {"half_h1", order_fit_json(report.order_half_h1)},
               {"phi_h1", order_fit_json(report.order_phi_h1)}}},
             {"guards", {{"at_floor", at_floor}, {"pre_asymptotic", pre_asymptotic}}}};
    if (report.mbrfd_identity_regime)
        out["mbrfd_identity_regime"] = *report.mbrfd_identity_regime;
    const std::string json_path = cfg.json_path.empty() ? "brfd_study.json" : cfg.json_path;
    open_output(json_path) << out.dump(2) << '\n';

    std::printf("%5s %6s %7s %12s %12s %13s %13s %13s %13s\n", "level", "J", "N", "h", "tau",
                "err_traj_h1", "err_half_h1", "err_phi_h1", "margin");
    for (const brfd::LevelResult& lr : report.levels)
        std::printf("%5d %6d %7d %12.5e %12.5e %13.6e %13.6e %13.6e %13.4e\n", lr.level, lr.J,
                    lr.N, lr.h, lr.tau, lr.err.traj_h1, lr.err.half_h1, lr.err.phi_h1,
                    lr.condition_margin);
    std::printf("fitted orders: traj_h1 %.3f  half_h1 %.3f  phi_h1 %.3f\n",
                report.order_traj_h1.slope, report.order_half_h1.slope,
                report.order_phi_h1.slope);
    if (at_floor) std::printf("guard: some errors sat at the measurement floor\n");
    if (pre_asymptotic)
        std::printf("guard: pre-asymptotic wobble detected; coarsest level dropped from fits\n");
    if (report.mbrfd_identity_regime)
        std::printf("mollifier identity regime held on all levels: %s\n",
                    *report.mbrfd_identity_regime ? "yes" : "no");
    return kExitOk;
}

int cmd_verify() {
    const std::vector<brfd::VerifyItem> items = brfd::run_verify_battery();
    bool all_pass = true;
    for (const brfd::VerifyItem& item : items) {
        std::printf("%s %-28s %s\n", item.pass ? "PASS" : "FAIL", item.name.c_str(),
                    item.detail.c_str());
        all_pass = all_pass && item.pass;
    }
    return all_pass ? kExitOk : kExitVerifyFailure;
}

struct CliOverrides {
    std::string config_path;
    StudyConfig flags;  // staging area for flag values
    CLI::Option* problem = nullptr;
    CLI::Option* variant = nullptr;
    CLI::Option* delta = nullptr;
    CLI::Option* levels = nullptr;
    CLI::Option* coupling = nullptr;
    CLI::Option* coupling_c = nullptr;
    CLI::Option* J0 = nullptr;
    CLI::Option* N0 = nullptr;
    CLI::Option* T = nullptr;
    CLI::Option* x_a = nullptr;
    CLI::Option* x_b = nullptr;
    CLI::Option* record_stride = nullptr;
    CLI::Option* csv = nullptr;
    CLI::Option* json_out = nullptr;
    CLI::Option* jobs = nullptr;
    CLI::Option* newton_tol = nullptr;
    CLI::Option* newton_max_iter = nullptr;
};

void add_common_options(CLI::App* sub, CliOverrides& ov) {
    sub->add_option("--config", ov.config_path, "JSON config file; flags override its fields");
    ov.problem = sub->add_option("--problem", ov.flags.problem, "catalog problem name");
    ov.variant = sub->add_option("--variant", ov.flags.variant,
                                 "brfd | mbrfd | brfd_suboptimal_init | crank_nicolson");
    ov.delta = sub->add_option("--delta", ov.flags.delta, "mollifier band half-width (mbrfd)");
    ov.levels = sub->add_option("--levels", ov.flags.levels, "refinement levels (study)");
    ov.coupling =
        sub->add_option("--tau-coupling", ov.flags.coupling, "tau_h | fixed_tau | fixed_h");
    ov.coupling_c = sub->add_option("--coupling-c", ov.flags.coupling_c, "c in tau = c*h");
    ov.J0 = sub->add_option("--J0", ov.flags.J0, "interior nodes at the base level");
    ov.N0 = sub->add_option("--N0", ov.flags.N0, "time steps at the base level");
    ov.T = sub->add_option("--T", ov.flags.T, "final time");
    ov.x_a = sub->add_option("--xa", ov.flags.x_a, "left endpoint");
    ov.x_b = sub->add_option("--xb", ov.flags.x_b, "right endpoint");
    ov.record_stride = sub->add_option("--record-stride", ov.flags.record_stride,
                                       "store every k-th time node (solve)");
    ov.csv = sub->add_option("--csv", ov.flags.csv_path, "CSV output path");
    ov.json_out = sub->add_option("--json", ov.flags.json_path, "JSON output path");
    ov.jobs = sub->add_option("--jobs", ov.flags.jobs, "concurrent study levels");
    ov.newton_tol = sub->add_option("--newton-tol", ov.flags.newton_tol, "Newton residual target");
    ov.newton_max_iter =
        sub->add_option("--newton-max-iter", ov.flags.newton_max_iter, "Newton iteration cap");
}

StudyConfig resolve_config(const CliOverrides& ov) {
    StudyConfig cfg;
    if (!ov.config_path.empty()) load_config_file(cfg, ov.config_path);
    auto take = [](CLI::Option* opt, auto& dst, const auto& src) {
        if (opt != nullptr && opt->count() > 0) dst = src;
    };
    take(ov.problem, cfg.problem, ov.flags.problem);
    take(ov.variant, cfg.variant, ov.flags.variant);
    take(ov.delta, cfg.delta, ov.flags.delta);
    take(ov.levels, cfg.levels, ov.flags.levels);
    take(ov.coupling, cfg.coupling, ov.flags.coupling);
    take(ov.coupling_c, cfg.coupling_c, ov.flags.coupling_c);
    take(ov.J0, cfg.J0, ov.flags.J0);
    take(ov.N0, cfg.N0, ov.flags.N0);
    take(ov.T, cfg.T, ov.flags.T);
    take(ov.x_a, cfg.x_a, ov.flags.x_a);
    take(ov.x_b, cfg.x_b, ov.flags.x_b);
    take(ov.record_stride, cfg.record_stride, ov.flags.record_stride);
    take(ov.csv, cfg.csv_path, ov.flags.csv_path);
    take(ov.json_out, cfg.json_path, ov.flags.json_path);
    take(ov.jobs, cfg.jobs, ov.flags.jobs);
    take(ov.newton_tol, cfg.newton_tol, ov.flags.newton_tol);
    take(ov.newton_max_iter, cfg.newton_max_iter, ov.flags.newton_max_iter);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Besse relaxation finite-difference solver for the 1D semilinear heat equation"};
    app.require_subcommand(1);

    CLI::App* solve = app.add_subcommand("solve", "single run; writes solution CSV and a summary");
    CLI::App* study =
        app.add_subcommand("study", "refinement study; writes per-level CSV and a JSON report");
    CLI::App* verify = app.add_subcommand("verify", "run the built-in invariant battery");

    CliOverrides solve_ov, study_ov;
    add_common_options(solve, solve_ov);
    add_common_options(study, study_ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (solve->parsed()) return cmd_solve(resolve_config(solve_ov));
        if (study->parsed()) return cmd_study(resolve_config(study_ov));
        if (verify->parsed()) return cmd_verify();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const brfd::SingularSystemError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumericalFailure;
    } catch (const brfd::NewtonDivergenceError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumericalFailure;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumericalFailure;
    }
    return kExitOk;
}
