#include "mixedp/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "mixedp/eigensolver.hpp"
#include "mixedp/hardy.hpp"
#include "mixedp/shapelab.hpp"
#include "mixedp/util.hpp"

namespace mixedp {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct TaskLog {
    json tasks = json::array();
    Clock::time_point t0 = Clock::now();

    void done(const std::string& name, bool ok) {
        auto now = Clock::now();
        double ms = std::chrono::duration<double, std::milli>(now - t0).count();
        tasks.push_back({{"name", name}, {"status", ok ? "ok" : "failed"}, {"wall_ms", ms}});
        t0 = now;
    }
};

struct Csv {
    std::string text;

    explicit Csv(const std::string& header) { text = header + "\n"; }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += ",";
            text += cells[i];
        }
        text += "\n";
    }
};

std::string fmt(double x) { return format_double(x); }
std::string fmt(bool b) { return b ? "1" : "0"; }

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

void write_outputs(const std::string& out_dir, const Csv& csv, const RunConfig& cfg,
                   const std::string& subcommand, const std::optional<HardyConstants>& constants,
                   const json& tolerances, TaskLog& log) {
    std::filesystem::create_directories(out_dir);
    write_file(std::filesystem::path(out_dir) / "results.csv", csv.text);

    json manifest;
    manifest["manifest_version"] = 1;
    manifest["subcommand"] = subcommand;
    manifest["seed"] = cfg.seed;
    manifest["threads"] = cfg.threads;
    json cfgj = json::object();
    for (const auto& [k, v] : cfg.to_map()) cfgj[k] = v;
    manifest["config"] = cfgj;
    if (constants) {
        manifest["constants"] = {{"C_H", constants->c_h},
                                 {"C_Nps", constants->c_nps},
                                 {"xi", constants->xi},
                                 {"mu0", constants->mu0}};
    } else {
        manifest["constants"] = nullptr;
    }
    manifest["tolerances"] = tolerances;
    manifest["tasks"] = log.tasks;
    manifest["outputs"] = {{"csv", "results.csv"}};
    write_file(std::filesystem::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
}

// Smooth seeded bump: amplitude * exp(-|x-c|^2 / w^2) with the center kept
// away from the boundary.
Field random_bump(const Mesh& mesh, const ShapeSpec& shape, Rng& rng) {
    auto bb = shape.bounding_box();
    double ex = bb[1] - bb[0];
    double ey = mesh.dim == 2 ? bb[3] - bb[2] : 0.0;
    double extent = std::max(ex, ey);
    double cx = bb[0] + ex * rng.uniform(0.3, 0.7);
    double cy = mesh.dim == 2 ? bb[2] + ey * rng.uniform(0.3, 0.7) : 0.0;
    double w = extent * rng.uniform(0.08, 0.2);
    double amp = rng.uniform(0.5, 2.0);
    Field u(mesh.size());
    for (int i = 0; i < mesh.size(); ++i) {
        double dx = mesh.nodes[i][0] - cx;
        double dy = mesh.nodes[i][1] - cy;
        u[i] = amp * std::exp(-(dx * dx + dy * dy) / (w * w));
    }
    return u;
}

int run_hardy(const RunConfig& cfg, const std::string& out_dir,
              const std::optional<HardyConstants>& maybe_constants) {
    if (!maybe_constants) {
        std::cerr << "error: the hardy subcommand requires p*s < N\n";
        return kExitConfigError;
    }
    TaskLog log;
    const HardyConstants& constants = *maybe_constants;
    log.done("constants", true);
    std::cout << "C_H = " << format_double(constants.c_h)
              << "\nC_Nps = " << format_double(constants.c_nps)
              << "\nxi = " << format_double(constants.xi)
              << "\nmu0 = " << format_double(constants.mu0) << "\n";

    Mesh mesh = build_mesh(cfg.shape, cfg.params);
    log.done("mesh", true);

    Csv csv("trial,lhs,rhs,slack_rel,holds");
    Rng rng(cfg.seed);
    bool all_hold = true;
    for (int t = 0; t < cfg.hardy_trials; ++t) {
        Field u = random_bump(mesh, cfg.shape, rng);
        HardyCheck chk = check_interpolated_hardy(u, mesh, cfg.params, constants, cfg.hardy_tol_rel);
        double slack_rel = chk.rhs > 0.0 ? chk.slack / chk.rhs : 0.0;
        csv.row({std::to_string(t), fmt(chk.lhs), fmt(chk.rhs), fmt(slack_rel), fmt(chk.holds)});
        all_hold = all_hold && chk.holds;
    }
    log.done("inequality_suite", all_hold);

    write_outputs(out_dir, csv, cfg, "hardy", constants,
                  json{{"hardy_tol_rel", cfg.hardy_tol_rel}}, log);
    return all_hold ? kExitOk : kExitVerdictFailed;
}

int run_eig1(const RunConfig& cfg, const std::string& out_dir,
             const std::optional<HardyConstants>& constants) {
    TaskLog log;
    Mesh mesh = build_mesh(cfg.shape, cfg.params);
    log.done("mesh", true);
    EigenResult eig = solve_first_eigenpair(mesh, cfg.params, cfg.solver);
    log.done("eig1", eig.converged);

    Csv csv("lambda,residual,iterations,converged,min_phi,local,nonlocal,hardy,dplus,total");
    csv.row({fmt(eig.lambda), fmt(eig.residual), std::to_string(eig.iterations),
             fmt(eig.converged), fmt(eig.min_value), fmt(eig.energy.local),
             fmt(eig.energy.nonlocal), fmt(eig.energy.hardy), fmt(eig.energy.dplus),
             fmt(eig.energy.total)});
    write_outputs(out_dir, csv, cfg, "eig1", constants,
                  json{{"tol_residual", cfg.solver.tol_residual}}, log);
    return eig.converged ? kExitOk : kExitNoConvergence;
}

int run_eig2(const RunConfig& cfg, const std::string& out_dir,
             const std::optional<HardyConstants>& constants) {
    TaskLog log;
    Mesh mesh = build_mesh(cfg.shape, cfg.params);
    log.done("mesh", true);
    SecondEigenResult r = solve_second_eigenvalue(mesh, cfg.params, cfg.solver, cfg.path);
    log.done("eig2", r.converged);

    Csv csv(
        "lambda2,lambda1,margin,defect,converged,sweeps,pos_mass,neg_mass,"
        "lambda1_plus,lambda1_minus,nodal_margin");
    csv.row({fmt(r.lambda2), fmt(r.lambda1), fmt(r.margin), fmt(r.defect), fmt(r.converged),
             std::to_string(r.sweeps), fmt(r.pos_mass), fmt(r.neg_mass), fmt(r.nodal.lambda_plus),
             fmt(r.nodal.lambda_minus), fmt(r.nodal_margin)});
    write_outputs(out_dir, csv, cfg, "eig2", constants,
                  json{{"tol_residual", cfg.solver.tol_residual},
                       {"tol_defect", cfg.path.tol_defect}},
                  log);
    return r.converged ? kExitOk : kExitNoConvergence;
}

int run_fucik(const RunConfig& cfg, const std::string& out_dir,
              const std::optional<HardyConstants>& constants) {
    TaskLog log;
    Mesh mesh = build_mesh(cfg.shape, cfg.params);
    log.done("mesh", true);

    std::vector<double> d_grid = cfg.d_grid;
    if (!cfg.d_lambda1_multiples.empty()) {
        EigenResult first = solve_first_eigenpair(mesh, cfg.params, cfg.solver);
        for (double m : cfg.d_lambda1_multiples) d_grid.push_back(m * first.lambda);
        std::sort(d_grid.begin(), d_grid.end());
    }
    FucikCurve curve = fucik_curve(d_grid, mesh, cfg.params, cfg.solver, cfg.path);
    bool all_conv = true;
    for (const auto& pt : curve.points) all_conv = all_conv && pt.converged;
    log.done("fucik_curve", all_conv);

    Csv csv("d,c,alpha,beta,residual,converged");
    for (const auto& pt : curve.points)
        csv.row({fmt(pt.d), fmt(pt.c), fmt(pt.alpha), fmt(pt.beta), fmt(pt.residual),
                 fmt(pt.converged)});
    for (const auto& pt : curve.reflected)
        csv.row({fmt(pt.d), fmt(pt.c), fmt(pt.alpha), fmt(pt.beta), fmt(pt.residual),
                 fmt(pt.converged)});

    json tol{{"tol_defect", cfg.path.tol_defect},
             {"curve_solver_tol", curve.solver_tol},
             {"monotone_c", curve.monotone_c},
             {"monotone_alpha", curve.monotone_alpha},
             {"lipschitz_ok", curve.lipschitz_ok},
             {"lambda1", curve.lambda1},
             {"level_is_upper_bound", true}};
    write_outputs(out_dir, csv, cfg, "fucik", constants, tol, log);
    if (!all_conv) return kExitNoConvergence;
    return (curve.monotone_c && curve.monotone_alpha && curve.lipschitz_ok) ? kExitOk
                                                                            : kExitVerdictFailed;
}

int run_faber_krahn(const RunConfig& cfg, const std::string& out_dir,
                    const std::optional<HardyConstants>& constants) {
    TaskLog log;
    double side = std::sqrt(cfg.fk_volume);
    std::vector<ShapeSpec> shapes;
    shapes.push_back(calibrated_disk(cfg.fk_volume, cfg.fk_resolution));
    shapes.push_back(ShapeSpec::make_rectangle(-0.5 * side, 0.5 * side, -0.5 * side, 0.5 * side,
                                               cfg.fk_resolution));
    ExperimentReport report = faber_krahn_experiment(cfg.fk_volume, shapes, cfg.params, cfg.solver);
    log.done("faber_krahn", report.verdict);

    Csv csv("shape,volume,lambda1,residual,converged");
    bool all_conv = true;
    for (const auto& row : report.rows) {
        csv.row({row.label, fmt(row.volume), fmt(row.lambda1), fmt(row.residual),
                 fmt(row.converged)});
        all_conv = all_conv && row.converged;
    }
    write_outputs(out_dir, csv, cfg, "faber-krahn", constants,
                  json{{"margin", report.margin}, {"tolerance", report.tolerance}}, log);
    if (!all_conv) return kExitNoConvergence;
    return report.verdict ? kExitOk : kExitVerdictFailed;
}

int run_hks(const RunConfig& cfg, const std::string& out_dir,
            const std::optional<HardyConstants>& constants) {
    TaskLog log;
    ExperimentReport report = hong_krahn_szego_experiment(
        cfg.hks_radius, cfg.hks_separations, cfg.hks_resolution, cfg.params, cfg.solver, cfg.path);
    log.done("hong_krahn_szego", report.verdict);

    Csv csv("separation,volume,lambda1,lambda2,residual,converged");
    bool all_conv = true;
    for (const auto& row : report.rows) {
        csv.row({fmt(row.extra), fmt(row.volume), fmt(row.lambda1), fmt(row.lambda2),
                 fmt(row.residual), fmt(row.converged)});
        all_conv = all_conv && row.converged;
    }
    write_outputs(out_dir, csv, cfg, "hks", constants,
                  json{{"margin_at_largest", report.margin}, {"tolerance", report.tolerance}},
                  log);
    if (!all_conv) return kExitNoConvergence;
    return report.verdict ? kExitOk : kExitVerdictFailed;
}

int run_nodal_check(const RunConfig& cfg, const std::string& out_dir,
                    const std::optional<HardyConstants>& constants) {
    TaskLog log;
    Mesh mesh = build_mesh(cfg.shape, cfg.params);
    log.done("mesh", true);
    SecondEigenResult r = solve_second_eigenvalue(mesh, cfg.params, cfg.solver, cfg.path);
    log.done("eig2", r.converged);
    NodalBoundCheck chk = nodal_domain_bound_check(r.lambda2, r.psi, mesh, cfg.params, cfg.solver);
    log.done("nodal_bound", chk.holds);

    Csv csv("lambda,lambda1_plus,lambda1_minus,margin,holds");
    csv.row({fmt(chk.lambda), fmt(chk.lambda_plus), fmt(chk.lambda_minus), fmt(chk.margin),
             fmt(chk.holds)});
    write_outputs(out_dir, csv, cfg, "nodal-check", constants,
                  json{{"tol_residual", cfg.solver.tol_residual}}, log);
    if (!r.converged) return kExitNoConvergence;
    return chk.holds ? kExitOk : kExitVerdictFailed;
}

int run_check(const RunConfig& cfg, const std::string& out_dir,
              const std::optional<HardyConstants>& constants) {
    TaskLog log;
    Mesh mesh = build_mesh(cfg.shape, cfg.params);
    log.done("mesh", true);
    const int M = mesh.size();
    const double p = cfg.params.p;
    PPower pk(p);
    Rng rng(cfg.seed);
    Csv csv("property,trials,worst,threshold,pass");
    bool all_pass = true;

    {  // discrete Picone: min over pairs >= -1e-12
        double worst = std::numeric_limits<double>::infinity();
        for (int t = 0; t < cfg.check_picone_trials; ++t) {
            Field u(M), v(M);
            for (int i = 0; i < M; ++i) {
                u[i] = rng.uniform(0.0, 2.0);
                v[i] = rng.uniform(0.1, 2.0);
            }
            worst = std::min(worst, check_discrete_picone(u, v, mesh, p));
        }
        bool pass = worst >= -1e-12;
        csv.row({"picone", std::to_string(cfg.check_picone_trials), fmt(worst), fmt(-1e-12),
                 fmt(pass)});
        all_pass = all_pass && pass;
        log.done("picone", pass);
    }
    {  // sigma_t convexity of the nonlocal energy: worst violation <= 1e-10
        std::vector<double> t_grid{0.0, 0.25, 0.5, 0.75, 1.0};
        double worst = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < cfg.check_sigma_trials; ++t) {
            Field u(M), v(M);
            for (int i = 0; i < M; ++i) {
                u[i] = rng.uniform(0.0, 2.0);
                v[i] = rng.uniform(0.0, 2.0);
            }
            worst = std::max(worst, sigma_path_energy_check(u, v, mesh, p, t_grid));
        }
        bool pass = worst <= 1e-10;
        csv.row({"sigma_path", std::to_string(cfg.check_sigma_trials), fmt(worst), fmt(1e-10),
                 fmt(pass)});
        all_pass = all_pass && pass;
        log.done("sigma_path", pass);
    }
    {  // splitting: [u]^p >= [u+]^p + [u-]^p, exact up to rounding
        double worst = std::numeric_limits<double>::infinity();
        for (int t = 0; t < cfg.check_sigma_trials; ++t) {
            Field u(M);
            for (int i = 0; i < M; ++i) u[i] = rng.uniform(-1.5, 1.5);
            double whole = nonlocal_energy(u, mesh, p);
            double parts = nonlocal_energy(positive_part(u), mesh, p) +
                           nonlocal_energy(negative_part(u), mesh, p);
            worst = std::min(worst, (whole - parts) / std::max(1.0, whole));
        }
        bool pass = worst >= -1e-12;
        csv.row({"splitting", std::to_string(cfg.check_sigma_trials), fmt(worst), fmt(-1e-12),
                 fmt(pass)});
        all_pass = all_pass && pass;
        log.done("splitting", pass);
    }
    {  // scalar path lemma: g(t) <= g(1) for U V <= 0
        double worst = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < cfg.check_pathlemma_trials; ++t) {
            double U = rng.uniform(0.0, 2.0);
            double V = -rng.uniform(0.0, 2.0);
            if (rng.uniform() < 0.5) { U = -U; V = -V; }
            double tt = rng.uniform(-3.0, 3.0);
            auto g = [&](double tau) {
                return pk.abs_pow(U - tau * V) + pk.f(U - V) * V * pk.abs_pow(tau);
            };
            worst = std::max(worst, (g(tt) - g(1.0)) / std::max(1.0, std::abs(g(1.0))));
        }
        bool pass = worst <= 1e-12;
        csv.row({"path_lemma", std::to_string(cfg.check_pathlemma_trials), fmt(worst), fmt(1e-12),
                 fmt(pass)});
        all_pass = all_pass && pass;
        log.done("path_lemma", pass);
    }
    {  // gradient fidelity: central differences at eps = 1e-6
        double worst = 0.0;
        const double eps = 1e-6;
        for (int t = 0; t < cfg.check_grad_fields; ++t) {
            Field u(M), v(M);
            for (int i = 0; i < M; ++i) {
                double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
                u[i] = sign * rng.uniform(0.1, 1.1);
                v[i] = rng.uniform(-1.0, 1.0);
            }
            double d = (t % 2 == 0) ? 0.0 : 1.0;
            Field g = grad_j_d(u, d, mesh, cfg.params);
            double lhs = l2_dot(g, v, mesh.cell_volume) * p;
            Field up(M), um(M);
            for (int i = 0; i < M; ++i) {
                up[i] = u[i] + eps * v[i];
                um[i] = u[i] - eps * v[i];
            }
            double rhs = (j_d(up, d, mesh, cfg.params).total - j_d(um, d, mesh, cfg.params).total) /
                         (2.0 * eps);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        bool pass = worst < 1e-5;
        csv.row({"gradient", std::to_string(cfg.check_grad_fields), fmt(worst), fmt(1e-5),
                 fmt(pass)});
        all_pass = all_pass && pass;
        log.done("gradient", pass);
    }

    write_outputs(out_dir, csv, cfg, "check", constants,
                  json{{"picone", -1e-12},
                       {"sigma_path", 1e-10},
                       {"splitting", -1e-12},
                       {"path_lemma", 1e-12},
                       {"gradient", 1e-5}},
                  log);
    return all_pass ? kExitOk : kExitVerdictFailed;
}

}  // namespace

int run_subcommand(const std::string& subcommand, RunConfig cfg, const std::string& out_dir) {
    set_thread_count(static_cast<std::size_t>(cfg.threads));
    cfg.solver.seed = cfg.seed;
    cfg.path.seed = cfg.seed;

    // resolve mu_frac and the mu admissibility gate before any computation
    std::optional<HardyConstants> constants;
    try {
        if (cfg.mu_frac >= 0.0) {
            if (!cfg.params.hardy_admissible()) {
                std::cerr << "error: mu > 0 requires p*theta < N and p*s < N\n";
                return kExitInadmissibleMu;
            }
            cfg.params.mu = cfg.mu_frac * mu_max(cfg.params.theta, cfg.params.N, cfg.params.p,
                                                 cfg.params.s);
            cfg.mu_frac = -1.0;
        }
        if (cfg.params.mu > 0.0) {
            if (!cfg.params.hardy_admissible() ||
                cfg.params.mu >= mu_max(cfg.params.theta, cfg.params.N, cfg.params.p,
                                        cfg.params.s)) {
                std::cerr << "error: mu = " << cfg.params.mu
                          << " is inadmissible for these (N, p, s, theta)\n";
                return kExitInadmissibleMu;
            }
            if (cfg.center_origin) {
                auto c = cfg.shape.centroid();
                cfg.shape = cfg.shape.translated(-c[0], -c[1]);
            }
        }
        cfg.params.validate();
        if (cfg.params.p * cfg.params.s < cfg.params.N)
            constants = HardyConstants::compute(cfg.params);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (subcommand == "hardy") return run_hardy(cfg, out_dir, constants);
        if (subcommand == "eig1") return run_eig1(cfg, out_dir, constants);
        if (subcommand == "eig2") return run_eig2(cfg, out_dir, constants);
        if (subcommand == "fucik") return run_fucik(cfg, out_dir, constants);
        if (subcommand == "faber-krahn") return run_faber_krahn(cfg, out_dir, constants);
        if (subcommand == "hks") return run_hks(cfg, out_dir, constants);
        if (subcommand == "nodal-check") return run_nodal_check(cfg, out_dir, constants);
        if (subcommand == "check") return run_check(cfg, out_dir, constants);
        std::cerr << "error: unknown subcommand '" << subcommand << "'\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitConfigError;
    } catch (const std::runtime_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNoConvergence;
    }
}

}  // namespace mixedp
