#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "parasol/report.hpp"

namespace parasol {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline int run_constants(const RunConfig& cfg, bool dump_matrices, bool quiet) {
    auto t0 = std::chrono::steady_clock::now();
    SpatialMesh smesh = uniform_spatial(cfg.plan.space_elems);
    TemporalMesh tmesh = uniform_temporal(cfg.plan.T_step, cfg.plan.time_elems);
    TensorBasis basis(smesh, tmesh);
    IMatrix A = assemble_A(basis), B = assemble_B(basis), M = assemble_M(basis);
    IMatrix U = assemble_U(basis), W = assemble_W(basis), Y = assemble_Y(basis);

    RunReport rep;
    rep.constants =
        projection_constants(smesh, tmesh, cfg.spec.nu, GammaInputs{&A, &B, &M, &U, &W, &Y});
    rep.all_verified = true;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_csv(rep, cfg, cfg.out_dir);
    if (dump_matrices) {
        namespace fs = std::filesystem;
        write_csv(A, (fs::path(cfg.out_dir) / "A.csv").string());
        write_csv(B, (fs::path(cfg.out_dir) / "B.csv").string());
        write_csv(M, (fs::path(cfg.out_dir) / "M.csv").string());
        write_csv(U, (fs::path(cfg.out_dir) / "U.csv").string());
        write_csv(W, (fs::path(cfg.out_dir) / "W.csv").string());
        write_csv(Y, (fs::path(cfg.out_dir) / "Y.csv").string());
    }
    if (!quiet) {
        const auto& pc = rep.constants;
        std::cout << "gamma1 <= " << format_sig4_up(pc.gamma1.hi()) << ", gamma0 <= "
                  << format_sig4_up(pc.gamma0.hi()) << ", gammaT <= "
                  << format_sig4_up(pc.gammaT.hi()) << '\n'
                  << "Ct1 <= " << format_sig4_up(pc.Ct1.hi()) << ", Ct0 <= "
                  << format_sig4_up(pc.Ct0.hi()) << ", ct0 <= "
                  << format_sig4_up(pc.ct0.hi()) << '\n'
                  << "constants written to " << cfg.out_dir << " ("
                  << format_sig4_up(rep.wall_seconds) << " s)\n";
    }
    return 0;
}

inline int run_verify(const RunConfig& cfg, bool quiet) {
    auto progress = [&](const StepReport& s) {
        if (quiet) return;
        if (s.status == StepStatus::ok)
            std::cout << "[step " << s.i << "] ok  alpha=" << format_sig4_up(s.alpha)
                      << " beta=" << format_sig4_up(s.beta)
                      << " |delta|=" << format_sig4_up(s.delta)
                      << " epsL2->" << format_sig4_up(s.epsL2_next) << '\n';
        else
            std::cout << "[step " << s.i << "] " << to_string(s.status) << ": " << s.message
                      << '\n';
        std::cout.flush();
    };
    RunReport rep = run(cfg.spec, cfg.plan, progress);
    emit_csv(rep, cfg, cfg.out_dir);
    if (!quiet)
        std::cout << (rep.all_verified ? "all steps verified" : "verification FAILED")
                  << "; reports written to " << cfg.out_dir << " ("
                  << format_sig4_up(rep.wall_seconds) << " s)\n";
    return rep.all_verified ? 0 : 2;
}

inline int run_reference(const RunConfig& cfg, bool quiet) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    SpatialMesh smesh = uniform_spatial(cfg.plan.space_elems);
    TemporalMesh tmesh = uniform_temporal(cfg.plan.T_step, cfg.plan.time_elems);
    HermiteSpace space(smesh, cfg.plan.px);
    std::vector<double> u0 = project_initial(space, cfg.spec);

    std::ofstream grid(fs::path(cfg.out_dir) / "reference_grid.csv");
    grid << "x,t,value\n";
    grid.precision(12);
    const int nx_samples = 64, nt_samples = 32;

    for (int i = 1; i <= cfg.plan.steps; ++i) {
        SpaceTimePoly poly = solve_reference(cfg.spec, space, tmesh, u0);
        double t0 = (i - 1) * cfg.plan.T_step;
        for (int a = 0; a <= nt_samples; ++a) {
            if (i > 1 && a == 0) continue; // shared with the previous step
            double tl = tmesh.length() * a / nt_samples;
            for (int b = 0; b <= nx_samples; ++b) {
                double x = double(b) / nx_samples;
                grid << x << ',' << t0 + tl << ',' << poly.eval(x, tl) << '\n';
            }
        }
        char name[64];
        std::snprintf(name, sizeof name, "reference_cells_%03d.csv", i);
        poly.write_cells_csv((fs::path(cfg.out_dir) / name).string());
        u0 = poly.end_dofs_mid();
        if (!quiet) std::cout << "[step " << i << "] reference solved\n";
    }
    return 0;
}

} // namespace detail

/// Entry point behind the binary: subcommands constants | verify | reference.
/// Exit codes: 0 success, 1 configuration/internal error, 2 verification
/// failed at some step (reports still written).
inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"rigorous existence proofs for 1D nonlinear parabolic IBVPs"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    int px_override = 0, steps_override = 0;
    bool quiet = false, dump_matrices = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (JSON)")->required();
        sub->add_option("--out", out_override, "output directory override");
        sub->add_option("--px", px_override, "reference spatial degree override (3 or 5)");
        sub->add_option("--steps", steps_override, "step count override");
        sub->add_flag("--quiet", quiet, "suppress progress output");
    };
    CLI::App* c_cmd = app.add_subcommand("constants", "projection constants only");
    add_common(c_cmd);
    c_cmd->add_flag("--dump-matrices", dump_matrices, "write A,B,M,U,W,Y as CSV");
    CLI::App* v_cmd = app.add_subcommand("verify", "run the verification loop");
    add_common(v_cmd);
    CLI::App* r_cmd = app.add_subcommand("reference", "approximate solution and contour data");
    add_common(r_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg = parse_config(detail::read_file(config_path));
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (px_override != 0) {
            if (px_override != 3 && px_override != 5)
                throw ConfigError("--px must be 3 or 5");
            cfg.plan.px = px_override;
        }
        if (steps_override != 0) cfg.plan.steps = steps_override;

        if (c_cmd->parsed()) return detail::run_constants(cfg, dump_matrices, quiet);
        if (r_cmd->parsed()) return detail::run_reference(cfg, quiet);
        return detail::run_verify(cfg, quiet);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace parasol
