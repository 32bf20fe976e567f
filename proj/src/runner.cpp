#include "runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "serialize.hpp"
#include "svg.hpp"
#include "version.hpp"

namespace bilap {

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw BilapError(4, "cannot create output directory " + dir + ": " + ec.message());
}

std::string label_of(const RunConfig& cfg, size_t i) {
    if (!cfg.domains[i].label.empty()) return cfg.domains[i].label;
    return std::string(shape_kind_name(cfg.domains[i].spec.kind)) + "-" + std::to_string(i);
}

std::string sanitize_cell(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

std::string structure_text(const EigenPair& pair, const DualFields& duals,
                           const StructureReport& rep) {
    std::string s;
    auto kv = [&s](const char* k, double v) {
        s += k;
        s += " = ";
        s += fmt17(v);
        s += "\n";
    };
    kv("lambda", pair.lambda);
    kv("p", pair.p);
    kv("el_residual", pair.el_residual);
    kv("iterations", pair.iterations);
    kv("f_dualnorm", duals.f_dualnorm);
    kv("g_dualnorm", duals.g_dualnorm);
    kv("poisson_residual", duals.poisson_residual);
    kv("sign_set_fraction", rep.sign_set_fraction);
    kv("inclusion_violation", rep.inclusion_violation);
    kv("laplacian_spread_pos", rep.laplacian_spread_pos);
    kv("laplacian_spread_neg", rep.laplacian_spread_neg);
    kv("hinged_constancy", rep.hinged_constancy);
    return s;
}

void write_pair_artifacts(const std::string& out, const RunConfig& cfg,
                          const EigenPair& pair) {
    DualFields duals = extract_duals(pair);
    StructureReport rep = structure_report(pair, duals, cfg.eps_f);
    ScalarField lap_u = laplacian(pair.u, pair.bc);
    write_text_file(join(out, "u.txt"), field_to_text(pair.u));
    write_text_file(join(out, "lap_u.txt"), field_to_text(lap_u));
    write_text_file(join(out, "f.txt"), field_to_text(duals.f));
    write_text_file(join(out, "g.txt"), field_to_text(duals.g));
    write_text_file(join(out, "structure.txt"), structure_text(pair, duals, rep));
}

std::string trace_csv(const ContinuationTrace& tr) {
    std::string s = csv_line({"p", "lambda", "el_residual"});
    for (auto& e : tr.entries)
        s += csv_line({fmt17(e.p), fmt17(e.lambda), fmt17(e.el_residual)});
    return s;
}

void run_solve(const RunConfig& cfg) {
    GridDomain d = make_domain(cfg.domains[0].spec);
    EigenPair pair = cfg.bc == BcKind::hinged ? solve_hinged_p(d, cfg.p, nullptr, cfg.tol)
                                              : solve_clamped_p(d, cfg.p, nullptr, cfg.tol);
    std::string s = csv_line(
        {"domain", "bc", "p", "h", "m", "measure", "lambda", "el_residual", "iterations"});
    s += csv_line({label_of(cfg, 0), bc_name(cfg.bc), fmt17(cfg.p), fmt17(d.h),
                   std::to_string(d.m()), fmt17(measure(d)), fmt17(pair.lambda),
                   fmt17(pair.el_residual), std::to_string(pair.iterations)});
    write_text_file(join(cfg.out, "summary.csv"), s);
    write_pair_artifacts(cfg.out, cfg, pair);
    std::printf("lambda = %.12g  (%s, p = %g, m = %d, %d iterations)\n", pair.lambda,
                bc_name(cfg.bc), cfg.p, d.m(), pair.iterations);
}

void run_continuation(const RunConfig& cfg) {
    GridDomain d = make_domain(cfg.domains[0].spec);
    ContinuationTrace tr = continuation(d, cfg.bc, cfg.p_schedule, cfg.tol);
    write_text_file(join(cfg.out, "trace.csv"), trace_csv(tr));
    std::string est;
    est += "lambda_inf_estimate = " + fmt17(tr.lambda_inf_estimate) + "\n";
    est += "fit_a = " + fmt17(tr.fit_a) + "\n";
    est += "fit_b = " + fmt17(tr.fit_b) + "\n";
    est += "terminal_p = " + fmt17(tr.terminal.p) + "\n";
    est += "terminal_lambda = " + fmt17(tr.terminal.lambda) + "\n";
    write_text_file(join(cfg.out, "estimate.txt"), est);
    write_pair_artifacts(cfg.out, cfg, tr.terminal);
    std::printf("lambda_inf_estimate = %.12g  (%s, %zu levels, terminal p = %g)\n",
                tr.lambda_inf_estimate, bc_name(cfg.bc), tr.entries.size(), tr.terminal.p);
}

void run_faber_krahn(const RunConfig& cfg) {
    std::vector<ShapeSpec> specs;
    std::vector<std::string> labels;
    for (size_t i = 0; i < cfg.domains.size(); ++i) {
        specs.push_back(cfg.domains[i].spec);
        labels.push_back(label_of(cfg, i));
    }
    ExperimentResult res = faber_krahn_experiment(specs, cfg.bc, cfg.p_schedule, cfg.tol,
                                                  &labels);
    std::string s = csv_line({"domain", "bc", "measure", "equal_area_radius",
                              "lambda_inf_estimate", "lambda_ball_oracle", "ratio",
                              "flagged", "status", "trace_ref"});
    for (auto& row : res.rows) {
        s += csv_line({row.domain_id, bc_name(row.bc), fmt17(row.measure),
                       fmt17(row.equal_area_radius), fmt17(row.lambda_inf_estimate),
                       fmt17(row.lambda_ball_oracle), fmt17(row.ratio),
                       row.flagged ? "1" : "0",
                       row.ok ? "ok" : "error: " + sanitize_cell(row.error),
                       row.ok ? row.trace_ref : ""});
        if (row.ok)
            write_text_file(join(cfg.out, row.trace_ref), trace_csv(row.trace));
        std::printf("%-14s ratio = %-10.6g estimate = %-12.8g oracle = %-12.8g%s\n",
                    row.domain_id.c_str(), row.ratio, row.lambda_inf_estimate,
                    row.lambda_ball_oracle, row.ok ? "" : "  [failed]");
    }
    write_text_file(join(cfg.out, "result.csv"), s);
    std::printf("# wall %.1f s\n", res.wall_seconds);
}

void run_oracle(const RunConfig& cfg) {
    std::string s;
    if (cfg.oracle == "hinged_lambda" || cfg.oracle == "clamped_lambda") {
        double v = cfg.oracle == "hinged_lambda" ? hinged_ball_lambda(cfg.n, cfg.R)
                                                 : clamped_ball_lambda(cfg.n, cfg.R);
        s = csv_line({"n", "R", "lambda"});
        s += csv_line({std::to_string(cfg.n), fmt17(cfg.R), fmt17(v)});
        std::printf("%s(n = %d, R = %g) = %.12g\n", cfg.oracle.c_str(), cfg.n, cfg.R, v);
    } else {
        bool torsion = cfg.oracle == "torsion";
        ClampedProfileParams params{cfg.n, cfg.R};
        s = csv_line({"r", torsion ? "v" : "w"});
        for (int i = 0; i < cfg.samples; ++i) {
            double r = cfg.R * i / (cfg.samples - 1);
            double v = torsion ? torsion_ball(cfg.n, cfg.R, r) : clamped_profile_w(params, r);
            s += csv_line({fmt17(r), fmt17(v)});
        }
        std::printf("%s profile: n = %d, R = %g, %d samples\n", cfg.oracle.c_str(), cfg.n,
                    cfg.R, cfg.samples);
    }
    write_text_file(join(cfg.out, "oracle.csv"), s);
}

void run_convergence(const RunConfig& cfg) {
    ConvergenceTable tab =
        convergence_study(cfg.domains[0].spec, cfg.bc, cfg.p, cfg.resolutions, cfg.tol);
    std::string s = csv_line({"resolution", "h", "m", "lambda"});
    for (auto& r : tab.rows)
        s += csv_line({fmt17(r.resolution), fmt17(r.h), std::to_string(r.m), fmt17(r.lambda)});
    write_text_file(join(cfg.out, "convergence.csv"), s);
    std::string est;
    est += "observed_order = " + fmt17(tab.observed_order) + "\n";
    est += "extrapolated = " + fmt17(tab.extrapolated) + "\n";
    write_text_file(join(cfg.out, "estimate.txt"), est);
    std::printf("extrapolated = %.10g  observed order = %.3f\n", tab.extrapolated,
                tab.observed_order);
}

std::vector<double> numeric_column(const std::vector<std::vector<std::string>>& rows,
                                   size_t col, const std::string& path) {
    std::vector<double> out;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (col >= rows[i].size())
            throw BilapError(4, "garbled table (short row): " + path);
        const std::string& cell = rows[i][col];
        char* end = nullptr;
        double v = std::strtod(cell.c_str(), &end);
        if (end == cell.c_str() || *end)
            throw BilapError(4, "garbled table (bad number '" + cell + "'): " + path);
        out.push_back(v);
    }
    return out;
}

void run_plot(const RunConfig& cfg) {
    std::string data = read_text_file(cfg.input);
    std::string svg, name;
    if (cfg.plot_kind == "heatmap") {
        svg = svg_heatmap(parse_field_text(data));
        name = "heatmap.svg";
    } else {
        auto rows = parse_csv(data);
        if (rows.size() < 2 || rows[0].size() < 2)
            throw BilapError(4, "plot input needs a header row and two columns: " + cfg.input);
        if (cfg.plot_kind == "trace") {
            size_t cp = rows[0].size(), cl = rows[0].size();
            for (size_t j = 0; j < rows[0].size(); ++j) {
                if (rows[0][j] == "p") cp = j;
                if (rows[0][j] == "lambda") cl = j;
            }
            if (cp == rows[0].size() || cl == rows[0].size())
                throw BilapError(4, "trace plot needs 'p' and 'lambda' columns: " + cfg.input);
            auto ps = numeric_column(rows, cp, cfg.input);
            auto lams = numeric_column(rows, cl, cfg.input);
            auto [a, b] = fit_tail(ps, lams);
            svg = svg_trace(ps, lams, a, b);
            name = "trace.svg";
        } else {
            auto xs = numeric_column(rows, 0, cfg.input);
            auto ys = numeric_column(rows, 1, cfg.input);
            svg = svg_curve(xs, ys, rows[0][0], rows[0][1]);
            name = "radial.svg";
        }
    }
    write_text_file(join(cfg.out, name), svg);
    std::printf("wrote %s\n", join(cfg.out, name).c_str());
}

}  // namespace

void run_config(const RunConfig& cfg) {
    ensure_out_dir(cfg.out);
    write_text_file(join(cfg.out, "manifest.txt"),
                    std::string("# bilap ") + kVersion + "\n" + serialize_config(cfg));
    switch (cfg.command) {
        case Command::solve: run_solve(cfg); break;
        case Command::continuation: run_continuation(cfg); break;
        case Command::faber_krahn: run_faber_krahn(cfg); break;
        case Command::oracle: run_oracle(cfg); break;
        case Command::convergence: run_convergence(cfg); break;
        case Command::plot: run_plot(cfg); break;
    }
}

}  // namespace bilap
