// edgekernel command-line front end: distribution tables, finite-N tables,
// convergence reports, oracle access, kernel dumps, and plot-script emission.
//
// Exit codes: 0 ok, 2 usage error, 3 numerical failure, 4 calibration mismatch.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "edgekernel/finite_kernels.hpp"
#include "edgekernel/fredholm.hpp"
#include "edgekernel/limit_kernels.hpp"
#include "edgekernel/mc.hpp"
#include "edgekernel/painleve.hpp"
#include "edgekernel/parallel.hpp"
#include "edgekernel/smalln.hpp"
#include "edgekernel/version.hpp"

namespace ek = edgekernel;
using nlohmann::json;

namespace {

// "a:b:step", inclusive of both ends when (b-a)/step is integral.
std::vector<double> parse_grid(const std::string& txt) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(txt);
    in >> a >> c1 >> b >> c2 >> step;
    const bool parsed = !in.fail();
    in.clear();
    std::string rest;
    in >> rest;
    if (!parsed || c1 != ':' || c2 != ':' || !rest.empty() || !std::isfinite(step))
        throw std::invalid_argument("bad grid '" + txt + "': expected a:b:step");
    if (!(step > 0) || b < a)
        throw std::invalid_argument("bad grid '" + txt + "': need step > 0 and b >= a");
    std::vector<double> g;
    for (int k = 0;; ++k) {
        const double v = a + k * step;
        if (v > b + 1e-9 * step) break;
        g.push_back(v);
        if (g.size() > 200000) throw std::invalid_argument("grid '" + txt + "' too large");
    }
    return g;
}

std::vector<int> parse_int_list(const std::string& txt) {
    std::vector<int> out;
    std::istringstream in(txt);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer list '" + txt + "'");
        }
        if (pos != item.size()) throw std::invalid_argument("bad integer list '" + txt + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

std::vector<double> parse_double_list(const std::string& txt) {
    std::vector<double> out;
    std::istringstream in(txt);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number list '" + txt + "'");
        }
        if (pos != item.size()) throw std::invalid_argument("bad number list '" + txt + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

ek::Ensemble to_ensemble(const std::string& s) {
    if (s == "goe") return ek::Ensemble::GOE;
    if (s == "gse") return ek::Ensemble::GSE;
    throw std::invalid_argument("ensemble '" + s + "' not valid here (want goe or gse)");
}

ek::RhoMode to_rho(const std::string& s) {
    if (s == "none") return ek::RhoMode::NONE;
    if (s == "exp") return ek::RhoMode::EXP;
    return ek::RhoMode::POLY;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> cols;
    std::vector<std::vector<double>> rows;
    json extras = json::object();  // scalar facts beside the columns
};

json make_manifest(const std::string& command, const json& params,
                   std::optional<std::uint64_t> seed, double wall_ms) {
    json m;
    m["command"] = command;
    m["params"] = params;
    m["version"] = ek::kVersion;
    m["threads"] = ek::max_threads();
    if (seed)
        m["seed"] = *seed;
    else
        m["seed"] = nullptr;
    m["wall_ms"] = wall_ms;
    return m;
}

void write_payload(std::ostream& out, const Table& t, const json& manifest,
                   const std::string& format) {
    if (format == "json") {
        json doc;
        doc["manifest"] = manifest;
        doc["column_order"] = t.cols;
        json cols = json::object();
        for (size_t c = 0; c < t.cols.size(); ++c) {
            json arr = json::array();
            for (const auto& r : t.rows) arr.push_back(r[c]);
            cols[t.cols[c]] = arr;
        }
        doc["columns"] = cols;
        for (const auto& [k, v] : t.extras.items()) doc[k] = v;
        out << doc.dump(2) << "\n";
        return;
    }
    out << "# edgekernel v" << ek::kVersion << "\n";
    out << "# manifest: " << manifest.dump() << "\n";
    for (const auto& [k, v] : t.extras.items()) out << "# " << k << ": " << v.dump() << "\n";
    for (size_t c = 0; c < t.cols.size(); ++c) out << (c ? "," : "") << t.cols[c];
    out << "\n";
    for (const auto& r : t.rows) {
        for (size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << fmt(r[c]);
        out << "\n";
    }
}

void write_output(const Table& t, const json& manifest, const std::string& format,
                  const std::string& path) {
    if (path.empty()) {
        write_payload(std::cout, t, manifest, format);
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    write_payload(f, t, manifest, format);
}

// Generic renderer for kernel dumps: heatmap when both coordinates vary,
// curve otherwise. Written next to the CSV so the pair is self-contained.
void write_plot_script(const std::string& csv_path) {
    const std::string script_path = csv_path + ".plot.py";
    std::ofstream f(script_path);
    if (!f) throw std::runtime_error("cannot open plot script '" + script_path + "'");
    f << "#!/usr/bin/env python3\n"
         "# Renders the kernel dump CSV written alongside this script.\n"
         "import matplotlib\n"
         "matplotlib.use('Agg')\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "path = "
      << std::quoted(csv_path)
      << "\n"
         "rows = []\n"
         "with open(path) as fh:\n"
         "    for line in fh:\n"
         "        line = line.strip()\n"
         "        if not line or line.startswith('#'):\n"
         "            continue\n"
         "        rows.append(line.split(','))\n"
         "header, data = rows[0], [[float(v) for v in r] for r in rows[1:]]\n"
         "xs = sorted({r[0] for r in data})\n"
         "ys = sorted({r[1] for r in data})\n"
         "names = header[2:]\n"
         "fig, axes = plt.subplots(1, len(names), figsize=(5 * len(names), 4), squeeze=False)\n"
         "for k, name in enumerate(names):\n"
         "    ax = axes[0][k]\n"
         "    if len(xs) > 1 and len(ys) > 1:\n"
         "        xi = {v: i for i, v in enumerate(xs)}\n"
         "        yi = {v: i for i, v in enumerate(ys)}\n"
         "        grid = [[float('nan')] * len(xs) for _ in ys]\n"
         "        for r in data:\n"
         "            grid[yi[r[1]]][xi[r[0]]] = r[2 + k]\n"
         "        im = ax.pcolormesh(xs, ys, grid, shading='nearest')\n"
         "        fig.colorbar(im, ax=ax)\n"
         "        ax.set_xlabel('x')\n"
         "        ax.set_ylabel('y')\n"
         "    else:\n"
         "        horiz = xs if len(xs) > 1 else ys\n"
         "        vals = [r[2 + k] for r in data]\n"
         "        ax.plot(horiz[: len(vals)], vals)\n"
         "        ax.set_xlabel('x' if len(xs) > 1 else 'y')\n"
         "    ax.set_title(name)\n"
         "fig.tight_layout()\n"
         "fig.savefig(path + '.png', dpi=130)\n"
         "print('wrote', path + '.png')\n";
}

struct CommonOpts {
    int m = 64;
    double tol = 1e-8;
    std::optional<double> T;
    std::string rho = "none";
    std::string format = "csv";
    std::string output;
};

void attach_common(CLI::App* cmd, CommonOpts& o, bool with_rho = true) {
    cmd->add_option("--m", o.m, "Quadrature nodes per block (doubled until converged)")
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "Determinant convergence target")->capture_default_str();
    cmd->add_option("--T", o.T, "Upper truncation point (default: automatic)");
    if (with_rho)
        cmd->add_option("--rho-mode", o.rho, "Conjugation weight: none|exp|poly")
            ->check(CLI::IsMember({"none", "exp", "poly"}))
            ->capture_default_str();
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", o.output, "Output file (default: stdout)");
}

ek::DetConfig det_config(const CommonOpts& o) {
    ek::DetConfig cfg;
    cfg.m = o.m;
    cfg.tol = o.tol;
    if (o.T) cfg.T = *o.T;
    cfg.rho_mode = to_rho(o.rho);
    return cfg;
}

json common_params(const CommonOpts& o) {
    json p;
    p["m"] = o.m;
    p["tol"] = o.tol;
    if (o.T)
        p["T"] = *o.T;
    else
        p["T"] = "auto";
    p["rho_mode"] = o.rho;
    p["format"] = o.format;
    if (!o.output.empty()) p["output"] = o.output;
    return p;
}

double now_ms(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

int table_exit(const ek::DistributionTable& tbl) {
    for (bool ok : tbl.row_ok)
        if (!ok) return 3;
    return 0;
}

void append_dist_rows(Table& t, const ek::DistributionTable& tbl) {
    for (size_t i = 0; i < tbl.rows.size(); ++i) {
        const ek::GapResult& r = tbl.rows[i];
        t.rows.push_back({r.s, r.sqrt_value, r.err_est, double(r.m_used), r.T_used,
                          tbl.row_ok[i] ? 1.0 : 0.0});
    }
}

int cmd_limit(const std::string& ensemble, const std::string& grid_txt, const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> grid = parse_grid(grid_txt);
    ek::TableKind kind = ek::TableKind::AIRY_F2;
    if (ensemble == "goe") kind = ek::TableKind::GOE_LIMIT;
    if (ensemble == "gse") kind = ek::TableKind::GSE_LIMIT;
    const auto tbl = ek::cdf_table(kind, grid, det_config(o));

    Table t;
    t.cols = {"s", "F", "err_est", "m_used", "T_used", "ok"};
    append_dist_rows(t, tbl);
    json params = common_params(o);
    params["ensemble"] = ensemble;
    params["s_grid"] = grid_txt;
    write_output(t, make_manifest("limit", params, std::nullopt, now_ms(t0)), o.format, o.output);
    return table_exit(tbl);
}

int cmd_finite(const std::string& ensemble, int N, const std::string& grid_txt,
               const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> grid = parse_grid(grid_txt);
    const ek::EnsembleSpec spec = ek::make_spec(to_ensemble(ensemble), N);
    const auto tbl = ek::cdf_table(ek::TableKind::FINITE, grid, det_config(o), &spec);

    Table t;
    const bool with_oracle = N <= 4;
    t.cols = {"t", "F", "err_est", "m_used", "T_used"};
    if (with_oracle) {
        t.cols.push_back("oracle");
        t.cols.push_back("residual");
    }
    t.cols.push_back("ok");
    for (size_t i = 0; i < tbl.rows.size(); ++i) {
        const ek::GapResult& r = tbl.rows[i];
        std::vector<double> row = {r.s, r.sqrt_value, r.err_est, double(r.m_used), r.T_used};
        if (with_oracle) {
            const double oracle = ek::smalln_cdf_direct(spec, r.s);
            row.push_back(oracle);
            row.push_back(r.sqrt_value - oracle);
        }
        row.push_back(tbl.row_ok[i] ? 1.0 : 0.0);
        t.rows.push_back(std::move(row));
    }
    json params = common_params(o);
    params["ensemble"] = ensemble;
    params["N"] = N;
    params["t_grid"] = grid_txt;
    write_output(t, make_manifest("finite", params, std::nullopt, now_ms(t0)), o.format, o.output);
    return table_exit(tbl);
}

int cmd_converge(const std::string& ensemble, double s, const std::string& nlist_txt,
                 const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<int> Ns = parse_int_list(nlist_txt);
    const ek::Ensemble ens = to_ensemble(ensemble);
    const ek::DetConfig cfg = det_config(o);

    const double f_inf = ek::gap_matrix(ek::limit_kernel(ens), s, cfg).sqrt_value;
    const double probes[3][2] = {{0.0, 0.0}, {1.0, -1.0}, {2.0, 2.0}};
    ek::MatrixKernelSample lim[3];
    for (int p = 0; p < 3; ++p)
        lim[p] = ens == ek::Ensemble::GOE ? ek::k_goe(probes[p][0], probes[p][1])
                                          : ek::k_gse(probes[p][0], probes[p][1]);

    Table t;
    t.cols = {"N", "F_N", "abs_err", "kerr_00", "kerr_1m1", "kerr_22", "F_inf", "ok"};
    bool all_ok = true;
    for (int N : Ns) {
        const ek::EnsembleSpec spec = ek::make_spec(ens, N);
        double fn = 0;
        bool ok = true;
        try {
            const ek::GapResult r = ek::gap_matrix(ek::finite_kernel(spec), s, cfg);
            fn = r.sqrt_value;
            ok = r.converged;
        } catch (const std::runtime_error&) {
            ok = false;
        }
        double kerr[3];
        for (int p = 0; p < 3; ++p) {
            const ek::MatrixKernelSample f = ek::scaled_kernel(spec, probes[p][0], probes[p][1]);
            kerr[p] = std::max(std::max(std::fabs(f.e11 - lim[p].e11), std::fabs(f.e12 - lim[p].e12)),
                               std::max(std::fabs(f.e21 - lim[p].e21), std::fabs(f.e22 - lim[p].e22)));
        }
        all_ok = all_ok && ok;
        t.rows.push_back({double(N), fn, std::fabs(fn - f_inf), kerr[0], kerr[1], kerr[2], f_inf,
                          ok ? 1.0 : 0.0});
    }
    bool monotone = t.rows.size() >= 2;
    for (size_t i = 1; i < t.rows.size(); ++i)
        if (!(t.rows[i][2] < t.rows[i - 1][2])) monotone = false;
    t.extras["monotone_decreasing"] = monotone;
    t.extras["f_inf"] = f_inf;

    json params = common_params(o);
    params["ensemble"] = ensemble;
    params["s"] = s;
    params["N_list"] = nlist_txt;
    write_output(t, make_manifest("converge", params, std::nullopt, now_ms(t0)), o.format,
                 o.output);
    return all_ok ? 0 : 3;
}

int cmd_oracle_smalln(const std::string& ensemble, int N, double tval, const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const ek::EnsembleSpec spec = ek::make_spec(to_ensemble(ensemble), N);
    const double cdf = ek::smalln_cdf_direct(spec, tval);
    Table t;
    t.cols = {"t", "cdf"};
    t.rows.push_back({tval, cdf});
    json params = common_params(o);
    params["ensemble"] = ensemble;
    params["N"] = N;
    params["t"] = tval;
    write_output(t, make_manifest("oracle small-n", params, std::nullopt, now_ms(t0)), o.format,
                 o.output);
    return 0;
}

int cmd_oracle_painleve(const std::vector<double>& s_values, const json& params_in,
                        const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto vals = ek::painleve_eval(s_values);
    Table t;
    t.cols = {"s", "q", "F1", "F2", "F4"};
    for (const auto& v : vals) t.rows.push_back({v.s, v.q, v.f1, v.f2, v.f4});
    json params = common_params(o);
    for (const auto& [k, v] : params_in.items()) params[k] = v;
    write_output(t, make_manifest("oracle painleve", params, std::nullopt, now_ms(t0)), o.format,
                 o.output);
    return 0;
}

int cmd_oracle_mc(const std::string& ensemble, int N, long samples, std::uint64_t seed,
                  const std::string& grid_txt, const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    ek::McConfig cfg;
    cfg.ensemble = to_ensemble(ensemble);
    cfg.N = N;
    cfg.samples = samples;
    cfg.seed = seed;
    const std::vector<double> grid = parse_grid(grid_txt);
    const ek::McResult res = ek::mc_edge_cdf(cfg, grid);
    Table t;
    t.cols = {"s", "cdf", "se"};
    for (size_t i = 0; i < res.s_eval.size(); ++i)
        t.rows.push_back({res.s_eval[i], res.cdf[i], res.se[i]});
    json params = common_params(o);
    params["ensemble"] = ensemble;
    params["N"] = N;
    params["samples"] = samples;
    params["s_grid"] = grid_txt;
    write_output(t, make_manifest("oracle mc", params, seed, now_ms(t0)), o.format, o.output);
    return 0;
}

int cmd_oracle_calibrate(const std::string& grid_txt, double tol, const std::string& cal_path,
                         const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> grid = parse_double_list(grid_txt);
    const ek::F4Calibration cal = ek::calibrate_f4(grid, tol);

    Table t;
    t.cols = {"scale", "residual", "matched"};
    for (size_t k = 0; k < cal.candidate_scales.size(); ++k)
        t.rows.push_back({cal.candidate_scales[k], cal.candidate_residuals[k],
                          cal.candidate_residuals[k] < tol ? 1.0 : 0.0});
    t.extras["match_count"] = cal.match_count;
    if (cal.match_count == 1) {
        t.extras["f4_argument_scale"] = cal.scale;
        t.extras["max_abs_residual"] = cal.residual;
    }
    json params = common_params(o);
    params["grid"] = grid_txt;
    params["calibration_tol"] = tol;
    params["calibration_file"] = cal_path;
    const json manifest = make_manifest("oracle calibrate-f4", params, std::nullopt, now_ms(t0));
    write_output(t, manifest, o.format, o.output);

    if (cal.match_count != 1) {
        std::cerr << "calibration mismatch: " << cal.match_count
                  << " candidate conventions within tol " << fmt(tol) << "\n";
        return 4;
    }
    std::ofstream f(cal_path);
    if (!f) throw std::runtime_error("cannot open calibration file '" + cal_path + "'");
    f << "# edgekernel v" << ek::kVersion << "\n";
    f << "# manifest: " << manifest.dump() << "\n";
    f << "f4_argument_scale = " << fmt(cal.scale) << "\n";
    f << "max_abs_residual = " << fmt(cal.residual) << "\n";
    f << "tol = " << fmt(tol) << "\n";
    f << "grid = " << grid_txt << "\n";
    return 0;
}

int cmd_kernel(const std::string& which, const std::string& ensemble, const std::string& entry,
               const std::string& xg_txt, const std::string& yg_txt, int N, bool emit_plot,
               const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> xs = parse_grid(xg_txt);
    const std::vector<double> ys = parse_grid(yg_txt.empty() ? xg_txt : yg_txt);

    if (ensemble == "gue") {
        if (which != "limit" || entry != "S")
            throw std::invalid_argument("gue supports only the limit scalar kernel (entry S)");
    }
    std::optional<ek::EnsembleSpec> spec;
    if (which == "finite") {
        if (ensemble == "gue") throw std::invalid_argument("finite kernels: ensemble goe or gse");
        if (N <= 0) throw std::invalid_argument("finite kernels need --N");
        spec = ek::make_spec(to_ensemble(ensemble), N);
    }
    const ek::Ensemble lim_ens = ensemble == "gse" ? ek::Ensemble::GSE : ek::Ensemble::GOE;

    auto sample = [&](double x, double y) -> ek::MatrixKernelSample {
        if (ensemble == "gue") return {ek::k_airy(x, y), 0, 0, 0};
        if (spec) return ek::scaled_kernel(*spec, x, y);
        return lim_ens == ek::Ensemble::GOE ? ek::k_goe(x, y) : ek::k_gse(x, y);
    };

    Table t;
    t.cols = {"x", "y"};
    if (entry == "full") {
        t.cols.insert(t.cols.end(), {"S", "SD", "IS", "ST"});
    } else {
        t.cols.push_back(entry);
    }
    for (double x : xs) {
        for (double y : ys) {
            const ek::MatrixKernelSample k = sample(x, y);
            std::vector<double> row = {x, y};
            if (entry == "full") {
                row.insert(row.end(), {k.e11, k.e12, k.e21, k.e22});
            } else if (entry == "S") {
                row.push_back(k.e11);
            } else if (entry == "SD") {
                row.push_back(k.e12);
            } else {
                row.push_back(k.e21);  // IS (minus eps for GOE)
            }
            t.rows.push_back(std::move(row));
        }
    }

    json params = common_params(o);
    params["which"] = which;
    params["ensemble"] = ensemble;
    params["entry"] = entry;
    params["x_grid"] = xg_txt;
    params["y_grid"] = yg_txt.empty() ? xg_txt : yg_txt;
    if (spec) params["N"] = N;
    params["emit_plot"] = emit_plot;
    write_output(t, make_manifest("kernel", params, std::nullopt, now_ms(t0)), o.format, o.output);
    if (emit_plot) {
        if (o.output.empty() || o.format != "csv")
            throw std::invalid_argument("--emit-plot needs --format csv and --output FILE");
        write_plot_script(o.output);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edgekernel: GOE/GSE edge-scaling kernels, Fredholm-determinant gap "
                 "probabilities, and independent oracles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("edgekernel v") + ek::kVersion);
    app.footer("Grids use a:b:step, inclusive of both ends when (b-a)/step is integral.\n"
               "EDGEKERNEL_THREADS caps row parallelism. Exit codes: 0 ok, 2 usage, "
               "3 numerical failure, 4 calibration mismatch.");

    std::string l_ens, l_grid;
    CommonOpts l_opt;
    CLI::App* limit = app.add_subcommand("limit", "Limiting distribution table F(s)");
    limit->add_option("--ensemble", l_ens, "goe|gse|gue (gue: scalar Airy kernel F2)")
        ->required()
        ->check(CLI::IsMember({"goe", "gse", "gue"}));
    limit->add_option("--s-grid", l_grid, "Grid a:b:step of edge-scaled s values")->required();
    attach_common(limit, l_opt);

    std::string f_ens, f_grid;
    int f_N = 0;
    CommonOpts f_opt;
    CLI::App* finite = app.add_subcommand("finite", "Finite-N largest-eigenvalue CDF table F_N(t)");
    finite->add_option("--ensemble", f_ens, "goe (even N) | gse (odd N)")
        ->required()
        ->check(CLI::IsMember({"goe", "gse"}));
    finite->add_option("--N", f_N, "Number of eigenvalues")->required();
    finite->add_option("--t-grid", f_grid, "Grid a:b:step of unscaled t values")->required();
    attach_common(finite, f_opt);

    std::string c_ens, c_nlist;
    double c_s = 0;
    CommonOpts c_opt;
    CLI::App* conv = app.add_subcommand("converge", "Finite-to-limit convergence report at one s");
    conv->add_option("--ensemble", c_ens, "goe|gse")
        ->required()
        ->check(CLI::IsMember({"goe", "gse"}));
    conv->add_option("--s", c_s, "Edge-scaled evaluation point")->required();
    conv->add_option("--N-list", c_nlist, "Comma-separated N values (parity applies)")->required();
    attach_common(conv, c_opt);

    CLI::App* oracle = app.add_subcommand("oracle", "Independent oracles");
    oracle->require_subcommand(1);

    std::string os_ens;
    int os_N = 0;
    double os_t = 0;
    CommonOpts os_opt;
    CLI::App* o_smalln = oracle->add_subcommand("small-n", "Direct joint-density integration");
    o_smalln->add_option("--ensemble", os_ens, "goe (N 2 or 4) | gse (N 1 or 3)")
        ->required()
        ->check(CLI::IsMember({"goe", "gse"}));
    o_smalln->add_option("--N", os_N, "Number of eigenvalues")->required();
    o_smalln->add_option("--t", os_t, "Evaluation point (unscaled)")->required();
    attach_common(o_smalln, os_opt, false);

    std::optional<double> op_s;
    std::string op_grid;
    CommonOpts op_opt;
    CLI::App* o_pain = oracle->add_subcommand("painleve", "Painleve II route to F1, F2, F4");
    o_pain->add_option("--s", op_s, "Single evaluation point (s >= -10)");
    o_pain->add_option("--s-grid", op_grid, "Grid a:b:step (alternative to --s)");
    attach_common(o_pain, op_opt, false);

    std::string om_ens = "goe", om_grid;
    int om_N = 2;
    long om_samples = 10000;
    std::uint64_t om_seed = 1;
    CommonOpts om_opt;
    CLI::App* o_mc = oracle->add_subcommand("mc", "Tridiagonal Monte Carlo edge CDF");
    o_mc->add_option("--ensemble", om_ens, "goe|gse")->check(CLI::IsMember({"goe", "gse"}));
    o_mc->add_option("--N", om_N, "Matrix size (eigenvalue count)")->capture_default_str();
    o_mc->add_option("--samples", om_samples, "Sample count")->capture_default_str();
    o_mc->add_option("--seed", om_seed, "RNG seed (fixed seed => identical output)")
        ->capture_default_str();
    o_mc->add_option("--s-grid", om_grid, "Edge-scaled evaluation grid a:b:step")->required();
    attach_common(o_mc, om_opt, false);

    std::string oc_grid = "-5,-3,-1,0,1,2", oc_file = "f4_calibration.txt";
    double oc_tol = 1e-5;
    CommonOpts oc_opt;
    CLI::App* o_cal = oracle->add_subcommand(
        "calibrate-f4", "Pin the F4 argument convention against the GSE gap");
    o_cal->add_option("--grid", oc_grid, "Comma-separated s values")->capture_default_str();
    o_cal->add_option("--calibration-tol", oc_tol, "Match tolerance")->capture_default_str();
    o_cal->add_option("--calibration-file", oc_file, "Constants file written on success")
        ->capture_default_str();
    attach_common(o_cal, oc_opt, false);

    std::string k_which, k_ens, k_entry = "S", k_xg, k_yg;
    int k_N = 0;
    bool k_plot = false;
    CommonOpts k_opt;
    CLI::App* kern = app.add_subcommand("kernel", "Kernel entry dump over a coordinate grid");
    kern->add_option("--which", k_which, "finite|limit")
        ->required()
        ->check(CLI::IsMember({"finite", "limit"}));
    kern->add_option("--ensemble", k_ens, "goe|gse|gue (gue: limit scalar only)")
        ->required()
        ->check(CLI::IsMember({"goe", "gse", "gue"}));
    kern->add_option("--entry", k_entry, "S|SD|IS|full")
        ->check(CLI::IsMember({"S", "SD", "IS", "full"}))
        ->capture_default_str();
    kern->add_option("--x-grid", k_xg, "Grid a:b:step (edge-scaled coordinates)")->required();
    kern->add_option("--y-grid", k_yg, "Grid a:b:step (default: x grid)");
    kern->add_option("--N", k_N, "Eigenvalue count (finite kernels)");
    kern->add_flag("--emit-plot", k_plot, "Write <output>.plot.py next to the CSV");
    attach_common(kern, k_opt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(limit)) return cmd_limit(l_ens, l_grid, l_opt);
        if (app.got_subcommand(finite)) return cmd_finite(f_ens, f_N, f_grid, f_opt);
        if (app.got_subcommand(conv)) return cmd_converge(c_ens, c_s, c_nlist, c_opt);
        if (app.got_subcommand(kern))
            return cmd_kernel(k_which, k_ens, k_entry, k_xg, k_yg, k_N, k_plot, k_opt);
        if (oracle->got_subcommand(o_smalln)) return cmd_oracle_smalln(os_ens, os_N, os_t, os_opt);
        if (oracle->got_subcommand(o_pain)) {
            std::vector<double> s_values;
            json params;
            if (op_s && !op_grid.empty())
                throw std::invalid_argument("painleve: give --s or --s-grid, not both");
            if (op_s) {
                s_values = {*op_s};
                params["s"] = *op_s;
            } else if (!op_grid.empty()) {
                s_values = parse_grid(op_grid);
                params["s_grid"] = op_grid;
            } else {
                throw std::invalid_argument("painleve: need --s or --s-grid");
            }
            return cmd_oracle_painleve(s_values, params, op_opt);
        }
        if (oracle->got_subcommand(o_cal))
            return cmd_oracle_calibrate(oc_grid, oc_tol, oc_file, oc_opt);
        if (oracle->got_subcommand(o_mc))
            return cmd_oracle_mc(om_ens, om_N, om_samples, om_seed, om_grid, om_opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
