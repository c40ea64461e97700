/*******************************************************************************
 * Copyright 2026 The cdfdamage Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bar_config.hpp"
#include "cdfdamage/csv.hpp"
#include "cdfdamage/damage_laws.hpp"
#include "cdfdamage/distributions.hpp"
#include "cdfdamage/errors.hpp"
#include "cdfdamage/fem2d/config.hpp"
#include "cdfdamage/fem2d/solver.hpp"
#include "cdfdamage/ini.hpp"
#include "cdfdamage/quasistatic.hpp"
#include "cdfdamage/response.hpp"

#ifndef CDFDAMAGE_VERSION
#define CDFDAMAGE_VERSION "0.0.0"
#endif

namespace cdfdamage::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Global {
    std::string out;
    bool force = false;
    int threads = 1;
    std::uint64_t seed = 1;
};

// what a subcommand produced, for the manifest
struct Run {
    json config = json::object();
    fs::path dir;
    std::vector<std::string> files;
    bool wrote = false;
};

std::string short_number(double v) {
    std::ostringstream os;
    os << std::setprecision(7) << v;
    return os.str();
}

fs::path prepare_output(const std::string &dir, bool force) {
    const fs::path p(dir);
    if (fs::exists(p)) {
        if (!fs::is_directory(p)) throw ConfigError("--out: '" + dir + "' exists and is not a directory");
        if (!fs::is_empty(p) && !force)
            throw ConfigError("--out: '" + dir + "' is not empty; pass --force to write into it");
    }
    fs::create_directories(p);
    return p;
}

void open_output(Run &run, const Global &g, const std::string &fallback) {
    run.dir = prepare_output(g.out.empty() ? fallback : g.out, g.force);
    run.wrote = true;
}

std::string add_file(Run &run, const std::string &name) {
    run.files.push_back(name);
    return (run.dir / name).string();
}

void write_text(Run &run, const std::string &name, const std::string &text) {
    std::ofstream f(add_file(run, name), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (run.dir / name).string());
    f << text;
}

DamageLaw make_law(const std::string &model, double G, double ell, double n) {
    LawKind kind;
    try {
        kind = law_kind_from_string(model);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("--model: ") + e.what());
    }
    try {
        return DamageLaw::make(kind, G, ell, n);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("--n: ") + e.what());
    }
}

Distribution make_distribution(const std::string &name, double n) {
    DistributionKind kind;
    try {
        kind = distribution_kind_from_string(name);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("--kind: ") + e.what());
    }
    try {
        return Distribution::make(kind, n);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("--n: ") + e.what());
    }
}

// ---- dist

struct DistOpts {
    std::string kind;
    double n = 1.0;
    std::vector<double> moments;
    double xmax = 10.0;
    int points = 201;
};

void cmd_dist(const DistOpts &o, const Global &g, Run &run, std::ostream &out) {
    const auto d = make_distribution(o.kind, o.n);
    run.config = {{"kind", o.kind}, {"n", o.n}, {"moments", o.moments}, {"xmax", o.xmax}, {"points", o.points}};

    struct Row {
        double m, value;
        bool closed;
    };
    std::vector<Row> rows;
    for (double m : o.moments) {
        const auto ex = moment_exists(d, m);
        if (!ex.convergent) {
            out << short_number(m) << "\tdiverges\t" << ex.condition << "\n";
            continue;
        }
        double v;
        bool closed = true;
        try {
            v = moment_closed(d, m).value;
        } catch (const NoClosedForm &) {
            v = moment_numeric(d, m);
            closed = false;
        }
        rows.push_back({m, v, closed});
        out << short_number(v) << "\n";
    }
    if (g.out.empty()) return;

    open_output(run, g, g.out);
    {
        CsvWriter csv(add_file(run, "dist.csv"), {"x", "cdf", "pdf", "half_line_cdf", "half_line_pdf"});
        const double lo = d.full_line() ? -o.xmax : 0.0;
        for (int i = 0; i < o.points; ++i) {
            const double x = lo + (o.xmax - lo) * i / (o.points - 1);
            const bool half = x >= 0.0;
            csv.row({x, d.cdf(x), d.pdf(x), half ? d.half_line_cdf(x) : 0.0, half ? d.half_line_pdf(x) : 0.0});
        }
    }
    if (!rows.empty()) {
        CsvWriter csv(add_file(run, "moments.csv"), {"m", "value", "closed_form"});
        for (const auto &r : rows)
            csv.row({r.m, r.value, r.closed ? 1.0 : 0.0});
    }
}

// ---- law

struct LawOpts {
    std::string model;
    double n = 1.0, G = 1.0, ell = 1.0;
    double phi_max = 0.0;
    int points = 1001;
};

void cmd_law(const LawOpts &o, const Global &g, Run &run, std::ostream &out) {
    const auto law = make_law(o.model, o.G, o.ell, o.n);
    const double phi_max = o.phi_max > 0.0 ? o.phi_max : 10.0 * law.saturation();
    run.config = {{"model", o.model}, {"n", o.n}, {"G", o.G}, {"ell", o.ell}, {"phi_max", phi_max},
            {"points", o.points}};
    open_output(run, g, "cdfdamage-law");
    CsvWriter csv(add_file(run, "law.csv"), {"phi", "psi", "degradation", "damage"});
    for (int i = 0; i < o.points; ++i) {
        const double phi = phi_max * i / (o.points - 1);
        csv.row({phi, law.psi(phi), law.degradation(phi), law.damage(phi)});
    }
    out << law.describe() << "\nsaturation G/ell = " << format_number(law.saturation()) << "\n";
}

// ---- calibrate

struct CalibrateOpts {
    std::string model;
    double n = 1.0, sigma_max = 1.0, k = 1.0, G = 1.0;
};

void cmd_calibrate(const CalibrateOpts &o, const Global &g, Run &run, std::ostream &out) {
    (void)make_law(o.model, 1.0, 1.0, o.n); // validates model and n
    const auto c = calibrate_length(law_kind_from_string(o.model), o.n, o.sigma_max, o.k, o.G);
    run.config = {{"model", o.model}, {"n", o.n}, {"sigma_max", o.sigma_max}, {"k", o.k}, {"G", o.G}};
    out << "ell = " << format_number(c.ell) << "\n"
        << "C = " << format_number(c.constant) << "\n"
        << "method = " << (c.numeric ? "numeric" : "closed form") << "\n";
    if (g.out.empty()) return;
    open_output(run, g, g.out);
    CsvWriter csv(add_file(run, "calibration.csv"), {"sigma_max", "k", "G", "ell", "constant", "numeric"});
    csv.row({o.sigma_max, o.k, o.G, c.ell, c.constant, c.numeric ? 1.0 : 0.0});
}

// ---- curve

struct CurveOpts {
    std::string model;
    double n = 1.0, G = 1.0, ell = 1.0, k = 1.0;
    std::string path = "ramp";
    double strain_max = 0.0, strain_peak = 0.0, strain_valley = 0.0;
    int steps = 1000;
    std::string file;
};

std::vector<double> read_strain_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("--file: cannot open '" + path + "'");
    std::vector<double> v;
    std::string line;
    int no = 0;
    while (std::getline(f, line)) {
        ++no;
        line = ini::trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto cut = line.find(',');
        v.push_back(ini::to_double(path + ":" + std::to_string(no), line.substr(0, cut)));
        if (v.back() < 0.0) throw ConfigError(path + ":" + std::to_string(no) + ": strains must be non-negative");
    }
    if (v.empty()) throw ConfigError("--file: '" + path + "' holds no strains");
    if (v.front() != 0.0) v.insert(v.begin(), 0.0);
    return v;
}

void cmd_curve(const CurveOpts &o, const Global &g, Run &run, std::ostream &out) {
    const auto law = make_law(o.model, o.G, o.ell, o.n);
    const auto peak = peak_response(law, o.k);
    const double eps_p = peak.strain_at_peak;
    const double eps_max = o.strain_max > 0.0 ? o.strain_max : 5.0 * eps_p;
    std::vector<double> strains;
    json path = {{"kind", o.path}};
    if (o.path == "ramp") {
        strains = ramp_path(eps_max, o.steps);
        path["strain_max"] = eps_max;
        path["steps"] = o.steps;
    } else if (o.path == "cycle") {
        const double top = o.strain_peak > 0.0 ? o.strain_peak : 2.0 * eps_p;
        if (o.strain_valley > top) throw ConfigError("--strain-valley: must not exceed --strain-peak");
        strains = cycle_path(top, o.strain_valley, eps_max, o.steps);
        path.update({{"strain_peak", top}, {"strain_valley", o.strain_valley}, {"strain_max", eps_max},
                {"steps_per_leg", o.steps}});
    } else {
        if (o.file.empty()) throw ConfigError("--file: required with --path file");
        strains = read_strain_file(o.file);
        path["file"] = o.file;
    }
    run.config = {{"model", o.model}, {"n", o.n}, {"G", o.G}, {"ell", o.ell}, {"k", o.k}, {"path", path}};

    const auto rec = drive_path(law, o.k, strains);
    open_output(run, g, "cdfdamage-curve");
    CsvWriter csv(add_file(run, "curve.csv"), {"strain", "stress", "damage", "eta", "dissipation", "phi_plus"});
    std::size_t best = 0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        const auto &r = rec[i];
        csv.row({r.strain, r.stress_eff, r.damage, r.eta, r.dissipation_cum, r.phi_plus});
        if (r.stress_eff > rec[best].stress_eff) best = i;
    }
    out << law.describe() << "\n"
        << "peak (path):     strain = " << format_number(rec[best].strain)
        << ", stress = " << format_number(rec[best].stress_eff) << "\n"
        << "peak (" << (peak.closed_form ? "closed form" : "numeric") << "): strain = "
        << format_number(eps_p) << ", stress = " << format_number(peak.sigma_max) << "\n";
}

// ---- quasistatic

struct QuasiOpts {
    std::string config;
};

void cmd_quasistatic(const QuasiOpts &o, const Global &g, Run &run, std::ostream &out) {
    const auto cfg = load_bar_config(o.config);
    const auto p = cfg.problem();
    run.config = {{"config", o.config}, {"resolved", cfg.to_ini()}};
    open_output(run, g, "cdfdamage-quasistatic");

    const auto traj = solve_trajectory(p);
    const auto sc = certify_stability(traj, p, cfg.competitors, g.seed, g.threads);
    const auto eb = certify_energy_balance(traj, p, cfg.tolerance);

    write_text(run, "config.ini", cfg.to_ini());
    {
        CsvWriter csv(add_file(run, "trajectory.csv"),
                {"t", "boundary", "stored_energy", "dissipation", "cumulative_dissipation", "crack_count",
                        "reaction"});
        double cum = 0.0;
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            const auto &s = traj.states[k];
            cum += traj.dissipation[k];
            csv.row({traj.times[k], s.boundary, s.stored_energy, traj.dissipation[k], cum,
                    static_cast<double>(s.crack_count()), s.reaction});
        }
    }
    std::ostringstream rep;
    rep << "[trajectory]\n"
        << "material = " << p.material.description << "\n"
        << "elements = " << p.element_count << "\n"
        << "steps = " << p.steps << "\n"
        << "final_cracks = " << traj.states.back().crack_count() << "\n\n"
        << "[stability]\n"
        << "passed = " << (sc.passed ? "true" : "false") << "\n"
        << "worst_margin = " << format_number(sc.worst_margin) << "\n"
        << "worst_step = " << sc.worst_step << "\n"
        << "competitors_checked = " << sc.competitors_checked << "\n"
        << "seed = " << g.seed << "\n\n"
        << "[energy_balance]\n"
        << "passed = " << (eb.passed ? "true" : "false") << "\n"
        << "residual = " << format_number(eb.residual) << "\n"
        << "relative_residual = " << format_number(eb.relative_residual) << "\n"
        << "tolerance = " << format_number(cfg.tolerance) << "\n"
        << "characteristic_energy = " << format_number(eb.characteristic_energy) << "\n"
        << "external_work = " << format_number(eb.external_work) << "\n"
        << "total_dissipation = " << format_number(eb.total_dissipation) << "\n";
    write_text(run, "report.txt", rep.str());
    out << rep.str();
}

// ---- gamma

struct GammaOpts {
    std::string kind = "power";
    double n = 1.0;
    std::vector<double> lambdas{1.0, 10.0, 100.0, 1000.0, 10000.0};
    double rule_exponent = 0.5;
    std::string reading = "scaled";
    double truncation = 0.0;
};

void cmd_gamma(const GammaOpts &o, const Global &g, Run &run, std::ostream &out) {
    const auto d = make_distribution(o.kind, o.n);
    const double p = o.rule_exponent;
    auto rule = [p](double lam) { return std::pow(lam, -p); };
    const auto reading = o.reading == "scaled" ? SaturationReading::Scaled : SaturationReading::Unscaled;
    std::optional<double> trunc;
    if (o.truncation > 0.0) trunc = o.truncation;
    run.config = {{"kind", o.kind}, {"n", o.n}, {"lambdas", o.lambdas}, {"rule_exponent", p},
            {"reading", o.reading}, {"truncation", o.truncation}};
    const auto t = gamma_recovery_table(d, o.lambdas, rule, reading, trunc);

    open_output(run, g, "cdfdamage-gamma");
    CsvWriter csv(add_file(run, "gamma.csv"), {"lambda", "eps", "energy", "bound"});
    out << "G_F = " << format_number(t.G_F) << ", truncation = " << format_number(t.truncation) << "\n"
        << std::left << std::setw(12) << "lambda" << std::setw(26) << "eps" << std::setw(26) << "energy"
        << "bound\n";
    for (const auto &r : t.rows) {
        csv.row({r.lambda, r.eps, r.energy, r.bound});
        out << std::setw(12) << short_number(r.lambda) << std::setw(26) << format_number(r.eps) << std::setw(26)
            << format_number(r.energy) << format_number(r.bound) << "\n";
    }
    out << "decreasing = " << (t.monotone_decreasing ? "true" : "false")
        << ", within bound = " << (t.within_bound ? "true" : "false") << "\n";
    for (const auto &w : t.warnings)
        out << "warning: " << w << "\n";
}

// ---- sent

struct SentOpts {
    std::string config, mesh, law;
};

void cmd_sent(const SentOpts &o, const Global &g, Run &run, std::ostream &out) {
    fem2d::SentConfig cfg;
    if (!o.config.empty()) cfg = fem2d::load_sent_config(o.config);
    if (!o.mesh.empty()) {
        try {
            cfg.mesh = fem2d::mesh_level_from_string(o.mesh);
        } catch (const ConfigError &e) {
            throw ConfigError(std::string("--mesh: ") + e.what());
        }
    }
    if (!o.law.empty()) {
        try {
            cfg.law = law_kind_from_string(o.law);
        } catch (const ConfigError &e) {
            throw ConfigError(std::string("--law: ") + e.what());
        }
        // lengths in the file belong to the law it names
        cfg.ell = 0.0;
        cfg.ell_factor = 0.0;
    }
    try {
        fem2d::validate(cfg);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string(o.law.empty() ? "" : "--law: ") + e.what());
    }
    run.config = {{"config", o.config}, {"resolved", fem2d::to_ini(cfg)}};
    open_output(run, g, "cdfdamage-sent");
    write_text(run, "config.ini", fem2d::to_ini(cfg));

    out << "sent: law " << to_string(cfg.law) << ", mesh " << to_string(cfg.mesh) << "\n";
    const auto r = fem2d::run_sent(cfg, run.dir.string(), [&out](const fem2d::LoadStepResult &s) {
        if (s.step % 10 == 0 || s.iterations > 20)
            out << "step " << s.step << "  u_top " << format_number(s.u_top) << "  reaction "
                << format_number(s.reaction) << "  max_damage " << short_number(s.max_damage) << "  iterations "
                << s.iterations << "\n";
    });
    for (const auto &f : r.files)
        run.files.push_back(fs::path(f).filename().string());

    std::ostringstream sum;
    sum << "law = " << to_string(cfg.law) << "\n"
        << "mesh = " << to_string(cfg.mesh) << "\n"
        << "elements = " << r.elements << "\n"
        << "nodes = " << r.nodes << "\n"
        << "ell_mm = " << format_number(r.ell) << "\n"
        << "steps = " << r.steps.size() << "\n"
        << "peak_reaction_kN = " << format_number(r.peak_reaction) << "\n"
        << "peak_u_top_mm = " << format_number(r.peak_u) << "\n"
        << "reaction_peaks = " << r.reaction_peaks << "\n"
        << "final_reaction_fraction = " << format_number(r.final_reaction_fraction) << "\n"
        << "band_spans_ligament = " << (r.band_spans_ligament ? "true" : "false") << "\n"
        << "stop_reason = " << r.stop_reason << "\n";
    write_text(run, "summary.txt", sum.str());
    out << sum.str();
}

// args without --out/--force, so a manifest can be replayed elsewhere
std::vector<std::string> replayable_args(const std::vector<std::string> &args) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto &a = args[i];
        if (a == "--force") continue;
        if (a == "--out") {
            ++i;
            continue;
        }
        if (a.rfind("--out=", 0) == 0) continue;
        v.push_back(a);
    }
    return v;
}

void write_manifest(const Run &run, const std::string &sub, const std::vector<std::string> &args, const Global &g,
        double seconds) {
    json m;
    m["tool"] = "cdfdamage";
    m["version"] = CDFDAMAGE_VERSION;
    m["subcommand"] = sub;
    m["args"] = replayable_args(args);
    m["config"] = run.config;
    m["output_dir"] = run.dir.string();
    m["seed"] = g.seed;
    m["threads"] = g.threads;
    m["files"] = run.files;
    m["duration_seconds"] = seconds;
    std::ofstream f(run.dir / "manifest.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (run.dir / "manifest.json").string());
    f << m.dump(2) << "\n";
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"CDF-based damage laws, 1D responses, energetic bar evolution and a 2D SENT solver", "cdfdamage"};
    app.set_version_flag("--version", CDFDAMAGE_VERSION);
    // --help prints every subcommand with its flags
    app.set_help_flag();
    app.set_help_all_flag("-h,--help", "Print this help (all subcommands and flags) and exit");
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_option("--out", g.out, "Output directory (created; must be empty unless --force)");
    app.add_flag("--force", g.force, "Write into an existing non-empty output directory");
    app.add_option("--threads", g.threads, "Worker threads for stability sampling (0: all cores)")
            ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "Seed for competitor sampling");

    DistOpts dist;
    auto *c_dist = app.add_subcommand("dist", "Distribution pdf/cdf table and moments");
    c_dist->add_option("--kind", dist.kind, "Distribution name")->required();
    c_dist->add_option("--n", dist.n, "Shape parameter (rate for exponential, scale for cauchy)");
    c_dist->add_option("--moments", dist.moments, "Moment orders to print");
    c_dist->add_option("--xmax", dist.xmax, "Upper end of the table")->check(CLI::PositiveNumber);
    c_dist->add_option("--points", dist.points, "Table points")->check(CLI::Range(2, 10000000));

    LawOpts law;
    auto *c_law = app.add_subcommand("law", "Tabulate psi, g and d over phi");
    c_law->add_option("--model", law.model, "Damage law name")->required();
    c_law->add_option("--n", law.n, "Shape parameter");
    c_law->add_option("--G", law.G, "Fracture energy G")->check(CLI::PositiveNumber);
    c_law->add_option("--ell", law.ell, "Internal length")->check(CLI::PositiveNumber);
    c_law->add_option("--phi-max", law.phi_max, "Grid end (default 10 G/ell)")->check(CLI::NonNegativeNumber);
    c_law->add_option("--points", law.points, "Grid points")->check(CLI::Range(2, 10000000));

    CalibrateOpts cal;
    auto *c_cal = app.add_subcommand("calibrate", "Internal length from a target peak stress");
    c_cal->add_option("--model", cal.model, "Damage law name")->required();
    c_cal->add_option("--n", cal.n, "Shape parameter");
    c_cal->add_option("--sigma-max", cal.sigma_max, "Target 1D peak stress")->required()->check(CLI::PositiveNumber);
    c_cal->add_option("--k", cal.k, "Elastic modulus")->check(CLI::PositiveNumber);
    c_cal->add_option("--G", cal.G, "Fracture energy G")->check(CLI::PositiveNumber);

    CurveOpts cur;
    auto *c_cur = app.add_subcommand("curve", "1D stress-strain response along a strain path");
    c_cur->add_option("--model", cur.model, "Damage law name")->required();
    c_cur->add_option("--n", cur.n, "Shape parameter");
    c_cur->add_option("--G", cur.G, "Fracture energy G")->check(CLI::PositiveNumber);
    c_cur->add_option("--ell", cur.ell, "Internal length")->check(CLI::PositiveNumber);
    c_cur->add_option("--k", cur.k, "Elastic modulus")->check(CLI::PositiveNumber);
    c_cur->add_option("--path", cur.path, "ramp, cycle or file")->check(CLI::IsMember({"ramp", "cycle", "file"}));
    c_cur->add_option("--strain-max", cur.strain_max, "Final strain (default 5x peak strain)")
            ->check(CLI::NonNegativeNumber);
    c_cur->add_option("--strain-peak", cur.strain_peak, "cycle: unloading point (default 2x peak strain)")
            ->check(CLI::NonNegativeNumber);
    c_cur->add_option("--strain-valley", cur.strain_valley, "cycle: reloading point")->check(CLI::NonNegativeNumber);
    c_cur->add_option("--steps", cur.steps, "Increments (per leg for cycle)")->check(CLI::Range(1, 100000000));
    c_cur->add_option("--file", cur.file, "file: one strain per line");

    QuasiOpts qs;
    auto *c_qs = app.add_subcommand("quasistatic", "Energetic evolution of a 1D bar with certificates");
    c_qs->add_option("--config", qs.config, "Bar problem file")->required();

    GammaOpts gam;
    auto *c_gam = app.add_subcommand("gamma", "Recovery-sequence energy table");
    c_gam->add_option("--kind", gam.kind, "Distribution name");
    c_gam->add_option("--n", gam.n, "Shape parameter");
    c_gam->add_option("--lambdas", gam.lambdas, "Lambda values")->check(CLI::PositiveNumber);
    c_gam->add_option("--rule-exponent", gam.rule_exponent, "Layer width eps = lambda^-p")
            ->check(CLI::PositiveNumber);
    c_gam->add_option("--reading", gam.reading, "scaled or unscaled saturation")
            ->check(CLI::IsMember({"scaled", "unscaled"}));
    c_gam->add_option("--truncation", gam.truncation, "Truncation point (default: 1 - F <= 1e-12)")
            ->check(CLI::NonNegativeNumber);

    SentOpts sent;
    auto *c_sent = app.add_subcommand("sent", "2D single-edge-notched tension benchmark");
    c_sent->add_option("--config", sent.config, "SENT config file (defaults if omitted)");
    c_sent->add_option("--mesh", sent.mesh, "smoke, coarse or refined");
    c_sent->add_option("--law", sent.law, "Damage law (resets ell to the law default)");

    std::string manifest;
    auto *c_rep = app.add_subcommand("replay", "Re-run the command recorded in a manifest.json");
    c_rep->add_option("--manifest", manifest, "Manifest path")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForVersion &) {
        out << CDFDAMAGE_VERSION << "\n";
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    if (g.threads == 0) g.threads = std::max(1u, std::thread::hardware_concurrency());

    CLI::App *sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const auto t0 = std::chrono::steady_clock::now();
    Run run;
    try {
        if (sub == c_rep) {
            std::ifstream f(manifest);
            if (!f) throw ConfigError("--manifest: cannot open '" + manifest + "'");
            json m;
            try {
                m = json::parse(f);
            } catch (const json::exception &e) {
                throw ConfigError("--manifest: " + std::string(e.what()));
            }
            if (!m.contains("args") || !m["args"].is_array()) throw ConfigError("--manifest: no args array");
            auto again = m["args"].get<std::vector<std::string>>();
            again.push_back("--out");
            again.push_back(g.out.empty() ? m.value("output_dir", std::string()) : g.out);
            if (g.force) again.push_back("--force");
            return cli::run(again, out, err);
        }
        if (sub == c_dist) cmd_dist(dist, g, run, out);
        else if (sub == c_law) cmd_law(law, g, run, out);
        else if (sub == c_cal) cmd_calibrate(cal, g, run, out);
        else if (sub == c_cur) cmd_curve(cur, g, run, out);
        else if (sub == c_qs) cmd_quasistatic(qs, g, run, out);
        else if (sub == c_gam) cmd_gamma(gam, g, run, out);
        else cmd_sent(sent, g, run, out);
        if (run.wrote) {
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            write_manifest(run, name, args, g, secs);
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const UnsupportedDomain &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception &e) {
        err << "error: " << name << " failed: " << e.what() << "\n";
        return kRuntime;
    }
    return kSuccess;
}

} // namespace cdfdamage::cli
