// keplerwave: scenario-driven CLI over the elliptical-squeezed-state
// library.  JSON config file plus flag overrides; deterministic CSV/JSON
// artifacts (identical inputs give byte-identical files).

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "keplerwave/classical.hpp"
#include "keplerwave/io.hpp"
#include "keplerwave/rungelenz.hpp"
#include "keplerwave/sqdt.hpp"

namespace kw = keplerwave;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string scenario;
    double n_bar = 0.0;
    int l_bar = 0;
    double dl = 0.0;
    bool have_n = false, have_l = false, have_dl = false;
    std::vector<double> dls;                // css-profile curves
    std::string defect_table;               // optional path
    int nr = 400, nphi = 512;
    double rmax_factor = 1.8;
    int profile_points = 720;
    std::vector<std::string> times_raw;
    std::vector<double> times_au;           // resolved
    std::string out = "out";
    std::string format = "csv";
    double tail_tol = 1e-6;
    double rl_tol = 1e-4;
    int rl_nr = 1200, rl_nphi = 2048;
    double a_min = 500.0, a_max = 4000.0;
    int a_count = 20;
    double e_min = 0.1, e_max = 0.9;
    int e_count = 20;
};

const std::set<std::string> kScenarios = {
    "css-profile", "build", "evolve", "grid", "observables",
    "rl", "z-surface", "sqdt-build", "sqdt-evolve"};

void apply_config_file(RunConfig& c, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw kw::io_error("cannot open config: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& [key, val] : j.items()) {
        if (key == "scenario") {
            const auto s = val.get<std::string>();
            if (!c.scenario.empty() && s != c.scenario)
                throw std::invalid_argument("config: scenario '" + s +
                                            "' conflicts with the command line");
            c.scenario = s;
        } else if (key == "n_bar") { c.n_bar = val.get<double>(); c.have_n = true; }
        else if (key == "l_bar") { c.l_bar = val.get<int>(); c.have_l = true; }
        else if (key == "dl") { c.dl = val.get<double>(); c.have_dl = true; }
        else if (key == "dls") { c.dls = val.get<std::vector<double>>(); }
        else if (key == "defect_table") { c.defect_table = val.get<std::string>(); }
        else if (key == "nr") { c.nr = val.get<int>(); }
        else if (key == "nphi") { c.nphi = val.get<int>(); }
        else if (key == "rmax_factor") { c.rmax_factor = val.get<double>(); }
        else if (key == "profile_points") { c.profile_points = val.get<int>(); }
        else if (key == "times") {
            c.times_raw.clear();
            for (const auto& t : val) {
                if (t.is_string()) c.times_raw.push_back(t.get<std::string>());
                else c.times_raw.push_back(kw::io::fmt(t.get<double>()));
            }
        }
        else if (key == "out") { c.out = val.get<std::string>(); }
        else if (key == "format") { c.format = val.get<std::string>(); }
        else if (key == "tail_tol") { c.tail_tol = val.get<double>(); }
        else if (key == "rl_tol") { c.rl_tol = val.get<double>(); }
        else if (key == "rl_nr") { c.rl_nr = val.get<int>(); }
        else if (key == "rl_nphi") { c.rl_nphi = val.get<int>(); }
        else if (key == "a_min") { c.a_min = val.get<double>(); }
        else if (key == "a_max") { c.a_max = val.get<double>(); }
        else if (key == "a_count") { c.a_count = val.get<int>(); }
        else if (key == "e_min") { c.e_min = val.get<double>(); }
        else if (key == "e_max") { c.e_max = val.get<double>(); }
        else if (key == "e_count") { c.e_count = val.get<int>(); }
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

double parse_time(const std::string& s, double t_cl) {
    std::string v = s;
    bool periods = false;
    if (!v.empty() && (v.back() == 'T' || v.back() == 't')) {
        periods = true;
        v.pop_back();
    }
    std::size_t used = 0;
    double x;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad time value '" + s + "'");
    }
    if (used != v.size()) throw std::invalid_argument("config: bad time value '" + s + "'");
    return periods ? x * t_cl : x;
}

void require_spec(const RunConfig& c) {
    if (!c.have_n) throw std::invalid_argument("config: missing n_bar");
    if (!c.have_l) throw std::invalid_argument("config: missing l_bar");
    if (!c.have_dl) throw std::invalid_argument("config: missing dl");
}

json resolved_config(const RunConfig& c) {
    json j;
    j["scenario"] = c.scenario;
    if (c.have_n) j["n_bar"] = c.n_bar;
    if (c.have_l) j["l_bar"] = c.l_bar;
    if (c.have_dl) j["dl"] = c.dl;
    if (!c.dls.empty()) j["dls"] = c.dls;
    if (!c.defect_table.empty()) j["defect_table"] = c.defect_table;
    j["nr"] = c.nr;
    j["nphi"] = c.nphi;
    j["rmax_factor"] = c.rmax_factor;
    j["profile_points"] = c.profile_points;
    if (!c.times_au.empty()) j["times_au"] = c.times_au;
    j["out"] = c.out;
    j["format"] = c.format;
    j["tail_tol"] = c.tail_tol;
    if (c.scenario == "rl" || c.scenario == "z-surface") {
        j["rl_tol"] = c.rl_tol;
        j["rl_nr"] = c.rl_nr;
        j["rl_nphi"] = c.rl_nphi;
    }
    if (c.scenario == "z-surface") {
        j["a_min"] = c.a_min; j["a_max"] = c.a_max; j["a_count"] = c.a_count;
        j["e_min"] = c.e_min; j["e_max"] = c.e_max; j["e_count"] = c.e_count;
    }
    return j;
}

std::string csv_config_comment(const json& cfg) {
    return "# config: " + cfg.dump() + "\n";
}

void write_out(const RunConfig& c, const std::string& name, const std::string& content) {
    fs::create_directories(c.out);
    kw::io::write_file((fs::path(c.out) / name).string(), content);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    if (n == 1) { v[0] = a; return v; }
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

// ---------------------------------------------------------------------------

void run_css_profile(RunConfig& c) {
    if (!c.have_l) throw std::invalid_argument("config: missing l_bar");
    if (c.dls.empty()) c.dls = {0.5, 1.5, 2.5};
    const json cfg = resolved_config(c);
    std::vector<kw::angular::CssParams> packets;
    for (double dl : c.dls)
        packets.emplace_back(kw::angular::delta_from_spread(dl), c.l_bar);
    std::vector<double> phis(c.profile_points);
    for (int i = 0; i < c.profile_points; ++i)
        phis[i] = -M_PI + 2.0 * M_PI * i / c.profile_points;
    if (c.format == "csv") {
        std::ostringstream os;
        os << "# keplerwave css profile: |chi(phi)|^2 per dL curve\n";
        os << csv_config_comment(cfg);
        os << "# columns: phi";
        for (std::size_t k = 0; k < c.dls.size(); ++k)
            os << ", density_dL_" << kw::io::fmt(c.dls[k]) << " (delta=" << kw::io::fmt(packets[k].delta) << ")";
        os << '\n';
        for (double phi : phis) {
            os << kw::io::fmt(phi);
            for (const auto& p : packets) os << ',' << kw::io::fmt(std::norm(kw::angular::css_eval(p, phi)));
            os << '\n';
        }
        write_out(c, "css_profile.csv", os.str());
    } else {
        json out;
        out["config"] = cfg;
        out["phi"] = phis;
        json curves = json::array();
        for (std::size_t k = 0; k < packets.size(); ++k) {
            json cur;
            cur["dl"] = c.dls[k];
            cur["delta"] = packets[k].delta;
            std::vector<double> dens(phis.size());
            for (std::size_t i = 0; i < phis.size(); ++i)
                dens[i] = std::norm(kw::angular::css_eval(packets[k], phis[i]));
            cur["density"] = dens;
            curves.push_back(std::move(cur));
        }
        out["curves"] = std::move(curves);
        write_out(c, "css_profile.json", out.dump(2) + "\n");
    }
}

json params_json(const kw::ess::EssParams& p, const kw::ess::PhysicalSpec& spec) {
    const auto e = kw::ess::ess_expectations(p);
    const auto period = kw::classical::classical_period(spec.n_bar);
    json j;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["gamma0"] = p.gamma0;
    j["gamma1"] = p.gamma1;
    j["delta"] = p.delta;
    j["r_out"] = kw::ess::outer_apsis(spec.n_bar, spec.l_bar);
    j["E_target"] = kw::ess::bound_energy(spec.n_bar);
    j["residual_r"] = e.r - kw::ess::outer_apsis(spec.n_bar, spec.l_bar);
    j["residual_H"] = e.H - kw::ess::bound_energy(spec.n_bar);
    j["T_cl_au"] = period.au;
    j["T_cl_ps"] = period.seconds * 1e12;
    return j;
}

void emit_json_or_kv(const RunConfig& c, const std::string& stem, const json& out) {
    if (c.format == "csv") {
        std::ostringstream os;
        os << "# keplerwave " << stem << "\n" << csv_config_comment(out.at("config"));
        os << "# columns: key, value\n";
        for (const auto& [k, v] : out.items()) {
            if (k == "config") continue;
            if (v.is_number()) os << k << ',' << kw::io::fmt(v.get<double>()) << '\n';
            else os << k << ',' << v.dump() << '\n';
        }
        write_out(c, stem + ".csv", os.str());
    } else {
        write_out(c, stem + ".json", out.dump(2) + "\n");
    }
}

void run_build(RunConfig& c, bool sqdt_mode) {
    require_spec(c);
    const kw::ess::PhysicalSpec spec(c.n_bar, c.l_bar, c.dl);
    kw::sqdt::QuantumDefectTable table;
    if (!c.defect_table.empty()) table = kw::io::load_defect_table(c.defect_table);
    const auto p = sqdt_mode ? kw::sqdt::sqdt_build(spec, table) : kw::ess::ess_build(spec);
    json out = params_json(p, spec);
    out["config"] = resolved_config(c);
    if (sqdt_mode) {
        const auto s = kw::sqdt::sqdt_expand(p, table, c.tail_tol);
        double mass = 0.0, h = 0.0;
        for (const auto& e : s.entries) { mass += std::norm(e.c); h += std::norm(e.c) * e.energy; }
        out["weighted_energy"] = h / mass;
        out["tail_mass"] = s.tail_mass;
    }
    emit_json_or_kv(c, sqdt_mode ? "sqdt_build" : "build", out);
}

kw::ess::SpectralState make_state(const RunConfig& c, bool sqdt_mode,
                                  kw::ess::EssParams* params_out = nullptr) {
    const kw::ess::PhysicalSpec spec(c.n_bar, c.l_bar, c.dl);
    kw::sqdt::QuantumDefectTable table;
    if (!c.defect_table.empty()) table = kw::io::load_defect_table(c.defect_table);
    const auto p = sqdt_mode ? kw::sqdt::sqdt_build(spec, table) : kw::ess::ess_build(spec);
    if (params_out) *params_out = p;
    return sqdt_mode ? kw::sqdt::sqdt_expand(p, table, c.tail_tol)
                     : kw::ess::expand(p, c.tail_tol);
}

void resolve_times(RunConfig& c) {
    if (c.times_raw.empty()) throw std::invalid_argument("config: missing times");
    const double t_cl = kw::classical::classical_period(c.n_bar).au;
    c.times_au.clear();
    for (const auto& s : c.times_raw) c.times_au.push_back(parse_time(s, t_cl));
}

void run_evolve(RunConfig& c, bool sqdt_mode) {
    require_spec(c);
    resolve_times(c);
    const auto s0 = make_state(c, sqdt_mode);
    const json cfg = resolved_config(c);
    const std::string stem = sqdt_mode ? "sqdt_evolve" : "evolve";
    for (std::size_t ti = 0; ti < c.times_au.size(); ++ti) {
        const auto s = kw::ess::evolve(s0, c.times_au[ti]);
        char name[64];
        if (c.format == "csv") {
            std::ostringstream os;
            os << "# keplerwave spectral state at t = " << kw::io::fmt(s.t) << " a.u.\n";
            os << csv_config_comment(cfg);
            os << "# columns: n, l, re_c, im_c, energy\n";
            for (const auto& e : s.entries)
                os << e.n << ',' << e.l << ',' << kw::io::fmt(e.c.real()) << ','
                   << kw::io::fmt(e.c.imag()) << ',' << kw::io::fmt(e.energy) << '\n';
            std::snprintf(name, sizeof name, "%s_%03zu.csv", stem.c_str(), ti);
            write_out(c, name, os.str());
        } else {
            json out;
            out["config"] = cfg;
            out["t"] = s.t;
            out["tail_mass"] = s.tail_mass;
            json rows = json::array();
            for (const auto& e : s.entries)
                rows.push_back({{"n", e.n}, {"l", e.l}, {"re", e.c.real()},
                                {"im", e.c.imag()}, {"energy", e.energy}});
            out["coefficients"] = std::move(rows);
            std::snprintf(name, sizeof name, "%s_%03zu.json", stem.c_str(), ti);
            write_out(c, name, out.dump(2) + "\n");
        }
    }
}

void run_grid(RunConfig& c) {
    require_spec(c);
    resolve_times(c);
    const auto s0 = make_state(c, false);
    const json cfg = resolved_config(c);
    const double rmax = c.rmax_factor * kw::ess::outer_apsis(c.n_bar, c.l_bar);
    std::vector<double> rg(c.nr), pg(c.nphi);
    for (int i = 0; i < c.nr; ++i) rg[i] = rmax * (i + 1) / c.nr;
    for (int i = 0; i < c.nphi; ++i) pg[i] = -M_PI + 2.0 * M_PI * i / c.nphi;
    for (std::size_t ti = 0; ti < c.times_au.size(); ++ti) {
        const auto f = kw::ess::reconstruct(kw::ess::evolve(s0, c.times_au[ti]), rg, pg);
        char name[64];
        if (c.format == "csv") {
            std::ostringstream os;
            os << csv_config_comment(cfg);
            kw::io::emit_grid_csv(f, os);
            std::snprintf(name, sizeof name, "grid_%03zu.csv", ti);
            write_out(c, name, os.str());
        } else {
            std::snprintf(name, sizeof name, "grid_%03zu.json", ti);
            write_out(c, name, kw::io::grid_to_json(f, cfg).dump(2) + "\n");
        }
    }
}

void run_observables(RunConfig& c) {
    require_spec(c);
    resolve_times(c);
    const auto s0 = make_state(c, false);
    const auto ts = kw::ess::observables_vs_time(s0, c.times_au);
    const json cfg = resolved_config(c);
    if (c.format == "csv") {
        std::ostringstream os;
        os << "# keplerwave observables vs time\n" << csv_config_comment(cfg);
        os << "# columns: t_au, r_mean, cos_phi, sin_phi, autocorr\n";
        for (std::size_t i = 0; i < ts.times.size(); ++i)
            os << kw::io::fmt(ts.times[i]) << ',' << kw::io::fmt(ts.r_mean[i]) << ','
               << kw::io::fmt(ts.cos_phi[i]) << ',' << kw::io::fmt(ts.sin_phi[i]) << ','
               << kw::io::fmt(ts.autocorr[i]) << '\n';
        write_out(c, "observables.csv", os.str());
    } else {
        json out;
        out["config"] = cfg;
        out["t_au"] = ts.times;
        out["r_mean"] = ts.r_mean;
        out["cos_phi"] = ts.cos_phi;
        out["sin_phi"] = ts.sin_phi;
        out["autocorr"] = ts.autocorr;
        write_out(c, "observables.json", out.dump(2) + "\n");
    }
}

void run_rl(RunConfig& c) {
    require_spec(c);
    const kw::ess::PhysicalSpec spec(c.n_bar, c.l_bar, c.dl);
    const auto p = kw::ess::ess_build(spec);
    kw::ess::RlOptions opts;
    opts.nr = c.rl_nr;
    opts.nphi = c.rl_nphi;
    opts.tol = c.rl_tol;
    const auto d = kw::ess::runge_lenz_diagnostics(p, opts);
    json out;
    out["config"] = resolved_config(c);
    out["ax_mean"] = d.ax_mean;
    out["ay_mean"] = d.ay_mean;
    out["d_ax"] = d.d_ax;
    out["d_ay"] = d.d_ay;
    out["uncertainty_product"] = d.d_ax * d.d_ay;
    out["hl"] = d.hl;
    out["abs_hl"] = d.abs_hl;
    out["a2"] = d.a2;
    out["z"] = d.z;
    out["grid_norm"] = d.norm;
    out["h_mean"] = d.h_mean;
    out["richardson_error"] = d.err_estimate;
    emit_json_or_kv(c, "rl", out);
}

void run_z_surface(RunConfig& c) {
    require_spec(c);
    const kw::ess::PhysicalSpec spec(c.n_bar, c.l_bar, c.dl);
    const auto p = kw::ess::ess_build(spec);
    const double dr = std::sqrt((p.alpha + 1.0) / 2.0) / p.gamma0;
    kw::ess::RlOptions opts{600, 512, 4.0, 0.25, true};
    opts.nr = std::min(c.rl_nr, 600);
    opts.nphi = std::min(c.rl_nphi, 512);
    const auto zs = kw::ess::z_surface(linspace(c.a_min, c.a_max, c.a_count),
                                       linspace(c.e_min, c.e_max, c.e_count), dr, c.dl, 0.0, opts);
    const json cfg = resolved_config(c);
    if (c.format == "csv") {
        std::ostringstream os;
        os << "# keplerwave Z surface over classical orbits (fixed packet widths)\n";
        os << csv_config_comment(cfg);
        os << "# dr = " << kw::io::fmt(dr) << " (a.u.)\n";
        os << "# columns: a, e, Z, richardson_err, beta_unrounded, beta_used\n";
        for (std::size_t i = 0; i < zs.z.size(); ++i) {
            const double a = zs.a[i / zs.e.size()];
            const double e = zs.e[i % zs.e.size()];
            os << kw::io::fmt(a) << ',' << kw::io::fmt(e) << ',' << kw::io::fmt(zs.z[i]) << ','
               << kw::io::fmt(zs.err[i]) << ',' << kw::io::fmt(zs.beta_real[i]) << ','
               << zs.beta_used[i] << '\n';
        }
        write_out(c, "z_surface.csv", os.str());
    } else {
        json out;
        out["config"] = cfg;
        out["dr"] = dr;
        out["a"] = zs.a;
        out["e"] = zs.e;
        out["z"] = zs.z;
        out["richardson_err"] = zs.err;
        out["beta_unrounded"] = zs.beta_real;
        out["beta_used"] = zs.beta_used;
        write_out(c, "z_surface.json", out.dump(2) + "\n");
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig c;
    std::string config_path;
    std::string times_csv;

    CLI::App app{"keplerwave: elliptical squeezed states for the planar Coulomb problem"};
    app.add_option("scenario", c.scenario, "one of: css-profile build evolve grid observables rl z-surface sqdt-build sqdt-evolve")
        ->required();
    app.add_option("--config", config_path, "JSON config file (flags override it)");
    auto* on = app.add_option("--n-bar", c.n_bar, "mean principal quantum number");
    auto* ol = app.add_option("--l-bar", c.l_bar, "mean angular momentum (integer)");
    auto* od = app.add_option("--dl", c.dl, "angular momentum spread");
    auto* odls = app.add_option("--dls", c.dls, "dL list for css-profile")->delimiter(',');
    auto* otab = app.add_option("--defect-table", c.defect_table, "quantum-defect table JSON");
    auto* onr = app.add_option("--nr", c.nr, "radial grid points");
    auto* onp = app.add_option("--nphi", c.nphi, "angular grid points");
    auto* orf = app.add_option("--rmax-factor", c.rmax_factor, "grid extent in units of r_out");
    auto* opp = app.add_option("--profile-points", c.profile_points, "phi samples for css-profile");
    auto* ot = app.add_option("--times", times_csv, "comma list; plain numbers are a.u., suffix T means T_cl units");
    auto* oo = app.add_option("--out", c.out, "output directory");
    auto* of = app.add_option("--format", c.format, "csv | json");
    auto* ott = app.add_option("--tail-tol", c.tail_tol, "expansion tail tolerance");
    auto* ort = app.add_option("--rl-tol", c.rl_tol, "Runge-Lenz Richardson tolerance");
    auto* ornr = app.add_option("--rl-nr", c.rl_nr, "Runge-Lenz radial grid");
    auto* ornp = app.add_option("--rl-nphi", c.rl_nphi, "Runge-Lenz angular grid");
    auto* oam = app.add_option("--a-min", c.a_min, "");
    auto* oax = app.add_option("--a-max", c.a_max, "");
    auto* oac = app.add_option("--a-count", c.a_count, "");
    auto* oem = app.add_option("--e-min", c.e_min, "");
    auto* oex = app.add_option("--e-max", c.e_max, "");
    auto* oec = app.add_option("--e-count", c.e_count, "");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        std::cerr << "keplerwave-error: {\"code\":1,\"category\":\"config\"}" << std::endl;
        return 1;
    }

    try {
        if (!kScenarios.count(c.scenario))
            throw std::invalid_argument("config: unknown scenario '" + c.scenario + "'");

        // remember flag values, then let the config file fill the gaps
        const RunConfig flags = c;
        if (!config_path.empty()) {
            RunConfig base;
            base.scenario = c.scenario;
            apply_config_file(base, config_path);
            base.scenario = c.scenario;
            // overrides
            if (on->count()) { base.n_bar = flags.n_bar; base.have_n = true; }
            if (ol->count()) { base.l_bar = flags.l_bar; base.have_l = true; }
            if (od->count()) { base.dl = flags.dl; base.have_dl = true; }
            if (odls->count()) base.dls = flags.dls;
            if (otab->count()) base.defect_table = flags.defect_table;
            if (onr->count()) base.nr = flags.nr;
            if (onp->count()) base.nphi = flags.nphi;
            if (orf->count()) base.rmax_factor = flags.rmax_factor;
            if (opp->count()) base.profile_points = flags.profile_points;
            if (oo->count()) base.out = flags.out;
            if (of->count()) base.format = flags.format;
            if (ott->count()) base.tail_tol = flags.tail_tol;
            if (ort->count()) base.rl_tol = flags.rl_tol;
            if (ornr->count()) base.rl_nr = flags.rl_nr;
            if (ornp->count()) base.rl_nphi = flags.rl_nphi;
            if (oam->count()) base.a_min = flags.a_min;
            if (oax->count()) base.a_max = flags.a_max;
            if (oac->count()) base.a_count = flags.a_count;
            if (oem->count()) base.e_min = flags.e_min;
            if (oex->count()) base.e_max = flags.e_max;
            if (oec->count()) base.e_count = flags.e_count;
            if (ot->count()) base.times_raw.clear();
            c = base;
        } else {
            c.have_n = on->count() > 0;
            c.have_l = ol->count() > 0;
            c.have_dl = od->count() > 0;
        }
        if (ot->count()) {
            std::stringstream ss(times_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) c.times_raw.push_back(tok);
        }
        if (c.format != "csv" && c.format != "json")
            throw std::invalid_argument("config: format must be csv or json");

        if (c.scenario == "css-profile") run_css_profile(c);
        else if (c.scenario == "build") run_build(c, false);
        else if (c.scenario == "sqdt-build") run_build(c, true);
        else if (c.scenario == "evolve") run_evolve(c, false);
        else if (c.scenario == "sqdt-evolve") run_evolve(c, true);
        else if (c.scenario == "grid") run_grid(c);
        else if (c.scenario == "observables") run_observables(c);
        else if (c.scenario == "rl") run_rl(c);
        else if (c.scenario == "z-surface") run_z_surface(c);
        return 0;
    } catch (const kw::solver_error& e) {
        std::cerr << "keplerwave-error: {\"code\":2,\"category\":\"solver\",\"reason\":"
                  << json(e.what()).dump() << "}" << std::endl;
        return 2;
    } catch (const kw::accuracy_error& e) {
        std::cerr << "keplerwave-error: {\"code\":3,\"category\":\"accuracy\",\"reason\":"
                  << json(e.what()).dump() << "}" << std::endl;
        return 3;
    } catch (const kw::io_error& e) {
        std::cerr << "keplerwave-error: {\"code\":4,\"category\":\"io\",\"reason\":"
                  << json(e.what()).dump() << "}" << std::endl;
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "keplerwave-error: {\"code\":1,\"category\":\"config\",\"reason\":"
                  << json(e.what()).dump() << "}" << std::endl;
        return 1;
    }
}
