// starnls - stationary states and orbital stability of the NLS equation on a
// star graph with a delta vertex coupling.
//
// Subcommands: profile, slope, spectrum, verdict, evolve, sweep, selftest.
// Exit codes: 0 success, 1 validation/usage error, 2 numerical error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starnls/acceptance.hpp"
#include "starnls/dynamics.hpp"
#include "starnls/report.hpp"
#include "starnls/slope.hpp"
#include "starnls/sweep.hpp"
#include "starnls/verdict.hpp"

namespace {

using namespace starnls;

// =============================================================================
// Config files: `key = value` lines, '#' comments; command-line flags win.
// =============================================================================

std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

ProfileFamily parse_family(const std::string& name) {
    if (name == "attractive") return ProfileFamily::AttractiveDelta;
    if (name == "kirchhoff") return ProfileFamily::KirchhoffHalfSoliton;
    if (name == "kirchhoff-shifted") return ProfileFamily::KirchhoffShifted;
    if (name == "repulsive") return ProfileFamily::RepulsiveDelta;
    throw ValidationError("unknown family '" + name +
                          "' (expected attractive|kirchhoff|kirchhoff-shifted|repulsive)");
}

// =============================================================================
// Shared option block for single-point commands
// =============================================================================

struct PointOptions {
    std::string family = "attractive";
    int n = 3;
    int k = 1;
    double alpha = -1.0;
    double omega = 0.0;
    double omega_rel = 0.0;
    double p = 3.0;
    double shift = 0.0;
    double grid_length = 0.0; // 0 = default
    int grid_segments = 4000;
    std::string config_path;

    void add_to(CLI::App& cmd, bool with_grid = true) {
        cmd.add_option("--family", family, "profile family: attractive|kirchhoff|kirchhoff-shifted|repulsive");
        cmd.add_option("--N", n, "number of edges");
        cmd.add_option("--k", k, "branch index (attractive family)");
        cmd.add_option("--alpha", alpha, "vertex strength");
        cmd.add_option("--omega", omega, "frequency");
        cmd.add_option("--omega-rel", omega_rel,
                       "frequency as a multiple of the existence threshold");
        cmd.add_option("--p", p, "nonlinearity exponent");
        cmd.add_option("--shift", shift, "displacement a (kirchhoff-shifted family)");
        cmd.add_option("--config", config_path, "key=value config file; flags win");
        if (with_grid) {
            cmd.add_option("--L", grid_length, "grid truncation length (default max(40/sqrt(omega),20))");
            cmd.add_option("--M", grid_segments, "grid segments per edge");
        }
    }

    void merge_config(const CLI::App& cmd) {
        if (config_path.empty()) return;
        const auto kv = load_config(config_path);
        const auto take = [&](const char* flag, const char* key, auto& slot) {
            const auto it = kv.find(key);
            if (it == kv.end()) return;
            const auto* opt = cmd.get_option_no_throw(flag);
            if (opt != nullptr && opt->count() > 0) return; // flags win
            std::stringstream ss(it->second);
            ss >> slot;
            if (ss.fail()) throw ValidationError(std::string("bad config value for ") + key);
        };
        take("--family", "family", family);
        take("--N", "N", n);
        take("--k", "k", k);
        take("--alpha", "alpha", alpha);
        take("--omega", "omega", omega);
        take("--omega-rel", "omega_rel", omega_rel);
        take("--p", "p", p);
        take("--shift", "shift", shift);
        take("--L", "L", grid_length);
        take("--M", "M", grid_segments);
    }

    ProfileSpec spec() const {
        const ProfileFamily fam = parse_family(family);
        double w = omega;
        if (omega_rel != 0.0) {
            if (fam == ProfileFamily::AttractiveDelta) {
                const double d = n - 2.0 * k;
                w = omega_rel * alpha * alpha / (d * d);
            } else if (fam == ProfileFamily::RepulsiveDelta) {
                w = omega_rel * alpha * alpha / (static_cast<double>(n) * n);
            } else {
                throw ValidationError("--omega-rel needs an existence threshold; "
                                      "the kirchhoff families take absolute --omega");
            }
        }
        switch (fam) {
            case ProfileFamily::AttractiveDelta: return ProfileSpec::attractive(n, k, alpha, w, p);
            case ProfileFamily::KirchhoffHalfSoliton: return ProfileSpec::kirchhoff(n, w, p);
            case ProfileFamily::KirchhoffShifted: return ProfileSpec::kirchhoff_shifted(n, shift, w, p);
            case ProfileFamily::RepulsiveDelta: return ProfileSpec::repulsive(n, alpha, w, p);
        }
        throw ValidationError("unreachable family");
    }

    GridSpec grid(double omega_value) const {
        if (grid_length > 0.0) return GridSpec{grid_length, grid_segments};
        return default_grid(omega_value, grid_segments);
    }
};

void emit(const std::string& content, const std::string& path) {
    if (path.empty())
        std::cout << content;
    else
        write_file(path, content);
}

// =============================================================================
// Subcommand bodies
// =============================================================================

int cmd_profile(const PointOptions& opt, const std::string& out_path) {
    const ProfileSpec spec = opt.spec();
    const auto phi = build_profile(spec, opt.grid(spec.omega));
    emit(render_profile_csv(phi), out_path);
    return 0;
}

int cmd_slope(const PointOptions& opt, std::vector<double> omegas, const std::string& range,
              bool find_critical, const std::string& out_path) {
    if (!range.empty()) {
        double lo = 0.0, hi = 0.0;
        int count = 0;
        char c1 = 0, c2 = 0;
        std::stringstream ss(range);
        ss >> lo >> c1 >> hi >> c2 >> count;
        if (ss.fail() || c1 != ':' || c2 != ':' || count < 2 || !(hi > lo))
            throw ValidationError("--omega-range expects lo:hi:count with hi > lo, count >= 2");
        for (int i = 0; i < count; ++i)
            omegas.push_back(lo + (hi - lo) * i / (count - 1.0));
    }
    if (find_critical) {
        const auto root = find_critical_omega(opt.n, opt.k, opt.alpha, opt.p);
        JsonObject j;
        j.field("N", opt.n).field("k", opt.k).field("alpha", opt.alpha).field("p", opt.p);
        if (root) {
            j.field("critical_omega", *root);
            j.field("J_tilde_at_root", slope_j(opt.n, opt.k, opt.alpha, *root, opt.p).j_tilde);
        } else {
            j.field("critical_omega", "none (slope does not change sign in this regime)");
        }
        emit(j.str() + "\n", out_path);
        return 0;
    }
    if (omegas.empty()) throw ValidationError("slope needs --omega values or --omega-range");
    std::vector<std::array<double, 4>> rows;
    for (const double w : omegas) {
        const auto res = slope_j(opt.n, opt.k, opt.alpha, w, opt.p);
        double indicator = std::numeric_limits<double>::quiet_NaN();
        if (std::abs(res.j_tilde) > kDegenerateSlopeBand) indicator = res.j > 0.0 ? 1.0 : 0.0;
        rows.push_back({w, res.j, res.j_tilde, indicator});
    }
    emit(render_slope_csv(rows), out_path);
    return 0;
}

int cmd_spectrum(const PointOptions& opt, const std::string& which, const std::string& sector_name,
                 const std::string& out_path) {
    const ProfileSpec spec = opt.spec();
    OperatorKind kind = OperatorKind::L1;
    if (which == "L2")
        kind = OperatorKind::L2;
    else if (which != "L1")
        throw ValidationError("--which expects L1 or L2");
    Sector sector = Sector::full();
    if (sector_name == "equal")
        sector = Sector::equal();
    else if (sector_name != "full" && !sector_name.empty())
        sector = Sector::split(std::stoi(sector_name));
    const auto op = assemble(kind, spec, opt.grid(spec.omega), sector);
    const auto summary = analyze_spectrum(op);
    emit(render_spectrum(summary, op), out_path);
    return 0;
}

int cmd_verdict(const PointOptions& opt, const std::string& mode, const std::string& out_path) {
    const ProfileSpec spec = opt.spec();
    if (mode == "numerical") {
        emit(render_report(classify_numerical(spec, opt.grid(spec.omega))), out_path);
    } else if (mode == "analytic") {
        emit(render_report(classify_analytic(spec)), out_path);
    } else if (mode == "cross") {
        emit(render_cross_check(cross_check(spec, opt.grid(spec.omega))), out_path);
    } else {
        throw ValidationError("--mode expects cross|numerical|analytic");
    }
    return 0;
}

int cmd_evolve(const CLI::App& cmd, const PointOptions& opt, double dt, double horizon,
               std::string pert_name, double epsilon, unsigned seed,
               const std::string& trace_path, const std::string& state_path) {
    // evolve honors the config file for its own knobs as well; flags win
    if (!opt.config_path.empty()) {
        const auto kv = load_config(opt.config_path);
        const auto take = [&](const char* flag, const char* key, auto& slot) {
            const auto it = kv.find(key);
            if (it == kv.end()) return;
            const auto* o = cmd.get_option_no_throw(flag);
            if (o != nullptr && o->count() > 0) return;
            std::stringstream ss(it->second);
            ss >> slot;
        };
        take("--dt", "dt", dt);
        take("--T", "T", horizon);
        take("--perturbation", "perturbation", pert_name);
        take("--epsilon", "epsilon", epsilon);
        take("--seed", "seed", seed);
    }

    const ProfileSpec spec = opt.spec();
    const GridSpec grid = opt.grid(spec.omega);
    Perturbation pert;
    pert.epsilon = epsilon;
    if (pert_name == "none")
        pert.mode = PerturbationMode::None;
    else if (pert_name == "scale")
        pert.mode = PerturbationMode::Scale;
    else if (pert_name == "eigenvector")
        pert.mode = PerturbationMode::NegativeEigenvector;
    else if (pert_name == "random")
        pert.mode = PerturbationMode::Random;
    else
        throw ValidationError("--perturbation expects none|scale|eigenvector|random");

    EvolutionConfig cfg;
    cfg.dt = dt > 0.0 ? dt : 0.5 * grid.spacing();
    cfg.horizon = horizon;
    cfg.perturbation = pert;
    cfg.seed = seed;
    const auto u0 = initial_state(spec, grid, pert, seed);
    const auto run = evolve(u0, spec, cfg);
    emit(render_trace_csv(run.trace), trace_path);
    if (!state_path.empty()) {
        CsvTable csv({"edge", "x", "re", "im"});
        const auto& f = run.final_state;
        for (int j = 0; j < f.edge_count(); ++j)
            for (int i = 0; i <= grid.segments; ++i)
                csv.add_row({std::to_string(j + 1), format_double(grid.node(i)),
                             format_double(f.value(j, i).real()), format_double(f.value(j, i).imag())});
        write_file(state_path, csv.str());
    }
    if (run.trace.blowup_aborted)
        std::cerr << "evolve: aborted on amplitude growth beyond 1e3 * max|U0| (partial trace written)\n";
    return 0;
}

int cmd_sweep(const CLI::App& cmd, const std::string& config_path,
              std::vector<std::string> families, std::vector<int> ns, std::vector<int> ks,
              std::vector<double> alphas, std::vector<double> omegas, std::vector<double> omega_rel,
              std::vector<double> ps, int segments, const std::string& out_path) {
    if (!config_path.empty()) {
        const auto kv = load_config(config_path);
        const auto take_list = [&](const char* flag, const char* key, auto& slot, auto parse) {
            const auto it = kv.find(key);
            if (it == kv.end()) return;
            const auto* o = cmd.get_option_no_throw(flag);
            if (o != nullptr && o->count() > 0) return;
            slot.clear();
            for (const auto& tok : split_list(it->second)) slot.push_back(parse(tok));
        };
        take_list("--family", "family", families, [](const std::string& s) { return s; });
        take_list("--N", "N", ns, [](const std::string& s) { return std::stoi(s); });
        take_list("--k", "k", ks, [](const std::string& s) { return std::stoi(s); });
        take_list("--alpha", "alpha", alphas, [](const std::string& s) { return std::stod(s); });
        take_list("--omega", "omega", omegas, [](const std::string& s) { return std::stod(s); });
        take_list("--omega-rel", "omega_rel", omega_rel,
                  [](const std::string& s) { return std::stod(s); });
        take_list("--p", "p", ps, [](const std::string& s) { return std::stod(s); });
        const auto it = kv.find("M");
        if (it != kv.end() && cmd.get_option_no_throw("--M")->count() == 0)
            segments = std::stoi(it->second);
    }
    SweepSpec sw;
    sw.families.clear();
    for (const auto& f : families) sw.families.push_back(parse_family(f));
    sw.edge_counts = ns;
    sw.bump_counts = ks;
    sw.alphas = alphas;
    sw.omegas = omegas;
    sw.omega_rel = omega_rel;
    sw.exponents = ps;
    sw.grid_segments = segments;
    const auto rows = run_sweep(sw);
    emit(render_sweep_csv(rows), out_path);
    for (const auto& row : rows)
        if (row.status == "error") throw NumericalError("sweep point failed: " + row.detail);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stationary states and orbital stability of NLS on a star graph"};
    app.require_subcommand(1);

    std::string out_path;

    auto* profile = app.add_subcommand("profile", "sample a closed-form stationary profile as CSV");
    PointOptions profile_opt;
    profile_opt.add_to(*profile);
    profile->add_option("--out", out_path, "output file (default stdout)");

    auto* slope = app.add_subcommand("slope", "slope J(omega) of the squared mass as CSV");
    PointOptions slope_opt;
    std::vector<double> slope_omegas;
    std::string slope_range;
    bool slope_critical = false;
    slope_opt.add_to(*slope, false);
    slope->add_option("--omega-list", slope_omegas, "explicit list of frequencies");
    slope->add_option("--omega-range", slope_range, "lo:hi:count sweep");
    slope->add_flag("--find-critical", slope_critical, "locate the slope root omega*/omega-hat");
    std::string slope_out;
    slope->add_option("--out", slope_out, "output file (default stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "Morse index, kernel and lowest eigenvalues as JSON");
    PointOptions spec_opt;
    std::string which = "L1", sector_name = "";
    spec_opt.add_to(*spectrum);
    spectrum->add_option("--which", which, "operator: L1 or L2");
    spectrum->add_option("--sector", sector_name, "full | equal | <k> (default: the profile's natural sector)");
    std::string spec_out;
    spectrum->add_option("--out", spec_out, "output file (default stdout)");

    auto* verdict = app.add_subcommand("verdict", "stability verdict as JSON");
    PointOptions verdict_opt;
    std::string verdict_mode = "cross";
    verdict_opt.add_to(*verdict);
    verdict->add_option("--mode", verdict_mode, "cross | numerical | analytic");
    std::string verdict_out;
    verdict->add_option("--out", verdict_out, "output file (default stdout)");

    auto* evolve_cmd = app.add_subcommand("evolve", "integrate the NLS flow and trace the orbit");
    PointOptions evolve_opt;
    double dt = 0.0, horizon = 10.0, epsilon = 0.0;
    unsigned seed = 1;
    std::string pert_name = "none", trace_path, state_path;
    evolve_opt.add_to(*evolve_cmd);
    evolve_cmd->add_option("--dt", dt, "time step (default h/2)");
    evolve_cmd->add_option("--T", horizon, "time horizon");
    evolve_cmd->add_option("--perturbation", pert_name, "none|scale|eigenvector|random");
    evolve_cmd->add_option("--epsilon", epsilon, "perturbation size");
    evolve_cmd->add_option("--seed", seed, "random perturbation seed");
    evolve_cmd->add_option("--trace", trace_path, "trace CSV output (default stdout)");
    evolve_cmd->add_option("--final-state", state_path, "final state CSV output");

    auto* sweep_cmd = app.add_subcommand("sweep", "classify a parameter grid as CSV");
    std::string sweep_config, sweep_out;
    std::vector<std::string> sweep_families{"attractive"};
    std::vector<int> sweep_ns{3}, sweep_ks{1};
    std::vector<double> sweep_alphas{-1.0}, sweep_omegas, sweep_omega_rel, sweep_ps{3.0};
    int sweep_segments = 4000;
    sweep_cmd->add_option("--config", sweep_config, "key=value config file; flags win");
    sweep_cmd->add_option("--family", sweep_families, "families to sweep");
    sweep_cmd->add_option("--N", sweep_ns, "edge counts");
    sweep_cmd->add_option("--k", sweep_ks, "branch indices (attractive)");
    sweep_cmd->add_option("--alpha", sweep_alphas, "vertex strengths");
    sweep_cmd->add_option("--omega", sweep_omegas, "absolute frequencies");
    sweep_cmd->add_option("--omega-rel", sweep_omega_rel, "threshold multiples");
    sweep_cmd->add_option("--p", sweep_ps, "nonlinearity exponents");
    sweep_cmd->add_option("--M", sweep_segments, "grid segments per edge");
    sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");

    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (profile->parsed()) {
            profile_opt.merge_config(*profile);
            return cmd_profile(profile_opt, out_path);
        }
        if (slope->parsed()) {
            slope_opt.merge_config(*slope);
            return cmd_slope(slope_opt, slope_omegas, slope_range, slope_critical, slope_out);
        }
        if (spectrum->parsed()) {
            spec_opt.merge_config(*spectrum);
            return cmd_spectrum(spec_opt, which, sector_name, spec_out);
        }
        if (verdict->parsed()) {
            verdict_opt.merge_config(*verdict);
            return cmd_verdict(verdict_opt, verdict_mode, verdict_out);
        }
        if (evolve_cmd->parsed()) {
            evolve_opt.merge_config(*evolve_cmd);
            return cmd_evolve(*evolve_cmd, evolve_opt, dt, horizon, pert_name, epsilon, seed,
                              trace_path, state_path);
        }
        if (sweep_cmd->parsed())
            return cmd_sweep(*sweep_cmd, sweep_config, sweep_families, sweep_ns, sweep_ks,
                             sweep_alphas, sweep_omegas, sweep_omega_rel, sweep_ps, sweep_segments,
                             sweep_out);
        if (selftest->parsed()) return starnls::acceptance::run_all(std::cout) ? 0 : 2;
    } catch (const starnls::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const starnls::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
