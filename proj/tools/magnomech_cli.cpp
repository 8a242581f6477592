// Command-line front end: figure presets, free-form sweeps, and single-point
// reports for the non-Hermitian cavity-magnomechanics model.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magnomech/magnomech.hpp"
#include "magnomech/sweep_json.hpp"

namespace fs = std::filesystem;
using namespace magnomech;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset_id;
    std::string out_path;
    std::string format = "csv";
    unsigned threads = 1;
    std::array<double, normalized_fields.size()> field_values{};
    std::array<CLI::Option*, normalized_fields.size()> field_opts{};
    int dissipation_sign = +1;
    std::string drift_sign = "as_printed";
    std::string phonon_term = "as_printed";
    CLI::Option* dissipation_opt = nullptr;
    CLI::Option* drift_opt = nullptr;
    CLI::Option* phonon_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_preset = true) {
    cmd->add_option("--config", args.config_path,
                    "flat key=value parameter file (see README)");
    if (with_preset)
        cmd->add_option("--preset", args.preset_id,
                        "start from a figure preset's parameter set")
            ->excludes(cmd->get_option("--config"));
    cmd->add_option("--out", args.out_path, "output path (default: stdout)");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", args.threads, "worker threads for sweeps");
    for (std::size_t i = 0; i < normalized_fields.size(); ++i) {
        args.field_opts[i] =
            cmd->add_option("--" + std::string(normalized_fields[i].name),
                            args.field_values[i],
                            "override " + std::string(normalized_fields[i].name));
    }
    args.dissipation_opt = cmd->add_option("--dissipation_sign", args.dissipation_sign,
                                           "sign of the i*kappa diagonal (+1 or -1)")
                               ->check(CLI::IsMember({-1, 1}));
    args.drift_opt = cmd->add_option("--drift_sign_convention", args.drift_sign,
                                     "drift matrix photon-block sign convention")
                         ->check(CLI::IsMember({"as_printed", "canonical"}));
    args.phonon_opt = cmd->add_option("--steady_phonon_term", args.phonon_term,
                                      "steady-state phonon-shift convention")
                          ->check(CLI::IsMember({"as_printed", "with_i"}));
}

// default <- preset or config <- per-field flags
std::pair<NormalizedParams, ModelOptions> resolve_params(const CommonArgs& args) {
    NormalizedParams p;
    ModelOptions opt;
    if (!args.preset_id.empty()) {
        const SweepSpec spec = figure_spec(args.preset_id);
        p = spec.base;
        opt = spec.options;
    } else if (!args.config_path.empty()) {
        const Config cfg = parse_config_file(args.config_path);
        p = cfg.params;
        opt = cfg.options;
    }
    for (std::size_t i = 0; i < normalized_fields.size(); ++i)
        if (args.field_opts[i]->count() > 0)
            p.*(normalized_fields[i].member) = args.field_values[i];
    if (args.dissipation_opt->count() > 0) opt.dissipation_sign = args.dissipation_sign;
    if (args.drift_opt->count() > 0)
        opt.drift_sign_convention = args.drift_sign == "canonical"
                                        ? ModelOptions::DriftSign::canonical
                                        : ModelOptions::DriftSign::as_printed;
    if (args.phonon_opt->count() > 0)
        opt.steady_phonon_term = args.phonon_term == "with_i"
                                     ? ModelOptions::PhononTerm::with_i
                                     : ModelOptions::PhononTerm::as_printed;
    return {validate(p), opt};
}

fs::path default_out_dir() {
    if (const char* env = std::getenv("MAGNOMECH_OUT_DIR")) return env;
    return ".";
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + out_path);
    os << text;
}

double error_rate(const SweepResult& res) {
    if (res.records.empty()) return 0.0;
    std::size_t bad = 0;
    for (const SweepRecord& r : res.records)
        if (!r.error.empty()) ++bad;
    return double(bad) / double(res.records.size());
}

int emit_sweep(const SweepResult& res, const std::string& out_path,
               const std::string& format) {
    if (format == "json") {
        if (out_path.empty())
            std::cout << sweep_to_json(res).dump(2) << "\n";
        else
            write_json_file(res, out_path);
    } else {
        if (out_path.empty()) {
            write_csv(res, std::cout);
        } else {
            write_csv_file(res, out_path);
        }
    }
    if (!out_path.empty())
        std::cout << "wrote " << res.records.size() << " records to " << out_path << "\n";
    if (res.ep) {
        std::cout << "ep: " << ep_report_to_json(*res.ep).dump() << "\n";
    }
    return error_rate(res) > 0.5 ? 2 : 0;
}

SweepAxis parse_axis(const std::string& text) {
    SweepAxis ax;
    std::istringstream is(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(is, part, ':')) parts.push_back(part);
    if (parts.size() != 4)
        throw CLI::ValidationError("--axis", "expected name:lo:hi:n, got '" + text + "'");
    ax.name = parts[0];
    ax.lo = std::stod(parts[1]);
    ax.hi = std::stod(parts[2]);
    ax.n = std::stoul(parts[3]);
    return ax;
}

SweepOutputs parse_outputs(const std::vector<std::string>& names) {
    SweepOutputs out{.eigenvalues = false, .spread = false, .ep = false,
                     .s_param = false, .stability = false, .steady_state = false};
    for (const std::string& n : names) {
        if (n == "eigenvalues") out.eigenvalues = true;
        else if (n == "spread") out.spread = true;
        else if (n == "ep") out.ep = true;
        else if (n == "S" || n == "s_param") out.s_param = true;
        else if (n == "stability") out.stability = true;
        else if (n == "steady_state") out.steady_state = true;
        else throw CLI::ValidationError("--outputs", "unknown output '" + n + "'");
    }
    return out;
}

std::string preset_footer() {
    std::string s = "Figure presets:\n";
    for (const FigurePreset& p : figure_presets())
        s += "  " + p.id + std::string(p.id.size() < 6 ? 6 - p.id.size() : 1, ' ') +
             p.description + "\n";
    s += "Overridable parameters (also valid config keys):\n ";
    for (const auto& f : normalized_fields) s += " --" + std::string(f.name);
    s += "\n  --dissipation_sign --drift_sign_convention --steady_phonon_term\n";
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"magnomech: spectra, exceptional points, steady states and "
                 "stability maps for a driven photon-magnon-phonon model"};
    app.require_subcommand(1);
    app.footer(preset_footer());

    // --- spectrum -----------------------------------------------------------
    auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenvalues at one parameter point");
    CommonArgs spectrum_args;
    add_common(cmd_spectrum, spectrum_args);

    // --- ep-locate ----------------------------------------------------------
    auto* cmd_ep = app.add_subcommand("ep-locate", "locate the spread minimum along an axis");
    CommonArgs ep_args;
    add_common(cmd_ep, ep_args);
    std::string ep_axis = "g_ma";
    std::vector<double> ep_bracket{0.5, 1.5};
    double ep_tol_rel = 1e-4;
    cmd_ep->add_option("--axis", ep_axis, "sweep axis (default g_ma)");
    cmd_ep->add_option("--bracket", ep_bracket, "search bracket lo hi")
        ->expected(2);
    cmd_ep->add_option("--tol-rel", ep_tol_rel, "relative refinement tolerance");

    // --- steady-state -------------------------------------------------------
    auto* cmd_ss = app.add_subcommand("steady-state", "mean-field branches / drive calibration");
    CommonArgs ss_args;
    add_common(cmd_ss, ss_args);
    double ss_g_mb_bare = 0.0;
    double ss_target = -1.0;
    cmd_ss->add_option("--g-mb-bare", ss_g_mb_bare, "bare magnomechanical coupling");
    cmd_ss->add_option("--target-g-mb-eff", ss_target,
                       "calibrate eta so g_mb_bare*|<m>| hits this target");

    // --- stability ----------------------------------------------------------
    auto* cmd_stab = app.add_subcommand("stability", "drift-matrix stability report");
    CommonArgs stab_args;
    add_common(cmd_stab, stab_args);
    double stab_delta_m_eff = std::numeric_limits<double>::quiet_NaN();
    cmd_stab->add_option("--delta-m-eff", stab_delta_m_eff,
                         "effective magnon detuning (default: delta_m)");

    // --- sweep ---------------------------------------------------------------
    auto* cmd_sweep = app.add_subcommand("sweep", "free-form 1-D or 2-D sweep");
    CommonArgs sweep_args;
    add_common(cmd_sweep, sweep_args);
    std::vector<std::string> sweep_axes;
    std::vector<std::string> sweep_outputs{"eigenvalues", "spread"};
    double sweep_g_mb_bare = 0.0;
    cmd_sweep->add_option("--axis", sweep_axes, "axis spec name:lo:hi:n (once or twice)")
        ->required()
        ->expected(1, 2);
    cmd_sweep->add_option("--outputs", sweep_outputs,
                          "any of: eigenvalues spread ep S stability steady_state")
        ->delimiter(',');
    cmd_sweep->add_option("--g-mb-bare", sweep_g_mb_bare,
                          "bare coupling for the steady_state output");

    // --- figure --------------------------------------------------------------
    auto* cmd_fig = app.add_subcommand("figure", "run a built-in preset");
    CommonArgs fig_args;
    add_common(cmd_fig, fig_args, /*with_preset=*/false);
    std::string fig_id;
    bool fig_no_plot = false;
    cmd_fig->add_option("id", fig_id, "preset id, e.g. fig2a (see footer)")->required();
    cmd_fig->add_flag("--no-plot-script", fig_no_plot, "skip the gnuplot script");

    try {
        app.parse(argc, argv);

        if (*cmd_spectrum) {
            const auto [p, opt] = resolve_params(spectrum_args);
            const auto ev = sort_canonical(eigenvalues(build_h_eff(p, opt)));
            if (spectrum_args.format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const Complex& z : ev) j.push_back({{"re", z.real()}, {"im", z.imag()}});
                emit_text(nlohmann::json{{"eigenvalues", j}}.dump(2) + "\n",
                          spectrum_args.out_path);
            } else {
                std::ostringstream os;
                os << "branch,re,im\n";
                for (int k = 0; k < 3; ++k) {
                    char buf[96];
                    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", k + 1,
                                  ev[std::size_t(k)].real(), ev[std::size_t(k)].imag());
                    os << buf;
                }
                emit_text(os.str(), spectrum_args.out_path);
            }
            return 0;
        }

        if (*cmd_ep) {
            const auto [p, opt] = resolve_params(ep_args);
            const EpReport rep =
                locate_ep(p, ep_axis, ep_bracket[0], ep_bracket[1], ep_tol_rel, opt);
            emit_text(ep_report_to_json(rep).dump(2) + "\n", ep_args.out_path);
            return 0;
        }

        if (*cmd_ss) {
            const auto [p, opt] = resolve_params(ss_args);
            nlohmann::json j;
            if (cmd_ss->get_option("--target-g-mb-eff")->count() > 0) {
                const CalibrationResult cal =
                    calibrate_drive(p, ss_g_mb_bare, ss_target, opt);
                NormalizedParams pc = p;
                pc.eta = cal.eta;
                j = steady_state_to_json(solve_steady_state(pc, ss_g_mb_bare, opt));
                j["calibrated_eta"] = cal.eta;
                j["multistable"] = cal.multistable;
            } else {
                j = steady_state_to_json(solve_steady_state(p, ss_g_mb_bare, opt));
            }
            emit_text(j.dump(2) + "\n", ss_args.out_path);
            return 0;
        }

        if (*cmd_stab) {
            const auto [p, opt] = resolve_params(stab_args);
            const Complex dme = std::isnan(stab_delta_m_eff) ? Complex(p.delta_m, 0.0)
                                                             : Complex(stab_delta_m_eff, 0.0);
            const StabilityReport rep = analyze_stability(p, dme, opt);
            emit_text(stability_report_to_json(rep).dump(2) + "\n", stab_args.out_path);
            return 0;
        }

        if (*cmd_sweep) {
            const auto [p, opt] = resolve_params(sweep_args);
            SweepSpec spec;
            spec.base = p;
            spec.options = opt;
            for (const std::string& ax : sweep_axes) spec.axes.push_back(parse_axis(ax));
            spec.outputs = parse_outputs(sweep_outputs);
            spec.g_mb_bare = sweep_g_mb_bare;
            const SweepResult res = run_sweep(spec, sweep_args.threads);
            std::string out = sweep_args.out_path;
            return emit_sweep(res, out, sweep_args.format);
        }

        if (*cmd_fig) {
            SweepSpec spec = figure_spec(fig_id);
            for (std::size_t i = 0; i < normalized_fields.size(); ++i)
                if (fig_args.field_opts[i]->count() > 0)
                    spec.base.*(normalized_fields[i].member) = fig_args.field_values[i];
            if (fig_args.dissipation_opt->count() > 0)
                spec.options.dissipation_sign = fig_args.dissipation_sign;
            if (fig_args.drift_opt->count() > 0)
                spec.options.drift_sign_convention =
                    fig_args.drift_sign == "canonical" ? ModelOptions::DriftSign::canonical
                                                       : ModelOptions::DriftSign::as_printed;
            if (fig_args.phonon_opt->count() > 0)
                spec.options.steady_phonon_term =
                    fig_args.phonon_term == "with_i" ? ModelOptions::PhononTerm::with_i
                                                     : ModelOptions::PhononTerm::as_printed;
            spec.base = validate(spec.base);

            const SweepResult res = run_sweep(spec, fig_args.threads);
            const fs::path dir =
                fig_args.out_path.empty() ? default_out_dir() : fs::path(fig_args.out_path);
            fs::create_directories(dir);
            const std::string csv_name = figure_csv_name(spec);
            write_csv_file(res, dir / csv_name);
            std::cout << "wrote " << (dir / csv_name).string() << "\n";
            if (fig_args.format == "json") {
                const fs::path jpath = dir / (spec.name + ".json");
                write_json_file(res, jpath);
                std::cout << "wrote " << jpath.string() << "\n";
            }
            if (!fig_no_plot) {
                const fs::path gp = dir / (spec.name + ".gp");
                write_plot_script(res, csv_name, gp);
                std::cout << "wrote " << gp.string() << "\n";
            }
            if (res.ep) std::cout << "ep: " << ep_report_to_json(*res.ep).dump() << "\n";
            return error_rate(res) > 0.5 ? 2 : 0;
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
