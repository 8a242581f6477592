#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "magnomech/sweep.hpp"

namespace magnomech {

struct FigurePreset {
    std::string id;
    std::string description;
    SweepSpec spec;
};

namespace detail {

inline NormalizedParams preset_base(double theta, double gamma_ratio) {
    NormalizedParams p; // default decays: kappa_a = kappa_m = 0.08, gamma_b = 1e-3
    p.g_mb_eff = 0.09;
    p.theta = theta;
    p.gamma_nh = gamma_ratio * p.omega_b_ratio; // Gamma/omega_b = gamma_ratio
    return p;
}

inline SweepSpec spectrum_1d(std::string name, double theta, double gamma_ratio,
                             double g_ma_hi) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = preset_base(theta, gamma_ratio);
    s.axes = {{"g_ma", 0.0, g_ma_hi, 400}};
    s.outputs.ep = true;
    return s;
}

inline SweepSpec spectrum_2d(std::string name, double theta, std::string axis2,
                             double hi2) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = preset_base(theta, 1.0);
    s.axes = {{"g_ma", 0.0, 2.0, 100}, {std::move(axis2), 0.0, hi2, 100}};
    return s;
}

inline SweepSpec stability_2d(std::string name, double gamma_ratio, bool s_map) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = preset_base(std::numbers::pi / 2.0, gamma_ratio);
    s.axes = {{"g_ma", 0.0, 2.0, 100}, {"g_mb_eff", 0.0, 2.0, 100}};
    if (s_map) {
        s.outputs = {.eigenvalues = false, .spread = false, .ep = false,
                     .s_param = true, .stability = true, .steady_state = false};
    }
    return s;
}

inline SweepSpec kappa_map(std::string name, double matched) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = preset_base(std::numbers::pi / 2.0, matched);
    s.base.g_ma = matched;
    s.axes = {{"kappa_a", 0.0, 1.0, 100}, {"kappa_m", 0.0, 1.0, 100}};
    s.outputs = {.eigenvalues = false, .spread = false, .ep = false,
                 .s_param = true, .stability = true, .steady_state = false};
    return s;
}

} // namespace detail

// Built-in sweeps behind the `figure` subcommand. Paired ids (left/right panel
// of the same scan) map to one sweep; the emitted CSV carries both real and
// imaginary parts.
inline const std::vector<FigurePreset>& figure_presets() {
    using namespace detail;
    constexpr double pi = std::numbers::pi;
    static const std::vector<FigurePreset> presets = [] {
        std::vector<FigurePreset> v;
        v.push_back({"fig2a", "eigenvalue sweep vs g_ma, theta=pi/2, Gamma/omega_b=1",
                     spectrum_1d("fig2a", pi / 2.0, 1.0, 2.0)});
        v.push_back({"fig2b", "eigenvalue sweep vs g_ma, theta=pi, Gamma/omega_b=1",
                     spectrum_1d("fig2b", pi, 1.0, 2.0)});
        v.push_back({"fig3a", "eigenvalue sweep vs g_ma, theta=pi/2, Gamma/omega_b=1",
                     spectrum_1d("fig3a", pi / 2.0, 1.0, 3.0)});
        v.push_back({"fig3b", "eigenvalue sweep vs g_ma, theta=pi/2, Gamma/omega_b=2",
                     spectrum_1d("fig3b", pi / 2.0, 2.0, 3.0)});
        v.push_back({"fig3c", "eigenvalue sweep vs g_ma, theta=pi, Gamma/omega_b=1",
                     spectrum_1d("fig3c", pi, 1.0, 3.0)});
        v.push_back({"fig3d", "eigenvalue sweep vs g_ma, theta=pi, Gamma/omega_b=2",
                     spectrum_1d("fig3d", pi, 2.0, 3.0)});
        v.push_back({"fig3e", "eigenvalue map over g_ma x gamma_nh, theta=pi/2",
                     spectrum_2d("fig3e", pi / 2.0, "gamma_nh", 2.0)});
        v.push_back({"fig3f", "eigenvalue map over g_ma x gamma_nh, theta=pi",
                     spectrum_2d("fig3f", pi, "gamma_nh", 2.0)});
        v.push_back({"fig4a", "S + stability map over g_ma x g_mb_eff, Gamma/omega_b=1",
                     stability_2d("fig4a", 1.0, true)});
        v.push_back({"fig4b", "eigenvalue map over g_ma x g_mb_eff, Gamma/omega_b=1",
                     stability_2d("fig4b", 1.0, false)});
        v.push_back({"fig4c", "S + stability map over g_ma x g_mb_eff, Gamma/omega_b=2",
                     stability_2d("fig4c", 2.0, true)});
        v.push_back({"fig4d", "eigenvalue map over g_ma x g_mb_eff, Gamma/omega_b=2",
                     stability_2d("fig4d", 2.0, false)});
        v.push_back({"fig4e", "S + stability map over kappa_a x kappa_m, g_ma=Gamma=1",
                     kappa_map("fig4e", 1.0)});
        v.push_back({"fig4f", "S + stability map over kappa_a x kappa_m, g_ma=Gamma=2",
                     kappa_map("fig4f", 2.0)});
        const double angles[4] = {0.0, pi / 2.0, pi, 3.0 * pi / 2.0};
        const char* names[4] = {"0", "pi/2", "pi", "3pi/2"};
        for (int k = 0; k < 8; ++k) {
            const std::string id = std::string("figS1") + char('a' + k);
            v.push_back({id,
                         std::string("eigenvalue sweep vs g_ma, theta=") + names[k / 2] +
                             ", Gamma/omega_b=1",
                         spectrum_1d(id, angles[k / 2], 1.0, 2.0)});
        }
        for (int k = 0; k < 4; ++k) {
            const std::string id = std::string("figS2") + char('a' + k);
            v.push_back({id,
                         std::string("eigenvalue map over g_ma x g_mb_eff, theta=") +
                             (k < 2 ? "pi/2" : "pi"),
                         spectrum_2d(id, k < 2 ? pi / 2.0 : pi, "g_mb_eff", 2.0)});
        }
        return v;
    }();
    return presets;
}

inline SweepSpec figure_spec(std::string_view id) {
    for (const FigurePreset& p : figure_presets())
        if (p.id == id) return p.spec;
    throw std::invalid_argument("unknown figure id: " + std::string(id));
}

// File naming for emitted tables: <preset>_<axis1>[_<axis2>].csv
inline std::string figure_csv_name(const SweepSpec& spec) {
    std::string name = spec.name + "_" + spec.axes[0].name;
    if (spec.axes.size() == 2) name += "_" + spec.axes[1].name;
    return name + ".csv";
}

} // namespace magnomech
