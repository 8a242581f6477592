#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace magnomech {

inline constexpr double hbar = 1.054571817e-34; // J s

// exp(i theta), bit-exact at the four cardinal angles so that e.g. the
// theta = pi/2 drift matrix comes out exactly real.
inline std::complex<double> phase_factor(double theta) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (theta == 0.0) return {1.0, 0.0};
    if (theta == half_pi) return {0.0, 1.0};
    if (theta == 2.0 * half_pi) return {-1.0, 0.0};
    if (theta == 3.0 * half_pi) return {0.0, -1.0};
    return {std::cos(theta), std::sin(theta)};
}

inline double wrap_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return t;
}

// Laboratory-frame parameter set. Frequencies and rates in rad/s.
struct PhysicalParams {
    double omega_a = 2.0 * std::numbers::pi * 10e9;       // cavity resonance
    double omega_m = 2.0 * std::numbers::pi * 10e9;       // magnon mode
    double omega_b = 2.0 * std::numbers::pi * 40e9;       // phonon mode
    double omega_0 = 3.8 * 2.0 * std::numbers::pi * 1e14; // drive frequency
    double kappa_a = 2.0 * std::numbers::pi * 3e6;
    double kappa_m = 2.0 * std::numbers::pi * 1.5e6;
    double gamma_b = 2.0 * std::numbers::pi * 1e2;
    double cavity_length = 12.5e-4;                       // m
    double drive_power = 0.0164e-3;                       // W
    double g_ma_phys = 4.3 * 2.0 * std::numbers::pi * 1e9;
    double g_mb_phys = 2.0 * std::numbers::pi * 2e6;
    double traveling_amplitude = 0.0;                     // alpha, >= 0
    double theta = std::numbers::pi / 2.0;
};

// Dimensionless parameter set in units of the photon detuning Delta_a.
// This is the canonical interface; every model routine consumes it.
struct NormalizedParams {
    double delta_a = 1.0;  // normalization unit, fixed at 1
    double delta_m = 1.0;
    double delta_b = 1.0;
    double kappa_a = 0.08;
    double kappa_m = 0.08;
    double gamma_b = 0.001;
    double g_ma = 0.0;          // magnon-photon coupling
    double g_mb_eff = 0.0;      // effective magnon-phonon coupling G_mb
    double gamma_nh = 0.0;      // traveling-field strength Gamma
    double theta = std::numbers::pi / 2.0;
    double omega_b_ratio = 1.0; // omega_b / Delta_a
    double eta = 0.0;           // drive strength
};

// Model-convention switches. Defaults follow the matrices as printed.
struct ModelOptions {
    enum class DriftSign { as_printed, canonical };
    enum class PhononTerm { as_printed, with_i };

    int dissipation_sign = +1;  // sign of the i*kappa Hamiltonian diagonal
    DriftSign drift_sign_convention = DriftSign::as_printed;
    PhononTerm steady_phonon_term = PhononTerm::as_printed;
};

struct NormalizedFieldDef {
    std::string_view name;
    double NormalizedParams::* member;
};

inline constexpr std::array<NormalizedFieldDef, 12> normalized_fields{{
    {"delta_a", &NormalizedParams::delta_a},
    {"delta_m", &NormalizedParams::delta_m},
    {"delta_b", &NormalizedParams::delta_b},
    {"kappa_a", &NormalizedParams::kappa_a},
    {"kappa_m", &NormalizedParams::kappa_m},
    {"gamma_b", &NormalizedParams::gamma_b},
    {"g_ma", &NormalizedParams::g_ma},
    {"g_mb_eff", &NormalizedParams::g_mb_eff},
    {"gamma_nh", &NormalizedParams::gamma_nh},
    {"theta", &NormalizedParams::theta},
    {"omega_b_ratio", &NormalizedParams::omega_b_ratio},
    {"eta", &NormalizedParams::eta},
}};

inline double get_field(const NormalizedParams& p, std::string_view name) {
    for (const auto& f : normalized_fields)
        if (f.name == name) return p.*(f.member);
    throw std::invalid_argument("unknown parameter: " + std::string(name));
}

inline void set_field(NormalizedParams& p, std::string_view name, double value) {
    for (const auto& f : normalized_fields) {
        if (f.name == name) {
            p.*(f.member) = value;
            return;
        }
    }
    throw std::invalid_argument("unknown parameter: " + std::string(name));
}

// Returns params unchanged (theta reduced mod 2*pi) or throws naming the first
// violated invariant.
inline NormalizedParams validate(NormalizedParams p) {
    for (const auto& f : normalized_fields)
        if (!std::isfinite(p.*(f.member)))
            throw std::invalid_argument("non-finite value: " + std::string(f.name));
    if (p.delta_a != 1.0)
        throw std::invalid_argument("delta_a must equal 1 (normalization unit)");
    if (p.kappa_a < 0.0) throw std::invalid_argument("negative decay: kappa_a");
    if (p.kappa_m < 0.0) throw std::invalid_argument("negative decay: kappa_m");
    if (p.gamma_b < 0.0) throw std::invalid_argument("negative decay: gamma_b");
    if (p.g_ma < 0.0) throw std::invalid_argument("negative coupling: g_ma");
    if (p.g_mb_eff < 0.0) throw std::invalid_argument("negative coupling: g_mb_eff");
    if (p.gamma_nh < 0.0) throw std::invalid_argument("negative coupling: gamma_nh");
    if (p.eta < 0.0) throw std::invalid_argument("negative drive: eta");
    if (!(p.omega_b_ratio > 0.0))
        throw std::invalid_argument("omega_b_ratio must be positive");
    p.theta = wrap_angle(p.theta);
    return p;
}

inline PhysicalParams validate(PhysicalParams p) {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("must be positive: ") + name);
    };
    positive(p.omega_a, "omega_a");
    positive(p.omega_m, "omega_m");
    positive(p.omega_b, "omega_b");
    positive(p.omega_0, "omega_0");
    positive(p.kappa_a, "kappa_a");
    positive(p.kappa_m, "kappa_m");
    positive(p.gamma_b, "gamma_b");
    positive(p.cavity_length, "cavity_length");
    if (!(p.drive_power >= 0.0)) throw std::invalid_argument("negative drive_power");
    if (!(p.g_ma_phys >= 0.0)) throw std::invalid_argument("negative coupling: g_ma_phys");
    if (!(p.g_mb_phys >= 0.0)) throw std::invalid_argument("negative coupling: g_mb_phys");
    if (!(p.traveling_amplitude >= 0.0))
        throw std::invalid_argument("negative traveling_amplitude");
    p.theta = wrap_angle(p.theta);
    return p;
}

// Converts lab-frame numbers to the dimensionless set. Zero-point motions
// x = sqrt(hbar / 2 m omega) feed the couplings G = sqrt(2) (omega_a / L) x,
// the traveling-field strength Gamma = alpha sqrt(hbar / omega_m m_m), and the
// drive eta = sqrt(P kappa_m / hbar omega_0); detunings are omega - omega_0 and
// every rate is divided by Delta_a. The result is returned as computed and is
// not re-validated: a drive far above the mode frequencies gives Delta_a < 0
// and hence negative normalized decays. g_mb_eff receives the *bare*
// magnomechanical coupling; rescaling by the steady-state magnon amplitude is
// calibrate_drive's job.
inline NormalizedParams physical_to_normalized(const PhysicalParams& p,
                                               double mode_mass_magnon,
                                               double mode_mass_phonon) {
    if (!(mode_mass_magnon > 0.0)) throw std::invalid_argument("mode_mass_magnon must be positive");
    if (!(mode_mass_phonon > 0.0)) throw std::invalid_argument("mode_mass_phonon must be positive");

    const double x_m = std::sqrt(hbar / (2.0 * mode_mass_magnon * p.omega_m));
    const double x_b = std::sqrt(hbar / (2.0 * mode_mass_phonon * p.omega_b));
    const double g_ma = std::sqrt(2.0) * (p.omega_a / p.cavity_length) * x_m;
    const double g_b = std::sqrt(2.0) * (p.omega_a / p.cavity_length) * x_b;
    const double gamma_nh =
        p.traveling_amplitude * std::sqrt(hbar / (p.omega_m * mode_mass_magnon));
    const double eta = std::sqrt(p.drive_power * p.kappa_m / (hbar * p.omega_0));

    const double delta_a = p.omega_a - p.omega_0;
    if (delta_a == 0.0)
        throw std::domain_error("delta_a = 0: cannot normalize by the photon detuning");

    NormalizedParams n;
    n.delta_a = 1.0;
    n.delta_m = (p.omega_m - p.omega_0) / delta_a;
    n.delta_b = (p.omega_b - p.omega_0) / delta_a;
    n.kappa_a = p.kappa_a / delta_a;
    n.kappa_m = p.kappa_m / delta_a;
    n.gamma_b = p.gamma_b / delta_a;
    n.g_ma = g_ma / delta_a;
    n.g_mb_eff = g_b / delta_a;
    n.gamma_nh = gamma_nh / delta_a;
    n.omega_b_ratio = p.omega_b / delta_a;
    n.eta = eta / delta_a;
    n.theta = wrap_angle(p.theta);
    return n;
}

} // namespace magnomech
