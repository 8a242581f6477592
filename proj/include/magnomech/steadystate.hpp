#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "magnomech/params.hpp"
#include "magnomech/polyroots.hpp"

namespace magnomech {

// One steady-state mean-field branch. u == |m_mean|^2 and residual is the max
// violation of the three mean-field equations.
struct SteadyState {
    Complex a_mean{};
    Complex m_mean{};
    Complex b_mean{};
    double u = 0.0;
    double g_mb_eff_out = 0.0; // g_mb_bare * |m_mean|
    double residual = 0.0;
};

struct SteadyStateResult {
    std::vector<SteadyState> branches;  // sorted by u ascending; front() is selected
    std::vector<Complex> cubic_roots;   // roots of the scalar equation in u
};

namespace detail {

inline double real_cubic_eval(const std::vector<double>& c, double u) {
    double r = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) r = r * u + c[k];
    return r;
}

inline double real_cubic_deriv(const std::vector<double>& c, double u) {
    double r = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) r = r * u + double(k) * c[k];
    return r;
}

inline double polish_real_root(const std::vector<double>& c, double u) {
    for (int s = 0; s < 3; ++s) {
        const double pv = real_cubic_eval(c, u);
        if (pv == 0.0) return u;
        const double dv = real_cubic_deriv(c, u);
        if (dv == 0.0) return u;
        const double un = u - pv / dv;
        if (std::abs(real_cubic_eval(c, un)) < std::abs(pv))
            u = un;
        else
            return u;
    }
    return u;
}

} // namespace detail

// Solves the coupled mean-field equations at bare magnomechanical coupling
// g_mb_bare. The photon amplitude and the static phonon displacement are
// eliminated analytically, closing the system over u = |<m>|^2:
//
//   |D(u)|^2 u = |eta|^2,
//   D(u) = i delta_m + kappa_m + [phonon term](u) - c^2 / (i delta_a + kappa_a),
//   c = i g_ma + gamma_nh e^{i theta},
//   phonon term = g_mb_bare (b_s + b_s^*) = -2 g_mb_bare^2 delta_b u / (delta_b^2 + gamma_b^2),
//
// a real cubic (or linear) equation in u. Every nonnegative real root is
// returned as a branch with <a>, <m>, <b> back-substituted. The drive is taken
// as a complex amplitude so that phase covariance is explicit; the public
// overload feeds in params.eta.
inline SteadyStateResult solve_steady_state_with_drive(const NormalizedParams& p,
                                                       double g_mb_bare, Complex eta,
                                                       const ModelOptions& opt = {}) {
    if (g_mb_bare < 0.0)
        throw std::invalid_argument("negative coupling: g_mb_bare");

    const Complex photon_denom(p.kappa_a, p.delta_a); // i delta_a + kappa_a
    if (photon_denom == 0.0)
        throw std::domain_error("photon denominator singular: i*delta_a + kappa_a = 0");
    const double phonon_denom_sq = p.delta_b * p.delta_b + p.gamma_b * p.gamma_b;
    if (phonon_denom_sq == 0.0)
        throw std::domain_error("phonon denominator singular: i*delta_b + gamma_b = 0");

    const Complex c = Complex(0.0, 1.0) * p.g_ma + p.gamma_nh * phase_factor(p.theta);
    const Complex chi = c * c / photon_denom;
    const double K = -2.0 * g_mb_bare * g_mb_bare * p.delta_b / phonon_denom_sq;
    const double alpha = p.kappa_m - chi.real();
    const double beta = p.delta_m - chi.imag();
    const bool shift_real = opt.steady_phonon_term == ModelOptions::PhononTerm::as_printed;

    const auto d_of_u = [&](double u) {
        return shift_real ? Complex(alpha + K * u, beta) : Complex(alpha, beta + K * u);
    };
    const auto make_branch = [&](double u_root) {
        SteadyState s;
        const Complex D = d_of_u(u_root);
        s.m_mean = eta / D;
        s.a_mean = -c * s.m_mean / photon_denom;
        s.u = std::norm(s.m_mean);
        s.b_mean = -Complex(0.0, 1.0) * g_mb_bare * s.u / Complex(p.gamma_b, p.delta_b);
        s.g_mb_eff_out = g_mb_bare * std::abs(s.m_mean);

        const double shift = g_mb_bare * 2.0 * s.b_mean.real();
        const Complex shift_term = shift_real ? Complex(shift, 0.0) : Complex(0.0, shift);
        const double r1 = std::abs(photon_denom * s.a_mean + c * s.m_mean);
        const double r2 = std::abs((Complex(p.kappa_m, p.delta_m) + shift_term) * s.m_mean +
                                   c * s.a_mean - eta);
        const double r3 = std::abs(Complex(p.gamma_b, p.delta_b) * s.b_mean +
                                   Complex(0.0, 1.0) * g_mb_bare * s.u);
        s.residual = std::max({r1, r2, r3});
        return s;
    };

    SteadyStateResult out;
    const double eta_sq = std::norm(eta);
    if (eta_sq == 0.0) {
        SteadyState zero;
        zero.residual = 0.0;
        out.branches.push_back(zero);
        out.cubic_roots = {Complex(0.0)};
        return out;
    }

    // coefficients of |D(u)|^2 u - |eta|^2, lowest degree first
    const double mix = shift_real ? alpha : beta;
    std::vector<double> cu{-eta_sq, alpha * alpha + beta * beta, 2.0 * K * mix, K * K};
    while (cu.size() > 1 && cu.back() == 0.0) cu.pop_back();

    std::vector<double> u_roots;
    if (cu.size() == 2) {
        u_roots.push_back(-cu[0] / cu[1]);
        out.cubic_roots = {Complex(u_roots[0])};
    } else if (cu.size() >= 3) {
        std::vector<Complex> cc(cu.begin(), cu.end());
        const PolyRoots roots = (cu.size() == 4) ? solve_cubic_closed_form(ComplexPoly(cc))
                                                 : solve_iterative(ComplexPoly(cc));
        out.cubic_roots = roots.roots;
        for (Complex z : roots.roots) {
            const double zscale = std::max(1.0, std::abs(z));
            if (std::abs(z.imag()) <= 1e-9 * zscale && z.real() >= -1e-12 * zscale)
                u_roots.push_back(detail::polish_real_root(cu, std::max(0.0, z.real())));
        }
    }

    if (u_roots.empty()) {
        std::ostringstream msg;
        msg << "no nonnegative real steady-state root; cubic roots:";
        for (Complex z : out.cubic_roots) msg << " (" << z.real() << "," << z.imag() << ")";
        throw std::domain_error(msg.str());
    }

    std::sort(u_roots.begin(), u_roots.end());
    for (double u : u_roots) out.branches.push_back(make_branch(u));
    return out;
}

inline SteadyStateResult solve_steady_state(const NormalizedParams& p, double g_mb_bare,
                                            const ModelOptions& opt = {}) {
    return solve_steady_state_with_drive(p, g_mb_bare, Complex(p.eta, 0.0), opt);
}

struct CalibrationResult {
    double eta = 0.0;
    bool multistable = false;
};

// Finds eta such that g_mb_bare |<m>(eta)| hits target_g_mb_eff on the
// smallest-u branch, to 1e-8 relative: bracket by doubling, scan for sign
// changes (more than one flags multistability), bisect the first crossing.
inline CalibrationResult calibrate_drive(const NormalizedParams& p, double g_mb_bare,
                                         double target_g_mb_eff,
                                         const ModelOptions& opt = {}) {
    if (target_g_mb_eff < 0.0)
        throw std::invalid_argument("negative target_g_mb_eff");
    if (target_g_mb_eff == 0.0) return {0.0, false};

    const auto f = [&](double eta) {
        const auto r = solve_steady_state_with_drive(p, g_mb_bare, Complex(eta, 0.0), opt);
        return r.branches.front().g_mb_eff_out - target_g_mb_eff;
    };

    double hi = 1.0;
    for (int i = 0; f(hi) < 0.0; ++i) {
        if (i > 200) throw std::domain_error("calibrate_drive: target unreachable");
        hi *= 2.0;
    }

    constexpr int kScan = 256;
    double a = 0.0;
    double b = hi;
    bool found_first = false;
    int sign_changes = 0;
    double prev_x = 0.0;
    double prev_f = -target_g_mb_eff; // f(0)
    for (int i = 1; i <= kScan; ++i) {
        const double x = hi * double(i) / double(kScan);
        const double fx = f(x);
        if ((prev_f < 0.0) != (fx < 0.0)) {
            ++sign_changes;
            if (!found_first) {
                a = prev_x;
                b = x;
                found_first = true;
            }
        }
        prev_x = x;
        prev_f = fx;
    }

    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (std::abs(fm) <= 1e-8 * target_g_mb_eff) {
            a = b = mid;
            break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if (b - a <= 1e-15 * std::max(1.0, b)) break;
    }
    return {0.5 * (a + b), sign_changes > 1};
}

} // namespace magnomech
