#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "magnomech/params.hpp"
#include "magnomech/polyroots.hpp"

namespace magnomech {

// 6x6 quadrature drift matrix in order (X, Y, x, y, q, p).
struct DriftMatrix {
    ComplexMatrix entries;
    Complex coupling_entry{};     // g~ = G_ma - i Gamma e^{i theta}
    Complex effective_detuning{}; // Delta~_m
    double imag_norm = 0.0;       // max |Im entry|
};

// The canonical drift_sign_convention flips the photon block's lower
// off-diagonal detuning (row Y) to -Delta_a; as_printed keeps +Delta_a in both
// quadrature slots.
inline DriftMatrix build_drift(const NormalizedParams& p, Complex delta_m_eff,
                               const ModelOptions& opt = {}) {
    const Complex gt = p.g_ma - Complex(0.0, 1.0) * p.gamma_nh * phase_factor(p.theta);
    const double wb = p.omega_b_ratio;
    const double da_lower =
        opt.drift_sign_convention == ModelOptions::DriftSign::canonical ? -p.delta_a
                                                                        : p.delta_a;
    ComplexMatrix A(6);
    A(0, 0) = -p.kappa_a; A(0, 1) = p.delta_a;  A(0, 3) = gt;
    A(1, 0) = da_lower;   A(1, 1) = -p.kappa_a; A(1, 2) = -gt;
    A(2, 1) = gt;         A(2, 2) = -p.kappa_m; A(2, 3) = delta_m_eff;
    A(3, 0) = -gt;        A(3, 2) = -delta_m_eff; A(3, 3) = -p.kappa_m; A(3, 4) = -p.g_mb_eff;
    A(4, 5) = wb;
    A(5, 2) = -p.g_mb_eff; A(5, 4) = -wb; A(5, 5) = -p.gamma_b;

    DriftMatrix out{std::move(A), gt, delta_m_eff, 0.0};
    out.imag_norm = out.entries.max_abs_imag();
    return out;
}

enum class RouthVerdict { stable, unstable, marginal, inapplicable };

inline const char* to_string(RouthVerdict v) {
    switch (v) {
        case RouthVerdict::stable: return "stable";
        case RouthVerdict::unstable: return "unstable";
        case RouthVerdict::marginal: return "marginal";
        default: return "inapplicable";
    }
}

namespace detail {

// One Routh tabulation with a fixed substitution for exact zero pivots.
// Returns stable / unstable / marginal (marginal when an all-zero row forced
// the auxiliary-polynomial continuation, i.e. roots on the imaginary axis).
inline RouthVerdict routh_tabulate(std::vector<double> a, double eps) {
    // a: coefficients highest degree first, a[0] > 0
    const std::size_t n = a.size() - 1;
    const std::size_t width = n / 2 + 1;
    std::vector<double> upper(width, 0.0), lower(width, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i % 2 == 0)
            upper[i / 2] = a[i];
        else
            lower[i / 2] = a[i];
    }

    double row_scale = 0.0;
    for (double v : a) row_scale = std::max(row_scale, std::abs(v));
    bool aux_used = false;
    std::vector<double> first_col{upper[0]};

    std::size_t remaining = n; // polynomial degree represented by `upper`
    while (remaining > 0) {
        bool all_zero = true;
        for (double v : lower)
            if (v != 0.0) all_zero = false;
        if (all_zero) {
            // auxiliary polynomial: derivative of the even polynomial in `upper`
            aux_used = true;
            for (std::size_t i = 0; i < width; ++i) {
                const double power = double(remaining) - 2.0 * double(i);
                lower[i] = power > 0.0 ? upper[i] * power : 0.0;
            }
        }
        if (lower[0] == 0.0) lower[0] = eps * std::max(row_scale, 1.0);
        first_col.push_back(lower[0]);

        std::vector<double> next(width, 0.0);
        for (std::size_t i = 0; i + 1 < width; ++i)
            next[i] = (lower[0] * upper[i + 1] - upper[0] * lower[i + 1]) / lower[0];
        upper = lower;
        lower = next;
        --remaining;
    }

    bool any_nonpositive = false;
    for (double v : first_col)
        if (!(v > 0.0)) any_nonpositive = true;
    if (any_nonpositive) return RouthVerdict::unstable;
    return aux_used ? RouthVerdict::marginal : RouthVerdict::stable;
}

} // namespace detail

// Classical Routh array on a real-coefficient polynomial: stable iff the first
// column is all positive. Complex coefficients (imag parts above 1e-12*scale)
// are inapplicable. Exact zero pivots are perturbed by +/- eps = 1e-30*scale;
// if the two perturbations disagree the verdict is marginal.
inline RouthVerdict routh_array(const ComplexPoly& p) {
    const double scale = p.max_abs_coeff();
    for (const Complex& c : p.coeffs)
        if (std::abs(c.imag()) > 1e-12 * scale) return RouthVerdict::inapplicable;

    std::vector<double> a;
    a.reserve(p.coeffs.size());
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) a.push_back(it->real());
    if (a[0] < 0.0)
        for (double& v : a) v = -v;

    const RouthVerdict plus = detail::routh_tabulate(a, 1e-30);
    const RouthVerdict minus = detail::routh_tabulate(a, -1e-30);
    if (plus != minus) return RouthVerdict::marginal;
    return plus;
}

struct ParametricConditions {
    bool c1 = false;               // printed polynomial inequality, real part
    bool c1_applicable = true;     // false when the imaginary residual is too large
    double c1_imag_residual = 0.0;
    bool c2 = false;               // kappa_a + kappa_m > gamma_b / 2
    bool c3 = false;               // Delta_m > 0
    bool c4 = false;               // Delta_a > 0
};

// The four parametric stability conditions, evaluated as printed with
// delta_m_eff substituted into every Delta_m slot. Condition (i) is generally
// complex away from theta in {pi/2, 3pi/2}; it is interpreted on the real part
// and flagged inapplicable when |Im| > 1e-8 * (term scale).
inline ParametricConditions parametric_conditions(const NormalizedParams& p,
                                                  Complex delta_m_eff) {
    const Complex gt = p.g_ma - Complex(0.0, 1.0) * p.gamma_nh * phase_factor(p.theta);
    const Complex gt2 = gt * gt;
    const double wb = p.omega_b_ratio;
    const double gmb2 = p.g_mb_eff * p.g_mb_eff;

    const Complex term1 =
        gt2 * (2.0 * p.kappa_a * p.kappa_m * wb +
               p.delta_a * (gmb2 - 2.0 * wb * delta_m_eff) + gt2 * wb);
    const Complex term2 =
        (p.kappa_a * p.kappa_a + p.delta_a * p.delta_a) *
        (-gmb2 * delta_m_eff + wb * (p.kappa_m * p.kappa_m + delta_m_eff * delta_m_eff));
    const Complex lhs = term1 + term2;
    const double scale = std::abs(term1) + std::abs(term2);

    ParametricConditions out;
    out.c1 = lhs.real() > 0.0;
    out.c1_imag_residual = std::abs(lhs.imag());
    out.c1_applicable = scale == 0.0 || out.c1_imag_residual <= 1e-8 * scale;
    out.c2 = p.kappa_a + p.kappa_m > p.gamma_b / 2.0;
    out.c3 = delta_m_eff.real() > 0.0;
    out.c4 = p.delta_a > 0.0;
    return out;
}

// S = 1 + A/B with
//   A = g~^2 (2 kappa_a kappa_m omega_b + Delta_a (G_mb^2 - 2 omega_b Delta_m) + g~^2 omega_b)
//   B = (kappa_a^2 + Delta_a^2)(-G_mb^2 Delta_m + omega_b (kappa_m^2 + Delta_m^2))
inline Complex stability_parameter(const NormalizedParams& p, Complex delta_m_eff) {
    const Complex gt = p.g_ma - Complex(0.0, 1.0) * p.gamma_nh * phase_factor(p.theta);
    const Complex gt2 = gt * gt;
    const double wb = p.omega_b_ratio;
    const double gmb2 = p.g_mb_eff * p.g_mb_eff;

    const Complex A = gt2 * (2.0 * p.kappa_a * p.kappa_m * wb +
                             p.delta_a * (gmb2 - 2.0 * wb * delta_m_eff) + gt2 * wb);
    const Complex B = (p.kappa_a * p.kappa_a + p.delta_a * p.delta_a) *
                      (-gmb2 * delta_m_eff +
                       wb * (p.kappa_m * p.kappa_m + delta_m_eff * delta_m_eff));
    if (B == 0.0)
        throw std::domain_error("stability parameter singular: B = 0");
    return 1.0 + A / B;
}

struct StabilityReport {
    std::vector<Complex> roots;    // six char-poly roots of the drift matrix
    double max_real_part = 0.0;
    bool stable_by_roots = false;
    bool marginal = false;         // |max_real_part| < 1e-8
    bool solver_converged = true;
    RouthVerdict routh_verdict = RouthVerdict::inapplicable;
    ParametricConditions conditions;
    Complex s_value{};
    double s_imag_residual = 0.0;
    bool s_singular = false;
};

// Root part of the report: characteristic roots by simultaneous iteration,
// stable iff every real part is negative.
inline StabilityReport stability_from_roots(const DriftMatrix& A) {
    const PolyRoots r = solve_iterative(char_poly(A.entries));
    StabilityReport out;
    out.roots = r.roots;
    out.solver_converged = r.converged;
    double max_re = -std::numeric_limits<double>::infinity();
    for (Complex z : r.roots) max_re = std::max(max_re, z.real());
    out.max_real_part = max_re;
    out.stable_by_roots = max_re < 0.0;
    out.marginal = std::abs(max_re) < 1e-8;
    return out;
}

// Full report: roots verdict, Routh verdict on the same characteristic
// polynomial, parametric conditions, and the stability parameter S.
inline StabilityReport analyze_stability(const NormalizedParams& p, Complex delta_m_eff,
                                         const ModelOptions& opt = {}) {
    const DriftMatrix A = build_drift(p, delta_m_eff, opt);
    StabilityReport out = stability_from_roots(A);
    out.routh_verdict = routh_array(char_poly(A.entries));
    out.conditions = parametric_conditions(p, delta_m_eff);
    try {
        out.s_value = stability_parameter(p, delta_m_eff);
        out.s_imag_residual = std::abs(out.s_value.imag());
    } catch (const std::domain_error&) {
        out.s_singular = true;
    }
    return out;
}

} // namespace magnomech
