#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "magnomech/params.hpp"
#include "magnomech/polyroots.hpp"

namespace magnomech {

// 3x3 complex-symmetric effective Hamiltonian in basis (photon, magnon, phonon).
struct EffectiveHamiltonian {
    ComplexMatrix entries;
};

inline EffectiveHamiltonian build_h_eff(const NormalizedParams& p,
                                        const ModelOptions& opt = {}) {
    const Complex coupling =
        p.g_ma + Complex(0.0, 1.0) * p.gamma_nh * phase_factor(p.theta);
    const double s = double(opt.dissipation_sign);
    ComplexMatrix h(3);
    h(0, 0) = Complex(p.delta_a, s * p.kappa_a);
    h(0, 1) = h(1, 0) = coupling;
    h(1, 1) = Complex(p.delta_m, s * p.kappa_m);
    h(1, 2) = h(2, 1) = p.g_mb_eff;
    h(2, 2) = Complex(p.delta_b, s * p.gamma_b);
    return {std::move(h)};
}

// Roots of the characteristic cubic. A fully decoupled (diagonal) matrix short
// circuits to its diagonal, so the trivial limit is exact.
inline std::array<Complex, 3> eigenvalues(const EffectiveHamiltonian& h) {
    const ComplexMatrix& m = h.entries;
    if (m(0, 1) == 0.0 && m(1, 2) == 0.0)
        return {m(0, 0), m(1, 1), m(2, 2)};
    const PolyRoots r = solve_cubic_closed_form(char_poly(m));
    return {r.roots[0], r.roots[1], r.roots[2]};
}

inline double spread(const std::array<Complex, 3>& ev) {
    return std::max({std::abs(ev[0] - ev[1]), std::abs(ev[0] - ev[2]),
                     std::abs(ev[1] - ev[2])});
}

inline std::array<Complex, 3> sort_canonical(std::array<Complex, 3> ev) {
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

// Permutation of `next` minimizing the summed distance to `prev`, over all six
// permutations in lexicographic order (first minimum wins ties).
inline std::array<Complex, 3> track_branches(const std::array<Complex, 3>& prev,
                                             const std::array<Complex, 3>& next) {
    static constexpr std::array<std::array<int, 3>, 6> perms{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        double cost = 0.0;
        for (int k = 0; k < 3; ++k)
            cost += std::abs(next[std::size_t(perms[i][std::size_t(k)])] - prev[std::size_t(k)]);
        if (cost < best_cost) {
            best_cost = cost;
            best = i;
        }
    }
    return {next[std::size_t(perms[best][0])], next[std::size_t(perms[best][1])],
            next[std::size_t(perms[best][2])]};
}

// Three branch-tracked eigenvalue sequences over a sweep axis.
struct Spectrum {
    std::vector<double> axis;
    std::array<std::vector<Complex>, 3> branches;
    std::vector<double> spread;
};

inline void check_axis_name(std::string_view axis_name) {
    if (axis_name == "delta_a")
        throw std::invalid_argument("delta_a is the normalization unit and cannot be swept");
    NormalizedParams probe;
    set_field(probe, axis_name, 0.0); // throws for unknown names
}

inline Spectrum sweep_spectrum(const NormalizedParams& base, std::string_view axis_name,
                               const std::vector<double>& grid,
                               const ModelOptions& opt = {}) {
    if (grid.size() < 2)
        throw std::invalid_argument("sweep grid needs at least 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i - 1] < grid[i]))
            throw std::invalid_argument("sweep grid must be strictly increasing");
    check_axis_name(axis_name);

    Spectrum out;
    out.axis = grid;
    for (auto& b : out.branches) b.reserve(grid.size());
    out.spread.reserve(grid.size());

    std::array<Complex, 3> prev{};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        NormalizedParams p = base;
        set_field(p, axis_name, grid[i]);
        p = validate(p);
        const auto raw = eigenvalues(build_h_eff(p, opt));
        const auto tracked = (i == 0) ? sort_canonical(raw) : track_branches(prev, raw);
        for (int k = 0; k < 3; ++k) out.branches[std::size_t(k)].push_back(tracked[std::size_t(k)]);
        out.spread.push_back(spread(raw));
        prev = tracked;
    }
    return out;
}

// Coalescence report at a spread minimizer. order: 3 = all pairwise distances
// below tolerance, 2 = exactly one pair below, 0 = no coalescence (minimizer
// still reported).
struct EpReport {
    double location = 0.0;
    int order = 0;
    double spread_at_min = 0.0;
    double tolerance_used = 0.0;

    bool found() const { return order >= 2; }
};

// Coarse 200-point scan for the spread minimum, then golden-section refinement.
inline EpReport locate_ep(const NormalizedParams& base, std::string_view axis_name,
                          double lo, double hi, double tol_rel = 1e-4,
                          const ModelOptions& opt = {}) {
    if (!(lo < hi)) throw std::invalid_argument("locate_ep: bracket needs lo < hi");
    if (!(tol_rel > 0.0)) throw std::invalid_argument("locate_ep: tol_rel must be positive");
    check_axis_name(axis_name);

    const auto eigen_at = [&](double x) {
        NormalizedParams p = base;
        set_field(p, axis_name, x);
        return eigenvalues(build_h_eff(validate(p), opt));
    };
    const auto f = [&](double x) { return spread(eigen_at(x)); };

    constexpr std::size_t kScan = 200;
    double best_x = lo;
    double best_f = f(lo);
    std::size_t best_i = 0;
    std::vector<double> xs(kScan);
    for (std::size_t i = 0; i < kScan; ++i) {
        xs[i] = lo + (hi - lo) * (double(i) / double(kScan - 1));
        const double fi = (i == 0) ? best_f : f(xs[i]);
        if (fi < best_f) {
            best_f = fi;
            best_x = xs[i];
            best_i = i;
        }
    }

    double a = xs[best_i == 0 ? 0 : best_i - 1];
    double b = xs[std::min(best_i + 1, kScan - 1)];
    const double tol_abs = tol_rel * std::max({1.0, std::abs(lo), std::abs(hi)});
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol_abs) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    double xm = (f1 <= f2) ? x1 : x2;
    double fm = std::min(f1, f2);
    if (best_f < fm) {  // guard against a scan minimum at the bracket edge
        xm = best_x;
        fm = best_f;
    }

    const auto ev = eigen_at(xm);
    double max_abs = 0.0;
    for (Complex v : ev) max_abs = std::max(max_abs, std::abs(v));
    const double tol = tol_rel * max_abs;
    const std::array<double, 3> d{std::abs(ev[0] - ev[1]), std::abs(ev[0] - ev[2]),
                                  std::abs(ev[1] - ev[2])};
    const int below = int(d[0] < tol) + int(d[1] < tol) + int(d[2] < tol);

    EpReport rep;
    rep.location = xm;
    rep.spread_at_min = fm;
    rep.tolerance_used = tol;
    if (below == 3)
        rep.order = 3;
    else if (below == 1)
        rep.order = 2;
    else
        rep.order = 0;
    return rep;
}

} // namespace magnomech
