#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "magnomech/matrix.hpp"

namespace magnomech {

// Polynomial with complex coefficients, lowest degree first.
struct ComplexPoly {
    std::vector<Complex> coeffs;

    explicit ComplexPoly(std::vector<Complex> c) : coeffs(std::move(c)) {
        if (coeffs.size() < 2)
            throw std::invalid_argument("ComplexPoly: degree must be at least 1");
        if (coeffs.back() == 0.0)
            throw std::invalid_argument("ComplexPoly: leading coefficient is zero");
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    Complex eval(Complex x) const {
        Complex r = coeffs.back();
        for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) r = r * x + *it;
        return r;
    }

    Complex eval_derivative(Complex x) const {
        const int n = degree();
        Complex r = double(n) * coeffs.back();
        for (int k = n - 1; k >= 1; --k) r = r * x + double(k) * coeffs[std::size_t(k)];
        return r;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const Complex& c : coeffs) m = std::max(m, std::abs(c));
        return m;
    }
};

struct PolyRoots {
    std::vector<Complex> roots;
    double residual = 0.0;   // max |p(root)| / (max|coeff| * max(1,|root|)^degree)
    bool converged = true;
    int iterations = 0;
};

inline double root_residual(const ComplexPoly& p, Complex root) {
    const double scale =
        p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(root)), p.degree());
    return std::abs(p.eval(root)) / scale;
}

inline double max_residual(const ComplexPoly& p, const std::vector<Complex>& roots) {
    double r = 0.0;
    for (Complex z : roots) r = std::max(r, root_residual(p, z));
    return r;
}

// Newton steps accepted only if they reduce |p|; safe near multiple roots.
inline Complex polish_root(const ComplexPoly& p, Complex z, int steps = 2) {
    for (int s = 0; s < steps; ++s) {
        const Complex pv = p.eval(z);
        if (pv == 0.0) return z;
        const Complex dv = p.eval_derivative(z);
        if (dv == 0.0) return z;
        const Complex zn = z - pv / dv;
        if (std::abs(p.eval(zn)) < std::abs(pv))
            z = zn;
        else
            return z;
    }
    return z;
}

// Cardano with complex coefficients. The auxiliary cube root is taken from the
// larger-magnitude branch of the internal square root; a vanishing cube root
// falls back to the triple root of the depressed cubic.
inline PolyRoots solve_cubic_closed_form(const ComplexPoly& p) {
    if (p.degree() != 3)
        throw std::invalid_argument("solve_cubic_closed_form: degree must be exactly 3");

    const Complex lead = p.coeffs[3];
    const Complex b = p.coeffs[2] / lead;
    const Complex c = p.coeffs[1] / lead;
    const Complex d = p.coeffs[0] / lead;

    // depressed cubic t^3 + q1 t + q0 with lambda = t - b/3
    const Complex q1 = c - b * b / 3.0;
    const Complex q0 = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const Complex shift = -b / 3.0;

    std::array<Complex, 3> t;
    const Complex sq = std::sqrt(q0 * q0 / 4.0 + q1 * q1 * q1 / 27.0);
    const Complex wp = -q0 / 2.0 + sq;
    const Complex wm = -q0 / 2.0 - sq;
    const Complex w = std::abs(wp) >= std::abs(wm) ? wp : wm;
    const double scale = std::max({1.0, std::abs(b), std::abs(c), std::abs(d)});
    const Complex u = std::pow(w, 1.0 / 3.0);
    if (std::abs(u) < 1e-30 * scale) {
        t = {Complex(0.0), Complex(0.0), Complex(0.0)};
    } else {
        const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
        Complex uk = u;
        for (int k = 0; k < 3; ++k) {
            t[std::size_t(k)] = uk - q1 / (3.0 * uk);
            uk *= omega;
        }
    }

    PolyRoots out;
    out.roots = {t[0] + shift, t[1] + shift, t[2] + shift};
    for (Complex& z : out.roots) z = polish_root(p, z);
    out.residual = max_residual(p, out.roots);
    return out;
}

// Durand-Kerner simultaneous iteration. Deterministic seeds: roots of unity on
// the Cauchy bound circle, rotated off the real axis so that conjugate-symmetric
// root sets cannot trap real iterates.
inline PolyRoots solve_iterative(const ComplexPoly& p, int max_iterations = 500,
                                 double tol = 1e-13) {
    const int n = p.degree();
    PolyRoots out;

    std::vector<Complex> a(p.coeffs);
    const Complex lead = a.back();
    for (Complex& ck : a) ck /= lead;

    if (n == 1) {
        out.roots = {polish_root(p, -a[0])};
        out.residual = max_residual(p, out.roots);
        return out;
    }

    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(a[std::size_t(k)]));
    radius += 1.0;

    std::vector<Complex> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        z[std::size_t(k)] =
            std::polar(radius, 2.0 * std::numbers::pi * double(k) / double(n) + 0.4);

    const auto eval_monic = [&](Complex x) {
        Complex r = 1.0;
        for (int k = n - 1; k >= 0; --k) r = r * x + a[std::size_t(k)];
        return r;
    };

    bool converged = false;
    int it = 0;
    while (it < max_iterations) {
        ++it;
        double max_step = 0.0;
        double max_mag = 1.0;
        for (int i = 0; i < n; ++i) {
            Complex den = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j != i) den *= z[std::size_t(i)] - z[std::size_t(j)];
            }
            if (den == 0.0) {   // coincident iterates: nudge and retry next sweep
                z[std::size_t(i)] += Complex(1e-12, 1e-12) * radius;
                max_step = radius;
                continue;
            }
            const Complex dz = eval_monic(z[std::size_t(i)]) / den;
            z[std::size_t(i)] -= dz;
            max_step = std::max(max_step, std::abs(dz));
            max_mag = std::max(max_mag, std::abs(z[std::size_t(i)]));
        }
        if (max_step < tol * max_mag) {
            converged = true;
            break;
        }
    }

    for (Complex& zi : z) zi = polish_root(p, zi);
    out.roots = std::move(z);
    out.residual = max_residual(p, out.roots);
    out.converged = converged;
    out.iterations = it;
    return out;
}

// Coefficients of det(lambda I - M), monic, lowest degree first
// (Faddeev-LeVerrier recursion).
inline ComplexPoly char_poly(const ComplexMatrix& M) {
    const std::size_t n = M.size();
    std::vector<Complex> c(n + 1);
    c[n] = 1.0;
    ComplexMatrix Mk = M;
    c[n - 1] = -Mk.trace();
    for (std::size_t k = 2; k <= n; ++k) {
        ComplexMatrix t = Mk;
        t.add_to_diagonal(c[n - k + 1]);
        Mk = M * t;
        c[n - k] = -Mk.trace() / double(k);
    }
    return ComplexPoly(std::move(c));
}

inline ComplexPoly multiply(const ComplexPoly& p, const ComplexPoly& q) {
    std::vector<Complex> c(p.coeffs.size() + q.coeffs.size() - 1);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs.size(); ++j) c[i + j] += p.coeffs[i] * q.coeffs[j];
    return ComplexPoly(std::move(c));
}

inline ComplexPoly poly_from_roots(const std::vector<Complex>& roots, Complex leading = 1.0) {
    std::vector<Complex> c{leading};
    for (Complex r : roots) {
        c.push_back(c.back());
        for (std::size_t k = c.size() - 2; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return ComplexPoly(std::move(c));
}

// Minimal-cost pairing of two equal-size multisets, brute force over all
// permutations (n <= 6 everywhere in this library). Returns perm such that
// cand[perm[k]] pairs with ref[k], minimizing the summed distance; ties go to
// the lexicographically smallest permutation.
inline std::vector<std::size_t> best_matching(const std::vector<Complex>& ref,
                                              const std::vector<Complex>& cand) {
    const std::size_t n = ref.size();
    if (cand.size() != n)
        throw std::invalid_argument("best_matching: size mismatch");
    std::vector<std::size_t> perm(n), best(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t k = 0; k < n; ++k) cost += std::abs(cand[perm[k]] - ref[k]);
        if (cost < best_cost) {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Max elementwise distance under the minimal-cost pairing.
inline double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const auto perm = best_matching(a, b);
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(b[perm[k]] - a[k]));
    return d;
}

} // namespace magnomech
