#include "catch_amalgamated.hpp"

#include <numbers>
#include <random>

#include "magnomech/steadystate.hpp"

using namespace magnomech;

namespace {
constexpr double pi = std::numbers::pi;

NormalizedParams ep_point() { // reference set at the matched-coupling point
    NormalizedParams p;
    p.g_mb_eff = 0.09;
    p.gamma_nh = 1.0;
    p.theta = pi / 2.0;
    p.g_ma = 1.0;
    return p;
}

NormalizedParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    NormalizedParams p;
    p.delta_m = 0.5 + 1.5 * u01(rng);
    p.delta_b = 0.5 + 1.5 * u01(rng);
    p.kappa_a = 0.01 + 0.5 * u01(rng);
    p.kappa_m = 0.01 + 0.5 * u01(rng);
    p.gamma_b = 0.1 * u01(rng);
    p.g_ma = 1.5 * u01(rng);
    p.gamma_nh = 1.5 * u01(rng);
    p.theta = 2.0 * pi * u01(rng);
    p.eta = 3.0 * u01(rng);
    return validate(p);
}

// the scalar equation in u, re-derived here from the printed mean-field
// equations, independent of the implementation's coefficient assembly
std::vector<double> derive_cubic(const NormalizedParams& p, double g, double eta) {
    const Complex c = Complex(0.0, 1.0) * p.g_ma + p.gamma_nh * phase_factor(p.theta);
    const Complex chi = c * c / Complex(p.kappa_a, p.delta_a);
    const double K = -2.0 * g * g * p.delta_b / (p.delta_b * p.delta_b + p.gamma_b * p.gamma_b);
    const double al = p.kappa_m - chi.real();
    const double be = p.delta_m - chi.imag();
    return {-eta * eta, al * al + be * be, 2.0 * K * al, K * K};
}
} // namespace

TEST_CASE("zero drive gives the zero branch") {
    NormalizedParams p = ep_point();
    p.eta = 0.0;
    const SteadyStateResult r = solve_steady_state(p, 0.01);
    REQUIRE(r.branches.size() == 1);
    CHECK(r.branches[0].m_mean == Complex(0.0));
    CHECK(r.branches[0].a_mean == Complex(0.0));
    CHECK(r.branches[0].b_mean == Complex(0.0));
    CHECK(r.branches[0].u == 0.0);
    CHECK(r.branches[0].g_mb_eff_out == 0.0);
    CHECK(r.branches[0].residual == 0.0);
}

TEST_CASE("linear regime matches a direct 2x2 solve") {
    // g_mb = 0 and Gamma = 0: the (a, m) system is linear; Cramer's rule on
    //   (i d_a + k_a) a + (i g) m = 0
    //   (i g) a + (i d_m + k_m) m = eta
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        NormalizedParams p;
        p.delta_m = 0.5 + u01(rng);
        p.kappa_a = 0.05 + 0.3 * u01(rng);
        p.kappa_m = 0.05 + 0.3 * u01(rng);
        p.g_ma = 1.2 * u01(rng);
        p.eta = 0.1 + 2.0 * u01(rng);
        p = validate(p);

        const SteadyStateResult r = solve_steady_state(p, 0.0);
        REQUIRE(r.branches.size() == 1);

        const Complex da(p.kappa_a, p.delta_a), dm(p.kappa_m, p.delta_m);
        const Complex ig(0.0, p.g_ma);
        const Complex det = da * dm - ig * ig;
        const Complex m_expect = da * p.eta / det;
        const Complex a_expect = -ig * p.eta / det;
        CHECK(std::abs(r.branches[0].m_mean - m_expect) < 1e-12 * std::abs(m_expect));
        CHECK(std::abs(r.branches[0].a_mean - a_expect) <
              1e-12 * std::max(1.0, std::abs(a_expect)));
    }
}

TEST_CASE("phase covariance of the drive") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const NormalizedParams p = random_params(rng);
        const double g = 0.3;
        const Complex eta0(0.7, 0.0);
        const double phi = 2.0 * pi * 0.37;
        const Complex eta1 = eta0 * std::polar(1.0, phi);
        const SteadyStateResult r0 = solve_steady_state_with_drive(p, g, eta0);
        const SteadyStateResult r1 = solve_steady_state_with_drive(p, g, eta1);
        REQUIRE(r0.branches.size() == r1.branches.size());
        for (std::size_t b = 0; b < r0.branches.size(); ++b) {
            const Complex rot = std::polar(1.0, phi);
            CHECK(std::abs(r1.branches[b].m_mean - rot * r0.branches[b].m_mean) <
                  1e-12 * std::max(1.0, std::abs(r0.branches[b].m_mean)));
            CHECK(std::abs(r1.branches[b].a_mean - rot * r0.branches[b].a_mean) <
                  1e-12 * std::max(1.0, std::abs(r0.branches[b].a_mean)));
            CHECK(std::abs(r1.branches[b].u - r0.branches[b].u) <
                  1e-12 * std::max(1.0, r0.branches[b].u));
            CHECK(std::abs(r1.branches[b].b_mean - r0.branches[b].b_mean) <
                  1e-12 * std::max(1.0, std::abs(r0.branches[b].b_mean)));
        }
    }
}

TEST_CASE("every branch satisfies the mean-field equations and the derived cubic") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const NormalizedParams p = random_params(rng);
        const double g = 0.5 * u01(rng);
        SteadyStateResult r;
        try {
            r = solve_steady_state(p, g);
        } catch (const std::domain_error&) {
            continue; // no nonnegative real root is a legitimate outcome
        }
        REQUIRE(r.branches.size() >= 1);
        REQUIRE(r.branches.size() <= 3);
        const auto cubic = derive_cubic(p, g, p.eta);
        for (const SteadyState& s : r.branches) {
            REQUIRE(s.residual < 1e-10 * std::max(1.0, p.eta));
            CHECK(s.u == std::norm(s.m_mean));
            double cv = 0.0;
            for (std::size_t k = cubic.size(); k-- > 0;) cv = cv * s.u + cubic[k];
            REQUIRE(std::abs(cv) < 1e-10 * std::max(1.0, p.eta * p.eta));
        }
        for (std::size_t b = 1; b < r.branches.size(); ++b)
            CHECK(r.branches[b - 1].u <= r.branches[b].u);
    }
}

TEST_CASE("returned branches coincide with the cubic's nonnegative real roots") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const NormalizedParams p = random_params(rng);
        const double g = 0.5 * u01(rng);
        if (p.eta == 0.0) continue;
        SteadyStateResult r;
        try {
            r = solve_steady_state(p, g);
        } catch (const std::domain_error&) {
            continue;
        }
        const auto cubic = derive_cubic(p, g, p.eta);
        std::vector<Complex> cc(cubic.begin(), cubic.end());
        while (cc.size() > 1 && cc.back() == 0.0) cc.pop_back();
        std::vector<double> expect;
        if (cc.size() == 2) {
            expect.push_back((-cc[0] / cc[1]).real());
        } else {
            for (const Complex& z : solve_iterative(ComplexPoly(cc)).roots)
                if (std::abs(z.imag()) < 1e-9 * std::max(1.0, std::abs(z)) && z.real() >= -1e-12)
                    expect.push_back(std::max(0.0, z.real()));
        }
        std::sort(expect.begin(), expect.end());
        REQUIRE(expect.size() == r.branches.size());
        for (std::size_t b = 0; b < expect.size(); ++b)
            CHECK(std::abs(expect[b] - r.branches[b].u) <
                  1e-6 * std::max(1.0, expect[b]));
    }
}

TEST_CASE("bistable regime returns three ordered branches") {
    NormalizedParams p;
    p.kappa_m = 1.0;
    p.delta_m = 0.05;
    p.delta_b = 1.0;
    p.gamma_b = 0.0;
    p.eta = std::sqrt(0.5);
    p = validate(p);
    const double g = std::sqrt(0.05); // K = -0.1
    const SteadyStateResult r = solve_steady_state(p, g);
    REQUIRE(r.branches.size() == 3);
    CHECK(r.branches[0].u < r.branches[1].u);
    CHECK(r.branches[1].u < r.branches[2].u);
    for (const SteadyState& s : r.branches)
        CHECK(s.residual < 1e-10 * std::max(1.0, p.eta));
}

TEST_CASE("steady_phonon_term=with_i moves the shift to the imaginary part") {
    NormalizedParams p = ep_point();
    p.eta = 100.0;
    ModelOptions with_i;
    with_i.steady_phonon_term = ModelOptions::PhononTerm::with_i;
    const SteadyStateResult a = solve_steady_state(p, 0.05);
    const SteadyStateResult b = solve_steady_state(p, 0.05, with_i);
    // both self-consistent under their own convention
    CHECK(a.branches.front().residual < 1e-10 * p.eta);
    CHECK(b.branches.front().residual < 1e-10 * p.eta);
    CHECK(a.branches.front().u != b.branches.front().u);
}

TEST_CASE("steady-state error paths") {
    NormalizedParams p = ep_point();
    REQUIRE_THROWS_AS(solve_steady_state(p, -0.1), std::invalid_argument);
    p.delta_b = 0.0;
    p.gamma_b = 0.0;
    p.eta = 1.0;
    REQUIRE_THROWS_AS(solve_steady_state(validate(p), 0.1), std::domain_error);
}

TEST_CASE("calibrate_drive: zero target is zero drive") {
    const CalibrationResult c = calibrate_drive(ep_point(), 0.01, 0.0);
    CHECK(c.eta == 0.0);
    CHECK_FALSE(c.multistable);
}

TEST_CASE("calibrate_drive: linear regime doubles with the target") {
    NormalizedParams p;
    p.g_ma = 0.3;
    p = validate(p);
    const double g = 1e-6;
    const CalibrationResult c1 = calibrate_drive(p, g, 1e-5);
    const CalibrationResult c2 = calibrate_drive(p, g, 2e-5);
    CHECK_FALSE(c1.multistable);
    REQUIRE(c1.eta > 0.0);
    CHECK(std::abs(c2.eta - 2.0 * c1.eta) < 1e-6 * c2.eta);
}

TEST_CASE("calibrate_drive: reference fixture at the matched point") {
    const CalibrationResult c = calibrate_drive(ep_point(), 2e-4, 0.09);
    CHECK_THAT(c.eta, Catch::Matchers::WithinRel(1349.5325469970703, 1e-6));
    CHECK_FALSE(c.multistable);
    NormalizedParams p = ep_point();
    p.eta = c.eta;
    const SteadyStateResult r = solve_steady_state(p, 2e-4);
    REQUIRE(r.branches.size() == 1);
    CHECK_THAT(r.branches.front().g_mb_eff_out, Catch::Matchers::WithinRel(0.09, 1e-7));
    CHECK_THAT(r.branches.front().u, Catch::Matchers::WithinRel(202499.99970172852, 1e-6));
}

TEST_CASE("calibrate_drive: unreachable target reports failure") {
    REQUIRE_THROWS_AS(calibrate_drive(ep_point(), 0.0, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(calibrate_drive(ep_point(), 0.1, -1.0), std::invalid_argument);
}
