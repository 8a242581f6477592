#include "catch_amalgamated.hpp"

#include <numbers>
#include <random>

#include "magnomech/config.hpp"
#include "magnomech/params.hpp"

using namespace magnomech;
using Catch::Matchers::ContainsSubstring;

namespace {
constexpr double pi = std::numbers::pi;

NormalizedParams fig2_set() {
    NormalizedParams p;
    p.kappa_a = 0.08;
    p.kappa_m = 0.08;
    p.g_mb_eff = 0.09;
    p.gamma_b = 0.001;
    p.gamma_nh = 1.0; // Gamma/omega_b = 1 with omega_b_ratio = 1
    p.theta = pi / 2.0;
    return p;
}
} // namespace

TEST_CASE("validate accepts the reference parameter set") {
    const NormalizedParams p = validate(fig2_set());
    CHECK(p.kappa_a == 0.08);
    CHECK(p.theta == pi / 2.0);
}

TEST_CASE("validate names the violated invariant") {
    NormalizedParams p = fig2_set();
    p.kappa_a = -0.01;
    REQUIRE_THROWS_WITH(validate(p), ContainsSubstring("negative decay: kappa_a"));

    p = fig2_set();
    p.g_ma = -1.0;
    REQUIRE_THROWS_WITH(validate(p), ContainsSubstring("negative coupling: g_ma"));

    p = fig2_set();
    p.delta_a = 2.0;
    REQUIRE_THROWS_WITH(validate(p), ContainsSubstring("delta_a"));

    p = fig2_set();
    p.omega_b_ratio = 0.0;
    REQUIRE_THROWS_AS(validate(p), std::invalid_argument);

    p = fig2_set();
    p.delta_m = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_WITH(validate(p), ContainsSubstring("non-finite"));
}

TEST_CASE("validate reduces theta mod 2*pi") {
    NormalizedParams p = fig2_set();
    p.theta = 5.0 * pi / 2.0;
    const NormalizedParams v = validate(p);
    CHECK(std::abs(v.theta - pi / 2.0) < 1e-12);

    p.theta = -pi / 2.0;
    CHECK(std::abs(validate(p).theta - 3.0 * pi / 2.0) < 1e-12);
}

TEST_CASE("validate is idempotent") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        NormalizedParams p;
        p.delta_m = u(rng) - 5.0;
        p.delta_b = u(rng) - 5.0;
        p.kappa_a = u(rng);
        p.kappa_m = u(rng);
        p.gamma_b = u(rng);
        p.g_ma = u(rng);
        p.g_mb_eff = u(rng);
        p.gamma_nh = u(rng);
        p.eta = u(rng);
        p.omega_b_ratio = u(rng) + 0.1;
        p.theta = u(rng) * 4.0 - 20.0;
        const NormalizedParams once = validate(p);
        const NormalizedParams twice = validate(once);
        for (const auto& f : normalized_fields) REQUIRE(once.*(f.member) == twice.*(f.member));
    }
}

TEST_CASE("field access by name") {
    NormalizedParams p;
    set_field(p, "g_ma", 1.25);
    CHECK(get_field(p, "g_ma") == 1.25);
    REQUIRE_THROWS_AS(set_field(p, "no_such_field", 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(get_field(p, "G_ma"), std::invalid_argument);
}

TEST_CASE("physical conversion: zero drive power gives zero eta") {
    PhysicalParams p;
    p.drive_power = 0.0;
    const NormalizedParams n = physical_to_normalized(validate(p), 1e-12, 5e-13);
    CHECK(n.eta == 0.0);
}

TEST_CASE("physical conversion: doubling the cavity length halves both couplings") {
    PhysicalParams p;
    p.traveling_amplitude = 1e8;
    const NormalizedParams n1 = physical_to_normalized(validate(p), 1e-12, 5e-13);
    p.cavity_length *= 2.0;
    const NormalizedParams n2 = physical_to_normalized(validate(p), 1e-12, 5e-13);
    CHECK(std::abs(n2.g_ma - n1.g_ma / 2.0) < 1e-15 * std::abs(n1.g_ma));
    CHECK(std::abs(n2.g_mb_eff - n1.g_mb_eff / 2.0) < 1e-15 * std::abs(n1.g_mb_eff));
    CHECK(n2.delta_m == n1.delta_m);
    CHECK(n2.kappa_a == n1.kappa_a);
    CHECK(n2.gamma_nh == n1.gamma_nh);
    CHECK(n2.eta == n1.eta);
}

TEST_CASE("physical conversion regression fixture") {
    // Reference lab-frame set evaluated independently (same formulas, separate
    // arithmetic); the drive sits far above the modes, so the normalized rates
    // come out negative and the set is deliberately not re-validated.
    PhysicalParams p; // defaults carry the reference numbers
    p.traveling_amplitude = 1e8;
    const NormalizedParams n = physical_to_normalized(validate(p), 1e-12, 5e-13);

    const auto close = [](double got, double want) {
        return std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want));
    };
    CHECK(close(n.delta_m, 1.0));
    CHECK(close(n.delta_b, 0.9999210505539621));
    CHECK(close(n.kappa_a, -7.894944603805363e-09));
    CHECK(close(n.kappa_m, -3.947472301902681e-09));
    CHECK(close(n.gamma_b, -2.6316482012684543e-13));
    CHECK(close(n.g_ma, -8.625136275175956e-19));
    CHECK(close(n.g_mb_eff, -6.098892348834998e-19));
    CHECK(close(n.gamma_nh, -1.715916341294339e-24));
    CHECK(close(n.omega_b_ratio, -0.00010526592805073818));
    CHECK(close(n.eta, -1.0377330269070243e-05));
    CHECK(n.delta_a == 1.0);
}

TEST_CASE("physical conversion is scale consistent") {
    // Scaling every rate by c (masses by 1/c, power by c^2, traveling
    // amplitude by c) leaves the dimensionless set unchanged.
    const double c = 3.7;
    PhysicalParams p;
    p.traveling_amplitude = 1e8;
    const NormalizedParams n1 = physical_to_normalized(validate(p), 1e-12, 5e-13);

    PhysicalParams q = p;
    q.omega_a *= c;
    q.omega_m *= c;
    q.omega_b *= c;
    q.omega_0 *= c;
    q.kappa_a *= c;
    q.kappa_m *= c;
    q.gamma_b *= c;
    q.drive_power *= c * c;
    q.traveling_amplitude *= c;
    const NormalizedParams n2 = physical_to_normalized(validate(q), 1e-12 / c, 5e-13 / c);

    for (const auto& f : normalized_fields) {
        const double a = n1.*(f.member);
        const double b = n2.*(f.member);
        REQUIRE(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("physical conversion rejects a resonant drive") {
    PhysicalParams p;
    p.omega_0 = p.omega_a;
    REQUIRE_THROWS_AS(physical_to_normalized(validate(p), 1e-12, 5e-13), std::domain_error);
}

TEST_CASE("config: normalized key=value file") {
    const Config cfg = parse_config_string(
        "# reference set\n"
        "kappa_a = 0.08\n"
        "kappa_m = 0.08\n"
        "g_mb_eff = 0.09  # effective coupling\n"
        "gamma_b = 0.001\n"
        "gamma_nh = 1.0\n"
        "theta = 1.5707963267948966\n"
        "dissipation_sign = -1\n"
        "steady_phonon_term = with_i\n");
    CHECK(cfg.params.g_mb_eff == 0.09);
    CHECK(cfg.params.gamma_nh == 1.0);
    CHECK(cfg.options.dissipation_sign == -1);
    CHECK(cfg.options.steady_phonon_term == ModelOptions::PhononTerm::with_i);
    CHECK_FALSE(cfg.from_physical);
}

TEST_CASE("config: unknown keys and malformed lines are errors") {
    REQUIRE_THROWS_WITH(parse_config_string("kappa_q = 0.08\n"),
                        ContainsSubstring("unknown key"));
    REQUIRE_THROWS_WITH(parse_config_string("kappa_a\n"), ContainsSubstring("key = value"));
    REQUIRE_THROWS_WITH(parse_config_string("kappa_a = fast\n"),
                        ContainsSubstring("bad numeric value"));
    REQUIRE_THROWS_WITH(parse_config_string("kappa_a = 0.1\nkappa_a = 0.2\n"),
                        ContainsSubstring("duplicate"));
    REQUIRE_THROWS_WITH(parse_config_string("dissipation_sign = 2\n"),
                        ContainsSubstring("dissipation_sign"));
}

TEST_CASE("config: physical mode converts and requires masses") {
    const std::string body =
        "omega_a = 6.283185307179586e10\n"
        "omega_m = 6.283185307179586e10\n"
        "omega_b = 2.5132741228718345e11\n"
        "omega_0 = 2.3876104167282426e15\n"
        "kappa_a = 1.8849555921538758e7\n"
        "kappa_m = 9.42477796076938e6\n"
        "gamma_b = 628.3185307179587\n"
        "cavity_length = 12.5e-4\n"
        "drive_power = 1.64e-5\n"
        "g_ma_phys = 2.7017696820872223e10\n"
        "g_mb_phys = 1.2566370614359172e7\n"
        "traveling_amplitude = 1e8\n"
        "theta = 0\n";
    REQUIRE_THROWS_WITH(parse_config_string(body), ContainsSubstring("mode_mass"));
    const Config cfg = parse_config_string(body + "mode_mass_magnon = 1e-12\n" +
                                           "mode_mass_phonon = 5e-13\n");
    CHECK(cfg.from_physical);
    CHECK(std::abs(cfg.params.omega_b_ratio - -0.00010526592805073818) < 1e-15);
}
