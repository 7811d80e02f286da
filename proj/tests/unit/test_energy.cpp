#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "nharm/energy.hpp"

using namespace nharm;

namespace {
const Dimension n3(3), n4(4);
const auto one = RadialMetric::constant();

double power_energy(int n, double alpha, double R) {
    return sphere_area(n - 1) * pow_half(alpha * alpha + n - 1.0, n) * std::log(R);
}
}  // namespace

TEST_CASE("radial energy closed forms") {
    // identity profile, n=3, R=2: omega_2 3^{3/2} (R^3-1)/3 = 28 sqrt(3) pi
    const double E = radial_energy([](double t) { return t; }, [](double) { return 1.0; }, 2.0,
                                   one, n3);
    CHECK(E == doctest::Approx(28.0 * std::sqrt(3.0) * M_PI).epsilon(1e-9));

    // power family: rho = s^{-n}, H = t^alpha
    const double alpha = 1.7;
    const double Ep = radial_energy([&](double t) { return std::pow(t, alpha); },
                                    [&](double t) { return alpha * std::pow(t, alpha - 1.0); },
                                    2.0, RadialMetric::power(-3.0), n3);
    CHECK(Ep == doctest::Approx(power_energy(3, alpha, 2.0)).epsilon(1e-9));

    // vanishing domain
    const double Ev = radial_energy([](double t) { return t; }, [](double) { return 1.0; },
                                    1.0 + 1e-9, one, n4);
    CHECK(Ev <= 1e-7);

    CHECK_THROWS_AS(radial_energy([](double t) { return 3.0 - t; },
                                  [](double) { return -1.0; }, 2.0, one, n3),
                    std::domain_error);
}

TEST_CASE("two parameterizations of the solved energy agree") {
    for (double c : {-5.0, -0.5, 0.0, 0.5, 0.9}) {
        const auto sol = solve_profile(c, 2.0, one, n3, 512);
        const double a = radial_energy(sol);
        const double b = minimizer_energy(sol);
        CAPTURE(c);
        CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
    }
}

TEST_CASE("lower bound: branch agreement at c = 0 and identity energy") {
    // both branches reduce to n^{n/2} omega int tau^{n-1} rho dtau at c = 0,
    // and that equals the identity-map energy when R = R_star
    const auto rep = lower_bound(0.0, 2.0, 2.0, one, n3);
    const double direct = sphere_area(2) * pow_half(3.0, 3) * (std::pow(2.0, 3.0) - 1.0) / 3.0;
    CHECK(rep.lower_bound == doctest::Approx(direct).epsilon(1e-9));
    CHECK(rep.modulus_term == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    const double E_id = radial_energy([](double t) { return t; }, [](double) { return 1.0; },
                                      2.0, one, n3);
    CHECK(rep.lower_bound == doctest::Approx(E_id).epsilon(1e-9));
}

TEST_CASE("sharpness: the bound is attained by the solved radial map") {
    const auto pw3 = RadialMetric::power(-3.0);
    const auto pw4 = RadialMetric::power(-4.0);
    struct Case {
        const RadialMetric* rho;
        Dimension n;
    } cases[] = {{&one, n3}, {&one, n4}, {&pw3, n3}, {&pw4, n4}};
    for (const auto& cs : cases) {
        for (double c : {-5.0, -1.0, -0.1, 0.0, 0.1, 0.5, 0.9}) {
            const auto sol = solve_profile(c, 2.0, *cs.rho, cs.n, 512);
            const auto rep = energy_report(sol);
            CAPTURE(c);
            CAPTURE(cs.n.value());
            CHECK(std::abs(rep.total - rep.lower_bound) <= 1e-6 * std::abs(rep.total));
            CHECK(rep.branch == (c >= 0 ? BoundBranch::NonNegativeC : BoundBranch::NonPositiveC));
        }
    }
}

TEST_CASE("competitor profiles with the same boundary data sit above the bound") {
    const auto cc = solve_c(2.0, 3.0, one, n3);
    const auto rep = lower_bound(cc.c, 2.0, 3.0, one, n3);
    const double logR = std::log(2.0), logRs = std::log(3.0);

    for (double beta : {0.6, 0.8, 1.1, 1.4, 1.9}) {
        // log H = log R_star * (log t / log R)^beta : same boundary values
        auto H = [&](double t) { return std::exp(logRs * std::pow(std::log(t) / logR, beta)); };
        auto Hd = [&](double t) {
            const double x = std::log(t);
            if (x <= 0.0) return beta >= 1.0 ? (beta == 1.0 ? logRs / logR : 0.0) : 1e300;
            return H(t) * logRs * beta * std::pow(x / logR, beta - 1.0) / (logR * t);
        };
        const double E = radial_energy(H, Hd, 2.0, one, n3);
        CAPTURE(beta);
        CHECK(E >= rep.lower_bound * (1.0 - 1e-9));
        if (beta != 1.0) CHECK(E > rep.lower_bound);
    }

    // boundary-preserving sine bump on the solved profile
    const auto sol = solve_profile(cc.c, 3.0, one, n3, 512);
    for (double amp : {0.05, -0.08, 0.15}) {
        auto H = [&](double t) {
            return sol.eval(t) * std::exp(amp * std::sin(M_PI * std::log(t) / logR));
        };
        auto Hd = [&](double t) {
            const double bump = amp * std::sin(M_PI * std::log(t) / logR);
            const double dbump = amp * std::cos(M_PI * std::log(t) / logR) * M_PI / (logR * t);
            return std::exp(bump) * (sol.deriv(t) + sol.eval(t) * dbump);
        };
        const double E = radial_energy(H, Hd, sol.R(), one, n3);
        CAPTURE(amp);
        CHECK(E > rep.lower_bound);
    }
}

TEST_CASE("boundary-data integrals against closed forms") {
    SUBCASE("identity map: normal integral equals the image modulus") {
        const auto sol = solve_profile(0.0, 2.0, one, n3, 256);
        const auto fl = free_lagrangians_radial(sol);
        CHECK(fl.normal == doctest::Approx(4 * M_PI * std::log(2.0)).epsilon(1e-9));
    }
    SUBCASE("solved cases: all three equalities") {
        for (double c : {-3.0, 0.4}) {
            const auto sol = solve_profile(c, 2.0, one, n4, 512);
            const auto fl = free_lagrangians_radial(sol);
            CAPTURE(c);
            CHECK(std::abs(fl.weighted - fl.weighted_ref) <= 1e-8 * std::abs(fl.weighted_ref));
            CHECK(std::abs(fl.normal - fl.normal_ref) <= 1e-8 * std::abs(fl.normal_ref));
            CHECK(std::abs(fl.tangential - fl.tangential_ref) <=
                  1e-8 * std::abs(fl.tangential_ref));
        }
    }
    SUBCASE("custom weight") {
        const auto sol = solve_profile(-1.0, 2.0, one, n3, 256);
        const auto fl = free_lagrangians_radial(
            sol, std::make_optional<ProfileFn>([](double tau) { return 1.0 / tau; }));
        // int_1^{R*} tau^{n-2} dtau with n=3
        CHECK(fl.weighted_ref ==
              doctest::Approx(4 * M_PI * (2.0 * 2.0 - 1.0) / 2.0).epsilon(1e-10));
        CHECK(std::abs(fl.weighted - fl.weighted_ref) <= 1e-8 * fl.weighted_ref);
    }
}

TEST_CASE("inner distortion of radial inverse maps") {
    CHECK(radial_inner_distortion(1.0, 1.0, 1.0, n3) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(radial_inner_distortion(2.4, 1.0, 2.4, n4) == doctest::Approx(1.0).epsilon(1e-14));
    // F(s) = s^2 at s = 1: stretches (2, 1, 1)
    CHECK(radial_inner_distortion(1.0, 2.0, 1.0, n3) ==
          doctest::Approx(27.0 / (std::pow(3.0, 1.5) * 4.0)).epsilon(1e-13));
    CHECK_THROWS_AS(radial_inner_distortion(1.0, 0.0, 1.0, n3), std::domain_error);
}

TEST_CASE("distortion identity: inverse-map distortion integral equals the energy") {
    const auto pw = RadialMetric::power(-3.0);
    struct Case {
        double c;
        const RadialMetric* rho;
        Dimension n;
        double r_star;
    } cases[] = {{-3.0, &one, n3, 2.0}, {0.5, &one, n3, 2.0}, {phi(4.0, n3), &pw, n3, 4.0},
                 {-1.0, &one, n4, 2.5}};
    for (const auto& cs : cases) {
        const auto sol = solve_profile(cs.c, cs.r_star, *cs.rho, cs.n, 512);
        const double E = radial_energy(sol);
        const double D = distortion_energy(sol);
        CAPTURE(cs.c);
        CHECK(std::abs(E - D) <= 1e-6 * std::abs(E));
    }
}

TEST_CASE("energy is invariant under sphere inversion of the image") {
    SUBCASE("identity profile closed form") {
        const auto sol = solve_profile(0.0, 2.0, one, n3, 256);
        const auto pair = inversion_energy_check(sol);
        const double closed = sphere_area(2) * pow_half(3.0, 3) * (std::pow(2.0, 3) - 1.0) / 3.0;
        CHECK(pair.original == doctest::Approx(closed).epsilon(1e-9));
        CHECK(std::abs(pair.original - pair.inverted) <= 1e-8 * pair.original);
    }
    SUBCASE("power family closed form on both sides") {
        const auto pw = RadialMetric::power(-3.0);
        const double c = phi(4.0, n3);
        const auto sol = solve_profile(c, 4.0, pw, n3, 512);
        const auto pair = inversion_energy_check(sol);
        CHECK(pair.original ==
              doctest::Approx(sphere_area(2) * pow_half(4.0 + 2.0, 3) * std::log(2.0))
                  .epsilon(1e-8));
        CHECK(std::abs(pair.original - pair.inverted) <= 1e-8 * pair.original);
    }
    SUBCASE("generic solved cases") {
        for (double c : {-4.0, 0.7}) {
            const auto sol = solve_profile(c, 2.0, one, n4, 512);
            const auto pair = inversion_energy_check(sol);
            CAPTURE(c);
            CHECK(std::abs(pair.original - pair.inverted) <= 1e-8 * pair.original);
        }
    }
}

TEST_CASE("energy scaling under image dilation for the unweighted case") {
    // rho = 1: H -> lambda H multiplies the energy by lambda^n
    const double lam = 1.7;
    auto H = [](double t) { return std::pow(t, 1.2); };
    auto Hd = [](double t) { return 1.2 * std::pow(t, 0.2); };
    const double E1 = radial_energy(H, Hd, 2.0, one, n3);
    const double E2 = radial_energy([&](double t) { return lam * H(t); },
                                    [&](double t) { return lam * Hd(t); }, 2.0, one, n3);
    CHECK(E2 == doctest::Approx(std::pow(lam, 3.0) * E1).epsilon(1e-9));
}
