#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracgreen/mittag_leffler.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace fracgreen;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("reciprocal gamma: exact zeros at nonpositive integers, known values") {
    CHECK(reciprocal_gamma(0.0) == 0.0);
    CHECK(reciprocal_gamma(-1.0) == 0.0);
    CHECK(reciprocal_gamma(-7.0) == 0.0);
    CHECK(reciprocal_gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(reciprocal_gamma(0.5) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
    CHECK(reciprocal_gamma(5.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
    CHECK(reciprocal_gamma(-0.5) == doctest::Approx(1.0 / (-2.0 * std::sqrt(kPi))).epsilon(1e-13));
    // deep negative arguments stay finite and alternate in sign
    CHECK(std::isfinite(reciprocal_gamma(-33.7)));
}

TEST_CASE("sin_pi has exact integer zeros") {
    CHECK(sin_pi(3.0) == 0.0);
    CHECK(sin_pi(-11.0) == 0.0);
    CHECK(sin_pi(0.5) == doctest::Approx(1.0));
    CHECK(sin_pi(1.5) == doctest::Approx(-1.0));
    CHECK(sin_pi(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("defining-series specials") {
    CHECK(ml_eval(1.0, 1.0, -1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(std::fabs(ml_eval(2.0, 2.0, -kPi * kPi)) < 1e-15); // sin(pi)/pi
    CHECK(ml_eval(0.5, 0.5, 0.0) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("frozen high-precision references across all regimes") {
    struct Ref {
        double a, b, z, v;
    };
    // computed from the defining series at 80..600 digits
    const Ref refs[] = {
        {0.5, 0.5, -5, 0.010666394882413155},
        {0.5, 0.5, -1.3, 0.09925411373583887},
        {0.5, 0.5, -14, 0.0014283824446978567},
        {0.5, 0.5, -30, 0.00031291770525374203},
        {0.7, 0.7, -8, 0.0044010656431003355},
        {0.8, 0.8, -6, 0.0075850816585624113},
        {0.9, 0.9, -25, 0.00017468551917377772},
        {0.3, 0.3, -2.5, 0.022979353936318687},
        {0.5, 1.0, -7, 0.079800054329152933},
        {1.5, 1.5, -20, 0.0061985012468613419},
        {1.5, 1.5, -3, 0.21497666776826928},
        {1.5, 1.5, -80, -8.8163476560655424e-5},
        {1.2, 1.2, -10, -0.0062756504746153919},
        {1.5, 1.5, -300, -4.6994920868398389e-6},
        {1.5, 1.0, -50, -0.004578385105839278},
        {1.9, 1.9, -40, 0.069849731101941372},
    };
    for (const auto& r : refs) {
        CAPTURE(r.a);
        CAPTURE(r.z);
        CHECK(ml_eval(r.a, r.b, r.z) == doctest::Approx(r.v).epsilon(2e-9));
    }
}

TEST_CASE("E_{1,1} matches exp to 1e-12 on [-30, 0]") {
    for (double z = -30.0; z <= 0.0; z += 0.25)
        CHECK(std::fabs(ml_eval(1.0, 1.0, z) - std::exp(z)) < 1e-12);
}

TEST_CASE("E_{2,2}(-x^2) x matches sin x to 1e-10 on (0, 10]") {
    for (double x = 0.05; x <= 10.0; x += 0.05)
        CHECK(std::fabs(ml_eval(2.0, 2.0, -x * x) * x - std::sin(x)) < 1e-10);
}

TEST_CASE("series/asymptotic regimes agree across the crossover") {
    // radius pushed so each forced regime covers the probe points; the
    // regimes are independent computations of the same function
    struct Band {
        double alpha;
        double zs[3];
        double tol;
    };
    const Band bands[] = {
        {0.5, {-4.0, -4.4, -4.8}, 1e-5},
        {0.8, {-8.0, -9.5, -11.0}, 1e-6},
        {1.0, {-9.0, -11.0, -13.0}, 1e-6},
    };
    for (const auto& b : bands) {
        for (double z : b.zs) {
            CAPTURE(b.alpha);
            CAPTURE(z);
            MlRegimeConfig ser;
            ser.series_radius = 50.0;
            ser.target_abs_tol = b.tol;
            ser.force = MlRegimeConfig::Force::Series;
            MlRegimeConfig asy;
            asy.series_radius = 1.0;
            asy.asymptotic_terms = 40;
            asy.target_abs_tol = b.tol;
            asy.force = MlRegimeConfig::Force::Asymptotic;
            const double vs = ml_eval(b.alpha, b.alpha, z, ser);
            const double va = ml_eval(b.alpha, b.alpha, z, asy);
            CHECK(std::fabs(vs - va) <= 10.0 * b.tol);
        }
    }
}

TEST_CASE("y_density examples") {
    // alpha = 1: exponential density
    CHECK(y_density(1.0, 2.0, 1.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-13));
    // small-t blowup: t^{1/2} y_density -> 1/Gamma(1/2)
    const double t = 1e-12;
    CHECK(std::sqrt(t) * y_density(0.5, 1.0, t) ==
          doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-5));
    CHECK_THROWS_AS(y_density(0.5, 1.0, 0.0), OutOfDomainError);
    CHECK_THROWS_AS(y_density(0.5, -1.0, 1.0), OutOfDomainError);
}

TEST_CASE("y_density integrates to one (quadrature oracle + algebraic tail)") {
    const double alpha = 0.5, c = 1.0;
    const double T = 200.0;
    // substituted u = sqrt(t): integrand 2 u^{2 alpha - 1} ... is smooth at 0
    auto f = [&](double u) { return 2.0 * u * y_density(alpha, c, u * u); };
    const double head = oracle::simpson(f, 1e-9, std::sqrt(T), 1e-10);
    // tail sum_{k>=2} (-1)^{k+1} c^{1-k} T^{alpha(1-k)} / (alpha (k-1) Gamma(alpha(1-k)))
    double tail = 0.0;
    for (int k = 2; k <= 10; ++k) {
        const double g = alpha * (1.0 - k);
        if (g == std::floor(g)) continue; // reciprocal-Gamma zero
        tail += ((k % 2 == 0) ? -1.0 : 1.0) * std::pow(c, 1.0 - k) * std::pow(T, g) /
                (alpha * (k - 1.0) * std::tgamma(g));
    }
    CHECK(head + tail == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("y_survival matches one minus the quadrature mass") {
    const double alpha = 0.5, c = 1.0, T = 5.0;
    auto f = [&](double u) { return 2.0 * u * y_density(alpha, c, u * u); };
    const double mass = oracle::simpson(f, 1e-9, std::sqrt(T), 1e-11);
    CHECK(y_survival(alpha, c, T) == doctest::Approx(1.0 - mass).epsilon(1e-7));
    CHECK(y_survival(alpha, c, 0.0) == 1.0);
}

TEST_CASE("Laplace identity: int e^{-nt} y_density = c/(c+n^alpha)") {
    for (double alpha : {0.5, 1.5}) {
        for (int n = 1; n <= 3; ++n) {
            const double c = 1.0;
            auto f = [&](double u) {
                const double t = u * u;
                return 2.0 * u * std::exp(-n * t) * y_density(alpha, c, t);
            };
            const double upper = std::sqrt(80.0 / n);
            const double val = oracle::simpson(f, 1e-9, upper, 1e-11);
            CAPTURE(alpha);
            CAPTURE(n);
            CHECK(val == doctest::Approx(c / (c + std::pow(n, alpha))).epsilon(1e-7));
        }
    }
}

TEST_CASE("domain and tolerance failures are typed") {
    CHECK_THROWS_AS(ml_eval(0.0, 1.0, -1.0), OutOfDomainError);
    CHECK_THROWS_AS(ml_eval(2.5, 1.0, -1.0), OutOfDomainError);
    CHECK_THROWS_AS(ml_eval(1.0, 0.0, -1.0), OutOfDomainError);
    CHECK_THROWS_AS(ml_eval(0.5, 0.5, 11.0), OutOfDomainError); // positive large z

    MlRegimeConfig bad;
    bad.series_radius = -1.0;
    CHECK_THROWS_AS(ml_eval(0.5, 0.5, -1.0, bad), OutOfDomainError);
    bad = {};
    bad.asymptotic_terms = 1;
    CHECK_THROWS_AS(ml_eval(0.5, 0.5, -1.0, bad), OutOfDomainError);

    // forced series in its cancellation-dominated region cannot certify
    MlRegimeConfig f;
    f.series_radius = 50.0;
    f.target_abs_tol = 1e-10;
    f.force = MlRegimeConfig::Force::Series;
    CHECK_THROWS_AS(ml_eval(0.5, 0.5, -8.0, f), ToleranceError);
}

TEST_CASE("positive arguments inside the series radius work") {
    CHECK(ml_eval(1.0, 2.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(ml_eval(2.0, 1.0, 4.0) == doctest::Approx(std::cosh(2.0)).epsilon(1e-12));
    MlRegimeConfig f;
    f.force = MlRegimeConfig::Force::Series;
    CHECK(ml_eval(0.5, 0.5, 2.0, f) ==
          doctest::Approx(ml_eval(0.5, 0.5, 2.0)).epsilon(1e-10));
}
