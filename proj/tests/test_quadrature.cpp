#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracgreen/quadrature.hpp"

#include <cmath>

using namespace fracgreen;

TEST_CASE("adaptive GK integrates smooth functions to tight tolerance") {
    auto r = quad::adaptive_gk([](double t) { return std::sin(t); }, 0.0, 3.141592653589793,
                               1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

    auto g = quad::adaptive_gk([](double t) { return std::exp(-t * t); }, -6.0, 6.0, 1e-12);
    CHECK(g.value == doctest::Approx(std::sqrt(3.141592653589793)).epsilon(1e-12));
}

TEST_CASE("adaptive GK resolves a narrow spike") {
    // Lorentzian of width 1e-4 centered mid-interval
    const double w = 1e-4;
    auto r = quad::adaptive_gk([&](double t) { return w / (w * w + (t - 0.7) * (t - 0.7)); }, 0.0,
                               2.0, 1e-10, 20000);
    // arctan(1.3/w) + arctan(0.7/w)
    const double exact = std::atan(1.3 / w) + std::atan(0.7 / w);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("tanh-sinh handles integrable endpoint singularities") {
    auto r = quad::tanh_sinh([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

    auto s = quad::tanh_sinh([](double t) { return std::log(t); }, 0.0, 1.0, 1e-12);
    CHECK(s.value == doctest::Approx(-1.0).epsilon(1e-11));

    // power singularity matching the worst t^{alpha-1} case the library uses
    auto p = quad::tanh_sinh([](double t) { return std::pow(t, -0.7); }, 0.0, 1.0, 1e-12);
    CHECK(p.value == doctest::Approx(1.0 / 0.3).epsilon(1e-10));
}

TEST_CASE("segment-doubling covers semi-infinite decaying integrands") {
    auto r = quad::integrate_decaying([](double t) { return std::exp(-t); }, 0.0, 2.0, 1e-11);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));

    // algebraic-times-exponential with a late peak at t = 20
    auto s = quad::integrate_decaying(
        [](double t) { return std::pow(t, 20.0) * std::exp(-t) / 2.43290200817664e18; }, 0.0, 4.0,
        1e-10);
    CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9)); // Gamma(21)/20!
}

TEST_CASE("error estimates are honest on these cases") {
    auto r = quad::adaptive_gk([](double t) { return std::cos(3.0 * t); }, 0.0, 2.0, 1e-12);
    const double exact = std::sin(6.0) / 3.0;
    CHECK(std::fabs(r.value - exact) <= r.error + 1e-14);
}
