#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracgreen/core.hpp"

using namespace fracgreen;

TEST_CASE("validate accepts each method on its alpha range") {
    CHECK_NOTHROW(validate({0.5, 1.0}, Method::Series));
    CHECK_NOTHROW(validate({4.0, 1.0}, Method::Series));
    CHECK_NOTHROW(validate({2.5, 1.0}, Method::Series)); // zero-scan regime
    CHECK_NOTHROW(validate({2.0, 1.0}, Method::Periodized));
    CHECK_NOTHROW(validate({2.0, 1.0}, Method::MlIntegral));
    CHECK_NOTHROW(validate({2.0, 1.0}, Method::McJtp));
    CHECK_NOTHROW(validate({1.0, 1.0}, Method::McPoisson));
    CHECK_NOTHROW(validate({2.0, 1.0}, Method::ClosedForm2));
}

TEST_CASE("validate rejects out-of-region parameters") {
    CHECK_THROWS_AS(validate({2.5, 1.0}, Method::Periodized), OutOfDomainError);
    CHECK_THROWS_AS(validate({2.5, 1.0}, Method::MlIntegral), OutOfDomainError);
    CHECK_THROWS_AS(validate({1.2, 1.0}, Method::McPoisson), OutOfDomainError);
    CHECK_THROWS_AS(validate({4.1, 1.0}, Method::Series), OutOfDomainError);
    CHECK_THROWS_AS(validate({0.0, 1.0}, Method::Series), OutOfDomainError);
    CHECK_THROWS_AS(validate({1.9999, 1.0}, Method::ClosedForm2), OutOfDomainError);
    CHECK_THROWS_AS(validate({1.0, 0.0}, Method::Series), OutOfDomainError);
    CHECK_THROWS_AS(validate({1.0, -2.0}, Method::McJtp), OutOfDomainError);
}

TEST_CASE("validate is pure: repeated calls agree") {
    const KernelParams p{2.5, 1.0};
    for (int i = 0; i < 3; ++i) {
        CHECK(is_valid(p, Method::Series));
        CHECK_FALSE(is_valid(p, Method::Periodized));
    }
}

TEST_CASE("alpha = 2 detection is exact comparison") {
    CHECK(KernelParams{2.0, 1.0}.is_alpha_two());
    CHECK_FALSE(KernelParams{2.0 + 1e-9, 1.0}.is_alpha_two());
    CHECK(KernelParams{2.0, 1.0}.beta() == 1.0);
    CHECK(KernelParams{1.0, 1.0}.gamma() == doctest::Approx(0.25));
}

TEST_CASE("grids are strictly increasing inside (0, pi]") {
    const Grid g = Grid::uniform_open(17);
    CHECK(g.points.size() == 17);
    CHECK_NOTHROW(g.validate());
    CHECK(g.points.front() > 0.0);
    CHECK(g.points.back() < pi);

    const Grid gc = Grid::uniform_closed(10);
    CHECK(gc.points.back() == pi);
    CHECK_NOTHROW(gc.validate());

    Grid bad;
    bad.points = {0.5, 0.5};
    CHECK_THROWS_AS(bad.validate(), OutOfDomainError);
    bad.points = {0.0, 0.5};
    CHECK_THROWS_AS(bad.validate(), OutOfDomainError);
    bad.points = {0.5, 4.0};
    CHECK_THROWS_AS(bad.validate(), OutOfDomainError);
}

TEST_CASE("error taxonomy carries distinguishable codes") {
    CHECK(OutOfDomainError("x").code() == ErrorCode::OutOfDomain);
    CHECK(DivergentError("x").code() == ErrorCode::Divergent);
    CHECK(ToleranceError("x").code() == ErrorCode::ToleranceUnreachable);
    CHECK(InstabilityError("x").code() == ErrorCode::NumericalInstability);
}
