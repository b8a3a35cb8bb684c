#include <catch_amalgamated.hpp>

#include <cmath>

#include "torsym/angle.hpp"
#include "torsym/errors.hpp"

using namespace torsym;
using Catch::Approx;

TEST_CASE("wrap_angle maps onto [-pi, pi)") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(kPi) == Approx(-kPi));
    CHECK(wrap_angle(-kPi) == Approx(-kPi));
    CHECK(wrap_angle(3.0 * kPi / 2.0) == Approx(-kPi / 2.0));
    CHECK(wrap_angle(7.0 * kTwoPi + 0.25) == Approx(0.25).margin(1e-12));
    CHECK_THROWS_AS(wrap_angle(std::nan("")), DomainError);
    CHECK_THROWS_AS(wrap_angle(INFINITY), DomainError);
}

TEST_CASE("wrap_angle range property") {
    for (int k = -2000; k <= 2000; ++k) {
        const double x = 0.0137 * k * k - 3.1 * k;
        const double w = wrap_angle(x);
        CHECK(w >= -kPi);
        CHECK(w < kPi);
        const double turns = (x - w) / kTwoPi;
        CHECK(std::abs(turns - std::round(turns)) < 1e-9);
    }
}

TEST_CASE("parse_angle_list") {
    const auto v = parse_angle_list("0.1, -2,3");
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 0.1);
    CHECK(v[1] == -2.0);
    CHECK(v[2] == 3.0);
    CHECK_THROWS_AS(parse_angle_list("1,x"), InputError);
    CHECK_THROWS_AS(parse_angle_list(""), InputError);
}

TEST_CASE("AngleMatrix wraps on construction") {
    AngleMatrix m(2, 2, {0.0, kPi, 4.0, -4.0});
    CHECK(m(0, 1) == Approx(-kPi));
    CHECK(m(1, 0) == Approx(4.0 - kTwoPi));
    CHECK(m(1, 1) == Approx(kTwoPi - 4.0));
    m.set(0, 0, kTwoPi + 0.5);
    CHECK(m(0, 0) == Approx(0.5));
    CHECK(m.row(1).size() == 2);
}
