#include <catch_amalgamated.hpp>

#include <set>

#include "torsym/rng.hpp"

using namespace torsym;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        seen.insert(x);
        seen.insert(c.next_u64());
        seen.insert(d.next_u64());
    }
    CHECK(seen.size() == 300);
}

TEST_CASE("uniform and normal moments") {
    RngStream rng(1, 0);
    const int n = 200000;
    double su = 0, suu = 0, sz = 0, szz = 0, umin = 1, umax = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform_open();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        su += u;
        suu += u * u;
        const double z = rng.normal();
        sz += z;
        szz += z * z;
    }
    CHECK(umin > 0.0);
    CHECK(umax < 1.0);
    CHECK(std::abs(su / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(suu / n - 1.0 / 3) < 0.003);
    CHECK(std::abs(sz / n) < 4 / std::sqrt(double(n)));
    CHECK(std::abs(szz / n - 1.0) < 0.015);
}
