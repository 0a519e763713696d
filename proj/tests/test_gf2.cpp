#include <random>

#include "avn/gf2.hpp"
#include "doctest.h"

using namespace avn;

namespace {

bool row_satisfied(const Gf2Row& row, const std::vector<bool>& assignment) {
    bool acc = false;
    for (size_t v = 0; v < assignment.size(); ++v) {
        if (assignment[v] && ((row.mask[v / 64] >> (v % 64)) & 1u)) {
            acc = !acc;
        }
    }
    return acc == row.rhs;
}

}  // namespace

TEST_CASE("single homogeneous equation is consistent") {
    Gf2System sys;
    sys.num_vars = 1;
    sys.add_row({0}, false);
    const Gf2Result r = gf2_solve(sys);
    REQUIRE(r.consistent);
    CHECK(r.solution == std::vector<bool>{false});
}

TEST_CASE("direct contradiction yields both rows as certificate") {
    Gf2System sys;
    sys.num_vars = 2;
    sys.add_row({0, 1}, false);
    sys.add_row({0, 1}, true);
    const Gf2Result r = gf2_solve(sys);
    REQUIRE_FALSE(r.consistent);
    CHECK(r.certificate == std::vector<uint32_t>{0, 1});
    CHECK(gf2_certificate_sound(sys, r.certificate));
}

TEST_CASE("the four no-signalling box equations refute with all four rows") {
    // a1+b1=0, a1+b2=0, a2+b1=0, a2+b2=1 over (a1,a2,b1,b2).
    Gf2System sys;
    sys.num_vars = 4;
    sys.add_row({0, 2}, false);
    sys.add_row({0, 3}, false);
    sys.add_row({1, 2}, false);
    sys.add_row({1, 3}, true);
    const Gf2Result r = gf2_solve(sys);
    REQUIRE_FALSE(r.consistent);
    CHECK(r.certificate == std::vector<uint32_t>{0, 1, 2, 3});
    CHECK(gf2_certificate_sound(sys, r.certificate));
}

TEST_CASE("empty system is consistent") {
    Gf2System sys;
    sys.num_vars = 3;
    const Gf2Result r = gf2_solve(sys);
    REQUIRE(r.consistent);
    CHECK(r.solution.size() == 3);
}

TEST_CASE("random systems: solutions satisfy rows, certificates re-sum to 0=1") {
    std::mt19937_64 rng(77);
    int inconsistent_seen = 0;
    for (int it = 0; it < 400; ++it) {
        Gf2System sys;
        sys.num_vars = 1 + uint32_t(rng() % 10);
        const int rows = 1 + int(rng() % 16);
        for (int i = 0; i < rows; ++i) {
            std::vector<uint32_t> support;
            for (uint32_t v = 0; v < sys.num_vars; ++v) {
                if (rng() & 1u) {
                    support.push_back(v);
                }
            }
            sys.add_row(support, rng() & 1u);
        }
        const Gf2Result r = gf2_solve(sys);
        if (r.consistent) {
            for (const auto& row : sys.rows) {
                CHECK(row_satisfied(row, r.solution));
            }
        } else {
            ++inconsistent_seen;
            CHECK(gf2_certificate_sound(sys, r.certificate));
            CHECK_FALSE(r.certificate.empty());
        }
    }
    CHECK(inconsistent_seen > 0);
}

TEST_CASE("wide systems (more than 64 variables) work across word boundaries") {
    Gf2System sys;
    sys.num_vars = 130;
    sys.add_row({0, 129}, true);
    sys.add_row({129}, false);
    sys.add_row({0}, false);
    const Gf2Result r = gf2_solve(sys);
    REQUIRE_FALSE(r.consistent);
    CHECK(r.certificate == std::vector<uint32_t>{0, 1, 2});
}

TEST_CASE("streaming eliminator exposes rank and accepts spans") {
    Gf2Eliminator elim(4);
    const uint64_t row1 = 0b0011;
    const uint64_t row2 = 0b0110;
    const uint64_t row3 = 0b0101;  // dependent on the first two
    CHECK_FALSE(elim.add_row(std::span<const uint64_t>(&row1, 1), false));
    CHECK_FALSE(elim.add_row(std::span<const uint64_t>(&row2, 1), true));
    CHECK_FALSE(elim.add_row(std::span<const uint64_t>(&row3, 1), true));
    CHECK(elim.rank() == 2);
    CHECK_FALSE(elim.inconsistent());
    // Same dependent row with flipped rhs contradicts.
    CHECK(elim.add_row(std::span<const uint64_t>(&row3, 1), false));
    REQUIRE(elim.inconsistent());
    CHECK(*elim.certificate() == std::vector<uint32_t>{0, 1, 3});
}
