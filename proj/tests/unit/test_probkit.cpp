#include <cmath>
#include <vector>

#include "../oracles.hpp"
#include "doctest.h"
#include "secbc/probkit.hpp"
#include "secbc/rng.hpp"

using namespace secbc;
using doctest::Approx;

TEST_CASE("entropy of small pmfs") {
    CHECK(entropy(Pmf({0.5, 0.5})) == Approx(1.0).epsilon(1e-15));
    CHECK(entropy(Pmf({1.0, 0.0})) == 0.0);
    CHECK(entropy(Pmf({0.1, 0.9})) == Approx(0.46900).epsilon(1e-5));
    CHECK(entropy(Pmf({0.1, 0.9})) == Approx(oracle::h2(0.1)).epsilon(1e-14));
}

TEST_CASE("mutual information examples") {
    JointPmf same({{"X", 2}, {"Y", 2}}, {0.5, 0, 0, 0.5});
    CHECK(mutual_info(same, {"X"}, {"Y"}) == Approx(1.0).epsilon(1e-14));

    JointPmf indep({{"X", 2}, {"Y", 3}}, {0.3 * 0.2, 0.3 * 0.5, 0.3 * 0.3, 0.7 * 0.2, 0.7 * 0.5, 0.7 * 0.3});
    CHECK(std::fabs(mutual_info(indep, {"X"}, {"Y"})) < 1e-15);

    CondPmf bsc({{"X", 2}}, {{"Y", 2}}, {0.9, 0.1, 0.1, 0.9});
    auto j = compose(Pmf::uniform(2), bsc);
    CHECK(mutual_info(j, {"X"}, {"Y"}) == Approx(0.53100).epsilon(1e-5));
    CHECK(mutual_info(j, {"X"}, {"Y"}) == Approx(1.0 - oracle::h2(0.1)).epsilon(1e-14));
}

TEST_CASE("kl divergence") {
    CHECK(kl_divergence(Pmf({0.3, 0.7}), Pmf({0.3, 0.7})) == 0.0);
    CHECK(kl_divergence(Pmf({1.0, 0.0}), Pmf({0.5, 0.5})) == Approx(1.0));
    CHECK(std::isinf(kl_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}))));
}

TEST_CASE("total variation") {
    CHECK(tv_distance(Pmf({0.2, 0.8}), Pmf({0.2, 0.8})) == 0.0);
    CHECK(tv_distance(Pmf({1.0, 0.0}), Pmf({0.0, 1.0})) == Approx(1.0));
    CHECK(tv_distance(Pmf({0.7, 0.3}), Pmf({0.5, 0.5})) == Approx(0.2));
}

TEST_CASE("letter typicality") {
    std::vector<std::size_t> alt{0, 1, 0, 1}, zeros{0, 0, 0, 0};
    CHECK(is_letter_typical(alt, Pmf({0.5, 0.5}), {0.0}));
    CHECK_FALSE(is_letter_typical(zeros, Pmf({0.5, 0.5}), {0.5}));
    std::vector<std::size_t> bad{0, 2, 1};
    CHECK_FALSE(is_letter_typical(bad, Pmf({0.5, 0.5, 0.0}), {10.0}));
}

TEST_CASE("marginals, products and composition") {
    JointPmf pq({{"A", 2}, {"B", 2}}, {0.3 * 0.6, 0.3 * 0.4, 0.7 * 0.6, 0.7 * 0.4});
    auto m = marginalize(pq, {"A"}).probs();
    CHECK(m[0] == Approx(0.3));
    CHECK(m[1] == Approx(0.7));

    auto u = product_extend(Pmf::uniform(2), 2);
    REQUIRE(u.cells() == 4);
    for (double v : u.probs()) CHECK(v == Approx(0.25));
    CHECK(u.axes()[0].name == "X_1");
    CHECK(u.axes()[1].name == "X_2");

    CondPmf bsc({{"X", 2}}, {{"Y", 2}}, {0.9, 0.1, 0.1, 0.9});
    auto j = compose(Pmf::uniform(2), bsc);
    CHECK(j.at({0, 1}) == Approx(0.05));
}

TEST_CASE("product extension of a channel matches letterwise products") {
    CondPmf ch({{"X", 2}}, {{"Y", 3}}, {0.5, 0.3, 0.2, 0.1, 0.1, 0.8});
    auto ch2 = product_extend(ch, 2);
    REQUIRE(ch2.from_cells() == 4);
    REQUIRE(ch2.to_cells() == 9);
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 9; ++y)
            CHECK(ch2.at(x, y) == Approx(ch.at(x / 2, y / 3) * ch.at(x % 2, y % 3)).epsilon(1e-15));
}

TEST_CASE("conditional mutual information agrees with a brute-force evaluator") {
    CounterRng rng(5, Domain::test);
    for (int t = 0; t < 20; ++t) {
        oracle::Table tab{{2, 3, 2}, oracle::random_simplex(rng, 12, true)};
        JointPmf j({{"A", 2}, {"B", 3}, {"C", 2}}, tab.p, 1e-9);
        CHECK(mutual_info(j, {"A"}, {"B"}, {"C"}) == Approx(tab.mi({0}, {1}, {2})).epsilon(1e-12));
        CHECK(mutual_info(j, {"A", "C"}, {"B"}) == Approx(tab.mi({0, 2}, {1})).epsilon(1e-12));
        CHECK(cond_entropy(j, {"B"}, {"A"}) == Approx(tab.h({0, 1}) - tab.h({0})).epsilon(1e-12));
    }
}

TEST_CASE("invalid inputs carry error codes") {
    auto code = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::ok;
    };
    CHECK(code([] { Pmf({0.5, 0.6}); }) == Errc::invalid_argument);
    CHECK(code([] { Pmf({-0.1, 1.1}); }) == Errc::invalid_argument);
    CHECK(code([] { JointPmf({{"A", 2}, {"A", 2}}, {0.25, 0.25, 0.25, 0.25}); }) == Errc::invalid_argument);
    CHECK(code([] { checked_cells({1u << 13, 1u << 13}, "test"); }) == Errc::resource);
}

TEST_CASE("philox known answers") {
    // Random123 reference vectors for philox4x32-10.
    auto a = philox::block({0, 0, 0, 0}, {0, 0});
    CHECK(a == philox::Ctr{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    auto b = philox::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    CHECK(b == philox::Ctr{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    auto c = philox::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    CHECK(c == philox::Ctr{0xd16cfe09u, 0x94fdcceb, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("counter rng streams are addressable") {
    CounterRng a(42, Domain::test, 1, 2, 3), b(42, Domain::test, 1, 2, 3), c(42, Domain::test, 1, 2, 4);
    for (int k = 0; k < 100; ++k) {
        auto x = a.next_u64();
        CHECK(x == b.next_u64());
        CHECK(x != c.next_u64());
    }
    CounterRng u(7, Domain::test);
    double s = 0;
    for (int k = 0; k < 20000; ++k) {
        double v = u.uniform();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
        s += v;
    }
    CHECK(s / 20000 == Approx(0.5).epsilon(0.02));
}
