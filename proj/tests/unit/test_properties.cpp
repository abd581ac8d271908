#include <cmath>
#include <vector>

#include "../invariants.hpp"
#include "../oracles.hpp"
#include "doctest.h"
#include "secbc/polytope.hpp"
#include "secbc/regions.hpp"

using namespace secbc;

namespace {

constexpr std::size_t kCases = 1000;

void expect(const invariants::SuiteResult& r) {
    INFO(r.name << ": " << r.first);
    CHECK(r.cases == kCases);
    CHECK(r.failures == 0);
}

JointPmf random_aux(CounterRng& rng, std::size_t k0, std::size_t k1, std::size_t k2, std::size_t kx) {
    return JointPmf({{"U0", k0}, {"U1", k1}, {"U2", k2}, {"X", kx}}, oracle::random_simplex(rng, k0 * k1 * k2 * kx, true),
                    1e-9);
}

}  // namespace

TEST_CASE("property: pinsker") { expect(invariants::pinsker(kCases, 1)); }
TEST_CASE("property: relative entropy chain rule") { expect(invariants::chain_rule(kCases, 1)); }
TEST_CASE("property: mutual information is nonnegative and symmetric") { expect(invariants::mi_nonnegative(kCases, 1)); }
TEST_CASE("property: induced state marginal equals the product law") {
    expect(invariants::marginal_equals_product(kCases, 1));
}
TEST_CASE("property: induced law is absolutely continuous") { expect(invariants::absolute_continuity(kCases, 1)); }
TEST_CASE("property: divergence is controlled by total variation") {
    std::size_t literal = 0;
    expect(invariants::tv_controls_divergence(kCases, 1, &literal));
    MESSAGE("pairs above the Q_min-free cap: " << literal);
}

TEST_CASE("the Q_min-free divergence cap has counterexamples") {
    // Q = (1 - d, d), P = (0, 1): TV = 1 - d while D = log2(1/d) grows without bound.
    const double d = 1e-6, tv = 1.0 - d, kl_nats = std::log(1.0 / d);
    const double cap = (std::log(2.0) + std::log(1.0 / tv)) * tv / std::log(2.0);
    CHECK(kl_nats > cap);
    CHECK(kl_nats <= std::log1p(2.0 * tv * tv / d));
}
TEST_CASE("property: seeded runs are reproducible") { expect(invariants::seed_determinism(kCases, 1)); }

TEST_CASE("property: pmf normalization") {
    for (std::size_t k = 0; k < kCases; ++k) {
        CounterRng rng(2, Domain::test, 10, static_cast<std::uint32_t>(k));
        auto j = random_aux(rng, 2, 2, 2, 3);
        double s = 0;
        for (double v : j.probs()) s += v;
        REQUIRE(std::fabs(s - 1.0) <= 1e-12);
        auto m = j.marginal({"X", "U1"});
        s = 0;
        for (double v : m.probs()) s += v;
        REQUIRE(std::fabs(s - 1.0) <= 1e-12);
    }
}

TEST_CASE("property: bounds are nondecreasing in the cooperation rate") {
    auto bbc = preset_bbc(), pd = preset_pd_bbc();
    for (std::size_t k = 0; k < 200; ++k) {
        CounterRng rng(3, Domain::test, 11, static_cast<std::uint32_t>(k));
        const double lo = rng.uniform(), hi = lo + rng.uniform();
        auto aux = random_aux(rng, 2, 2, 2, 3);
        auto qwx = JointPmf({{"W", 2}, {"X", 3}}, oracle::random_simplex(rng, 6, true), 1e-9);
        auto wvx = JointPmf({{"W", 2}, {"V", 2}, {"X", 3}}, oracle::random_simplex(rng, 12, true), 1e-9);
        auto qx = Pmf(oracle::random_simplex(rng, 3), 1e-9);
        std::vector<std::pair<RateBounds, RateBounds>> pairs{
            {inner_bound_eval(aux, bbc, lo), inner_bound_eval(aux, bbc, hi)},
            {nosec_region_eval(aux, bbc, lo, true), nosec_region_eval(aux, bbc, hi, true)},
            {nosec_region_eval(aux, bbc, lo, false), nosec_region_eval(aux, bbc, hi, false)},
            {sd_region_eval(wvx, bbc, lo), sd_region_eval(wvx, bbc, hi)},
            {pd_region_eval(qwx, pd, lo, true), pd_region_eval(qwx, pd, hi, true)},
            {pd_region_eval(qwx, pd, lo, false), pd_region_eval(qwx, pd, hi, false)},
            {dbc_region_eval(qx, bbc, lo), dbc_region_eval(qx, bbc, hi)},
        };
        for (const auto& [a, b] : pairs)
            for (std::size_t f = 0; f < a.faces.size(); ++f) REQUIRE(a.faces[f].raw <= b.faces[f].raw + 1e-15);
    }
}

TEST_CASE("property: deterministic evaluator equals the blackwell closed form") {
    auto bbc = preset_bbc();
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; i + j <= 100; ++j) {
            const double a = i / 100.0, b = j / 100.0;
            auto d = dbc_region_eval(Pmf({a, b, std::max(0.0, 1.0 - a - b)}, 1e-9), bbc, 0.2);
            auto c = bbc_secrecy_bounds(a, b, 0.2);
            for (const char* f : {"R1", "R2", "R1+R2"}) REQUIRE(std::fabs(d.face(f).raw - c.face(f).raw) <= 1e-12);
        }
}

TEST_CASE("property: secrecy bounds sit inside the no-secrecy bounds") {
    for (int i = 0; i <= 50; ++i)
        for (int j = 0; i + j <= 50; ++j) {
            auto s = bbc_secrecy_bounds(i / 50.0, j / 50.0, 0.3);
            auto n = bbc_nosecrecy_bounds(i / 50.0, j / 50.0, 0.3);
            for (std::size_t f = 0; f < s.faces.size(); ++f) REQUIRE(s.faces[f].raw <= n.faces[f].raw + 1e-12);
        }
    for (int k = 0; k <= 1000; ++k) {
        GaussianParams gp;
        gp.alpha = k / 1000.0;
        auto s = gaussian_secrecy_bounds(gp), n = gaussian_nosecrecy_bounds(gp);
        for (std::size_t f = 0; f < s.faces.size(); ++f) REQUIRE(s.faces[f].raw <= n.faces[f].raw + 1e-12);
    }
}

TEST_CASE("property: degraded secrecy shift equals I(X;Y2|W)") {
    auto pd = preset_pd_bbc();
    for (std::size_t k = 0; k < kCases; ++k) {
        CounterRng rng(4, Domain::test, 12, static_cast<std::uint32_t>(k));
        auto p = oracle::random_simplex(rng, 9, true);
        JointPmf qwx({{"W", 3}, {"X", 3}}, p, 1e-9);
        auto full = full_joint(JointPmf({{"U0", 3}, {"U1", 1}, {"U2", 1}, {"X", 3}}, p, 1e-9), pd);
        const double shift = pd_region_eval(qwx, pd, 0.1, false).face("R1").raw - pd_region_eval(qwx, pd, 0.1, true).face("R1").raw;
        REQUIRE(std::fabs(shift - mutual_info(full, {"X"}, {"Y2"}, {"U0"})) <= 1e-10);
    }
}

TEST_CASE("property: constant W collapses the semi-deterministic region") {
    auto ch = preset_bbc();
    for (std::size_t k = 0; k < 200; ++k) {
        CounterRng rng(5, Domain::test, 13, static_cast<std::uint32_t>(k));
        auto p = oracle::random_simplex(rng, 9, true);
        auto rb = sd_region_eval(JointPmf({{"W", 1}, {"V", 3}, {"X", 3}}, p, 1e-9), ch, 0.0);
        const double r1 = rb.face("R1").raw, r2 = rb.face("R0+R2").raw, sum = rb.face("sum").raw;
        REQUIRE(std::fabs(rb.face("R0+R1").raw - r1) <= 1e-12);
        REQUIRE(sum >= std::min(r1, r2) - 1e-12);
        REQUIRE(std::fabs(sum - (r1 + r2)) <= 1e-12);
    }
}

TEST_CASE("property: restricted and unrestricted no-secrecy unions coincide") {
    SamplerConfig cfg;
    cfg.n_samples = 300;
    cfg.grid = 6;
    cfg.hill_climb_steps = 60;
    cfg.directions = 9;
    cfg.u0_size = 3;
    cfg.u1_size = 3;
    cfg.u2_size = 2;
    for (auto ch : {preset_pd_bbc(), preset_bbc()}) {
        auto a = region_union_approx(ch, Family::nosec, 0.1, 0.0, cfg);
        auto b = region_union_approx(ch, Family::nosec_restricted, 0.1, 0.0, cfg);
        CHECK(hausdorff(a.boundary, b.boundary) <= 5e-3);
    }
}

TEST_CASE("property: degraded blackwell union matches the closed-form sweep") {
    SamplerConfig cfg;
    cfg.n_samples = 500;
    auto u = region_union_approx(preset_pd_bbc(), Family::pd, 0.2, 0.0, cfg);
    auto s = bbc_closed_form_region(0.2, true, 200);
    CHECK(hausdorff(u.boundary, s.boundary) <= 5e-3);
}

TEST_CASE("property: projection is sound and lifts its vertices") {
    for (std::size_t k = 0; k < kCases; ++k) {
        CounterRng rng(6, Domain::test, 14, static_cast<std::uint32_t>(k));
        IneqSystem s;
        s.vars = {"x", "y", "z"};
        for (const auto& v : s.vars) {
            s.add_nonneg(v);
            s.add({{v, 1}}, Rational(static_cast<long>(1 + rng.below(5))));
        }
        const std::size_t rows = 1 + rng.below(3);
        for (std::size_t t = 0; t < rows; ++t) {
            std::map<std::string, Rational> c;
            for (const auto& v : s.vars) c[v] = Rational(static_cast<long>(rng.below(7)) - 3);
            s.add(c, Rational(static_cast<long>(rng.below(9))));
        }
        auto p = project_region(s, {"x", "y"});
        std::vector<Rational> pt;
        for (int d = 0; d < 3; ++d) pt.push_back(Rational(static_cast<long>(rng.below(13)), 2));
        if (contains(s, pt)) REQUIRE(contains(p, {pt[0], pt[1]}));
        auto vs = enumerate_vertices(p);
        for (const auto& v : vs.vertices) REQUIRE(lifts(s, {{"x", v[0]}, {"y", v[1]}}));
        auto q = project_region_ordered(s, {"x", "y"}, {"z"});
        REQUIRE(same_polytope(p, q));
    }
}

TEST_CASE("property: elimination order does not matter") {
    for (std::size_t k = 0; k < 200; ++k) {
        CounterRng rng(7, Domain::test, 15, static_cast<std::uint32_t>(k));
        InnerAtoms at{rng.uniform(), 0, rng.uniform() * 2, 0, rng.uniform(), 0};
        at.b = at.a + rng.uniform();
        at.d = at.c + rng.uniform();
        at.f = at.e + rng.uniform();
        auto sys = thm1_rate_system(at, rng.uniform());
        auto a = project_region_ordered(sys, {"R0", "R1", "R2"}, {"R20", "R22", "Rp", "Rt"});
        auto b = project_region_ordered(sys, {"R0", "R1", "R2"}, {"Rt", "R22", "Rp", "R20"});
        REQUIRE(same_polytope(a, b));
    }
}

TEST_CASE("property: leakage is nonnegative and grows with the cooperation index") {
    for (std::size_t k = 0; k < 40; ++k) {
        auto cfg = preset_bc_demo(2 + k % 2, k % 3 == 0, 100 + k);
        auto l = exact_leakage(BcCodebook(cfg));
        REQUIRE(l.y2_only_bits >= -1e-12);
        REQUIRE(l.leakage_bits >= l.y2_only_bits - 1e-12);
    }
}
