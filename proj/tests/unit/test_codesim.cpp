#include <cmath>
#include <vector>

#include "../oracles.hpp"
#include "doctest.h"
#include "secbc/codesim.hpp"

using namespace secbc;
using doctest::Approx;

namespace {

// Joint over S0, S, U, V built from marginals and conditionals given as flat tables.
JointPmf sjuv(std::size_t ks0, std::size_t ks, std::size_t ku, std::size_t kv, const std::vector<double>& q_s0u,
              const std::vector<double>& q_s_us0, const std::vector<double>& q_v_us0s) {
    std::vector<double> p(ks0 * ks * ku * kv, 0.0);
    for (std::size_t s0 = 0; s0 < ks0; ++s0)
        for (std::size_t s = 0; s < ks; ++s)
            for (std::size_t u = 0; u < ku; ++u)
                for (std::size_t v = 0; v < kv; ++v)
                    p[((s0 * ks + s) * ku + u) * kv + v] = q_s0u[s0 * ku + u] * q_s_us0[(s0 * ku + u) * ks + s] *
                                                          q_v_us0s[((s0 * ks + s) * ku + u) * kv + v];
    return JointPmf({{"S0", ks0}, {"S", ks}, {"U", ku}, {"V", kv}}, p, 1e-9);
}

ResolvabilityProblem binary_problem(std::size_t n, double rt, double rp, std::uint64_t seed, bool v_depends_on_u = true) {
    // Q_U uniform, S = U xor Bern(0.2), V = U xor Bern(0.1) (or V independent of U).
    std::vector<double> qsu{0.5, 0.5};
    std::vector<double> s_u{0.8, 0.2, 0.2, 0.8};
    std::vector<double> v(2 * 2 * 2);
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t u = 0; u < 2; ++u)
            for (std::size_t x = 0; x < 2; ++x)
                v[(s * 2 + u) * 2 + x] = v_depends_on_u ? (x == u ? 0.9 : 0.1) : (x == s ? 0.7 : 0.3);
    ResolvabilityProblem p;
    p.joint = sjuv(1, 2, 2, 2, qsu, s_u, v);
    p.n = n;
    p.rt = rt;
    p.rp = rp;
    p.seed = seed;
    return p;
}

double q_s_given_u(std::size_t s, std::size_t u) { return s == u ? 0.8 : 0.2; }
double q_v_given_u(std::size_t v, std::size_t u) { return v == u ? 0.9 : 0.1; }

// Two binary inputs seen through BSCs at the two receivers.
BcCodeConfig two_bsc_config(std::size_t n, double rho, std::uint64_t seed) {
    BcCodeConfig cfg;
    std::vector<double> law(4 * 2 * 2, 0.0);
    for (std::size_t x1 = 0; x1 < 2; ++x1)
        for (std::size_t x2 = 0; x2 < 2; ++x2)
            for (std::size_t y1 = 0; y1 < 2; ++y1)
                for (std::size_t y2 = 0; y2 < 2; ++y2)
                    law[((2 * x1 + x2) * 2 + y1) * 2 + y2] = (y1 == x1 ? 0.9 : 0.1) * (y2 == x2 ? 0.8 : 0.2);
    cfg.ch = BcChannel::general(4, 2, 2, law);
    std::vector<double> aux(2 * 2 * 4, 0.0);
    for (std::size_t u1 = 0; u1 < 2; ++u1)
        for (std::size_t u2 = 0; u2 < 2; ++u2) aux[(u1 * 2 + u2) * 4 + 2 * u1 + u2] = u1 == u2 ? rho / 2 : (1 - rho) / 2;
    cfg.aux = JointPmf({{"U0", 1}, {"U1", 2}, {"U2", 2}, {"X", 4}}, aux);
    cfg.n = n;
    cfg.seed = seed;
    return cfg;
}

BcCodeConfig noiseless_config(std::size_t n) {
    BcCodeConfig cfg;
    std::vector<double> law(4 * 2 * 2, 0.0);
    for (std::size_t x = 0; x < 4; ++x) law[(x * 2 + x / 2) * 2 + x % 2] = 1.0;
    cfg.ch = BcChannel::general(4, 2, 2, law);
    std::vector<double> aux(2 * 2 * 4, 0.0);
    for (std::size_t u1 = 0; u1 < 2; ++u1)
        for (std::size_t u2 = 0; u2 < 2; ++u2) aux[(u1 * 2 + u2) * 4 + 2 * u1 + u2] = 0.25;
    cfg.aux = JointPmf({{"U0", 1}, {"U1", 2}, {"U2", 2}, {"X", 4}}, aux);
    cfg.n = n;
    cfg.typ.eps = 0.5;
    return cfg;
}

// Letter-typicality by explicit counting.
bool oracle_typical(const std::vector<std::size_t>& letters, const std::vector<double>& q, double eps) {
    std::vector<double> cnt(q.size(), 0.0);
    for (auto a : letters) cnt[a] += 1.0;
    for (std::size_t a = 0; a < q.size(); ++a) {
        const double f = cnt[a] / static_cast<double>(letters.size());
        if (q[a] == 0.0 && f > 0.0) return false;
        if (std::fabs(f - q[a]) > eps * q[a] + 1e-12) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("rate counts and sequence indexing") {
    CHECK(rate_count(0.0, 5) == 1);
    CHECK(rate_count(1.0, 3) == 8);
    CHECK(rate_count(0.5, 3) == 2);
    CHECK(realized_rate(8, 3) == Approx(1.0));
    CHECK_THROWS_AS(rate_count(10.0, 7), Error);
    Seq s{1, 0, 2};
    CHECK(seq_index(s, 3) == 1 * 9 + 0 * 3 + 2);
    CHECK(seq_at(11, 3, 3) == s);
    auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == Approx(0.4038).epsilon(1e-3));
    CHECK(hi == Approx(0.5962).epsilon(1e-3));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
}

TEST_CASE("likelihood encoder") {
    SUBCASE("a single codeword per bin is always chosen") {
        ResolvabilityCodebook cb(binary_problem(3, 0.4, 0.0, 5));
        REQUIRE(cb.i_count() == 1);
        CounterRng rng(1, Domain::test);
        for (int k = 0; k < 20; ++k) CHECK(likelihood_encode(cb, 0, {0, 0, 0}, {1, 0, 1}, rng).index == 0);
    }
    SUBCASE("state independent of U gives equal weights") {
        std::vector<double> v(8, 0.5);
        ResolvabilityProblem p;
        p.joint = sjuv(1, 2, 2, 2, {0.5, 0.5}, {0.3, 0.7, 0.3, 0.7}, v);
        p.n = 2;
        p.rp = 1.0;
        ResolvabilityCodebook cb(p);
        auto w = encoder_weights(cb, 0, {0, 0}, {1, 0});
        for (double x : w) CHECK(x == Approx(w[0]));
    }
    SUBCASE("weights follow the product likelihood of each codeword") {
        ResolvabilityCodebook cb(binary_problem(2, 0.0, 1.0, 9));
        REQUIRE(cb.i_count() == 4);
        const Seq s0{0, 0}, s{1, 0};
        auto w = encoder_weights(cb, 0, s0, s);
        for (std::size_t i = 0; i < cb.i_count(); ++i) {
            Seq u = cb.codeword(s0, 0, i);
            CHECK(w[i] == Approx(q_s_given_u(s[0], u[0]) * q_s_given_u(s[1], u[1])).epsilon(1e-14));
        }
    }
}

TEST_CASE("induced channel output law") {
    SUBCASE("V independent of U reproduces the target law") {
        ResolvabilityCodebook cb(binary_problem(2, 0.5, 0.5, 4, false));
        const Seq s0{0, 0}, s{0, 1};
        auto p = induced_v_pmf(cb, s0, s);
        for (std::size_t v = 0; v < 4; ++v) {
            Seq vs = seq_at(v, 2, 2);
            double q = (vs[0] == s[0] ? 0.7 : 0.3) * (vs[1] == s[1] ? 0.7 : 0.3);
            CHECK(p[v] == Approx(q).epsilon(1e-14));
        }
        CHECK(std::fabs(resolvability_divergence(cb)) < 1e-12);
    }
    SUBCASE("one codeword gives the channel at that codeword") {
        ResolvabilityCodebook cb(binary_problem(3, 0.0, 0.0, 4));
        const Seq s0{0, 0, 0}, s{1, 1, 0};
        Seq u = cb.codeword(s0, 0, 0);
        auto p = induced_v_pmf(cb, s0, s);
        for (std::size_t v = 0; v < 8; ++v) {
            Seq vs = seq_at(v, 2, 3);
            double q = 1.0;
            for (int t = 0; t < 3; ++t) q *= q_v_given_u(vs[t], u[t]);
            CHECK(p[v] == Approx(q).epsilon(1e-14));
        }
        CHECK(resolvability_divergence(cb) > 0.0);
    }
    SUBCASE("brute-force mixture over bins and indices") {
        ResolvabilityCodebook cb(binary_problem(2, 0.5, 1.0, 21));
        REQUIRE(cb.w_count() == 2);
        REQUIRE(cb.i_count() == 4);
        const Seq s0{0, 0};
        for (std::size_t sc = 0; sc < 4; ++sc) {
            Seq s = seq_at(sc, 2, 2);
            std::vector<double> ref(4, 0.0);
            for (std::size_t w = 0; w < 2; ++w) {
                std::vector<double> lw(4);
                double tot = 0;
                for (std::size_t i = 0; i < 4; ++i) {
                    Seq u = cb.codeword(s0, w, i);
                    lw[i] = q_s_given_u(s[0], u[0]) * q_s_given_u(s[1], u[1]);
                    tot += lw[i];
                }
                for (std::size_t i = 0; i < 4; ++i) {
                    Seq u = cb.codeword(s0, w, i);
                    for (std::size_t v = 0; v < 4; ++v) {
                        Seq vs = seq_at(v, 2, 2);
                        ref[v] += 0.5 * lw[i] / tot * q_v_given_u(vs[0], u[0]) * q_v_given_u(vs[1], u[1]);
                    }
                }
            }
            auto p = induced_v_pmf(cb, s0, s);
            for (std::size_t v = 0; v < 4; ++v) CHECK(p[v] == Approx(ref[v]).epsilon(1e-13));
        }
    }
}

TEST_CASE("typicality of the selected codeword") {
    ResolvabilityCodebook cb(binary_problem(2, 0.5, 1.0, 3));
    CHECK(typicality_prob(cb, 0, 1e6) == Approx(1.0));
    // Non-dyadic Q with n = 2: no pair of letters has the exact type.
    CHECK(typicality_prob(cb, 0, 0.0) == 0.0);
}

TEST_CASE("ensemble divergence is schedule independent") {
    auto p = preset_lemma1_demo(3);
    auto a = resolvability_ensemble(p, 12, 1);
    auto b = resolvability_ensemble(p, 12, 4);
    CHECK(a.divergence == b.divergence);
    CHECK(a.tv == b.tv);
    CHECK(a.mean_divergence == b.mean_divergence);
}

TEST_CASE("broadcast encoder") {
    SUBCASE("one bin with one codeword is deterministic") {
        auto cfg = two_bsc_config(3, 0.8, 2);
        cfg.r1 = 0.4;
        BcCodebook cb(cfg);
        REQUIRE(cb.counts().w == 1);
        REQUIRE(cb.counts().i == 1);
        for (std::uint32_t k = 0; k < 10; ++k) {
            CounterRng rng(7, Domain::test, k);
            auto e = bc_encode(cb, 0, 1, 0, rng);
            CHECK(e.w == 0);
            CHECK(e.i == 0);
        }
    }
    SUBCASE("independent U1, U2 give uniform weights") {
        auto cfg = two_bsc_config(3, 0.5, 2);
        cfg.rp = 0.7;
        BcCodebook cb(cfg);
        auto w = bc_encoder_weights(cb, 0, 0, 0, 0);
        for (double x : w) CHECK(x == Approx(w[0]));
    }
    SUBCASE("empirical index frequencies follow the weights") {
        auto cfg = two_bsc_config(3, 0.85, 4);
        cfg.rp = 0.7;
        BcCodebook cb(cfg);
        REQUIRE(cb.counts().i == 4);
        auto w = bc_encoder_weights(cb, 0, 0, 0, 0);
        double tot = 0;
        for (double x : w) tot += x;
        // Reference weights from the codewords directly.
        Seq u2 = cb.u2(0, 0);
        for (std::size_t i = 0; i < 4; ++i) {
            Seq u1 = cb.u1(0, 0, 0, i);
            double ref = 1.0;
            for (int t = 0; t < 3; ++t) ref *= u1[t] == u2[t] ? 0.85 : 0.15;
            CHECK(w[i] == Approx(ref).epsilon(1e-13));
        }
        const int draws = 10000;
        std::vector<int> hits(4, 0);
        for (int k = 0; k < draws; ++k) {
            CounterRng rng(99, Domain::test, static_cast<std::uint32_t>(k));
            ++hits[bc_encode(cb, 0, 0, 0, rng).i];
        }
        for (std::size_t i = 0; i < 4; ++i) {
            const double p = w[i] / tot;
            const double sd = std::sqrt(draws * p * (1 - p));
            CHECK(std::fabs(hits[i] - draws * p) <= 3 * sd + 1e-9);
        }
    }
}

TEST_CASE("typicality decoders") {
    SUBCASE("noiseless channels decode singleton messages") {
        auto cfg = noiseless_config(4);
        auto rep = run_bc_trials(cfg, 200, 0, 1);
        CHECK(rep.errors == 0);
        CHECK(rep.error_rate == 0.0);
    }
    SUBCASE("no typical codeword yields the default message") {
        auto cfg = two_bsc_config(4, 0.5, 8);
        cfg.r1 = 0.5;
        cfg.typ.eps = 0.0;
        BcCodebook cb(cfg);
        // With eps = 0 and non-dyadic letter probabilities no sequence is typical.
        auto d = decode1(cb, {0, 1, 1, 0}, 0.0);
        CHECK_FALSE(d.unique);
        CHECK(d.m1 == 0);
        CHECK(d.mp == 0);
        auto e = decode2(cb, 0, {0, 1, 1, 0}, 0.0);
        CHECK_FALSE(e.unique);
        CHECK(e.m2 == 0);
    }
    SUBCASE("decoder 1 agrees with an explicit typicality search") {
        auto cfg = two_bsc_config(4, 0.7, 12);
        cfg.r1 = 0.5;
        cfg.rp = 0.25;
        cfg.typ.eps = 0.6;
        BcCodebook cb(cfg);
        const auto& c = cb.counts();
        const auto q = cb.typ1().probs();
        for (std::size_t yc = 0; yc < 16; ++yc) {
            Seq y = seq_at(yc, 2, 4);
            std::vector<std::size_t> hits;
            for (std::size_t m1 = 0; m1 < c.m1; ++m1) {
                bool any = false;
                for (std::size_t i = 0; i < c.i; ++i) {
                    Seq u1 = cb.u1(0, m1, 0, i);
                    std::vector<std::size_t> letters(4);
                    for (int t = 0; t < 4; ++t) letters[t] = u1[t] * 2 + y[t];
                    any = any || oracle_typical(letters, q, cfg.typ.eps);
                }
                if (any) hits.push_back(m1);
            }
            auto d = decode1(cb, y, cfg.typ.eps);
            CHECK(d.unique == (hits.size() == 1));
            CHECK(d.m1 == (hits.size() == 1 ? hits[0] : 0));
        }
    }
}

TEST_CASE("reliability collapses when the private rate is far too high") {
    auto cfg = preset_bc_demo(4);
    auto at = inner_atoms(cfg.aux, cfg.ch);
    cfg.r1 = at.c + 0.5 - cfg.rt - cfg.rp;
    auto rep = run_bc_trials(cfg, 2000);
    CHECK(rep.error_rate > 0.5);
}

TEST_CASE("exact leakage") {
    SUBCASE("a single private message leaks nothing") {
        auto cfg = noiseless_config(3);
        auto l = exact_leakage(BcCodebook(cfg));
        CHECK(l.leakage_bits == 0.0);
    }
    SUBCASE("an output independent of the input leaks nothing") {
        auto cfg = two_bsc_config(3, 0.6, 5);
        std::vector<double> law(4 * 2 * 2);
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y1 = 0; y1 < 2; ++y1)
                for (std::size_t y2 = 0; y2 < 2; ++y2)
                    law[(x * 2 + y1) * 2 + y2] = (y1 == x / 2 ? 0.9 : 0.1) * (y2 == 0 ? 0.3 : 0.7);
        cfg.ch = BcChannel::general(4, 2, 2, law);
        cfg.r1 = 0.67;
        cfg.rt = 0.34;
        auto l = exact_leakage(BcCodebook(cfg));
        CHECK(std::fabs(l.leakage_bits) < 1e-12);
    }
    SUBCASE("binning lowers the leakage of the demo code") {
        auto a = exact_leakage(BcCodebook(preset_bc_demo(3)));
        auto b = exact_leakage(BcCodebook(preset_bc_demo(3, true)));
        CHECK(a.leakage_bits < b.leakage_bits);
        CHECK(a.leakage_bits >= a.y2_only_bits - 1e-12);
    }
}

TEST_CASE("trial runs are schedule independent") {
    auto cfg = preset_bc_demo(2);
    auto a = run_bc_trials(cfg, 300, 0, 1);
    auto b = run_bc_trials(cfg, 300, 0, 3);
    CHECK(a.errors == b.errors);
    CHECK(a.encoder_failures == b.encoder_failures);
}
