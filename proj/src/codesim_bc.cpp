#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "secbc/codesim.hpp"

namespace secbc {

namespace {

std::uint64_t pow_size(std::size_t a, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t t = 0; t < n; ++t) r *= a;
    return r;
}

// Streaming log-sum-exp accumulator.
struct LogAcc {
    double mx = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    void add(double lx) {
        if (lx == -std::numeric_limits<double>::infinity()) return;
        if (lx > mx) {
            sum = sum * std::exp(mx - lx) + 1.0;
            mx = lx;
        } else {
            sum += std::exp(lx - mx);
        }
    }
    double log() const { return sum > 0 ? mx + std::log(sum) : -std::numeric_limits<double>::infinity(); }
};

}  // namespace

void BcCodeConfig::validate() const {
    ch.validate();
    const auto& ax = aux.axes();
    if (ax.size() != 4 || ax[0].name != "U0" || ax[1].name != "U1" || ax[2].name != "U2" || ax[3].name != "X")
        fail(Errc::invalid_argument, "code auxiliary must have axes U0, U1, U2, X in that order");
    if (ax[3].size != ch.x_size) fail(Errc::invalid_argument, "auxiliary X alphabet does not match the channel");
    require(n >= 1, "blocklength must be at least 1");
    for (double r : {r0, r1, r20, r22, r12, rt, rp})
        require(std::isfinite(r) && r >= 0.0, "rates must be finite and nonnegative");
    require(typ.eps >= 0.0, "typicality eps must be nonnegative");
    auto c = bc_counts(*this);
    if (c.m12 > c.mp)
        fail(Errc::invalid_argument, "cooperation bins (" + std::to_string(c.m12) + ") exceed public messages (" +
                                         std::to_string(c.mp) + ")");
    checked_cells({c.mp, c.m1, c.w, c.i}, "codebook Mp x M1 x W x I");
    checked_cells({c.mp, c.m22}, "codebook Mp x M22");
}

BcCounts bc_counts(const BcCodeConfig& cfg) {
    BcCounts c;
    c.m0 = rate_count(cfg.r0, cfg.n);
    c.m1 = rate_count(cfg.r1, cfg.n);
    c.m20 = rate_count(cfg.r20, cfg.n);
    c.m22 = rate_count(cfg.r22, cfg.n);
    c.m12 = rate_count(cfg.r12, cfg.n);
    c.w = rate_count(cfg.rt, cfg.n);
    c.i = rate_count(cfg.rp, cfg.n);
    c.mp = c.m0 * c.m20;
    return c;
}

BcCodebook::BcCodebook(BcCodeConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    c_ = bc_counts(cfg_);
    const auto& ax = cfg_.aux.axes();
    k0_ = ax[0].size;
    k1_ = ax[1].size;
    k2_ = ax[2].size;
    const std::size_t kx = ax[3].size, y1 = cfg_.ch.y1_size, y2 = cfg_.ch.y2_size;
    const auto& q = cfg_.aux.probs();
    std::vector<double> q01(k0_ * k1_, 0.0), q02(k0_ * k2_, 0.0), q012(k0_ * k1_ * k2_, 0.0);
    q_u0_.assign(k0_, 0.0);
    for (std::size_t u0 = 0; u0 < k0_; ++u0)
        for (std::size_t u1 = 0; u1 < k1_; ++u1)
            for (std::size_t u2 = 0; u2 < k2_; ++u2)
                for (std::size_t x = 0; x < kx; ++x) {
                    double p = q[((u0 * k1_ + u1) * k2_ + u2) * kx + x];
                    q_u0_[u0] += p;
                    q01[u0 * k1_ + u1] += p;
                    q02[u0 * k2_ + u2] += p;
                    q012[(u0 * k1_ + u1) * k2_ + u2] += p;
                }
    auto cond = [](const std::vector<double>& joint, const std::vector<double>& given, std::size_t k) {
        std::vector<double> out(joint.size());
        for (std::size_t g = 0; g < given.size(); ++g)
            for (std::size_t a = 0; a < k; ++a)
                out[g * k + a] = given[g] > 0 ? joint[g * k + a] / given[g] : 1.0 / static_cast<double>(k);
        return out;
    };
    q_u1_u0_ = cond(q01, q_u0_, k1_);
    q_u2_u0_ = cond(q02, q_u0_, k2_);
    q_u2_u01_.assign(q012.size(), 0.0);
    for (std::size_t g = 0; g < k0_ * k1_; ++g)
        for (std::size_t u2 = 0; u2 < k2_; ++u2)
            q_u2_u01_[g * k2_ + u2] = q01[g] > 0 ? q012[g * k2_ + u2] / q01[g] : 0.0;
    q_x_u_ = cond(q, q012, kx);
    q_y2_u_.assign(k0_ * k1_ * k2_ * y2, 0.0);
    for (std::size_t u = 0; u < k0_ * k1_ * k2_; ++u)
        for (std::size_t x = 0; x < kx; ++x)
            for (std::size_t a = 0; a < y1; ++a)
                for (std::size_t b = 0; b < y2; ++b) q_y2_u_[u * y2 + b] += q_x_u_[u * kx + x] * cfg_.ch.p(x, a, b);
    auto full = full_joint(cfg_.aux, cfg_.ch);
    typ1_ = full.marginal({"U0", "U1", "Y1"}).flat();
    typ2_ = full.marginal({"U0", "U2", "Y2"}).flat();
}

Seq BcCodebook::draw(Domain d, std::uint32_t a, std::uint32_t b, std::uint32_t c, const std::vector<double>& cond,
                     const Seq* given, std::size_t k) const {
    CounterRng rng(cfg_.seed, d, a, b, c);
    Seq s(cfg_.n);
    for (std::size_t t = 0; t < cfg_.n; ++t) s[t] = rng.categorical(cond.data() + (given ? (*given)[t] * k : 0), k);
    return s;
}

Seq BcCodebook::u0(std::size_t mp) const {
    require(mp < c_.mp, "u0: public index out of range");
    return draw(Domain::bc_u0, static_cast<std::uint32_t>(mp), 0, 0, q_u0_, nullptr, k0_);
}

Seq BcCodebook::u1(std::size_t mp, std::size_t m1, std::size_t w, std::size_t i) const {
    require(m1 < c_.m1 && w < c_.w && i < c_.i, "u1: index out of range");
    Seq base = u0(mp);
    return draw(Domain::bc_u1, static_cast<std::uint32_t>(mp), static_cast<std::uint32_t>(m1),
                static_cast<std::uint32_t>(w * c_.i + i), q_u1_u0_, &base, k1_);
}

Seq BcCodebook::u2(std::size_t mp, std::size_t m22) const {
    require(m22 < c_.m22, "u2: index out of range");
    Seq base = u0(mp);
    return draw(Domain::bc_u2, static_cast<std::uint32_t>(mp), static_cast<std::uint32_t>(m22), 0, q_u2_u0_, &base,
                k2_);
}

double BcCodebook::q_u2_u01(std::size_t u2, std::size_t u0, std::size_t u1) const {
    return q_u2_u01_[(u0 * k1_ + u1) * k2_ + u2];
}

const double* BcCodebook::q_x_u(std::size_t u0, std::size_t u1, std::size_t u2) const {
    return q_x_u_.data() + ((u0 * k1_ + u1) * k2_ + u2) * cfg_.ch.x_size;
}

double BcCodebook::q_y2_u(std::size_t y2, std::size_t u0, std::size_t u1, std::size_t u2) const {
    return q_y2_u_[((u0 * k1_ + u1) * k2_ + u2) * cfg_.ch.y2_size + y2];
}

BcCodebook gen_bc_codebook(const BcCodeConfig& cfg) { return BcCodebook(cfg); }

namespace {

std::vector<double> weights_for(const BcCodebook& cb, const Seq& u0, const Seq& u2, std::size_t mp, std::size_t m1,
                                std::size_t w) {
    std::vector<double> wt(cb.counts().i, 1.0);
    for (std::size_t i = 0; i < wt.size(); ++i) {
        Seq u1 = cb.u1(mp, m1, w, i);
        for (std::size_t t = 0; t < cb.n(); ++t) wt[i] *= cb.q_u2_u01(u2[t], u0[t], u1[t]);
    }
    return wt;
}

bool typical(const Seq& a, const Seq& b, std::size_t kb, const Seq& y, std::size_t ky, const Pmf& q,
             double eps) {
    Seq letters(a.size());
    for (std::size_t t = 0; t < a.size(); ++t) letters[t] = (a[t] * kb + b[t]) * ky + y[t];
    return is_letter_typical(letters, q, TypicalityParams{eps});
}

}  // namespace

std::vector<double> bc_encoder_weights(const BcCodebook& cb, std::size_t mp, std::size_t m1, std::size_t m22,
                                       std::size_t w) {
    require(mp < cb.counts().mp && m1 < cb.counts().m1 && m22 < cb.counts().m22 && w < cb.counts().w,
            "bc_encoder_weights: index out of range");
    return weights_for(cb, cb.u0(mp), cb.u2(mp, m22), mp, m1, w);
}

BcEncoding bc_encode(const BcCodebook& cb, std::size_t m0, std::size_t m1, std::size_t m2, CounterRng& rng) {
    const auto& c = cb.counts();
    require(m0 < c.m0 && m1 < c.m1 && m2 < c.m2(), "bc_encode: message out of range");
    const std::size_t m20 = m2 / c.m22, m22 = m2 % c.m22, mp = m0 * c.m20 + m20;
    BcEncoding e;
    e.w = static_cast<std::size_t>(rng.below(c.w));
    Seq u0 = cb.u0(mp), u2 = cb.u2(mp, m22);
    auto wt = weights_for(cb, u0, u2, mp, m1, e.w);
    double tot = 0.0;
    for (double x : wt) tot += x;
    if (!(tot > 0.0)) {
        e.failure = true;
        return e;
    }
    for (auto& x : wt) x /= tot;
    e.i = rng.categorical(wt.data(), wt.size());
    Seq u1 = cb.u1(mp, m1, e.w, e.i);
    e.x.resize(cb.n());
    for (std::size_t t = 0; t < cb.n(); ++t)
        e.x[t] = rng.categorical(cb.q_x_u(u0[t], u1[t], u2[t]), cb.config().ch.x_size);
    return e;
}

Decoded1 decode1(const BcCodebook& cb, const Seq& y1, double eps) {
    require(y1.size() == cb.n(), "decode1: sequence length must equal n");
    const auto& c = cb.counts();
    const std::size_t ky = cb.config().ch.y1_size;
    Decoded1 d;
    bool found = false;
    std::size_t fm = 0, f1 = 0, fw = 0;
    for (std::size_t mp = 0; mp < c.mp; ++mp) {
        Seq u0 = cb.u0(mp);
        for (std::size_t m1 = 0; m1 < c.m1; ++m1)
            for (std::size_t w = 0; w < c.w; ++w)
                for (std::size_t i = 0; i < c.i; ++i) {
                    if (!typical(u0, cb.u1(mp, m1, w, i), cb.k1(), y1, ky, cb.typ1(), eps)) continue;
                    if (!found) {
                        found = true;
                        fm = mp, f1 = m1, fw = w;
                    } else if (fm != mp || f1 != m1 || fw != w) {
                        return d;  // ambiguous triple
                    }
                    break;  // further i cannot change the triple
                }
    }
    if (!found) return d;
    d.unique = true;
    d.mp = fm;
    d.m0 = fm / c.m20;
    d.m1 = f1;
    return d;
}

std::size_t g12(const BcCodebook& cb, const Decoded1& d) { return cb.bin(d.mp); }

Decoded2 decode2(const BcCodebook& cb, std::size_t m12, const Seq& y2, double eps) {
    require(y2.size() == cb.n(), "decode2: sequence length must equal n");
    const auto& c = cb.counts();
    require(m12 < c.m12, "decode2: cooperation index out of range");
    const std::size_t ky = cb.config().ch.y2_size;
    Decoded2 d;
    bool found = false;
    std::size_t fm = 0, f22 = 0;
    for (std::size_t mp = 0; mp < c.mp; ++mp) {
        if (cb.bin(mp) != m12) continue;
        Seq u0 = cb.u0(mp);
        for (std::size_t m22 = 0; m22 < c.m22; ++m22) {
            if (!typical(u0, cb.u2(mp, m22), cb.k2(), y2, ky, cb.typ2(), eps)) continue;
            if (found) return d;
            found = true;
            fm = mp, f22 = m22;
        }
    }
    if (!found) return d;
    d.unique = true;
    d.mp = fm;
    d.m0 = fm / c.m20;
    d.m2 = (fm % c.m20) * c.m22 + f22;
    return d;
}

TrialReport run_bc_trials(const BcCodeConfig& cfg, std::size_t trials, std::size_t codebooks, unsigned threads) {
    require(trials >= 1, "run_bc_trials: need at least one trial");
    const BcCodebook proto(cfg);
    const auto& c = proto.counts();
    const auto& ch = cfg.ch;
    std::vector<std::uint8_t> err(trials, 0), encfail(trials, 0);
    detail::parallel_for(trials, threads ? threads : default_threads(), [&](std::size_t t) {
        BcCodeConfig k = cfg;
        k.seed = derive_seed(cfg.seed, codebooks == 0 ? t : t % codebooks);
        const BcCodebook cb(std::move(k));
        CounterRng rng(cfg.seed, Domain::bc_trial, static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32));
        const std::size_t m0 = rng.below(c.m0), m1 = rng.below(c.m1), m2 = rng.below(c.m2());
        auto e = bc_encode(cb, m0, m1, m2, rng);
        if (e.failure) {
            err[t] = encfail[t] = 1;
            return;
        }
        Seq y1(cfg.n), y2(cfg.n);
        for (std::size_t s = 0; s < cfg.n; ++s) {
            std::size_t cell = rng.categorical(ch.law.data() + e.x[s] * ch.y1_size * ch.y2_size, ch.y1_size * ch.y2_size);
            y1[s] = cell / ch.y2_size;
            y2[s] = cell % ch.y2_size;
        }
        auto d1 = decode1(cb, y1, cfg.typ.eps);
        auto d2 = decode2(cb, g12(cb, d1), y2, cfg.typ.eps);
        err[t] = (d1.m0 != m0 || d1.m1 != m1 || d2.m0 != m0 || d2.m2 != m2) ? 1 : 0;
    });
    TrialReport r;
    r.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        r.errors += err[t];
        r.encoder_failures += encfail[t];
    }
    r.error_rate = static_cast<double>(r.errors) / static_cast<double>(trials);
    std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.errors, trials);
    return r;
}

LeakageReport exact_leakage(const BcCodebook& cb) {
    const auto& c = cb.counts();
    const std::size_t n = cb.n(), Y = cb.config().ch.y2_size;
    std::vector<std::size_t> ydims(n, Y);
    ydims.push_back(c.m1);
    ydims.push_back(c.m12);
    checked_cells(ydims, "leakage joint M1 x M12 x |Y2|^n");
    const std::uint64_t ny = pow_size(Y, n);
    {
        std::vector<std::size_t> work(n, Y);
        for (std::size_t k : {c.mp, c.m1, c.m22, c.w, c.i}) work.push_back(k);
        checked_cells(work, "leakage enumeration", std::uint64_t{1} << 30);
    }
    // cell (m1, m12, y2) at (m1 * M12 + m12) * ny + y2
    std::vector<LogAcc> acc(c.m1 * c.m12 * ny);
    const double log_uniform = -std::log(static_cast<double>(c.mp) * static_cast<double>(c.m1) *
                                         static_cast<double>(c.m22) * static_cast<double>(c.w));
    std::vector<double> lcur, lnext, lfac(Y);
    for (std::size_t mp = 0; mp < c.mp; ++mp) {
        const Seq u0 = cb.u0(mp);
        const std::size_t bin = cb.bin(mp);
        for (std::size_t m22 = 0; m22 < c.m22; ++m22) {
            const Seq u2 = cb.u2(mp, m22);
            for (std::size_t m1 = 0; m1 < c.m1; ++m1)
                for (std::size_t w = 0; w < c.w; ++w) {
                    auto wt = weights_for(cb, u0, u2, mp, m1, w);
                    double tot = 0.0;
                    for (double x : wt) tot += x;
                    if (!(tot > 0.0))
                        fail(Errc::encoder_failure, "likelihood encoder: all weights vanish in leakage enumeration");
                    for (std::size_t i = 0; i < c.i; ++i) {
                        if (wt[i] == 0.0) continue;
                        const Seq u1 = cb.u1(mp, m1, w, i);
                        lcur.assign(1, log_uniform + std::log(wt[i] / tot));
                        for (std::size_t t = 0; t < n; ++t) {
                            for (std::size_t y = 0; y < Y; ++y) lfac[y] = std::log(cb.q_y2_u(y, u0[t], u1[t], u2[t]));
                            lnext.resize(lcur.size() * Y);
                            for (std::size_t a = 0; a < lcur.size(); ++a)
                                for (std::size_t y = 0; y < Y; ++y) lnext[a * Y + y] = lcur[a] + lfac[y];
                            lcur.swap(lnext);
                        }
                        LogAcc* row = acc.data() + (m1 * c.m12 + bin) * ny;
                        for (std::uint64_t y = 0; y < ny; ++y) row[y].add(lcur[y]);
                    }
                }
        }
    }
    // I(M1; M12, Y2^n) and I(M1; Y2^n); M1 is uniform.
    const double lpm1 = -std::log(static_cast<double>(c.m1));
    LeakageReport rep;
    std::vector<double> lp(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) lp[k] = acc[k].log();
    for (std::size_t b = 0; b < c.m12; ++b)
        for (std::uint64_t y = 0; y < ny; ++y) {
            LogAcc marg;
            for (std::size_t m1 = 0; m1 < c.m1; ++m1) marg.add(lp[(m1 * c.m12 + b) * ny + y]);
            const double lq = marg.log();
            for (std::size_t m1 = 0; m1 < c.m1; ++m1) {
                double l = lp[(m1 * c.m12 + b) * ny + y];
                if (std::isinf(l)) continue;
                rep.leakage_bits += std::exp(l) * (l - lpm1 - lq) / std::log(2.0);
            }
        }
    for (std::uint64_t y = 0; y < ny; ++y) {
        std::vector<LogAcc> per(c.m1);
        LogAcc marg;
        for (std::size_t m1 = 0; m1 < c.m1; ++m1)
            for (std::size_t b = 0; b < c.m12; ++b) {
                per[m1].add(lp[(m1 * c.m12 + b) * ny + y]);
                marg.add(lp[(m1 * c.m12 + b) * ny + y]);
            }
        const double lq = marg.log();
        for (std::size_t m1 = 0; m1 < c.m1; ++m1) {
            double l = per[m1].log();
            if (std::isinf(l)) continue;
            rep.y2_only_bits += std::exp(l) * (l - lpm1 - lq) / std::log(2.0);
        }
    }
    return rep;
}

BcCodeConfig preset_bc_demo(std::size_t n, bool ablate, std::uint64_t seed) {
    constexpr double erase = 0.77;
    // X = 2*x1 + x2; Y1 = x1; Y2 = 2*e + x2 with e = x1 or 3 (erased).
    std::vector<double> law(6 * 3 * 8, 0.0);
    for (std::size_t x1 = 0; x1 < 3; ++x1)
        for (std::size_t x2 = 0; x2 < 2; ++x2) {
            const std::size_t x = 2 * x1 + x2;
            law[(x * 3 + x1) * 8 + 2 * x1 + x2] += 1.0 - erase;
            law[(x * 3 + x1) * 8 + 2 * 3 + x2] += erase;
        }
    BcCodeConfig cfg;
    cfg.ch = BcChannel::general(6, 3, 8, law);
    std::vector<double> aux(1 * 3 * 2 * 6, 0.0);
    for (std::size_t u1 = 0; u1 < 3; ++u1)
        for (std::size_t u2 = 0; u2 < 2; ++u2) aux[(u1 * 2 + u2) * 6 + 2 * u1 + u2] = 1.0 / 6.0;
    cfg.aux = JointPmf({{"U0", 1}, {"U1", 3}, {"U2", 2}, {"X", 6}}, aux);
    cfg.n = n;
    cfg.seed = seed;
    cfg.typ.eps = 0.5;
    const auto t = inner_atoms(cfg.aux, cfg.ch);
    cfg.rp = ablate ? 0.0 : t.a + 0.1;
    cfg.rt = ablate ? 0.0 : t.b - t.a;
    cfg.r1 = t.c - 0.2 - t.b;
    return cfg;
}

}  // namespace secbc
