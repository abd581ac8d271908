#include <cmath>

#include "parallel.hpp"
#include "secbc/codesim.hpp"

namespace secbc {

std::size_t rate_count(double rate, std::size_t n) {
    require(std::isfinite(rate) && rate >= 0.0, "rate must be finite and nonnegative");
    const double e = static_cast<double>(n) * rate;
    if (e >= 62.0) fail(Errc::resource, "message count 2^" + std::to_string(e) + " is too large");
    const double c = std::floor(std::exp2(e) + 1e-9);
    return c < 1.0 ? 1 : static_cast<std::size_t>(c);
}

double realized_rate(std::size_t count, std::size_t n) {
    require(n >= 1 && count >= 1, "realized_rate: need n >= 1 and count >= 1");
    return std::log2(static_cast<double>(count)) / static_cast<double>(n);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
    CounterRng r(seed, Domain::seed_draw, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32), 0);
    return r.next_u64();
}

std::uint64_t seq_index(const Seq& s, std::size_t alphabet) {
    std::uint64_t idx = 0;
    for (auto x : s) idx = idx * alphabet + x;
    return idx;
}

Seq seq_at(std::uint64_t index, std::size_t alphabet, std::size_t n) {
    Seq s(n);
    for (std::size_t t = n; t-- > 0;) {
        s[t] = static_cast<std::size_t>(index % alphabet);
        index /= alphabet;
    }
    return s;
}

std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z) {
    require(n >= 1 && k <= n, "wilson_interval: need 0 <= k <= n, n >= 1");
    const double nn = static_cast<double>(n), p = static_cast<double>(k) / nn, z2 = z * z;
    const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
    const double half = z / (1 + z2 / nn) * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

std::uint64_t pow_size(std::size_t a, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t t = 0; t < n; ++t) r *= a;
    return r;
}

// Appends one letter's factor to a likelihood vector over sequences.
void kron_step(std::vector<double>& cur, const double* factor, std::size_t k) {
    std::vector<double> next(cur.size() * k);
    for (std::size_t a = 0; a < cur.size(); ++a)
        for (std::size_t v = 0; v < k; ++v) next[a * k + v] = cur[a] * factor[v];
    cur.swap(next);
}

}  // namespace

void ResolvabilityProblem::validate() const {
    const auto& ax = joint.axes();
    if (ax.size() != 4 || ax[0].name != "S0" || ax[1].name != "S" || ax[2].name != "U" || ax[3].name != "V")
        fail(Errc::invalid_argument, "resolvability joint must have axes S0, S, U, V in that order");
    require(n >= 1, "blocklength must be at least 1");
    require(std::isfinite(rt) && rt >= 0 && std::isfinite(rp) && rp >= 0, "rates must be nonnegative");
    std::vector<std::size_t> dims;
    for (std::size_t t = 0; t < n; ++t) {
        dims.push_back(ax[0].size);
        dims.push_back(ax[1].size);
        dims.push_back(ax[3].size);
    }
    checked_cells(dims, "resolvability enumeration |S0|^n|S|^n|V|^n (n=" + std::to_string(n) + ")");
}

ResolvabilityCodebook::ResolvabilityCodebook(ResolvabilityProblem p) : p_(std::move(p)) {
    p_.validate();
    for (std::size_t a = 0; a < 4; ++a) k_[a] = p_.joint.axes()[a].size;
    w_ = rate_count(p_.rt, p_.n);
    i_ = rate_count(p_.rp, p_.n);
    checked_cells({w_, i_}, "resolvability codebook W x I");
    const auto& q = p_.joint.probs();
    const std::size_t S0 = k_[0], S = k_[1], U = k_[2], V = k_[3];
    auto at = [&](std::size_t s0, std::size_t s, std::size_t u, std::size_t v) {
        return q[((s0 * S + s) * U + u) * V + v];
    };
    q_s0s_.assign(S0 * S, 0.0);
    std::vector<double> q_s0u(S0 * U, 0.0), q_s0(S0, 0.0), q_s0su(S0 * S * U, 0.0);
    for (std::size_t s0 = 0; s0 < S0; ++s0)
        for (std::size_t s = 0; s < S; ++s)
            for (std::size_t u = 0; u < U; ++u)
                for (std::size_t v = 0; v < V; ++v) {
                    double x = at(s0, s, u, v);
                    q_s0s_[s0 * S + s] += x;
                    q_s0u[s0 * U + u] += x;
                    q_s0[s0] += x;
                    q_s0su[(s0 * S + s) * U + u] += x;
                }
    q_s0su_ = Pmf(q_s0su, 1e-9);
    q_u_s0_.assign(S0 * U, 0.0);
    for (std::size_t s0 = 0; s0 < S0; ++s0)
        for (std::size_t u = 0; u < U; ++u)
            q_u_s0_[s0 * U + u] = q_s0[s0] > 0 ? q_s0u[s0 * U + u] / q_s0[s0] : 1.0 / static_cast<double>(U);
    q_s_us0_.assign(S0 * U * S, 0.0);
    for (std::size_t s0 = 0; s0 < S0; ++s0)
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t s = 0; s < S; ++s) {
                double den = q_s0u[s0 * U + u];
                q_s_us0_[(s0 * U + u) * S + s] = den > 0 ? q_s0su[(s0 * S + s) * U + u] / den : 0.0;
            }
    q_v_us0s_.assign(S0 * S * U * V, 0.0);
    q_v_s0s_.assign(S0 * S * V, 0.0);
    for (std::size_t s0 = 0; s0 < S0; ++s0)
        for (std::size_t s = 0; s < S; ++s) {
            for (std::size_t u = 0; u < U; ++u) {
                double den = q_s0su[(s0 * S + s) * U + u];
                for (std::size_t v = 0; v < V; ++v) {
                    q_v_us0s_[((s0 * S + s) * U + u) * V + v] = den > 0 ? at(s0, s, u, v) / den : 0.0;
                    q_v_s0s_[(s0 * S + s) * V + v] += at(s0, s, u, v);
                }
            }
            double den = q_s0s_[s0 * S + s];
            for (std::size_t v = 0; v < V; ++v) {
                double& x = q_v_s0s_[(s0 * S + s) * V + v];
                x = den > 0 ? x / den : 0.0;
            }
        }
}

double ResolvabilityCodebook::q_s_us0(std::size_t s, std::size_t u, std::size_t s0) const {
    return q_s_us0_[(s0 * k_[2] + u) * k_[1] + s];
}

double ResolvabilityCodebook::q_v_us0s(std::size_t v, std::size_t u, std::size_t s0, std::size_t s) const {
    return q_v_us0s_[((s0 * k_[1] + s) * k_[2] + u) * k_[3] + v];
}

double ResolvabilityCodebook::q_v_s0s(std::size_t v, std::size_t s0, std::size_t s) const {
    return q_v_s0s_[(s0 * k_[1] + s) * k_[3] + v];
}

Seq ResolvabilityCodebook::codeword(const Seq& s0seq, std::size_t w, std::size_t i) const {
    require(s0seq.size() == p_.n, "codeword: s0 sequence has the wrong length");
    require(w < w_ && i < i_, "codeword: index out of range");
    const std::uint64_t idx = seq_index(s0seq, k_[0]);
    CounterRng rng(p_.seed, Domain::resolvability_codebook, static_cast<std::uint32_t>(idx),
                   static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(i));
    Seq u(p_.n);
    for (std::size_t t = 0; t < p_.n; ++t) u[t] = rng.categorical(q_u_s0_.data() + s0seq[t] * k_[2], k_[2]);
    return u;
}

namespace {

void check_seqs(const ResolvabilityCodebook& cb, const Seq& s0seq, const Seq& sseq) {
    require(s0seq.size() == cb.n() && sseq.size() == cb.n(), "sequence length must equal n");
    for (std::size_t t = 0; t < cb.n(); ++t)
        require(s0seq[t] < cb.s0_size() && sseq[t] < cb.s_size(), "sequence letter out of range");
}

std::vector<double> weights_from(const ResolvabilityCodebook& cb, const std::vector<Seq>& bin, const Seq& s0seq,
                                 const Seq& sseq) {
    std::vector<double> w(bin.size(), 1.0);
    for (std::size_t i = 0; i < bin.size(); ++i)
        for (std::size_t t = 0; t < cb.n(); ++t) w[i] *= cb.q_s_us0(sseq[t], bin[i][t], s0seq[t]);
    return w;
}

std::vector<std::vector<Seq>> all_codewords(const ResolvabilityCodebook& cb, const Seq& s0seq) {
    std::vector<std::vector<Seq>> out(cb.w_count());
    for (std::size_t w = 0; w < cb.w_count(); ++w)
        for (std::size_t i = 0; i < cb.i_count(); ++i) out[w].push_back(cb.codeword(s0seq, w, i));
    return out;
}

std::vector<double> induced_from(const ResolvabilityCodebook& cb, const std::vector<std::vector<Seq>>& words,
                                 const Seq& s0seq, const Seq& sseq) {
    const std::size_t V = cb.v_size(), n = cb.n();
    std::vector<double> out(pow_size(V, n), 0.0);
    std::vector<double> factor(V);
    for (std::size_t w = 0; w < cb.w_count(); ++w) {
        auto wt = weights_from(cb, words[w], s0seq, sseq);
        double tot = 0.0;
        for (double x : wt) tot += x;
        if (!(tot > 0.0)) fail(Errc::encoder_failure, "likelihood encoder: all weights vanish in bin " + std::to_string(w));
        for (std::size_t i = 0; i < wt.size(); ++i) {
            if (wt[i] == 0.0) continue;
            std::vector<double> cur{wt[i] / tot / static_cast<double>(cb.w_count())};
            for (std::size_t t = 0; t < n; ++t) {
                for (std::size_t v = 0; v < V; ++v) factor[v] = cb.q_v_us0s(v, words[w][i][t], s0seq[t], sseq[t]);
                kron_step(cur, factor.data(), V);
            }
            for (std::size_t k = 0; k < out.size(); ++k) out[k] += cur[k];
        }
    }
    return out;
}

std::vector<double> target_v(const ResolvabilityCodebook& cb, const Seq& s0seq, const Seq& sseq) {
    const std::size_t V = cb.v_size();
    std::vector<double> cur{1.0}, factor(V);
    for (std::size_t t = 0; t < cb.n(); ++t) {
        for (std::size_t v = 0; v < V; ++v) factor[v] = cb.q_v_s0s(v, s0seq[t], sseq[t]);
        kron_step(cur, factor.data(), V);
    }
    return cur;
}

}  // namespace

std::vector<double> encoder_weights(const ResolvabilityCodebook& cb, std::size_t w, const Seq& s0seq,
                                    const Seq& sseq) {
    check_seqs(cb, s0seq, sseq);
    require(w < cb.w_count(), "encoder_weights: bin index out of range");
    std::vector<Seq> bin;
    for (std::size_t i = 0; i < cb.i_count(); ++i) bin.push_back(cb.codeword(s0seq, w, i));
    return weights_from(cb, bin, s0seq, sseq);
}

EncodeOutcome likelihood_encode(const ResolvabilityCodebook& cb, std::size_t w, const Seq& s0seq, const Seq& sseq,
                                CounterRng& rng) {
    auto wt = encoder_weights(cb, w, s0seq, sseq);
    double tot = 0.0;
    for (double x : wt) tot += x;
    EncodeOutcome out;
    if (!(tot > 0.0)) {
        out.failure = true;
        return out;
    }
    for (auto& x : wt) x /= tot;
    out.index = rng.categorical(wt.data(), wt.size());
    return out;
}

Pmf induced_v_pmf(const ResolvabilityCodebook& cb, const Seq& s0seq, const Seq& sseq) {
    check_seqs(cb, s0seq, sseq);
    return Pmf(induced_from(cb, all_codewords(cb, s0seq), s0seq, sseq), 1e-9);
}

ResolvabilityMeasures resolvability_measures(const ResolvabilityCodebook& cb) {
    const std::size_t n = cb.n();
    const std::uint64_t n0 = pow_size(cb.s0_size(), n), ns = pow_size(cb.s_size(), n);
    ResolvabilityMeasures m;
    for (std::uint64_t a = 0; a < n0; ++a) {
        Seq s0seq = seq_at(a, cb.s0_size(), n);
        std::vector<std::vector<Seq>> words;
        bool have_words = false;
        for (std::uint64_t b = 0; b < ns; ++b) {
            Seq sseq = seq_at(b, cb.s_size(), n);
            double p = 1.0;
            for (std::size_t t = 0; t < n && p > 0; ++t) p *= cb.q_s0s(s0seq[t], sseq[t]);
            if (p == 0.0) continue;
            if (!have_words) {
                words = all_codewords(cb, s0seq);
                have_words = true;
            }
            auto pv = induced_from(cb, words, s0seq, sseq);
            auto qv = target_v(cb, s0seq, sseq);
            double d = 0.0, tv = 0.0;
            for (std::size_t k = 0; k < pv.size(); ++k) {
                tv += std::fabs(pv[k] - qv[k]);
                if (pv[k] > 0.0) {
                    // Absolute continuity: every induced sequence has positive target mass.
                    if (qv[k] <= 0.0) fail(Errc::internal, "induced law not absolutely continuous");
                    d += pv[k] * std::log2(pv[k] / qv[k]);
                }
            }
            m.divergence_bits += p * d;
            m.tv += p * 0.5 * tv;
        }
    }
    return m;
}

double resolvability_divergence(const ResolvabilityCodebook& cb) { return resolvability_measures(cb).divergence_bits; }

double typicality_prob(const ResolvabilityCodebook& cb, std::size_t w, double eps) {
    require(eps >= 0.0, "typicality_prob: eps must be nonnegative");
    require(w < cb.w_count(), "typicality_prob: bin index out of range");
    const std::size_t n = cb.n(), S = cb.s_size(), U = cb.u_size();
    const std::uint64_t n0 = pow_size(cb.s0_size(), n), ns = pow_size(S, n);
    const TypicalityParams tp{eps};
    double total = 0.0;
    Seq letters(n);
    for (std::uint64_t a = 0; a < n0; ++a) {
        Seq s0seq = seq_at(a, cb.s0_size(), n);
        std::vector<Seq> bin;
        for (std::size_t i = 0; i < cb.i_count(); ++i) bin.push_back(cb.codeword(s0seq, w, i));
        for (std::uint64_t b = 0; b < ns; ++b) {
            Seq sseq = seq_at(b, S, n);
            double p = 1.0;
            for (std::size_t t = 0; t < n && p > 0; ++t) p *= cb.q_s0s(s0seq[t], sseq[t]);
            if (p == 0.0) continue;
            auto wt = weights_from(cb, bin, s0seq, sseq);
            double tot = 0.0;
            for (double x : wt) tot += x;
            if (!(tot > 0.0)) fail(Errc::encoder_failure, "likelihood encoder: all weights vanish");
            for (std::size_t i = 0; i < bin.size(); ++i) {
                if (wt[i] == 0.0) continue;
                for (std::size_t t = 0; t < n; ++t) letters[t] = (s0seq[t] * S + sseq[t]) * U + bin[i][t];
                if (is_letter_typical(letters, cb.q_s0_s_u(), tp)) total += p * wt[i] / tot;
            }
        }
    }
    return total;
}

EnsembleResult resolvability_ensemble(const ResolvabilityProblem& p, std::size_t codebooks, unsigned threads) {
    require(codebooks >= 1, "ensemble needs at least one codebook");
    p.validate();
    EnsembleResult r;
    r.divergence.assign(codebooks, 0.0);
    r.tv.assign(codebooks, 0.0);
    detail::parallel_for(codebooks, threads ? threads : default_threads(), [&](std::size_t k) {
        ResolvabilityProblem q = p;
        q.seed = derive_seed(p.seed, k);
        auto m = resolvability_measures(ResolvabilityCodebook(std::move(q)));
        r.divergence[k] = m.divergence_bits;
        r.tv[k] = m.tv;
    });
    for (double d : r.divergence) r.mean_divergence += d;
    r.mean_divergence /= static_cast<double>(codebooks);
    r.w_count = rate_count(p.rt, p.n);
    r.i_count = rate_count(p.rp, p.n);
    return r;
}

ResolvabilityProblem preset_lemma1_demo(std::size_t n, double margin, std::uint64_t seed) {
    constexpr double flip = 1e-4;
    std::vector<double> q(2 * 2 * 2, 0.0);  // S0 trivial; axes S, U, V
    for (std::size_t u = 0; u < 2; ++u)
        for (std::size_t s = 0; s < 2; ++s) q[(s * 2 + u) * 2 + u] = 0.5 * (s == u ? 1.0 - flip : flip);
    ResolvabilityProblem p;
    p.joint = JointPmf({{"S0", 1}, {"S", 2}, {"U", 2}, {"V", 2}}, q);
    p.n = n;
    p.seed = seed;
    const double i_us = mutual_info(p.joint, {"U"}, {"S"}, {"S0"});
    const double i_usv = mutual_info(p.joint, {"U"}, {"S", "V"}, {"S0"});
    const double m = std::fabs(margin);
    const double rp_ok = i_us + m;
    p.rt = std::max(0.0, i_usv + m - rp_ok);
    p.rp = margin >= 0 ? rp_ok : std::max(0.0, i_us + margin);
    return p;
}

}  // namespace secbc
