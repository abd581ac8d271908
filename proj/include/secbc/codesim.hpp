#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "secbc/probkit.hpp"
#include "secbc/regions.hpp"
#include "secbc/rng.hpp"

namespace secbc {

using Seq = std::vector<std::size_t>;

// floor(2^{n*rate}) with a small slack against rounding, at least 1.
std::size_t rate_count(double rate, std::size_t n);
// log2(count) / n.
double realized_rate(std::size_t count, std::size_t n);
// Independent 64-bit seed for the k-th member of a family derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k);

// Mixed-radix index of a sequence, first letter most significant.
std::uint64_t seq_index(const Seq& s, std::size_t alphabet);
Seq seq_at(std::uint64_t index, std::size_t alphabet, std::size_t n);

// Wilson score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::size_t k, std::size_t n, double z = 1.959963984540054);

// ---------------------------------------------------------------- resolvability

struct ResolvabilityProblem {
    JointPmf joint;  // axes S0, S, U, V
    std::size_t n = 2;
    double rt = 0.0;  // bin-selection rate
    double rp = 0.0;  // within-bin rate
    std::uint64_t seed = 1;

    // Axes, rates and the |S0|^n |S|^n |V|^n enumeration budget.
    void validate() const;
};

class ResolvabilityCodebook {
public:
    explicit ResolvabilityCodebook(ResolvabilityProblem p);

    const ResolvabilityProblem& problem() const { return p_; }
    std::size_t n() const { return p_.n; }
    std::size_t w_count() const { return w_; }
    std::size_t i_count() const { return i_; }
    std::size_t s0_size() const { return k_[0]; }
    std::size_t s_size() const { return k_[1]; }
    std::size_t u_size() const { return k_[2]; }
    std::size_t v_size() const { return k_[3]; }

    // Regenerated on every call from (seed, s0 sequence, w, i).
    Seq codeword(const Seq& s0seq, std::size_t w, std::size_t i) const;

    double q_s0s(std::size_t s0, std::size_t s) const { return q_s0s_[s0 * k_[1] + s]; }
    double q_s_us0(std::size_t s, std::size_t u, std::size_t s0) const;
    double q_v_us0s(std::size_t v, std::size_t u, std::size_t s0, std::size_t s) const;
    double q_v_s0s(std::size_t v, std::size_t s0, std::size_t s) const;
    const Pmf& q_s0_s_u() const { return q_s0su_; }

private:
    ResolvabilityProblem p_;
    std::size_t k_[4] = {};
    std::size_t w_ = 1, i_ = 1;
    std::vector<double> q_s0s_, q_u_s0_, q_s_us0_, q_v_us0s_, q_v_s0s_;
    Pmf q_s0su_;
};

// Unnormalized likelihood weights of the bin-w codewords.
std::vector<double> encoder_weights(const ResolvabilityCodebook& cb, std::size_t w, const Seq& s0seq,
                                    const Seq& sseq);

struct EncodeOutcome {
    bool failure = false;  // every weight vanished
    std::size_t index = 0;
};
EncodeOutcome likelihood_encode(const ResolvabilityCodebook& cb, std::size_t w, const Seq& s0seq, const Seq& sseq,
                                CounterRng& rng);

// Exact induced law of V^n given (s0, s); throws encoder_failure if a bin has no weight.
Pmf induced_v_pmf(const ResolvabilityCodebook& cb, const Seq& s0seq, const Seq& sseq);

struct ResolvabilityMeasures {
    double divergence_bits = 0.0;  // conditional divergence from Q^n_{V|S0,S}
    double tv = 0.0;               // TV between the induced and target joints over (S0, S, V)
};
ResolvabilityMeasures resolvability_measures(const ResolvabilityCodebook& cb);
double resolvability_divergence(const ResolvabilityCodebook& cb);

// Probability that (S0, S, U(S0, w, I)) is letter-typical under the induced law.
double typicality_prob(const ResolvabilityCodebook& cb, std::size_t w, double eps);

struct EnsembleResult {
    std::vector<double> divergence;  // per codebook
    std::vector<double> tv;
    double mean_divergence = 0.0;
    std::size_t w_count = 1, i_count = 1;
};
// Codebook k uses derive_seed(problem.seed, k).
EnsembleResult resolvability_ensemble(const ResolvabilityProblem& p, std::size_t codebooks, unsigned threads = 0);

// Binary U uniform, V = U, S = U xor Bern(1e-4), trivial S0. Rates sit `margin`
// bits above the two covering conditions; a negative margin puts the
// within-bin rate below its condition while keeping the bin rate of the
// compliant setting.
ResolvabilityProblem preset_lemma1_demo(std::size_t n, double margin = 0.1, std::uint64_t seed = 1);

// ---------------------------------------------------------------- broadcast code

struct BcCodeConfig {
    BcChannel ch;
    JointPmf aux;  // axes U0, U1, U2, X
    std::size_t n = 2;
    double r0 = 0, r1 = 0, r20 = 0, r22 = 0, r12 = 0;
    double rt = 0, rp = 0;
    TypicalityParams typ{};
    std::uint64_t seed = 1;

    double r2() const { return r20 + r22; }
    void validate() const;
};

struct BcCounts {
    std::size_t m0 = 1, m1 = 1, m20 = 1, m22 = 1, mp = 1, m12 = 1, w = 1, i = 1;
    std::size_t m2() const { return m20 * m22; }
};
BcCounts bc_counts(const BcCodeConfig& cfg);

class BcCodebook {
public:
    explicit BcCodebook(BcCodeConfig cfg);

    const BcCodeConfig& config() const { return cfg_; }
    const BcCounts& counts() const { return c_; }
    std::size_t n() const { return cfg_.n; }

    Seq u0(std::size_t mp) const;
    Seq u1(std::size_t mp, std::size_t m1, std::size_t w, std::size_t i) const;
    Seq u2(std::size_t mp, std::size_t m22) const;
    // Cooperation bin of a public message; bins differ in size by at most one.
    std::size_t bin(std::size_t mp) const { return mp * c_.m12 / c_.mp; }

    double q_u2_u01(std::size_t u2, std::size_t u0, std::size_t u1) const;
    const double* q_x_u(std::size_t u0, std::size_t u1, std::size_t u2) const;
    double q_y2_u(std::size_t y2, std::size_t u0, std::size_t u1, std::size_t u2) const;
    const Pmf& typ1() const { return typ1_; }  // Q over (U0, U1, Y1) letters
    const Pmf& typ2() const { return typ2_; }  // Q over (U0, U2, Y2) letters
    std::size_t k0() const { return k0_; }
    std::size_t k1() const { return k1_; }
    std::size_t k2() const { return k2_; }

private:
    Seq draw(Domain d, std::uint32_t a, std::uint32_t b, std::uint32_t c, const std::vector<double>& cond,
             const Seq* given, std::size_t k) const;

    BcCodeConfig cfg_;
    BcCounts c_;
    std::size_t k0_ = 1, k1_ = 1, k2_ = 1;
    std::vector<double> q_u0_, q_u1_u0_, q_u2_u0_, q_u2_u01_, q_x_u_, q_y2_u_;
    Pmf typ1_, typ2_;
};

BcCodebook gen_bc_codebook(const BcCodeConfig& cfg);

// Unnormalized encoder weights over i for the given public, private and bin indices.
std::vector<double> bc_encoder_weights(const BcCodebook& cb, std::size_t mp, std::size_t m1, std::size_t m22,
                                       std::size_t w);

struct BcEncoding {
    bool failure = false;
    std::size_t w = 0, i = 0;
    Seq x;
};
// m2 is packed as m20 * |M22| + m22; the public index is m0 * |M20| + m20.
BcEncoding bc_encode(const BcCodebook& cb, std::size_t m0, std::size_t m1, std::size_t m2, CounterRng& rng);

struct Decoded1 {
    bool unique = false;
    std::size_t mp = 0, m0 = 0, m1 = 0;
};
Decoded1 decode1(const BcCodebook& cb, const Seq& y1, double eps);
std::size_t g12(const BcCodebook& cb, const Decoded1& d);

struct Decoded2 {
    bool unique = false;
    std::size_t mp = 0, m0 = 0, m2 = 0;
};
Decoded2 decode2(const BcCodebook& cb, std::size_t m12, const Seq& y2, double eps);

struct TrialReport {
    std::size_t trials = 0, errors = 0, encoder_failures = 0;
    double error_rate = 0.0, ci_lo = 0.0, ci_hi = 0.0;
};
// codebooks = 0 draws a fresh codebook for every trial (ensemble average);
// otherwise trial t uses codebook t mod codebooks.
TrialReport run_bc_trials(const BcCodeConfig& cfg, std::size_t trials, std::size_t codebooks = 0,
                          unsigned threads = 0);

struct LeakageReport {
    double leakage_bits = 0.0;   // I(M1; M12, Y2^n)
    double y2_only_bits = 0.0;   // I(M1; Y2^n) from the same joint
    std::string method = "exact";
    std::size_t trials = 0;
};
LeakageReport exact_leakage(const BcCodebook& cb);

// Ternary X1 seen noiselessly at receiver 1 and through an erasure at receiver 2,
// binary X2 seen only at receiver 2. Rates meet the reliability constraints
// with 0.1-bit margins; `ablate` zeroes both resolvability rates.
BcCodeConfig preset_bc_demo(std::size_t n, bool ablate = false, std::uint64_t seed = 1);

}  // namespace secbc
