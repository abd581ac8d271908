#include "secbc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace secbc {

const char* structure_name(Structure s) {
    switch (s) {
        case Structure::general: return "general";
        case Structure::semi_deterministic: return "sd";
        case Structure::physically_degraded: return "pd";
        case Structure::deterministic: return "det";
    }
    return "general";
}

// ---------------------------------------------------------------- channel

namespace {

constexpr double kStructTol = 1e-12;

void vfail(const std::string& what) { fail(Errc::validation, what); }

std::vector<double> y1_marginal_row(const BcChannel& ch, std::size_t x) {
    std::vector<double> r(ch.y1_size, 0.0);
    for (std::size_t a = 0; a < ch.y1_size; ++a)
        for (std::size_t b = 0; b < ch.y2_size; ++b) r[a] += ch.p(x, a, b);
    return r;
}

std::vector<double> y2_marginal_row(const BcChannel& ch, std::size_t x) {
    std::vector<double> r(ch.y2_size, 0.0);
    for (std::size_t a = 0; a < ch.y1_size; ++a)
        for (std::size_t b = 0; b < ch.y2_size; ++b) r[b] += ch.p(x, a, b);
    return r;
}

// Index of the unit entry, or npos when the row is not a point mass.
std::size_t point_mass(const std::vector<double>& row) {
    std::size_t at = std::string::npos;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (std::fabs(row[i] - 1.0) <= kStructTol) {
            at = i;
        } else if (std::fabs(row[i]) > kStructTol) {
            return std::string::npos;
        }
    }
    return at;
}

}  // namespace

CondPmf BcChannel::as_cond() const {
    return CondPmf({{"X", x_size}}, {{"Y1", y1_size}, {"Y2", y2_size}}, law, 1e-9);
}

void BcChannel::validate() const {
    if (x_size == 0 || y1_size == 0 || y2_size == 0) vfail("channel: alphabet sizes must be positive");
    if (law.size() != x_size * y1_size * y2_size) vfail("channel: law has wrong number of entries");
    for (std::size_t x = 0; x < x_size; ++x) {
        double s = 0.0;
        for (std::size_t k = 0; k < y1_size * y2_size; ++k) {
            double v = law[x * y1_size * y2_size + k];
            if (!(v >= 0.0) || !std::isfinite(v)) vfail("channel: negative or non-finite entry in row " + std::to_string(x));
            s += v;
        }
        if (std::fabs(s - 1.0) > 1e-9) vfail("channel: row " + std::to_string(x) + " is not stochastic");
    }
    if (structure == Structure::semi_deterministic || structure == Structure::deterministic) {
        if (g.size() != x_size) vfail("channel: map g missing or wrong length");
        for (std::size_t x = 0; x < x_size; ++x)
            if (point_mass(y1_marginal_row(*this, x)) != g[x])
                vfail("channel: Y1 is not g(X) at x=" + std::to_string(x));
    }
    if (structure == Structure::deterministic) {
        if (h.size() != x_size) vfail("channel: map h missing or wrong length");
        for (std::size_t x = 0; x < x_size; ++x)
            if (point_mass(y2_marginal_row(*this, x)) != h[x])
                vfail("channel: Y2 is not h(X) at x=" + std::to_string(x));
    }
    if (structure == Structure::physically_degraded) {
        if (pd_y1_x.size() != x_size * y1_size || pd_y2_y1.size() != y1_size * y2_size)
            vfail("channel: degradedness witness missing");
        for (std::size_t x = 0; x < x_size; ++x)
            for (std::size_t a = 0; a < y1_size; ++a)
                for (std::size_t b = 0; b < y2_size; ++b)
                    if (std::fabs(p(x, a, b) - pd_y1_x[x * y1_size + a] * pd_y2_y1[a * y2_size + b]) > kStructTol)
                        vfail("channel: law does not factor as Q(y1|x)Q(y2|y1)");
    }
}

BcChannel BcChannel::general(std::size_t x, std::size_t y1, std::size_t y2, std::vector<double> law) {
    BcChannel ch;
    ch.x_size = x;
    ch.y1_size = y1;
    ch.y2_size = y2;
    ch.law = std::move(law);
    ch.validate();
    return ch;
}

BcChannel BcChannel::tagged(std::size_t x, std::size_t y1, std::size_t y2, std::vector<double> law, Structure s) {
    BcChannel ch = general(x, y1, y2, std::move(law));
    ch.structure = s;
    if (s == Structure::semi_deterministic || s == Structure::deterministic) {
        for (std::size_t i = 0; i < x; ++i) {
            auto at = point_mass(y1_marginal_row(ch, i));
            if (at == std::string::npos) vfail("channel: structure tag requires Y1 = g(X); row " + std::to_string(i) + " is random");
            ch.g.push_back(at);
        }
    }
    if (s == Structure::deterministic) {
        for (std::size_t i = 0; i < x; ++i) {
            auto at = point_mass(y2_marginal_row(ch, i));
            if (at == std::string::npos) vfail("channel: structure tag requires Y2 = h(X); row " + std::to_string(i) + " is random");
            ch.h.push_back(at);
        }
    }
    if (s == Structure::physically_degraded) {
        ch.pd_y1_x.assign(x * y1, 0.0);
        std::vector<double> joint(y1 * y2, 0.0), m1(y1, 0.0);
        for (std::size_t i = 0; i < x; ++i) {
            auto r = y1_marginal_row(ch, i);
            for (std::size_t a = 0; a < y1; ++a) {
                ch.pd_y1_x[i * y1 + a] = r[a];
                m1[a] += r[a];
                for (std::size_t b = 0; b < y2; ++b) joint[a * y2 + b] += ch.p(i, a, b);
            }
        }
        ch.pd_y2_y1.assign(y1 * y2, 0.0);
        for (std::size_t a = 0; a < y1; ++a)
            for (std::size_t b = 0; b < y2; ++b)
                ch.pd_y2_y1[a * y2 + b] = m1[a] > 0.0 ? joint[a * y2 + b] / m1[a] : 1.0 / static_cast<double>(y2);
    }
    ch.validate();
    return ch;
}

BcChannel BcChannel::semi_deterministic(std::vector<std::size_t> g, std::size_t y1, const std::vector<double>& q_y2_x,
                                        std::size_t y2) {
    const std::size_t x = g.size();
    require(q_y2_x.size() == x * y2, "semi_deterministic: Q(y2|x) has wrong size");
    std::vector<double> law(x * y1 * y2, 0.0);
    for (std::size_t i = 0; i < x; ++i) {
        require(g[i] < y1, "semi_deterministic: g maps outside Y1");
        for (std::size_t b = 0; b < y2; ++b) law[(i * y1 + g[i]) * y2 + b] = q_y2_x[i * y2 + b];
    }
    return tagged(x, y1, y2, std::move(law), Structure::semi_deterministic);
}

BcChannel BcChannel::physically_degraded(const std::vector<double>& q_y1_x, std::size_t x, std::size_t y1,
                                         const std::vector<double>& q_y2_y1, std::size_t y2) {
    require(q_y1_x.size() == x * y1 && q_y2_y1.size() == y1 * y2, "physically_degraded: factor sizes");
    std::vector<double> law(x * y1 * y2);
    for (std::size_t i = 0; i < x; ++i)
        for (std::size_t a = 0; a < y1; ++a)
            for (std::size_t b = 0; b < y2; ++b) law[(i * y1 + a) * y2 + b] = q_y1_x[i * y1 + a] * q_y2_y1[a * y2 + b];
    BcChannel ch = general(x, y1, y2, std::move(law));
    ch.structure = Structure::physically_degraded;
    ch.pd_y1_x = q_y1_x;
    ch.pd_y2_y1 = q_y2_y1;
    ch.validate();
    return ch;
}

BcChannel BcChannel::deterministic(std::vector<std::size_t> g, std::size_t y1, std::vector<std::size_t> h, std::size_t y2) {
    require(g.size() == h.size(), "deterministic: map lengths differ");
    const std::size_t x = g.size();
    std::vector<double> law(x * y1 * y2, 0.0);
    for (std::size_t i = 0; i < x; ++i) {
        require(g[i] < y1 && h[i] < y2, "deterministic: map value out of range");
        law[(i * y1 + g[i]) * y2 + h[i]] = 1.0;
    }
    return tagged(x, y1, y2, std::move(law), Structure::deterministic);
}

// ---------------------------------------------------------------- RateBounds

const Face& RateBounds::face(const std::string& label) const {
    for (const auto& f : faces)
        if (f.label == label) return f;
    fail(Errc::invalid_argument, "no bound labelled '" + label + "'");
}

bool RateBounds::contains(double r0, double r1, double r2, double tol) const {
    if (r0 < -tol || r1 < -tol || r2 < -tol) return false;
    for (const auto& f : faces)
        if (f.coeffs[0] * r0 + f.coeffs[1] * r1 + f.coeffs[2] * r2 > f.clamped() + tol) return false;
    return true;
}

std::vector<std::array<double, 2>> RateBounds::slice_vertices(double r0) const {
    // Lines a*R1 + b*R2 <= c, with the orthant added.
    struct Line {
        double a, b, c;
    };
    std::vector<Line> lines{{-1, 0, 0}, {0, -1, 0}};
    for (const auto& f : faces) {
        double c = f.clamped() - f.coeffs[0] * r0;
        if (f.coeffs[1] == 0 && f.coeffs[2] == 0) {
            if (c < -1e-12) return {};
            continue;
        }
        lines.push_back({double(f.coeffs[1]), double(f.coeffs[2]), c});
    }
    auto feasible = [&](double x, double y) {
        for (const auto& l : lines)
            if (l.a * x + l.b * y > l.c + 1e-10) return false;
        return true;
    };
    std::vector<std::array<double, 2>> out;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            double det = lines[i].a * lines[j].b - lines[i].b * lines[j].a;
            if (std::fabs(det) < 1e-15) continue;
            double x = (lines[i].c * lines[j].b - lines[i].b * lines[j].c) / det;
            double y = (lines[i].a * lines[j].c - lines[i].c * lines[j].a) / det;
            if (!feasible(x, y)) continue;
            x = std::max(x, 0.0);
            y = std::max(y, 0.0);
            bool dup = false;
            for (const auto& p : out)
                if (std::fabs(p[0] - x) < 1e-13 && std::fabs(p[1] - y) < 1e-13) dup = true;
            if (!dup) out.push_back({x, y});
        }
    return out;
}

// ---------------------------------------------------------------- evaluators

namespace {

Face mk(const std::string& label, int c0, int c1, int c2, double raw) { return Face{label, {c0, c1, c2}, raw}; }

void require_axes(const JointPmf& aux, const AxisSet& names, const char* who) {
    if (aux.rank() != names.size()) fail(Errc::invalid_argument, std::string(who) + ": auxiliary joint has wrong axes");
    for (std::size_t i = 0; i < names.size(); ++i)
        if (aux.axes()[i].name != names[i])
            fail(Errc::invalid_argument, std::string(who) + ": expected axis '" + names[i] + "' at position " +
                                             std::to_string(i) + ", found '" + aux.axes()[i].name + "'");
}

void require_x(const JointPmf& aux, const BcChannel& ch, const char* who) {
    if (aux.axis_size("X") != ch.x_size) fail(Errc::invalid_argument, std::string(who) + ": |X| of auxiliary joint and channel differ");
}

}  // namespace

JointPmf full_joint(const JointPmf& aux, const BcChannel& ch) {
    require_x(aux, ch, "full_joint");
    return compose(aux, ch.as_cond());
}

void check_inner_caps(const JointPmf& aux, std::size_t x_size) {
    if (aux.axis_size("U0") > x_size + 5 || aux.axis_size("U1") > x_size || aux.axis_size("U2") > x_size)
        fail(Errc::invalid_argument, "auxiliary alphabets exceed the cardinality caps");
}

InnerAtoms inner_atoms(const JointPmf& aux, const BcChannel& ch) {
    require_axes(aux, {"U0", "U1", "U2", "X"}, "inner_bound_eval");
    auto j = full_joint(aux, ch);
    InnerAtoms t;
    t.a = mutual_info(j, {"U1"}, {"U2"}, {"U0"});
    t.b = mutual_info(j, {"U1"}, {"U2", "Y2"}, {"U0"});
    t.c = mutual_info(j, {"U1"}, {"Y1"}, {"U0"});
    t.d = mutual_info(j, {"U0", "U1"}, {"Y1"});
    t.e = mutual_info(j, {"U2"}, {"Y2"}, {"U0"});
    t.f = mutual_info(j, {"U0", "U2"}, {"Y2"});
    return t;
}

RateBounds inner_bound_eval(const JointPmf& aux, const BcChannel& ch, double r12) {
    require(r12 >= 0.0, "inner_bound_eval: r12 must be nonnegative");
    auto t = inner_atoms(aux, ch);
    RateBounds rb;
    rb.r12 = r12;
    rb.faces = {mk("R1", 0, 1, 0, t.c - t.b), mk("R0+R1", 1, 1, 0, t.d - t.b), mk("R0+R2", 1, 0, 1, t.f + r12),
                mk("sum", 1, 1, 1, t.d + t.e - t.b)};
    return rb;
}

RateBounds sd_region_eval(const JointPmf& aux, const BcChannel& ch, double r12) {
    if (ch.structure != Structure::semi_deterministic && ch.structure != Structure::deterministic)
        fail(Errc::invalid_argument, "sd_region_eval: channel is not semi-deterministic");
    require(r12 >= 0.0, "sd_region_eval: r12 must be nonnegative");
    require_axes(aux, {"W", "V", "X"}, "sd_region_eval");
    auto j = full_joint(aux, ch);
    const double h1 = cond_entropy(j, {"Y1"}, {"W", "V", "Y2"});
    const double iw1 = mutual_info(j, {"W"}, {"Y1"});
    RateBounds rb;
    rb.r12 = r12;
    rb.faces = {mk("R1", 0, 1, 0, h1), mk("R0+R1", 1, 1, 0, h1 + iw1),
                mk("R0+R2", 1, 0, 1, mutual_info(j, {"W", "V"}, {"Y2"}) + r12),
                mk("sum", 1, 1, 1, h1 + mutual_info(j, {"V"}, {"Y2"}, {"W"}) + iw1)};
    return rb;
}

RateBounds pd_region_eval(const JointPmf& aux, const BcChannel& ch, double r12, bool secrecy) {
    if (ch.structure != Structure::physically_degraded)
        fail(Errc::invalid_argument, "pd_region_eval: channel is not physically degraded");
    require(r12 >= 0.0, "pd_region_eval: r12 must be nonnegative");
    require_axes(aux, {"W", "X"}, "pd_region_eval");
    auto j = full_joint(aux, ch);
    const double ix1w = mutual_info(j, {"X"}, {"Y1"}, {"W"});
    const double iw2 = mutual_info(j, {"W"}, {"Y2"});
    const double ix1 = mutual_info(j, {"X"}, {"Y1"});
    RateBounds rb;
    rb.r12 = r12;
    if (secrecy) {
        const double ix2w = mutual_info(j, {"X"}, {"Y2"}, {"W"});
        rb.faces = {mk("R1", 0, 1, 0, ix1w - ix2w), mk("R0+R2", 1, 0, 1, iw2 + r12), mk("sum", 1, 1, 1, ix1 - ix2w)};
    } else {
        rb.faces = {mk("R0", 1, 0, 0, 0.0), mk("R1", 0, 1, 0, ix1w), mk("R2", 0, 0, 1, iw2 + r12),
                    mk("R1+R2", 0, 1, 1, ix1)};
    }
    return rb;
}

RateBounds dbc_region_eval(const Pmf& qx, const BcChannel& ch, double r12) {
    if (ch.structure != Structure::deterministic) fail(Errc::invalid_argument, "dbc_region_eval: channel is not deterministic");
    require(qx.size() == ch.x_size, "dbc_region_eval: input alphabet mismatch");
    require(r12 >= 0.0, "dbc_region_eval: r12 must be nonnegative");
    auto j = compose(qx, ch.as_cond());
    RateBounds rb;
    rb.r12 = r12;
    rb.faces = {mk("R0", 1, 0, 0, 0.0), mk("R1", 0, 1, 0, cond_entropy(j, {"Y1"}, {"Y2"})),
                mk("R2", 0, 0, 1, entropy(j, {"Y2"}) + r12), mk("R1+R2", 0, 1, 1, entropy(j, {"Y1", "Y2"}))};
    return rb;
}

RateBounds nosec_region_eval(const JointPmf& aux, const BcChannel& ch, double r12, bool restricted) {
    require(r12 >= 0.0, "nosec_region_eval: r12 must be nonnegative");
    require_axes(aux, {"U0", "U1", "U2", "X"}, "nosec_region_eval");
    auto j = full_joint(aux, ch);
    const double i01_1 = mutual_info(j, {"U0", "U1"}, {"Y1"});
    const double i02_2 = mutual_info(j, {"U0", "U2"}, {"Y2"});
    const double i1_1 = mutual_info(j, {"U1"}, {"Y1"}, {"U0"});
    const double i2_2 = mutual_info(j, {"U2"}, {"Y2"}, {"U0"});
    const double i12 = mutual_info(j, {"U1"}, {"U2"}, {"U0"});
    const double r1 = restricted ? i1_1 + std::max(0.0, i2_2 - i12) : i01_1;
    RateBounds rb;
    rb.r12 = r12;
    rb.faces = {mk("R0", 1, 0, 0, 0.0), mk("R1", 0, 1, 0, r1), mk("R2", 0, 0, 1, i02_2 + r12),
                mk("R1+R2a", 0, 1, 1, i01_1 + i2_2 - i12), mk("R1+R2b", 0, 1, 1, i1_1 + i02_2 - i12 + r12)};
    // Setting R10 = 0 specializes the unrestricted scheme, so decoder 1's joint bound still applies.
    if (restricted) rb.faces.push_back(mk("R1-joint", 0, 1, 0, i01_1));
    return rb;
}

// ---------------------------------------------------------------- closed forms

namespace {

void check_simplex(double alpha, double beta, double r12) {
    require(alpha >= 0.0 && beta >= 0.0 && alpha + beta <= 1.0 + 1e-12, "BBC parameters outside the simplex");
    require(r12 >= 0.0, "r12 must be nonnegative");
}

// (1-alpha) Hb(beta/(1-alpha)), continuously extended by 0 at alpha = 1.
double conditional_term(double alpha, double beta) {
    if (alpha >= 1.0) return 0.0;
    return (1.0 - alpha) * hb(std::min(1.0, beta / (1.0 - alpha)));
}

double half_log2(double x) { return 0.5 * std::log2(x); }

void check_gauss(const GaussianParams& gp) {
    require(gp.P >= 0.0 && gp.N1 > 0.0, "Gaussian: need P >= 0 and N1 > 0");
    require(gp.N2 > gp.N1, "Gaussian: need N2 > N1");
    require(gp.alpha >= 0.0 && gp.alpha <= 1.0, "Gaussian: alpha outside [0,1]");
    require(gp.r12 >= 0.0, "Gaussian: r12 must be nonnegative");
}

}  // namespace

RateBounds bbc_secrecy_bounds(double alpha, double beta, double r12) {
    check_simplex(alpha, beta, r12);
    const double t = conditional_term(alpha, beta);
    RateBounds rb;
    rb.r12 = r12;
    rb.faces = {mk("R0", 1, 0, 0, 0.0), mk("R1", 0, 1, 0, t), mk("R2", 0, 0, 1, hb(alpha) + r12),
                mk("R1+R2", 0, 1, 1, hb(alpha) + t)};
    return rb;
}

RateBounds bbc_nosecrecy_bounds(double alpha, double beta, double r12) {
    auto rb = bbc_secrecy_bounds(alpha, beta, r12);
    rb.faces[1].raw = hb(std::min(1.0, alpha + beta));
    return rb;
}

RateBounds gaussian_secrecy_bounds(const GaussianParams& gp) {
    check_gauss(gp);
    const double leak = half_log2(1.0 + gp.alpha * gp.P / gp.N2);
    RateBounds rb;
    rb.r12 = gp.r12;
    rb.faces = {mk("R0", 1, 0, 0, 0.0), mk("R1", 0, 1, 0, half_log2(1.0 + gp.alpha * gp.P / gp.N1) - leak),
                mk("R2", 0, 0, 1, half_log2(1.0 + (1.0 - gp.alpha) * gp.P / (gp.alpha * gp.P + gp.N2)) + gp.r12),
                mk("R1+R2", 0, 1, 1, half_log2(1.0 + gp.P / gp.N1) - leak)};
    return rb;
}

RateBounds gaussian_nosecrecy_bounds(const GaussianParams& gp) {
    check_gauss(gp);
    RateBounds rb;
    rb.r12 = gp.r12;
    rb.faces = {mk("R0", 1, 0, 0, 0.0), mk("R1", 0, 1, 0, half_log2(1.0 + gp.alpha * gp.P / gp.N1)),
                mk("R2", 0, 0, 1, half_log2(1.0 + (1.0 - gp.alpha) * gp.P / (gp.alpha * gp.P + gp.N2)) + gp.r12),
                mk("R1+R2", 0, 1, 1, half_log2(1.0 + gp.P / gp.N1))};
    return rb;
}

// ---------------------------------------------------------------- binary dirty paper

double upper_concave_envelope_at(const std::vector<double>& xs, const std::vector<double>& fs, double x) {
    require(xs.size() == fs.size() && !xs.empty(), "envelope: bad samples");
    require(x >= xs.front() - 1e-12 && x <= xs.back() + 1e-12, "envelope: point outside grid");
    // Andrew's monotone chain, upper part only.
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        while (hull.size() >= 2) {
            auto a = hull[hull.size() - 2], b = hull.back();
            double cross = (xs[b] - xs[a]) * (fs[i] - fs[a]) - (fs[b] - fs[a]) * (xs[i] - xs[a]);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        double x0 = xs[hull[k]], x1 = xs[hull[k + 1]];
        if (x >= x0 - 1e-15 && x <= x1 + 1e-15) {
            if (x1 == x0) return std::max(fs[hull[k]], fs[hull[k + 1]]);
            double t = (x - x0) / (x1 - x0);
            return fs[hull[k]] + t * (fs[hull[k + 1]] - fs[hull[k]]);
        }
    }
    return fs[hull.back()];
}

namespace {
void check_bdp(const BdpParams& bp) {
    require(bp.q >= 0.0 && bp.q <= 0.5, "BDP: q outside [0, 1/2]");
    require(bp.eps >= 0.0 && bp.eps <= 0.5, "BDP: eps outside [0, 1/2]");
}
}  // namespace

double bdp_fcsi_capacity(const BdpParams& bp) {
    check_bdp(bp);
    const double conv = bp.q * (1.0 - bp.eps) + (1.0 - bp.q) * bp.eps;
    return hb(conv) - hb(bp.eps);
}

double bdp_gp_capacity(const BdpParams& bp) {
    check_bdp(bp);
    constexpr std::size_t kGrid = 10000;
    std::vector<double> xs(kGrid + 1), fs(kGrid + 1);
    for (std::size_t i = 0; i <= kGrid; ++i) {
        xs[i] = 0.5 * static_cast<double>(i) / kGrid;
        fs[i] = std::max(0.0, hb(xs[i]) - hb(bp.eps));
    }
    return upper_concave_envelope_at(xs, fs, bp.q);
}

// ---------------------------------------------------------------- presets

BcChannel preset_bbc() { return BcChannel::deterministic({1, 1, 0}, 2, {0, 1, 1}, 2); }

BcChannel preset_pd_bbc() {
    // Y1 = X, Y2 = h(X); Y2 is a function of Y1 so the channel is degraded.
    const std::vector<std::size_t> h{0, 1, 1};
    std::vector<double> q1(9, 0.0), q2(6, 0.0);
    for (std::size_t x = 0; x < 3; ++x) {
        q1[x * 3 + x] = 1.0;
        q2[x * 2 + h[x]] = 1.0;
    }
    return BcChannel::physically_degraded(q1, 3, 3, q2, 2);
}

BcChannel preset_semi_orthogonal(double p1, double eps) {
    require(p1 >= 0.0 && p1 <= 1.0 && eps >= 0.0 && eps <= 1.0, "semi-orthogonal: crossover outside [0,1]");
    std::vector<double> law(4 * 2 * 2, 0.0);
    for (std::size_t x1 = 0; x1 < 2; ++x1)
        for (std::size_t x2 = 0; x2 < 2; ++x2) {
            const std::size_t x = 2 * x1 + x2;
            for (std::size_t y1 = 0; y1 < 2; ++y1)
                for (std::size_t z = 0; z < 2; ++z) {
                    const std::size_t y2 = x1 ^ x2 ^ z;
                    law[(x * 2 + y1) * 2 + y2] += (y1 == x1 ? 1.0 - p1 : p1) * (z ? eps : 1.0 - eps);
                }
        }
    return BcChannel::general(4, 2, 2, std::move(law));
}

BcChannel preset_channel(const std::string& name) {
    if (name == "bbc" || name == "bbc-nosec") return preset_bbc();
    if (name == "pd-bbc") return preset_pd_bbc();
    if (name == "semi-orthogonal") return preset_semi_orthogonal();
    fail(Errc::invalid_argument, "unknown channel preset '" + name + "'");
}

}  // namespace secbc
