#include "secbc/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "secbc/rng.hpp"

namespace secbc {

namespace {

using Row = LinIneq;

// Canonical key of the direction of a row: coefficients scaled so that the
// first one has magnitude 1.
std::string direction_key(const Row& r, Rational& scale) {
    scale = abs(r.coeffs.begin()->second);
    std::string key;
    for (const auto& [v, c] : r.coeffs) {
        key += v;
        key += ':';
        key += Rational(c / scale).get_str();
        key += ';';
    }
    return key;
}

// Removes trivial rows (keeping one infeasible marker when needed) and merges
// parallel rows with the same direction by keeping the tightest.
std::vector<Row> tidy(const std::vector<Row>& rows) {
    std::vector<Row> out;
    std::map<std::string, std::size_t> seen;
    bool infeasible = false;
    for (const auto& r : rows) {
        if (r.trivial()) {
            if (r.rhs < 0) infeasible = true;
            continue;
        }
        Rational scale;
        std::string key = direction_key(r, scale);
        Row n;
        for (const auto& [v, c] : r.coeffs) n.coeffs.emplace(v, c / scale);
        n.rhs = r.rhs / scale;
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(key, out.size());
            out.push_back(std::move(n));
        } else if (n.rhs < out[it->second].rhs) {
            out[it->second].rhs = n.rhs;
        }
    }
    if (infeasible) {
        Row bad;
        bad.rhs = -1;
        out.insert(out.begin(), bad);
    }
    return out;
}

std::vector<Row> eliminate_rows(const std::vector<Row>& rows, const std::string& var) {
    std::vector<const Row*> pos, neg;
    std::vector<Row> out;
    for (const auto& r : rows) {
        auto it = r.coeffs.find(var);
        if (it == r.coeffs.end())
            out.push_back(r);
        else if (it->second > 0)
            pos.push_back(&r);
        else
            neg.push_back(&r);
    }
    for (const Row* p : pos) {
        const Rational a = p->coeffs.at(var);
        for (const Row* n : neg) {
            const Rational b = -n->coeffs.at(var);
            Row c;
            for (const auto& [v, k] : p->coeffs)
                if (v != var) c.coeffs[v] += b * k;
            for (const auto& [v, k] : n->coeffs)
                if (v != var) c.coeffs[v] += a * k;
            for (auto it = c.coeffs.begin(); it != c.coeffs.end();)
                it = it->second == 0 ? c.coeffs.erase(it) : std::next(it);
            c.rhs = b * p->rhs + a * n->rhs;
            out.push_back(std::move(c));
        }
    }
    return tidy(out);
}

// Variable whose elimination creates the fewest new rows.
std::string min_fill(const std::vector<Row>& rows, const std::vector<std::string>& candidates) {
    std::string best;
    long long best_cost = 0;
    for (const auto& v : candidates) {
        long long p = 0, n = 0;
        for (const auto& r : rows) {
            auto it = r.coeffs.find(v);
            if (it == r.coeffs.end()) continue;
            (it->second > 0 ? p : n)++;
        }
        long long cost = p * n - p - n;
        if (best.empty() || cost < best_cost) best = v, best_cost = cost;
    }
    return best;
}

bool rows_feasible(std::vector<Row> rows, std::vector<std::string> vars) {
    rows = tidy(rows);
    while (!vars.empty()) {
        if (!rows.empty() && rows.front().trivial()) return false;
        std::string v = min_fill(rows, vars);
        rows = eliminate_rows(rows, v);
        vars.erase(std::find(vars.begin(), vars.end(), v));
    }
    return rows.empty() || !rows.front().trivial();
}

using Mat = std::vector<std::vector<Rational>>;

Mat dense(const std::vector<Row>& rows, const std::vector<std::string>& vars) {
    Mat a(rows.size(), std::vector<Rational>(vars.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < vars.size(); ++k) {
            auto it = rows[i].coeffs.find(vars[k]);
            if (it != rows[i].coeffs.end()) a[i][k] = it->second;
        }
    return a;
}

// Row-reduces m in place; returns the pivot columns.
std::vector<std::size_t> rref(Mat& m, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t k = c; k < m[i].size(); ++k) m[i][k] -= f * m[r][k];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t rank_of(Mat m, std::size_t cols) { return rref(m, cols).size(); }

template <class F>
void for_each_subset(std::size_t m, std::size_t k, F&& f) {
    if (k > m) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    return s;
}

void scale_ray(std::vector<Rational>& r) {
    Rational mx = 0;
    for (const auto& x : r) mx = std::max(mx, Rational(abs(x)));
    for (auto& x : r) x /= mx;
}

VertexSet enumerate_rows(const std::vector<Row>& rows_in, const std::vector<std::string>& vars) {
    const std::size_t d = vars.size();
    if (d > kMaxEnumDim)
        fail(Errc::resource, "vertex enumeration refused: dimension " + std::to_string(d) + " exceeds " +
                                 std::to_string(kMaxEnumDim));
    VertexSet vs;
    auto rows = tidy(rows_in);
    if (!rows_feasible(rows, vars)) {
        vs.empty = true;
        return vs;
    }
    Mat a = dense(rows, vars);
    std::vector<Rational> b;
    for (const auto& r : rows) b.push_back(r.rhs);
    if (rank_of(a, d) < d) fail(Errc::invalid_argument, "polyhedron is not pointed (nonzero lineality space)");
    auto inside = [&](const std::vector<Rational>& x) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (dot(a[i], x) > b[i]) return false;
        return true;
    };
    std::set<std::vector<Rational>> verts, rays;
    if (d == 0) {
        verts.insert({});
    } else {
        for_each_subset(rows.size(), d, [&](const std::vector<std::size_t>& idx) {
            Mat m;
            for (auto i : idx) {
                auto row = a[i];
                row.push_back(b[i]);
                m.push_back(std::move(row));
            }
            if (rref(m, d).size() < d) return;
            std::vector<Rational> x(d);
            for (std::size_t k = 0; k < d; ++k) x[k] = m[k][d];
            if (inside(x)) verts.insert(std::move(x));
        });
        for_each_subset(rows.size(), d - 1, [&](const std::vector<std::size_t>& idx) {
            Mat m;
            for (auto i : idx) m.push_back(a[i]);
            auto piv = rref(m, d);
            if (piv.size() != d - 1) return;
            std::size_t free = 0;
            while (std::find(piv.begin(), piv.end(), free) != piv.end()) ++free;
            std::vector<Rational> r(d);
            r[free] = 1;
            for (std::size_t k = 0; k < piv.size(); ++k) r[piv[k]] = -m[k][free];
            for (int sign : {1, -1}) {
                std::vector<Rational> rr = r;
                if (sign < 0)
                    for (auto& x : rr) x = -x;
                bool ok = true;
                for (std::size_t i = 0; i < rows.size() && ok; ++i) ok = dot(a[i], rr) <= 0;
                if (ok) {
                    scale_ray(rr);
                    rays.insert(std::move(rr));
                }
            }
        });
    }
    vs.vertices.assign(verts.begin(), verts.end());
    vs.rays.assign(rays.begin(), rays.end());
    return vs;
}

// Supremum of c.x over rows, +inf reported as has_bound = false.
bool maximize(const std::vector<Row>& rows, const std::vector<std::string>& vars, const Row& objective,
              Rational& out) {
    const std::size_t d = vars.size();
    Mat a = dense(rows, vars);
    if (rank_of(a, d) == d) {
        auto vs = enumerate_rows(rows, vars);
        std::vector<Rational> c = dense({objective}, vars)[0];
        for (const auto& r : vs.rays)
            if (dot(c, r) > 0) return false;
        bool first = true;
        for (const auto& v : vs.vertices) {
            Rational val = dot(c, v);
            if (first || val > out) out = val, first = false;
        }
        return !first;
    }
    // Lineality present: project the objective value out by elimination.
    const std::string t = "\x01obj";
    std::vector<Row> ext = rows;
    Row up = objective, down;
    up.coeffs[t] = -1;
    up.rhs = 0;
    for (const auto& [v, k] : objective.coeffs) down.coeffs[v] = -k;
    down.coeffs[t] = 1;
    down.rhs = 0;
    ext.push_back(up);
    ext.push_back(down);
    auto rest = vars;
    while (!rest.empty()) {
        std::string v = min_fill(ext, rest);
        ext = eliminate_rows(ext, v);
        rest.erase(std::find(rest.begin(), rest.end(), v));
    }
    bool bounded = false;
    for (const auto& r : ext) {
        auto it = r.coeffs.find(t);
        if (it == r.coeffs.end() || it->second <= 0) continue;
        Rational ub = r.rhs / it->second;
        if (!bounded || ub < out) out = ub, bounded = true;
    }
    return bounded;
}

IneqSystem infeasible_system(const std::vector<std::string>& vars) {
    IneqSystem s;
    s.vars = vars;
    LinIneq bad;
    bad.rhs = -1;
    s.ineqs.push_back(bad);
    return s;
}

}  // namespace

void IneqSystem::add(std::map<std::string, Rational> coeffs, Rational rhs) {
    LinIneq r;
    for (auto& [v, c] : coeffs) {
        if (!has_var(v)) fail(Errc::invalid_argument, "inequality uses undeclared variable '" + v + "'");
        c.canonicalize();
        if (c != 0) r.coeffs.emplace(v, c);
    }
    rhs.canonicalize();
    r.rhs = rhs;
    ineqs.push_back(std::move(r));
}

void IneqSystem::add_ge(std::map<std::string, Rational> coeffs, Rational rhs) {
    for (auto& [v, c] : coeffs) c = -c;
    add(std::move(coeffs), -rhs);
}

void IneqSystem::add_eq(std::map<std::string, Rational> coeffs, Rational rhs) {
    add(coeffs, rhs);
    add_ge(std::move(coeffs), rhs);
}

void IneqSystem::add_nonneg(const std::string& var) { add_ge({{var, 1}}, 0); }

bool IneqSystem::has_var(const std::string& v) const { return std::find(vars.begin(), vars.end(), v) != vars.end(); }

void IneqSystem::validate() const {
    std::set<std::string> names(vars.begin(), vars.end());
    if (names.size() != vars.size()) fail(Errc::validation, "duplicate variable name");
    for (const auto& r : ineqs)
        for (const auto& [v, c] : r.coeffs) {
            if (!names.count(v)) fail(Errc::validation, "inequality uses undeclared variable '" + v + "'");
            if (c == 0) fail(Errc::validation, "zero coefficient stored for '" + v + "'");
        }
}

Rational rationalize(double x, double resolution) {
    require(std::isfinite(x), "rationalize: value is not finite");
    require(resolution > 0 && resolution <= 1, "rationalize: resolution must lie in (0, 1]");
    const double steps = std::round(1.0 / resolution);
    mpz_class num;
    mpz_set_d(num.get_mpz_t(), std::round(x * steps));
    mpz_class den;
    mpz_set_d(den.get_mpz_t(), steps);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& s) {
    auto bad = [&] { fail(Errc::parse, "malformed rational '" + s + "'"); };
    if (s.empty()) bad();
    std::size_t slash = s.find('/');
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto to_mpz = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return mpz_class(t);
    };
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) bad();
        mpz_class den = to_mpz(q);
        if (den == 0) fail(Errc::parse, "zero denominator in '" + s + "'");
        Rational r(to_mpz(p), den);
        r.canonicalize();
        return r;
    }
    std::size_t dot = s.find('.');
    if (dot == std::string::npos) {
        if (!is_int(s)) bad();
        return Rational(to_mpz(s));
    }
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (fp.empty() || !is_int(fp) || fp[0] == '-' || fp[0] == '+') bad();
    bool neg = !ip.empty() && ip[0] == '-';
    std::string digits = ip;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
    if (!digits.empty() && !is_int(digits)) bad();
    mpz_class num(digits.empty() ? std::string("0") : digits);
    mpz_class den = 1;
    for (char c : fp) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    Rational r(neg ? mpz_class(-num) : num, den);
    r.canonicalize();
    return r;
}

std::string rational_str(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

IneqSystem fme_eliminate(const IneqSystem& sys, const std::string& var) {
    if (!sys.has_var(var)) fail(Errc::invalid_argument, "cannot eliminate unknown variable '" + var + "'");
    IneqSystem out;
    for (const auto& v : sys.vars)
        if (v != var) out.vars.push_back(v);
    out.ineqs = eliminate_rows(sys.ineqs, var);
    return out;
}

bool feasible(const IneqSystem& sys) { return rows_feasible(sys.ineqs, sys.vars); }

bool contains(const IneqSystem& sys, const std::vector<Rational>& point) {
    require(point.size() == sys.vars.size(), "contains: point dimension mismatch");
    std::map<std::string, const Rational*> at;
    for (std::size_t i = 0; i < sys.vars.size(); ++i) at[sys.vars[i]] = &point[i];
    for (const auto& r : sys.ineqs) {
        Rational s = 0;
        for (const auto& [v, c] : r.coeffs) s += c * *at.at(v);
        if (s > r.rhs) return false;
    }
    return true;
}

bool lifts(const IneqSystem& sys, const std::map<std::string, Rational>& fixed) {
    std::vector<std::string> rest;
    for (const auto& v : sys.vars)
        if (!fixed.count(v)) rest.push_back(v);
    for (const auto& [v, _] : fixed)
        if (!sys.has_var(v)) fail(Errc::invalid_argument, "lifts: unknown variable '" + v + "'");
    std::vector<Row> rows;
    for (const auto& r : sys.ineqs) {
        Row n;
        n.rhs = r.rhs;
        for (const auto& [v, c] : r.coeffs) {
            auto it = fixed.find(v);
            if (it == fixed.end())
                n.coeffs.emplace(v, c);
            else
                n.rhs -= c * it->second;
        }
        rows.push_back(std::move(n));
    }
    return rows_feasible(rows, rest);
}

VertexSet enumerate_vertices(const IneqSystem& sys) { return enumerate_rows(sys.ineqs, sys.vars); }

IneqSystem remove_redundant(const IneqSystem& sys) {
    sys.validate();
    if (sys.dim() > kMaxEnumDim)
        fail(Errc::resource, "redundancy removal refused: dimension " + std::to_string(sys.dim()) + " exceeds " +
                                 std::to_string(kMaxEnumDim));
    if (!feasible(sys)) return infeasible_system(sys.vars);
    std::vector<Row> rows = tidy(sys.ineqs);
    for (std::size_t i = 0; i < rows.size();) {
        std::vector<Row> others;
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (k != i) others.push_back(rows[k]);
        Rational mx;
        if (maximize(others, sys.vars, rows[i], mx) && mx <= rows[i].rhs)
            rows.erase(rows.begin() + static_cast<long>(i));
        else
            ++i;
    }
    IneqSystem out;
    out.vars = sys.vars;
    out.ineqs = std::move(rows);
    return out;
}

IneqSystem project_region_ordered(const IneqSystem& sys, const std::vector<std::string>& keep,
                                  const std::vector<std::string>& order) {
    sys.validate();
    for (const auto& k : keep)
        if (!sys.has_var(k)) fail(Errc::invalid_argument, "cannot keep unknown variable '" + k + "'");
    std::set<std::string> drop;
    for (const auto& v : sys.vars)
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) drop.insert(v);
    std::set<std::string> ord(order.begin(), order.end());
    if (ord != drop || ord.size() != order.size())
        fail(Errc::invalid_argument, "elimination order must list each dropped variable once");
    IneqSystem cur = sys;
    for (const auto& v : order) cur = fme_eliminate(cur, v);
    cur.vars = keep;
    return remove_redundant(cur);
}

IneqSystem project_region(const IneqSystem& sys, const std::vector<std::string>& keep) {
    sys.validate();
    for (const auto& k : keep)
        if (!sys.has_var(k)) fail(Errc::invalid_argument, "cannot keep unknown variable '" + k + "'");
    std::vector<std::string> drop;
    for (const auto& v : sys.vars)
        if (std::find(keep.begin(), keep.end(), v) == keep.end()) drop.push_back(v);
    std::vector<std::string> order;
    std::vector<Row> rows = tidy(sys.ineqs);
    while (!drop.empty()) {
        std::string v = min_fill(rows, drop);
        rows = eliminate_rows(rows, v);
        order.push_back(v);
        drop.erase(std::find(drop.begin(), drop.end(), v));
    }
    return project_region_ordered(sys, keep, order);
}

bool same_polytope(const IneqSystem& a, const IneqSystem& b) {
    std::set<std::string> va(a.vars.begin(), a.vars.end()), vb(b.vars.begin(), b.vars.end());
    if (va != vb) return false;
    IneqSystem bb = b;
    bb.vars = a.vars;
    auto x = enumerate_vertices(a), y = enumerate_vertices(bb);
    if (x.empty || y.empty) return x.empty == y.empty;
    return x.vertices == y.vertices && x.rays == y.rays;
}

IneqSystem thm1_rate_system(const InnerAtoms& t, double r12) {
    require(r12 >= 0.0, "thm1_rate_system: r12 must be nonnegative");
    IneqSystem s;
    s.vars = {"R0", "R1", "R2", "R20", "R22", "Rp", "Rt"};
    s.add_ge({{"Rp", 1}}, rationalize(t.a));
    s.add_ge({{"Rp", 1}, {"Rt", 1}}, rationalize(t.b));
    s.add({{"R1", 1}, {"Rt", 1}, {"Rp", 1}}, rationalize(t.c));
    s.add({{"R0", 1}, {"R20", 1}, {"R1", 1}, {"Rt", 1}, {"Rp", 1}}, rationalize(t.d));
    s.add({{"R22", 1}}, rationalize(t.e));
    s.add({{"R0", 1}, {"R2", 1}}, rationalize(t.f) + rationalize(r12));
    s.add_eq({{"R2", 1}, {"R20", -1}, {"R22", -1}}, 0);
    for (const auto& v : s.vars) s.add_nonneg(v);
    return s;
}

IneqSystem thm1_region_system(const InnerAtoms& t, double r12) {
    require(r12 >= 0.0, "thm1_region_system: r12 must be nonnegative");
    const Rational b = rationalize(t.b), c = rationalize(t.c), d = rationalize(t.d), e = rationalize(t.e),
                   f = rationalize(t.f);
    IneqSystem s;
    s.vars = {"R0", "R1", "R2"};
    s.add({{"R1", 1}}, c - b);
    s.add({{"R0", 1}, {"R1", 1}}, d - b);
    s.add({{"R0", 1}, {"R2", 1}}, f + rationalize(r12));
    s.add({{"R0", 1}, {"R1", 1}, {"R2", 1}}, d + e - b);
    for (const auto& v : s.vars) s.add_nonneg(v);
    return s;
}

IneqSystem rate_bounds_system(const RateBounds& rb) {
    IneqSystem s;
    s.vars = {"R0", "R1", "R2"};
    for (const auto& f : rb.faces) {
        std::map<std::string, Rational> c;
        for (std::size_t k = 0; k < 3; ++k)
            if (f.coeffs[k] != 0) c[s.vars[k]] = f.coeffs[k];
        s.add(c, rationalize(f.raw));
    }
    for (const auto& v : s.vars) s.add_nonneg(v);
    return s;
}

namespace {

std::vector<double> draw_simplex(CounterRng& rng, std::size_t k, double sharpness) {
    std::vector<double> w(k);
    double tot = 0.0;
    for (auto& v : w) tot += (v = std::pow(rng.exponential(), sharpness));
    for (auto& v : w) v /= tot;
    return w;
}

}  // namespace

Thm1Instance thm1_derivation_instance(std::uint64_t aux_seed, double r12) {
    constexpr std::size_t kx = 3, k0 = 2, k1 = 3, k2 = 3;
    std::vector<double> law(kx * kx * kx);
    for (std::size_t x = 0; x < kx; ++x)
        for (std::size_t a = 0; a < kx; ++a)
            for (std::size_t b = 0; b < kx; ++b) {
                double p1 = (a == x ? 0.9 : 0.0) + 0.1 / kx;
                double p2 = (b == x ? 0.4 : 0.0) + 0.6 / kx;
                law[(x * kx + a) * kx + b] = p1 * p2;
            }
    Thm1Instance inst{BcChannel::general(kx, kx, kx, law), {}, {}, r12};

    CounterRng rng(aux_seed, Domain::aux_sample, 0x7E1u, 0, 0);
    const bool correlated = aux_seed % 2 == 1;
    std::vector<double> w(k0 * k1 * k2 * kx);
    auto q0 = draw_simplex(rng, k0, 1.0);
    for (std::size_t u0 = 0; u0 < k0; ++u0) {
        std::vector<double> q12(k1 * k2);
        if (correlated) {
            q12 = draw_simplex(rng, k1 * k2, 2.0);
        } else {
            auto q1 = draw_simplex(rng, k1, 2.0), q2 = draw_simplex(rng, k2, 2.0);
            for (std::size_t u1 = 0; u1 < k1; ++u1)
                for (std::size_t u2 = 0; u2 < k2; ++u2) q12[u1 * k2 + u2] = q1[u1] * q2[u2];
        }
        for (std::size_t u12 = 0; u12 < k1 * k2; ++u12) {
            auto qx = draw_simplex(rng, kx, 3.0);
            for (std::size_t x = 0; x < kx; ++x) w[(u0 * k1 * k2 + u12) * kx + x] = q0[u0] * q12[u12] * qx[x];
        }
    }
    inst.aux = JointPmf({{"U0", k0}, {"U1", k1}, {"U2", k2}, {"X", kx}}, w, 1e-9);
    inst.atoms = inner_atoms(inst.aux, inst.ch);
    return inst;
}

Thm1Check thm1_derivation_check(const Thm1Instance& inst) {
    Thm1Check out;
    out.projected = project_region(thm1_rate_system(inst.atoms, inst.r12), {"R0", "R1", "R2"});
    out.reference = thm1_region_system(inst.atoms, inst.r12);
    out.match = same_polytope(out.projected, out.reference);
    out.empty = enumerate_vertices(out.reference).empty;
    auto rb = inner_bound_eval(inst.aux, inst.ch, inst.r12);
    const auto& t = inst.atoms;
    const double want[4] = {t.c - t.b, t.d - t.b, t.f + inst.r12, t.d + t.e - t.b};
    out.faces_agree = rb.faces.size() == 4;
    for (std::size_t i = 0; i < 4 && out.faces_agree; ++i)
        out.faces_agree = std::fabs(rb.faces[i].raw - want[i]) <= 1e-12;
    return out;
}

}  // namespace secbc
