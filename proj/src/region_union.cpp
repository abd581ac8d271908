#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

#include "secbc/regions.hpp"
#include "secbc/rng.hpp"
#include "parallel.hpp"

namespace secbc {

unsigned default_threads() {
    if (const char* env = std::getenv("SECBC_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

using detail::parallel_for;

struct AuxShape {
    std::vector<Axis> axes;        // auxiliary axes followed by X
    std::size_t cells = 1;
    std::size_t x_size = 0;
    std::size_t aux_cells() const { return cells / x_size; }
};

AuxShape shape_for(Family f, const BcChannel& ch, const SamplerConfig& cfg) {
    const std::size_t x = ch.x_size;
    auto pick = [](std::size_t want, std::size_t cap) { return want == 0 ? cap : std::min(want, cap); };
    AuxShape s;
    s.x_size = x;
    switch (f) {
        case Family::inner:
        case Family::nosec:
        case Family::nosec_restricted:
            s.axes = {{"U0", pick(cfg.u0_size, x + 5)}, {"U1", pick(cfg.u1_size, x)}, {"U2", pick(cfg.u2_size, x)}, {"X", x}};
            break;
        case Family::sd:
            s.axes = {{"W", pick(cfg.u0_size, x + 3)}, {"V", pick(cfg.u2_size, x)}, {"X", x}};
            break;
        case Family::pd:
        case Family::pd_nosec:
            s.axes = {{"W", pick(cfg.u0_size, x + 2)}, {"X", x}};
            break;
        case Family::dbc:
            s.axes = {{"X", x}};
            break;
    }
    for (const auto& a : s.axes) s.cells *= a.size;
    checked_cells({s.cells}, "auxiliary joint");
    return s;
}

RateBounds evaluate(Family f, const BcChannel& ch, const AuxShape& s, const std::vector<double>& w, double r12) {
    if (f == Family::dbc) return dbc_region_eval(Pmf(w, 1e-9), ch, r12);
    JointPmf aux(s.axes, w, 1e-9);
    switch (f) {
        case Family::inner: return inner_bound_eval(aux, ch, r12);
        case Family::sd: return sd_region_eval(aux, ch, r12);
        case Family::pd: return pd_region_eval(aux, ch, r12, true);
        case Family::pd_nosec: return pd_region_eval(aux, ch, r12, false);
        case Family::nosec: return nosec_region_eval(aux, ch, r12, false);
        case Family::nosec_restricted: return nosec_region_eval(aux, ch, r12, true);
        case Family::dbc: break;
    }
    fail(Errc::internal, "unreachable family");
}

void check_family(Family f, const BcChannel& ch) {
    if (f == Family::sd && ch.structure != Structure::semi_deterministic && ch.structure != Structure::deterministic)
        fail(Errc::validation, "family sd needs a semi-deterministic channel");
    if ((f == Family::pd || f == Family::pd_nosec) && ch.structure != Structure::physically_degraded)
        fail(Errc::validation, "family pd needs a physically degraded channel");
    if (f == Family::dbc && ch.structure != Structure::deterministic)
        fail(Errc::validation, "family dbc needs a deterministic channel");
}

// All compositions of `total` into k nonnegative parts.
void compositions(std::size_t k, std::size_t total, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur(k, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == k) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, total);
}

std::size_t binom(std::size_t n, std::size_t k) {
    long double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    return static_cast<std::size_t>(std::min<long double>(r + 0.5L, 1e18L));
}

// Restricted-growth strings: set partitions of {0..x-1} with at most `blocks` blocks.
std::vector<std::vector<std::size_t>> partitions(std::size_t x, std::size_t blocks) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(x, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == x) {
            out.push_back(cur);
            return;
        }
        for (std::size_t b = 0; b <= used && b < blocks; ++b) {
            cur[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    return out;
}

// Candidate generator: structured (grid input x deterministic maps) then Dirichlet draws.
struct Candidates {
    const AuxShape& s;
    std::uint64_t seed;
    std::vector<std::vector<std::size_t>> grid;               // input compositions
    std::size_t grid_total = 1;
    std::vector<std::vector<std::vector<std::size_t>>> maps;  // per auxiliary axis
    std::vector<std::size_t> combo_ids;                       // selected map combinations
    std::size_t n_random = 0;

    std::size_t structured() const { return grid.size() * combo_ids.size(); }
    std::size_t size() const { return structured() + n_random; }

    std::vector<double> weights(std::size_t id) const {
        std::vector<double> w(s.cells, 0.0);
        const std::size_t naux = s.axes.size() - 1;
        if (id < structured()) {
            const auto& g = grid[id % grid.size()];
            std::size_t combo = combo_ids[id / grid.size()];
            std::vector<std::size_t> pick(naux);
            for (std::size_t k = 0; k < naux; ++k) {
                pick[k] = combo % maps[k].size();
                combo /= maps[k].size();
            }
            for (std::size_t x = 0; x < s.x_size; ++x) {
                std::size_t cell = 0;
                for (std::size_t k = 0; k < naux; ++k) cell = cell * s.axes[k].size + maps[k][pick[k]][x];
                w[cell * s.x_size + x] = static_cast<double>(g[x]) / static_cast<double>(grid_total);
            }
            return w;
        }
        CounterRng rng(seed, Domain::aux_sample, static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32), 0);
        double tot = 0.0;
        for (auto& v : w) tot += (v = rng.exponential());
        for (auto& v : w) v /= tot;
        return w;
    }
};

Candidates make_candidates(const AuxShape& s, const SamplerConfig& cfg) {
    constexpr std::size_t kMaxStructured = 20000;
    Candidates c{s, cfg.seed, {}, 1, {}, {}, 0};
    c.n_random = cfg.n_samples;
    if (cfg.n_samples == 0) return c;  // empty budget: nothing at all

    const std::size_t naux = s.axes.size() - 1;
    std::size_t combos = 1;
    for (std::size_t k = 0; k < naux; ++k) {
        c.maps.push_back(partitions(s.x_size, s.axes[k].size));
        combos *= c.maps.back().size();
    }
    std::size_t g = std::max<std::size_t>(cfg.grid, 1);
    auto grid_count = [&](std::size_t gg) { return binom(gg + s.x_size - 1, s.x_size - 1); };
    while (g > 4 && grid_count(g) * combos > kMaxStructured) --g;
    c.grid_total = g;
    compositions(s.x_size, g, c.grid);
    std::size_t keep = std::max<std::size_t>(1, std::min(combos, kMaxStructured / std::max<std::size_t>(c.grid.size(), 1)));
    for (std::size_t i = 0; i < keep; ++i) c.combo_ids.push_back(i * combos / keep);
    return c;
}

double support(const std::vector<std::array<double, 2>>& v, double lam) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& p : v) best = std::max(best, lam * p[0] + (1.0 - lam) * p[1]);
    return best;
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::inner: return "inner";
        case Family::sd: return "sd";
        case Family::pd: return "pd";
        case Family::pd_nosec: return "pd-nosec";
        case Family::dbc: return "dbc";
        case Family::nosec: return "nosec";
        case Family::nosec_restricted: return "nosec-restricted";
    }
    return "inner";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::inner, Family::sd, Family::pd, Family::pd_nosec, Family::dbc, Family::nosec,
                     Family::nosec_restricted})
        if (s == family_name(f)) return f;
    fail(Errc::invalid_argument, "unknown region family '" + s + "'");
}

std::vector<BoundaryPoint> upper_right_hull(std::vector<BoundaryPoint> pts) {
    if (pts.empty()) return {BoundaryPoint{0, 0, 0}};
    double xmax = 0.0, ymax = 0.0;
    for (const auto& p : pts) {
        xmax = std::max(xmax, p.r1);
        ymax = std::max(ymax, p.r2);
    }
    if (xmax <= 0.0 && ymax <= 0.0) return {BoundaryPoint{0, 0, pts.front().sample_id}};
    // The region is down-closed, so (0, ymax) and (xmax, 0) belong to it.
    std::uint64_t id_y = 0;
    for (const auto& p : pts)
        if (p.r2 == ymax) {
            id_y = p.sample_id;
            break;
        }
    pts.push_back({0.0, ymax, id_y});
    std::sort(pts.begin(), pts.end(), [](const BoundaryPoint& a, const BoundaryPoint& b) {
        return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 > b.r2;
    });
    std::vector<BoundaryPoint> hull;
    for (const auto& p : pts) {
        if (!hull.empty() && p.r1 == hull.back().r1) continue;  // keep the highest per abscissa
        if (p.r1 == 0.0 && p.r2 < ymax) continue;
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            double cross = (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    if (hull.back().r2 > 0.0) hull.push_back({hull.back().r1, 0.0, hull.back().sample_id});
    return hull;
}

RegionApprox closed_form_union(const std::vector<RateBounds>& polys, double r12, double r0) {
    std::vector<BoundaryPoint> pts;
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (const auto& v : polys[i].slice_vertices(r0)) pts.push_back({v[0], v[1], i});
    RegionApprox ra;
    ra.r12 = r12;
    ra.r0 = r0;
    ra.boundary = upper_right_hull(std::move(pts));
    return ra;
}

double boundary_r2_at(const std::vector<BoundaryPoint>& b, double r1) {
    double best = -1.0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const auto &p = b[i], &q = b[i + 1];
        if (r1 < p.r1 - 1e-15 || r1 > q.r1 + 1e-15) continue;
        double v = q.r1 == p.r1 ? std::max(p.r2, q.r2) : p.r2 + (r1 - p.r1) / (q.r1 - p.r1) * (q.r2 - p.r2);
        best = std::max(best, v);
    }
    if (b.size() == 1 && std::fabs(b[0].r1 - r1) < 1e-15) best = b[0].r2;
    return best;
}

namespace {

double point_segment(double x, double y, const BoundaryPoint& a, const BoundaryPoint& b) {
    double dx = b.r1 - a.r1, dy = b.r2 - a.r2;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? std::clamp(((x - a.r1) * dx + (y - a.r2) * dy) / len2, 0.0, 1.0) : 0.0;
    double px = a.r1 + t * dx - x, py = a.r2 + t * dy - y;
    return std::sqrt(px * px + py * py);
}

double directed(const std::vector<BoundaryPoint>& a, const std::vector<BoundaryPoint>& b) {
    auto dist = [&](double x, double y) {
        double d = std::numeric_limits<double>::infinity();
        if (b.size() == 1) return std::hypot(x - b[0].r1, y - b[0].r2);
        for (std::size_t i = 0; i + 1 < b.size(); ++i) d = std::min(d, point_segment(x, y, b[i], b[i + 1]));
        return d;
    };
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, dist(a[i].r1, a[i].r2));
        if (i + 1 == a.size()) break;
        double len = std::hypot(a[i + 1].r1 - a[i].r1, a[i + 1].r2 - a[i].r2);
        int k = static_cast<int>(std::ceil(len / 1e-3));
        for (int s = 1; s < k; ++s) {
            double t = static_cast<double>(s) / k;
            worst = std::max(worst, dist(a[i].r1 + t * (a[i + 1].r1 - a[i].r1), a[i].r2 + t * (a[i + 1].r2 - a[i].r2)));
        }
    }
    return worst;
}

}  // namespace

double hausdorff(const std::vector<BoundaryPoint>& a, const std::vector<BoundaryPoint>& b) {
    require(!a.empty() && !b.empty(), "hausdorff: empty boundary");
    return std::max(directed(a, b), directed(b, a));
}

RegionApprox region_union_approx(const BcChannel& ch, Family family, double r12, double r0, const SamplerConfig& cfg) {
    require(r12 >= 0.0 && r0 >= 0.0, "region_union_approx: rates must be nonnegative");
    check_family(family, ch);
    const unsigned threads = cfg.threads ? cfg.threads : default_threads();
    const AuxShape shape = shape_for(family, ch, cfg);
    const Candidates cands = make_candidates(shape, cfg);

    RegionApprox ra;
    ra.r12 = r12;
    ra.r0 = r0;
    if (cands.size() == 0) {
        ra.boundary = {BoundaryPoint{0, 0, 0}};
        return ra;
    }

    std::vector<std::vector<std::array<double, 2>>> verts(cands.size());
    parallel_for(cands.size(), threads, [&](std::size_t id) {
        verts[id] = evaluate(family, ch, shape, cands.weights(id), r12).slice_vertices(r0);
    });

    std::vector<BoundaryPoint> pts;
    for (std::size_t id = 0; id < verts.size(); ++id)
        for (const auto& v : verts[id]) pts.push_back({v[0], v[1], id});

    // Hill-climb the support function in a fan of directions from the best candidate.
    const std::size_t nd = std::max<std::size_t>(cfg.directions, 2);
    std::vector<std::vector<BoundaryPoint>> refined(nd);
    if (cfg.hill_climb_steps > 0) {
        parallel_for(nd, threads, [&](std::size_t k) {
            const double lam = static_cast<double>(k) / static_cast<double>(nd - 1);
            std::size_t best_id = 0;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t id = 0; id < verts.size(); ++id) {
                double v = support(verts[id], lam);
                if (v > best) best = v, best_id = id;
            }
            if (!std::isfinite(best)) return;
            auto w = cands.weights(best_id);
            auto bv = verts[best_id];
            double step = 0.05;
            CounterRng rng(cfg.seed, Domain::aux_sample, 0xFFFFFFFFu, static_cast<std::uint32_t>(k), 1);
            for (std::size_t it = 0; it < cfg.hill_climb_steps && step > 1e-7; ++it) {
                std::size_t i = rng.below(w.size()), j = rng.below(w.size());
                if (i == j || w[j] <= 0.0) {
                    step *= 0.9;
                    continue;
                }
                auto trial = w;
                double t = std::min(step, trial[j]);
                trial[j] -= t;
                trial[i] += t;
                auto tv = evaluate(family, ch, shape, trial, r12).slice_vertices(r0);
                double val = support(tv, lam);
                if (val > best + 1e-13) {
                    best = val;
                    w.swap(trial);
                    bv.swap(tv);
                    step *= 1.2;
                } else {
                    step *= 0.9;
                }
            }
            const std::uint64_t tag = (std::uint64_t{1} << 62) | k;
            for (const auto& v : bv) refined[k].push_back({v[0], v[1], tag});
        });
    }
    for (auto& r : refined) pts.insert(pts.end(), r.begin(), r.end());
    ra.boundary = upper_right_hull(std::move(pts));
    return ra;
}

RegionApprox bbc_closed_form_region(double r12, bool secrecy, std::size_t steps) {
    require(steps >= 1, "bbc region: steps must be positive");
    std::vector<RateBounds> polys;
    for (std::size_t i = 0; i <= steps; ++i)
        for (std::size_t j = 0; i + j <= steps; ++j) {
            double a = static_cast<double>(i) / steps, b = static_cast<double>(j) / steps;
            polys.push_back(secrecy ? bbc_secrecy_bounds(a, b, r12) : bbc_nosecrecy_bounds(a, b, r12));
        }
    return closed_form_union(polys, r12, 0.0);
}

RegionApprox gaussian_closed_form_region(const GaussianParams& base, bool secrecy, std::size_t steps) {
    require(steps >= 1, "gaussian region: steps must be positive");
    std::vector<RateBounds> polys;
    for (std::size_t i = 0; i <= steps; ++i) {
        GaussianParams gp = base;
        gp.alpha = static_cast<double>(i) / steps;
        polys.push_back(secrecy ? gaussian_secrecy_bounds(gp) : gaussian_nosecrecy_bounds(gp));
    }
    return closed_form_union(polys, base.r12, 0.0);
}

}  // namespace secbc
