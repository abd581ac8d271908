#include "secbc/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace secbc {

namespace {

[[noreturn]] void perr(const std::string& ptr, const std::string& what) {
    fail(Errc::parse, (ptr.empty() ? std::string("/") : ptr) + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) perr(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) perr(ptr + "/" + key, "missing field");
    return *it;
}

double num(const Json& j, const std::string& ptr) {
    if (!j.is_number()) perr(ptr, "expected a number");
    return j.get<double>();
}

std::size_t count(const Json& j, const std::string& ptr) {
    if (!j.is_number_integer() || j.get<long long>() < 0) perr(ptr, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::string str(const Json& j, const std::string& ptr) {
    if (!j.is_string()) perr(ptr, "expected a string");
    return j.get<std::string>();
}

double opt_num(const Json& j, const std::string& key, double dflt) {
    auto it = j.find(key);
    return it == j.end() ? dflt : num(*it, "/" + key);
}

std::size_t opt_count(const Json& j, const std::string& key, std::size_t dflt) {
    auto it = j.find(key);
    return it == j.end() ? dflt : count(*it, "/" + key);
}

std::vector<std::size_t> n_list(const Json& spec, std::vector<std::size_t> dflt) {
    auto it = spec.find("n");
    if (it == spec.end()) return dflt;
    if (it->is_number()) return {count(*it, "/n")};
    if (!it->is_array() || it->empty()) perr("/n", "expected a blocklength or a nonempty list");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < it->size(); ++k) out.push_back(count((*it)[k], "/n/" + std::to_string(k)));
    return out;
}

Rational rational_from(const Json& j, const std::string& ptr) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            perr(ptr, e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return rationalize(j.get<double>());
    perr(ptr, "expected a rational as \"p/q\" or a number");
}

Structure structure_from(const std::string& s, const std::string& ptr) {
    if (s == "general") return Structure::general;
    if (s == "sd") return Structure::semi_deterministic;
    if (s == "pd") return Structure::physically_degraded;
    if (s == "det") return Structure::deterministic;
    perr(ptr, "unknown structure '" + s + "' (expected general, sd, pd or det)");
}

const char* structure_tag(Structure s) {
    switch (s) {
        case Structure::general: return "general";
        case Structure::semi_deterministic: return "sd";
        case Structure::physically_degraded: return "pd";
        case Structure::deterministic: return "det";
    }
    return "general";
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::parse, what + ": malformed JSON at byte " + std::to_string(e.byte));
    }
}

BcChannel channel_from_json(const Json& j, const std::string& ptr) {
    const std::size_t x = count(field(j, "x_size", ptr), ptr + "/x_size");
    const std::size_t y1 = count(field(j, "y1_size", ptr), ptr + "/y1_size");
    const std::size_t y2 = count(field(j, "y2_size", ptr), ptr + "/y2_size");
    if (x == 0 || y1 == 0 || y2 == 0) perr(ptr, "alphabet sizes must be positive");
    checked_cells({x, y1, y2}, "channel law");
    const Json& rows = field(j, "rows", ptr);
    if (!rows.is_array() || rows.size() != x) perr(ptr + "/rows", "expected " + std::to_string(x) + " rows");
    std::vector<double> law;
    law.reserve(x * y1 * y2);
    for (std::size_t r = 0; r < x; ++r) {
        const std::string rp = ptr + "/rows/" + std::to_string(r);
        const Json& row = rows[r];
        if (!row.is_array() || row.size() != y1 * y2) perr(rp, "expected " + std::to_string(y1 * y2) + " entries");
        double s = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            double v = num(row[k], rp + "/" + std::to_string(k));
            if (!(v >= 0.0) || !std::isfinite(v)) perr(rp + "/" + std::to_string(k), "entries must be nonnegative");
            s += v;
            law.push_back(v);
        }
        if (std::fabs(s - 1.0) > 1e-9) perr(rp, "row is not stochastic within 1e-9");
        for (std::size_t k = 0; k < row.size(); ++k) law[r * y1 * y2 + k] /= s;
    }
    Structure s = Structure::general;
    if (auto it = j.find("structure"); it != j.end()) s = structure_from(str(*it, ptr + "/structure"), ptr + "/structure");
    BcChannel ch = s == Structure::general ? BcChannel::general(x, y1, y2, std::move(law))
                                           : BcChannel::tagged(x, y1, y2, std::move(law), s);
    auto check_map = [&](const char* key, const std::vector<std::size_t>& inferred) {
        auto it = j.find(key);
        if (it == j.end()) return;
        const std::string mp = ptr + "/" + key;
        if (!it->is_array() || it->size() != x) perr(mp, "expected " + std::to_string(x) + " entries");
        for (std::size_t k = 0; k < x; ++k)
            if (inferred.size() != x || count((*it)[k], mp + "/" + std::to_string(k)) != inferred[k])
                fail(Errc::validation, mp + ": map disagrees with the channel rows at x=" + std::to_string(k));
    };
    check_map("g", ch.g);
    check_map("h", ch.h);
    return ch;
}

Json channel_to_json(const BcChannel& ch) {
    Json j;
    j["x_size"] = ch.x_size;
    j["y1_size"] = ch.y1_size;
    j["y2_size"] = ch.y2_size;
    Json rows = Json::array();
    for (std::size_t x = 0; x < ch.x_size; ++x) {
        Json r = Json::array();
        for (std::size_t k = 0; k < ch.y1_size * ch.y2_size; ++k) r.push_back(ch.law[x * ch.y1_size * ch.y2_size + k]);
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["structure"] = structure_tag(ch.structure);
    if (!ch.g.empty()) j["g"] = ch.g;
    if (!ch.h.empty()) j["h"] = ch.h;
    return j;
}

JointPmf joint_from_json(const Json& j, const std::string& ptr) {
    const Json& axes = field(j, "axes", ptr);
    if (!axes.is_array() || axes.empty()) perr(ptr + "/axes", "expected a nonempty array");
    std::vector<Axis> ax;
    std::vector<std::size_t> sizes;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const std::string ap = ptr + "/axes/" + std::to_string(k);
        ax.push_back({str(field(axes[k], "name", ap), ap + "/name"), count(field(axes[k], "size", ap), ap + "/size")});
        sizes.push_back(ax.back().size);
    }
    const std::uint64_t cells = checked_cells(sizes, "joint PMF");
    const Json& probs = field(j, "probs", ptr);
    if (!probs.is_array() || probs.size() != cells) perr(ptr + "/probs", "expected " + std::to_string(cells) + " entries");
    std::vector<double> p;
    for (std::size_t k = 0; k < probs.size(); ++k) p.push_back(num(probs[k], ptr + "/probs/" + std::to_string(k)));
    try {
        return JointPmf(ax, p, 1e-9);
    } catch (const Error& e) {
        fail(e.code(), (ptr.empty() ? std::string("/") : ptr) + ": " + e.what());
    }
}

Json joint_to_json(const JointPmf& p) {
    Json j;
    Json axes = Json::array();
    for (const auto& a : p.axes()) axes.push_back({{"name", a.name}, {"size", a.size}});
    j["axes"] = axes;
    j["probs"] = p.probs();
    return j;
}

IneqSystem system_from_json(const Json& j, const std::string& ptr) {
    IneqSystem s;
    const Json& vars = field(j, "vars", ptr);
    if (!vars.is_array()) perr(ptr + "/vars", "expected an array of names");
    for (std::size_t k = 0; k < vars.size(); ++k) {
        std::string v = str(vars[k], ptr + "/vars/" + std::to_string(k));
        if (s.has_var(v)) perr(ptr + "/vars/" + std::to_string(k), "duplicate variable '" + v + "'");
        s.vars.push_back(v);
    }
    const Json& ineqs = field(j, "ineqs", ptr);
    if (!ineqs.is_array()) perr(ptr + "/ineqs", "expected an array");
    for (std::size_t k = 0; k < ineqs.size(); ++k) {
        const std::string ip = ptr + "/ineqs/" + std::to_string(k);
        const Json& c = field(ineqs[k], "coeffs", ip);
        if (!c.is_object()) perr(ip + "/coeffs", "expected an object");
        std::map<std::string, Rational> coeffs;
        for (auto it = c.begin(); it != c.end(); ++it) {
            if (!s.has_var(it.key())) perr(ip + "/coeffs/" + it.key(), "undeclared variable");
            coeffs[it.key()] = rational_from(it.value(), ip + "/coeffs/" + it.key());
        }
        s.add(std::move(coeffs), rational_from(field(ineqs[k], "rhs", ip), ip + "/rhs"));
    }
    return s;
}

Json system_to_json(const IneqSystem& s) {
    Json j;
    j["vars"] = s.vars;
    Json rows = Json::array();
    for (const auto& r : s.ineqs) {
        Json c = Json::object();
        for (const auto& v : s.vars)
            if (auto it = r.coeffs.find(v); it != r.coeffs.end()) c[v] = rational_str(it->second);
        rows.push_back({{"coeffs", c}, {"rhs", rational_str(r.rhs)}});
    }
    j["ineqs"] = rows;
    return j;
}

Json vertices_to_json(const VertexSet& v) {
    auto conv = [](const std::vector<std::vector<Rational>>& pts) {
        Json out = Json::array();
        for (const auto& p : pts) {
            Json row = Json::array();
            for (const auto& q : p) row.push_back(rational_str(q));
            out.push_back(row);
        }
        return out;
    };
    return Json{{"empty", v.empty}, {"vertices", conv(v.vertices)}, {"rays", conv(v.rays)}};
}

SamplerConfig sampler_from_json(const Json& j, SamplerConfig c) {
    if (j.is_null()) return c;
    if (!j.is_object()) perr("/sampler", "expected an object");
    c.n_samples = opt_count(j, "n_samples", c.n_samples);
    if (auto it = j.find("seed"); it != j.end()) c.seed = it->get<std::uint64_t>();
    c.hill_climb_steps = opt_count(j, "hill_climb_steps", c.hill_climb_steps);
    c.grid = opt_count(j, "grid", c.grid);
    c.directions = opt_count(j, "directions", c.directions);
    c.u0_size = opt_count(j, "u0_size", c.u0_size);
    c.u1_size = opt_count(j, "u1_size", c.u1_size);
    c.u2_size = opt_count(j, "u2_size", c.u2_size);
    c.threads = static_cast<unsigned>(opt_count(j, "threads", c.threads));
    return c;
}

Json region_to_json(const RegionApprox& r) {
    Json pts = Json::array();
    for (const auto& p : r.boundary) pts.push_back({p.r1, p.r2});
    return Json{{"r12", r.r12}, {"r0", r.r0}, {"boundary", pts}};
}

std::string region_to_csv(const RegionApprox& r) {
    std::string out = "r1_bits,r2_bits\n";
    char buf[64];
    for (const auto& p : r.boundary) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.r1 + 0.0, p.r2 + 0.0);
        out += buf;
    }
    return out;
}

RegionApprox region_from_request(const Json& req) {
    if (!req.is_object()) perr("", "expected an object");
    const double r12 = opt_num(req, "r12", 0.0), r0 = opt_num(req, "r0", 0.0);
    require(r12 >= 0.0 && r0 >= 0.0, "r12 and r0 must be nonnegative");
    std::string preset;
    if (auto it = req.find("preset"); it != req.end()) preset = str(*it, "/preset");
    const bool sampled = req.value("sampled", false);
    if (preset == "bbc" || preset == "bbc-nosec" || (preset == "pd-bbc" && !sampled)) {
        require(r0 == 0.0, "closed-form presets are evaluated at r0 = 0");
        return bbc_closed_form_region(r12, preset != "bbc-nosec", opt_count(req, "steps", 200));
    }
    if (preset == "gaussian" || preset == "gaussian-nosec") {
        require(r0 == 0.0, "closed-form presets are evaluated at r0 = 0");
        GaussianParams gp;
        if (auto it = req.find("gaussian"); it != req.end()) {
            gp.P = opt_num(*it, "P", gp.P);
            gp.N1 = opt_num(*it, "N1", gp.N1);
            gp.N2 = opt_num(*it, "N2", gp.N2);
        }
        gp.r12 = r12;
        return gaussian_closed_form_region(gp, preset == "gaussian", opt_count(req, "steps", 1000));
    }
    BcChannel ch;
    if (!preset.empty())
        ch = preset_channel(preset);
    else if (auto it = req.find("channel"); it != req.end())
        ch = channel_from_json(*it, "/channel");
    else
        perr("", "need a preset or a channel");
    Family fam = preset == "pd-bbc" ? Family::pd : Family::inner;
    if (auto it = req.find("family"); it != req.end()) fam = parse_family(str(*it, "/family"));
    SamplerConfig cfg;
    if (auto it = req.find("sampler"); it != req.end()) cfg = sampler_from_json(*it);
    return region_union_approx(ch, fam, r12, r0, cfg);
}

Json run_resolvability_spec(const Json& spec) {
    if (!spec.is_object()) perr("", "expected an object");
    const std::uint64_t seed = spec.value("seed", std::uint64_t{1});
    const std::size_t books = opt_count(spec, "codebooks", 50);
    const unsigned threads = static_cast<unsigned>(opt_count(spec, "threads", 0));
    const auto ns = n_list(spec, {2, 3, 4, 5});
    std::string preset = spec.contains("preset") ? str(spec["preset"], "/preset") : "";
    if (!preset.empty() && preset != "lemma1-demo") perr("/preset", "unknown resolvability preset '" + preset + "'");
    Json results = Json::array();
    for (std::size_t n : ns) {
        ResolvabilityProblem p;
        if (preset == "lemma1-demo") {
            p = preset_lemma1_demo(n, opt_num(spec, "margin", 0.1), seed);
        } else {
            p.joint = joint_from_json(field(spec, "joint", ""), "/joint");
            p.n = n;
            p.rt = num(field(spec, "rt", ""), "/rt");
            p.rp = num(field(spec, "rp", ""), "/rp");
            p.seed = seed;
        }
        if (auto it = spec.find("rt"); it != spec.end() && preset == "lemma1-demo") p.rt = num(*it, "/rt");
        if (auto it = spec.find("rp"); it != spec.end() && preset == "lemma1-demo") p.rp = num(*it, "/rp");
        auto ens = resolvability_ensemble(p, books, threads);
        double mn = ens.divergence[0], mx = ens.divergence[0], tv = 0.0;
        for (std::size_t k = 0; k < books; ++k) {
            mn = std::min(mn, ens.divergence[k]);
            mx = std::max(mx, ens.divergence[k]);
            tv += ens.tv[k];
        }
        Json r{{"n", n},
               {"counts", {{"w", ens.w_count}, {"i", ens.i_count}}},
               {"realized_rates", {{"rt", realized_rate(ens.w_count, n)}, {"rp", realized_rate(ens.i_count, n)}}},
               {"mean_divergence", ens.mean_divergence},
               {"min_divergence", mn},
               {"max_divergence", mx},
               {"mean_tv", tv / static_cast<double>(books)}};
        if (auto it = spec.find("typicality_eps"); it != spec.end()) {
            const double eps = num(*it, "/typicality_eps");
            double acc = 0.0;
            for (std::size_t k = 0; k < books; ++k) {
                ResolvabilityProblem q = p;
                q.seed = derive_seed(p.seed, k);
                acc += typicality_prob(ResolvabilityCodebook(q), 0, eps);
            }
            r["mean_typicality"] = acc / static_cast<double>(books);
        }
        results.push_back(r);
    }
    return Json{{"kind", "resolvability"}, {"seed", seed}, {"codebooks", books}, {"results", results}};
}

Json run_bc_spec(const Json& spec) {
    if (!spec.is_object()) perr("", "expected an object");
    const std::uint64_t seed = spec.value("seed", std::uint64_t{1});
    const std::size_t trials = opt_count(spec, "trials", 2000);
    const std::size_t books = opt_count(spec, "codebooks", 0);
    const unsigned threads = static_cast<unsigned>(opt_count(spec, "threads", 0));
    const bool want_leak = spec.value("leakage", true);
    const auto ns = n_list(spec, {2, 4, 6});
    std::string preset = spec.contains("preset") ? str(spec["preset"], "/preset") : "";
    if (!preset.empty() && preset != "bc-demo") perr("/preset", "unknown bc preset '" + preset + "'");
    Json results = Json::array();
    for (std::size_t n : ns) {
        BcCodeConfig cfg;
        if (preset == "bc-demo") {
            cfg = preset_bc_demo(n, spec.value("ablate", false), seed);
        } else {
            cfg.ch = channel_from_json(field(spec, "channel", ""), "/channel");
            cfg.aux = joint_from_json(field(spec, "aux", ""), "/aux");
            cfg.n = n;
            cfg.seed = seed;
        }
        if (auto it = spec.find("rates"); it != spec.end()) {
            if (!it->is_object()) perr("/rates", "expected an object");
            cfg.r0 = opt_num(*it, "r0", cfg.r0);
            cfg.r1 = opt_num(*it, "r1", cfg.r1);
            cfg.r20 = opt_num(*it, "r20", cfg.r20);
            cfg.r22 = opt_num(*it, "r22", cfg.r22);
            cfg.r12 = opt_num(*it, "r12", cfg.r12);
            cfg.rt = opt_num(*it, "rt", cfg.rt);
            cfg.rp = opt_num(*it, "rp", cfg.rp);
        }
        cfg.typ.eps = opt_num(spec, "eps", cfg.typ.eps);
        cfg.validate();
        const auto c = bc_counts(cfg);
        auto rr = [&](std::size_t k) { return realized_rate(k, n); };
        Json r{{"n", n},
               {"counts",
                {{"m0", c.m0}, {"m1", c.m1}, {"m20", c.m20}, {"m22", c.m22}, {"m12", c.m12}, {"w", c.w}, {"i", c.i}}},
               {"realized_rates",
                {{"r0", rr(c.m0)},
                 {"r1", rr(c.m1)},
                 {"r2", rr(c.m2())},
                 {"r12", rr(c.m12)},
                 {"rt", rr(c.w)},
                 {"rp", rr(c.i)}}}};
        if (trials > 0) {
            auto t = run_bc_trials(cfg, trials, books, threads);
            r["trials"] = t.trials;
            r["errors"] = t.errors;
            r["encoder_failures"] = t.encoder_failures;
            r["error_rate"] = t.error_rate;
            r["ci"] = {t.ci_lo, t.ci_hi};
        }
        if (want_leak) {
            BcCodeConfig k = cfg;
            k.seed = derive_seed(cfg.seed, 0);
            try {
                auto l = exact_leakage(BcCodebook(k));
                r["leakage"] = {{"leakage_bits", l.leakage_bits},
                                {"y2_only_bits", l.y2_only_bits},
                                {"method", l.method},
                                {"codebook", 0}};
            } catch (const Error& e) {
                if (e.code() != Errc::resource) throw;
                r["leakage_skipped"] = e.what();
            }
        }
        results.push_back(r);
    }
    return Json{{"kind", "bc"}, {"seed", seed}, {"codebooks", books}, {"results", results}};
}

Json run_thm1_derivation(std::uint64_t aux_seed, double r12) {
    auto inst = thm1_derivation_instance(aux_seed, r12);
    auto chk = thm1_derivation_check(inst);
    const auto& t = inst.atoms;
    return Json{{"aux_seed", aux_seed},
                {"r12", r12},
                {"atoms", {{"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d}, {"e", t.e}, {"f", t.f}}},
                {"projected", system_to_json(chk.projected)},
                {"reference", system_to_json(chk.reference)},
                {"vertices", vertices_to_json(enumerate_vertices(chk.projected))},
                {"faces_agree", chk.faces_agree},
                {"verdict", chk.match && chk.faces_agree ? "MATCH" : "MISMATCH"}};
}

Json run_fme(const Json& system, const std::vector<std::string>& eliminate) {
    IneqSystem s = system_from_json(system);
    for (const auto& v : eliminate)
        if (!s.has_var(v)) fail(Errc::invalid_argument, "cannot eliminate unknown variable '" + v + "'");
    std::vector<std::string> keep;
    for (const auto& v : s.vars)
        if (std::find(eliminate.begin(), eliminate.end(), v) == eliminate.end()) keep.push_back(v);
    IneqSystem out = eliminate.empty() ? s : project_region(s, keep);
    Json j{{"system", system_to_json(out)}};
    if (out.dim() <= kMaxEnumDim) {
        try {
            j["vertices"] = vertices_to_json(enumerate_vertices(out));
        } catch (const Error& e) {
            if (e.code() != Errc::invalid_argument) throw;
            j["vertices_skipped"] = e.what();
        }
    } else {
        j["vertices_skipped"] = "dimension exceeds " + std::to_string(kMaxEnumDim);
    }
    return j;
}

}  // namespace secbc
