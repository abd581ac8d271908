#include "secbc/secbc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "secbc/json_io.hpp"

struct secbc_channel {
    secbc::BcChannel ch;
};
struct secbc_region {
    secbc::RegionApprox r;
};
struct secbc_system {
    secbc::IneqSystem s;
};

namespace {

thread_local std::string g_last_error;

template <class F>
int guarded(F&& f) {
    g_last_error.clear();
    try {
        f();
        return SECBC_OK;
    } catch (const secbc::Error& e) {
        g_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SECBC_RESOURCE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SECBC_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SECBC_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) secbc::fail(secbc::Errc::invalid_argument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

secbc::Json parse(const char* text, const char* what) {
    need(text, what);
    return secbc::parse_json_text(text, what);
}

std::vector<std::string> names(const char* const* v, std::size_t count) {
    if (count > 0) need(v, "name list");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < count; ++k) {
        need(v[k], "name");
        out.emplace_back(v[k]);
    }
    return out;
}

}  // namespace

extern "C" {

const char* secbc_version(void) { return "0.1.0"; }

const char* secbc_status_name(int status) {
    if (status < 0 || status > SECBC_INTERNAL) return "unknown";
    return secbc::errc_name(static_cast<secbc::Errc>(status));
}

const char* secbc_last_error(void) { return g_last_error.c_str(); }

void secbc_string_free(char* s) { std::free(s); }

unsigned secbc_default_threads(void) { return secbc::default_threads(); }

int secbc_channel_from_json(const char* json, secbc_channel** out) {
    return guarded([&] {
        need(out, "out");
        *out = new secbc_channel{secbc::channel_from_json(parse(json, "channel"))};
    });
}

int secbc_channel_preset(const char* name, secbc_channel** out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        *out = new secbc_channel{secbc::preset_channel(name)};
    });
}

int secbc_channel_to_json(const secbc_channel* ch, char** out) {
    return guarded([&] {
        need(ch, "channel");
        need(out, "out");
        *out = dup(secbc::channel_to_json(ch->ch).dump(2));
    });
}

void secbc_channel_free(secbc_channel* ch) { delete ch; }

int secbc_region_compute(const char* request_json, secbc_region** out) {
    return guarded([&] {
        need(out, "out");
        *out = new secbc_region{secbc::region_from_request(parse(request_json, "region request"))};
    });
}

int secbc_region_union(const secbc_channel* ch, const char* family, double r12, double r0, const char* sampler_json,
                       secbc_region** out) {
    return guarded([&] {
        need(ch, "channel");
        need(family, "family");
        need(out, "out");
        secbc::SamplerConfig cfg;
        if (sampler_json) cfg = secbc::sampler_from_json(parse(sampler_json, "sampler"));
        *out = new secbc_region{secbc::region_union_approx(ch->ch, secbc::parse_family(family), r12, r0, cfg)};
    });
}

int secbc_region_size(const secbc_region* r, size_t* n) {
    return guarded([&] {
        need(r, "region");
        need(n, "n");
        *n = r->r.boundary.size();
    });
}

int secbc_region_point(const secbc_region* r, size_t k, double* r1, double* r2) {
    return guarded([&] {
        need(r, "region");
        need(r1, "r1");
        need(r2, "r2");
        secbc::require(k < r->r.boundary.size(), "boundary index out of range");
        *r1 = r->r.boundary[k].r1;
        *r2 = r->r.boundary[k].r2;
    });
}

int secbc_region_r2_at(const secbc_region* r, double r1, double* r2) {
    return guarded([&] {
        need(r, "region");
        need(r2, "r2");
        *r2 = secbc::boundary_r2_at(r->r.boundary, r1);
    });
}

int secbc_region_hausdorff(const secbc_region* a, const secbc_region* b, double* d) {
    return guarded([&] {
        need(a, "region a");
        need(b, "region b");
        need(d, "d");
        *d = secbc::hausdorff(a->r.boundary, b->r.boundary);
    });
}

int secbc_region_to_csv(const secbc_region* r, char** out) {
    return guarded([&] {
        need(r, "region");
        need(out, "out");
        *out = dup(secbc::region_to_csv(r->r));
    });
}

int secbc_region_to_json(const secbc_region* r, char** out) {
    return guarded([&] {
        need(r, "region");
        need(out, "out");
        *out = dup(secbc::region_to_json(r->r).dump());
    });
}

void secbc_region_free(secbc_region* r) { delete r; }

int secbc_system_from_json(const char* json, secbc_system** out) {
    return guarded([&] {
        need(out, "out");
        *out = new secbc_system{secbc::system_from_json(parse(json, "system"))};
    });
}

int secbc_system_eliminate(const secbc_system* s, const char* const* elim, size_t count, secbc_system** out) {
    return guarded([&] {
        need(s, "system");
        need(out, "out");
        auto drop = names(elim, count);
        for (const auto& v : drop)
            if (!s->s.has_var(v))
                secbc::fail(secbc::Errc::invalid_argument, "cannot eliminate unknown variable '" + v + "'");
        std::vector<std::string> keep;
        for (const auto& v : s->s.vars)
            if (std::find(drop.begin(), drop.end(), v) == drop.end()) keep.push_back(v);
        *out = new secbc_system{drop.empty() ? s->s : secbc::project_region(s->s, keep)};
    });
}

int secbc_system_to_json(const secbc_system* s, char** out) {
    return guarded([&] {
        need(s, "system");
        need(out, "out");
        *out = dup(secbc::system_to_json(s->s).dump(2));
    });
}

int secbc_system_vertices_json(const secbc_system* s, char** out) {
    return guarded([&] {
        need(s, "system");
        need(out, "out");
        *out = dup(secbc::vertices_to_json(secbc::enumerate_vertices(s->s)).dump(2));
    });
}

void secbc_system_free(secbc_system* s) { delete s; }

int secbc_fme_run(const char* system_json, const char* const* eliminate, size_t count, char** out) {
    return guarded([&] {
        need(out, "out");
        *out = dup(secbc::run_fme(parse(system_json, "system"), names(eliminate, count)).dump(2));
    });
}

int secbc_thm1_derivation(uint64_t aux_seed, double r12, int* match, char** out) {
    return guarded([&] {
        need(match, "match");
        need(out, "out");
        auto j = secbc::run_thm1_derivation(aux_seed, r12);
        *match = j["verdict"] == "MATCH" ? 1 : 0;
        *out = dup(j.dump(2));
    });
}

int secbc_sim_resolvability(const char* spec_json, char** out) {
    return guarded([&] {
        need(out, "out");
        *out = dup(secbc::run_resolvability_spec(parse(spec_json, "spec")).dump(2));
    });
}

int secbc_sim_bc(const char* spec_json, char** out) {
    return guarded([&] {
        need(out, "out");
        *out = dup(secbc::run_bc_spec(parse(spec_json, "spec")).dump(2));
    });
}

int secbc_bdp_capacities(double q, double eps, double* gp, double* fcsi) {
    return guarded([&] {
        need(gp, "gp");
        need(fcsi, "fcsi");
        *gp = secbc::bdp_gp_capacity({q, eps});
        *fcsi = secbc::bdp_fcsi_capacity({q, eps});
    });
}

}  // extern "C"
