// Command-line front end over the secbc C API.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "secbc/secbc.h"

using Json = nlohmann::ordered_json;

namespace {

enum Exit {
    kOk = 0,
    kUsage = 1,
    kIo = 8,
    kMismatch = 10,
};

// Library statuses 1..6 map to exit codes 2..7.
int exit_for(int status) { return status == SECBC_OK ? kOk : status + 1; }

struct Failure {
    int code;
    std::string msg;
};

void check(int status) {
    if (status != SECBC_OK) throw Failure{exit_for(status), std::string(secbc_status_name(status)) + ": " + secbc_last_error()};
}

std::string take(char* s) {
    std::string out(s);
    secbc_string_free(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kIo, "cannot read " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Failure{kIo, "cannot write " + path};
}

Json parse_or_fail(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Failure{exit_for(SECBC_PARSE), what + ": malformed JSON at byte " + std::to_string(e.byte)};
    }
}

// Drawn seeds stay below 2^53 so they survive any JSON reader.
std::uint64_t draw_seed() {
    std::random_device rd;
    std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    return s & ((std::uint64_t{1} << 53) - 1);
}

struct Common {
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

struct RegionArgs {
    std::string preset;
    std::string channel_file;
    std::string family;
    double r12 = 0.0, r0 = 0.0;
    std::size_t steps = 0;
    double p = 11.0, n1 = 1.0, n2 = 4.0;
    std::size_t samples = 2000, hill = 200, grid = 40, dirs = 33, u0 = 0, u1 = 0, u2 = 0;
    bool sampled = false;
    std::string out;
};

struct SimArgs {
    std::string kind;
    std::string spec_file;
    std::string preset;
    std::vector<std::size_t> n;
    std::optional<std::size_t> trials, codebooks;
    std::optional<double> margin;
    bool ablate = false;
    bool no_leakage = false;
    std::string out;
};

struct FmeArgs {
    std::string system;
    std::vector<std::string> eliminate;
    std::optional<std::uint64_t> aux_seed;
    double r12 = 0.2;
    std::string out;
};

Json run_region(const RegionArgs& a, std::uint64_t seed, unsigned threads) {
    Json req = Json::object();
    if (!a.preset.empty()) req["preset"] = a.preset;
    if (!a.channel_file.empty()) req["channel"] = parse_or_fail(read_file(a.channel_file), a.channel_file);
    if (a.preset.empty() && a.channel_file.empty()) throw Failure{kUsage, "region needs a preset or --channel"};
    if (!a.family.empty()) req["family"] = a.family;
    req["r12"] = a.r12;
    req["r0"] = a.r0;
    if (a.steps > 0) req["steps"] = a.steps;
    if (a.sampled) req["sampled"] = true;
    req["gaussian"] = {{"P", a.p}, {"N1", a.n1}, {"N2", a.n2}};
    req["sampler"] = {{"n_samples", a.samples}, {"seed", seed},   {"hill_climb_steps", a.hill},
                      {"grid", a.grid},         {"directions", a.dirs}, {"u0_size", a.u0},
                      {"u1_size", a.u1},        {"u2_size", a.u2},  {"threads", threads}};
    secbc_region* r = nullptr;
    check(secbc_region_compute(req.dump().c_str(), &r));
    char* csv = nullptr;
    int st = secbc_region_to_csv(r, &csv);
    char* js = nullptr;
    if (st == SECBC_OK) st = secbc_region_to_json(r, &js);
    secbc_region_free(r);
    if (st != SECBC_OK && csv) secbc_string_free(csv);
    check(st);
    const std::string csv_text = take(csv);
    Json out = {{"request", req}};
    if (!a.out.empty()) {
        write_file(a.out, csv_text);
        out["csv"] = a.out;
    } else {
        out["region"] = parse_or_fail(take(js), "region");
        js = nullptr;
    }
    if (js) secbc_string_free(js);
    return out;
}

Json run_sim(const SimArgs& a, std::uint64_t seed, unsigned threads) {
    Json spec = Json::object();
    if (!a.spec_file.empty()) spec = parse_or_fail(read_file(a.spec_file), a.spec_file);
    if (!a.preset.empty()) spec["preset"] = a.preset;
    if (a.spec_file.empty() && a.preset.empty())
        spec["preset"] = a.kind == "bc" ? "bc-demo" : "lemma1-demo";
    if (!a.n.empty()) spec["n"] = a.n;
    if (a.trials) spec["trials"] = *a.trials;
    if (a.codebooks) spec["codebooks"] = *a.codebooks;
    if (a.margin) spec["margin"] = *a.margin;
    if (a.ablate) spec["ablate"] = true;
    if (a.no_leakage) spec["leakage"] = false;
    spec["seed"] = seed;
    if (threads) spec["threads"] = threads;
    char* rep = nullptr;
    if (a.kind == "bc")
        check(secbc_sim_bc(spec.dump().c_str(), &rep));
    else
        check(secbc_sim_resolvability(spec.dump().c_str(), &rep));
    std::string text = take(rep);
    Json out = {{"spec", spec}};
    if (!a.out.empty()) {
        write_file(a.out, text + "\n");
        out["report_file"] = a.out;
    }
    out["report"] = parse_or_fail(text, "report");
    return out;
}

Json run_fme(const FmeArgs& a, std::uint64_t seed, int& exit_code) {
    if (a.system == "thm1-derivation") {
        std::uint64_t k = a.aux_seed.value_or(seed);
        int match = 0;
        char* rep = nullptr;
        check(secbc_thm1_derivation(k, a.r12, &match, &rep));
        Json out = parse_or_fail(take(rep), "report");
        if (!match) exit_code = kMismatch;
        if (!a.out.empty()) write_file(a.out, out.dump(2) + "\n");
        return out;
    }
    if (a.system.empty()) throw Failure{kUsage, "fme needs a system file or thm1-derivation"};
    const std::string text = read_file(a.system);
    std::vector<const char*> names;
    for (const auto& v : a.eliminate) names.push_back(v.c_str());
    char* rep = nullptr;
    check(secbc_fme_run(text.c_str(), names.data(), names.size(), &rep));
    Json out = parse_or_fail(take(rep), "report");
    if (!a.out.empty()) write_file(a.out, out.dump(2) + "\n");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy rate regions and code simulation for cooperative broadcast channels"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--seed", common.seed, "Seed; drawn and printed when absent");
    app.add_option("--threads", common.threads, "Worker threads (0: SECBC_THREADS or hardware)");
    app.set_version_flag("--version", std::string(secbc_version()));

    RegionArgs ra;
    auto* region = app.add_subcommand("region", "Boundary of a rate region");
    region->add_option("preset", ra.preset, "bbc, bbc-nosec, pd-bbc, gaussian, gaussian-nosec, semi-orthogonal");
    region->add_option("--channel", ra.channel_file, "Channel JSON file");
    region->add_option("--family", ra.family, "inner, sd, pd, pd-nosec, dbc, nosec, nosec-restricted");
    region->add_option("--r12", ra.r12, "Cooperation rate")->check(CLI::NonNegativeNumber);
    region->add_option("--r0", ra.r0, "Common rate slice")->check(CLI::NonNegativeNumber);
    region->add_option("--steps", ra.steps, "Closed-form sweep resolution");
    region->add_option("--p", ra.p, "Gaussian input power");
    region->add_option("--n1", ra.n1, "Gaussian noise variance at receiver 1");
    region->add_option("--n2", ra.n2, "Gaussian noise variance at receiver 2");
    region->add_option("--samples", ra.samples, "Random auxiliary draws");
    region->add_option("--hill-climb", ra.hill, "Hill-climbing steps per direction");
    region->add_option("--grid", ra.grid, "Structured grid resolution");
    region->add_option("--directions", ra.dirs, "Support directions refined");
    region->add_option("--u0-size", ra.u0, "U0 alphabet (0: cap)");
    region->add_option("--u1-size", ra.u1, "U1 alphabet (0: cap)");
    region->add_option("--u2-size", ra.u2, "U2 alphabet (0: cap)");
    region->add_flag("--sampled", ra.sampled, "Sample pd-bbc instead of using the closed form");
    region->add_option("--out", ra.out, "Boundary CSV path");

    SimArgs sa;
    auto* sim = app.add_subcommand("sim", "Small-blocklength code simulation");
    sim->add_option("kind", sa.kind, "resolvability or bc")->required()->check(CLI::IsMember({"resolvability", "bc"}));
    sim->add_option("--spec", sa.spec_file, "Experiment spec JSON");
    sim->add_option("--preset", sa.preset, "lemma1-demo or bc-demo");
    sim->add_option("--n", sa.n, "Blocklengths")->delimiter(',');
    sim->add_option("--trials", sa.trials, "Monte-Carlo trials per n (bc)");
    sim->add_option("--codebooks", sa.codebooks, "Codebooks (resolvability) or codebook pool (bc, 0: fresh per trial)");
    sim->add_option("--margin", sa.margin, "Rate margin of lemma1-demo");
    sim->add_flag("--ablate", sa.ablate, "Zero both resolvability rates (bc-demo)");
    sim->add_flag("--no-leakage", sa.no_leakage, "Skip exact leakage (bc)");
    sim->add_option("--out", sa.out, "Report JSON path");

    FmeArgs fa;
    auto* fme = app.add_subcommand("fme", "Fourier-Motzkin projection");
    fme->add_option("system", fa.system, "System JSON file or thm1-derivation")->required();
    fme->add_option("--eliminate", fa.eliminate, "Variables to eliminate")->delimiter(',');
    fme->add_option("--aux-seed", fa.aux_seed, "Auxiliary draw for thm1-derivation (default: --seed)");
    fme->add_option("--r12", fa.r12, "Cooperation rate for thm1-derivation");
    fme->add_option("--out", fa.out, "Report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    const bool drawn = !common.seed.has_value();
    const std::uint64_t seed = drawn ? draw_seed() : *common.seed;
    if (drawn) std::cerr << "seed: " << seed << "\n";

    Json report;
    Json cmd = Json::array();
    for (int k = 0; k < argc; ++k) cmd.push_back(argv[k]);
    report["command"] = cmd;
    report["seed"] = seed;
    report["seed_drawn"] = drawn;

    const auto t0 = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        if (*region)
            report["outputs"] = run_region(ra, seed, common.threads);
        else if (*sim)
            report["outputs"] = run_sim(sa, seed, common.threads);
        else
            report["outputs"] = run_fme(fa, seed, code);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.msg << "\n";
        report["error"] = f.msg;
        code = f.code;
    }
    report["exit_code"] = code;
    report["wall_clock_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << report.dump(2) << "\n";
    return code;
}
