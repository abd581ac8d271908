#pragma once

#include <string>

#include "json.hpp"
#include "secbc/codesim.hpp"
#include "secbc/polytope.hpp"
#include "secbc/regions.hpp"

namespace secbc {

using Json = nlohmann::ordered_json;

// Parses text, mapping syntax errors to Errc::parse with the byte offset.
Json parse_json_text(const std::string& text, const std::string& what);

// {"x_size", "y1_size", "y2_size", "rows": [[p(y1,y2|x) with y2 fastest]...],
//  "structure": "general|sd|pd|det", optional "g", "h"}.
// Malformed fields raise parse errors prefixed with their JSON pointer.
BcChannel channel_from_json(const Json& j, const std::string& ptr = "");
Json channel_to_json(const BcChannel& ch);

// {"axes": [{"name": ..., "size": ...}], "probs": [...]}
JointPmf joint_from_json(const Json& j, const std::string& ptr = "");
Json joint_to_json(const JointPmf& p);

// {"vars": [...], "ineqs": [{"coeffs": {name: "p/q"}, "rhs": "p/q"}]}; numbers are
// accepted and rationalized at 1e-12.
IneqSystem system_from_json(const Json& j, const std::string& ptr = "");
Json system_to_json(const IneqSystem& s);
Json vertices_to_json(const VertexSet& v);

SamplerConfig sampler_from_json(const Json& j, SamplerConfig base = {});
Json region_to_json(const RegionApprox& r);
// Boundary CSV with header r1_bits,r2_bits.
std::string region_to_csv(const RegionApprox& r);

// Region request: {"preset": "bbc|bbc-nosec|pd-bbc|gaussian|gaussian-nosec|<channel preset>",
// or "channel": {...}; "family", "r12", "r0", "steps", "sampler": {...},
// "gaussian": {"P", "N1", "N2"}, "sampled"}. Presets bbc, bbc-nosec, pd-bbc and
// gaussian use closed forms; "sampled": true sends pd-bbc through the union sampler.
RegionApprox region_from_request(const Json& req);

// Experiment specs; see README for the fields. Reports carry no timing so that
// identical specs give identical bytes.
Json run_resolvability_spec(const Json& spec);
Json run_bc_spec(const Json& spec);
// {"aux_seed", "r12"} -> projected system, reference, vertices and verdict.
Json run_thm1_derivation(std::uint64_t aux_seed, double r12);
// Eliminates the listed variables, then removes redundancy.
Json run_fme(const Json& system, const std::vector<std::string>& eliminate);

}  // namespace secbc
