#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "secbc/error.hpp"
#include "secbc/regions.hpp"

namespace secbc {

using Rational = mpq_class;

// sum coeffs[v] * v <= rhs. Zero coefficients are never stored.
struct LinIneq {
    std::map<std::string, Rational> coeffs;
    Rational rhs;

    bool trivial() const { return coeffs.empty(); }
};

struct IneqSystem {
    std::vector<std::string> vars;
    std::vector<LinIneq> ineqs;

    // Drops zero coefficients; the variables must already be declared.
    void add(std::map<std::string, Rational> coeffs, Rational rhs);
    void add_ge(std::map<std::string, Rational> coeffs, Rational rhs);
    // Stored as the pair of opposite inequalities.
    void add_eq(std::map<std::string, Rational> coeffs, Rational rhs);
    void add_nonneg(const std::string& var);

    bool has_var(const std::string& v) const;
    void validate() const;
    std::size_t dim() const { return vars.size(); }
};

// Nearest multiple of `resolution` (default 1e-12).
Rational rationalize(double x, double resolution = 1e-12);
// Parses "p/q", integers and plain decimals such as "-0.125".
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& q);

// Positive/negative row pairing; rows without `var` pass through.
IneqSystem fme_eliminate(const IneqSystem& sys, const std::string& var);
// Dimension cap for vertex enumeration.
inline constexpr std::size_t kMaxEnumDim = 8;
IneqSystem remove_redundant(const IneqSystem& sys);
// Eliminates every other variable in min-fill order, then removes redundancy.
IneqSystem project_region(const IneqSystem& sys, const std::vector<std::string>& keep);
// Same with an explicit elimination order (must list exactly the dropped variables).
IneqSystem project_region_ordered(const IneqSystem& sys, const std::vector<std::string>& keep,
                                  const std::vector<std::string>& order);

// Exact feasibility by full elimination.
bool feasible(const IneqSystem& sys);
// Point given in sys.vars order.
bool contains(const IneqSystem& sys, const std::vector<Rational>& point);
// Substitutes fixed values and reports whether the remaining system is feasible.
bool lifts(const IneqSystem& sys, const std::map<std::string, Rational>& fixed);

struct VertexSet {
    bool empty = false;
    std::vector<std::vector<Rational>> vertices;  // sorted
    std::vector<std::vector<Rational>> rays;      // sorted, scaled to unit max-norm
};

// Vertices and extreme rays of a pointed polyhedron; dimension above kMaxEnumDim
// is a resource error and a nonzero lineality space an invalid argument.
VertexSet enumerate_vertices(const IneqSystem& sys);
// Same polyhedron, comparing variables by name.
bool same_polytope(const IneqSystem& a, const IneqSystem& b);

// ---------------------------------------------------------------- presets

// The reliability constraints of the double-binned code over
// R0, R1, R2, R20, R22, Rp (R'), Rt (R~) with R2 = R20 + R22 and all rates
// nonnegative. Strict inequalities are closed.
IneqSystem thm1_rate_system(const InnerAtoms& atoms, double r12);
// The four-face region over R0, R1, R2 written directly from the same
// rationalized atoms, intersected with the orthant.
IneqSystem thm1_region_system(const InnerAtoms& atoms, double r12);
// Faces of a bound triple over R0, R1, R2 with raw (unclamped) right-hand
// sides, intersected with the orthant.
IneqSystem rate_bounds_system(const RateBounds& rb);

// Seeded auxiliary draw on a ternary channel with a strong and a weak output.
// Odd seeds correlate U1 and U2 given U0; even seeds keep them independent.
struct Thm1Instance {
    BcChannel ch;
    JointPmf aux;  // over U0, U1, U2, X
    InnerAtoms atoms;
    double r12 = 0.2;
};
Thm1Instance thm1_derivation_instance(std::uint64_t aux_seed, double r12 = 0.2);

struct Thm1Check {
    IneqSystem projected;  // elimination route
    IneqSystem reference;  // four-face region from the same atoms
    bool match = false;
    bool empty = false;
    // inner_bound_eval face values agree with the rationalized atoms within 1e-12.
    bool faces_agree = false;
};
Thm1Check thm1_derivation_check(const Thm1Instance& inst);

}  // namespace secbc
