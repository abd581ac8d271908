#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "secbc/probkit.hpp"

namespace secbc {

enum class Structure { general, semi_deterministic, physically_degraded, deterministic };

const char* structure_name(Structure s);

// Q_{Y1,Y2|X} stored as law[(x*y1_size + y1)*y2_size + y2].
struct BcChannel {
    std::size_t x_size = 0, y1_size = 0, y2_size = 0;
    std::vector<double> law;
    Structure structure = Structure::general;
    std::vector<std::size_t> g, h;        // deterministic maps when tagged
    std::vector<double> pd_y1_x, pd_y2_y1;  // factorization witness for the PD tag

    double p(std::size_t x, std::size_t y1, std::size_t y2) const {
        return law[(x * y1_size + y1) * y2_size + y2];
    }
    // X -> (Y1, Y2) with axes named "X", "Y1", "Y2".
    CondPmf as_cond() const;

    // Checks stochasticity and the structure tag; throws validation errors.
    void validate() const;

    static BcChannel general(std::size_t x, std::size_t y1, std::size_t y2, std::vector<double> law);
    // Infers g (SD), the factorization (PD) or both maps (deterministic) from the law.
    static BcChannel tagged(std::size_t x, std::size_t y1, std::size_t y2, std::vector<double> law,
                            Structure s);
    static BcChannel semi_deterministic(std::vector<std::size_t> g, std::size_t y1,
                                        const std::vector<double>& q_y2_x, std::size_t y2);
    static BcChannel physically_degraded(const std::vector<double>& q_y1_x, std::size_t x, std::size_t y1,
                                         const std::vector<double>& q_y2_y1, std::size_t y2);
    static BcChannel deterministic(std::vector<std::size_t> g, std::size_t y1, std::vector<std::size_t> h,
                                   std::size_t y2);
};

// Rate vector order is (R0, R1, R2). A face reads coeffs . R <= raw.
struct Face {
    std::string label;
    std::array<int, 3> coeffs{};
    double raw = 0.0;
    double clamped() const { return raw > 0.0 ? raw : 0.0; }
};

struct RateBounds {
    std::vector<Face> faces;
    double r12 = 0.0;

    const Face& face(const std::string& label) const;
    double value(const std::string& label) const { return face(label).raw; }
    double clamped(const std::string& label) const { return face(label).clamped(); }
    // Membership of (r0, r1, r2) in the clamped polytope, nonnegative orthant included.
    bool contains(double r0, double r1, double r2, double tol = 1e-12) const;
    // Vertices of the slice R0 = r0 projected to (R1, R2); empty when the slice is empty.
    std::vector<std::array<double, 2>> slice_vertices(double r0) const;
};

// MI terms of the inner bound, also consumed by the elimination oracle.
struct InnerAtoms {
    double a = 0;  // I(U1;U2|U0)
    double b = 0;  // I(U1;U2,Y2|U0)
    double c = 0;  // I(U1;Y1|U0)
    double d = 0;  // I(U0,U1;Y1)
    double e = 0;  // I(U2;Y2|U0)
    double f = 0;  // I(U0,U2;Y2)
};

// aux is a JointPmf over axes U0, U1, U2, X (any of the U's may have size 1).
JointPmf full_joint(const JointPmf& aux, const BcChannel& ch);
InnerAtoms inner_atoms(const JointPmf& aux, const BcChannel& ch);
RateBounds inner_bound_eval(const JointPmf& aux, const BcChannel& ch, double r12);
// Cardinality caps of the inner bound (U0 <= |X|+5, U1, U2 <= |X|).
void check_inner_caps(const JointPmf& aux, std::size_t x_size);

// aux over W, V, X.
RateBounds sd_region_eval(const JointPmf& aux, const BcChannel& ch, double r12);
// aux over W, X. secrecy=false gives the region without a secrecy constraint.
RateBounds pd_region_eval(const JointPmf& aux, const BcChannel& ch, double r12, bool secrecy = true);
RateBounds dbc_region_eval(const Pmf& qx, const BcChannel& ch, double r12);
// aux over U0, U1, U2, X.
RateBounds nosec_region_eval(const JointPmf& aux, const BcChannel& ch, double r12, bool restricted);

RateBounds bbc_secrecy_bounds(double alpha, double beta, double r12);
RateBounds bbc_nosecrecy_bounds(double alpha, double beta, double r12);

struct GaussianParams {
    double P = 11.0, N1 = 1.0, N2 = 4.0;
    double alpha = 0.0;
    double r12 = 0.0;
};
RateBounds gaussian_secrecy_bounds(const GaussianParams& gp);
RateBounds gaussian_nosecrecy_bounds(const GaussianParams& gp);

struct BdpParams {
    double q = 0.0;
    double eps = 0.0;
};
double bdp_gp_capacity(const BdpParams& bp);
double bdp_fcsi_capacity(const BdpParams& bp);
// Upper concave envelope of samples (x_i, f_i) on an increasing grid, evaluated at x.
double upper_concave_envelope_at(const std::vector<double>& xs, const std::vector<double>& fs, double x);

// ---------------------------------------------------------------- union

enum class Family { inner, sd, pd, pd_nosec, dbc, nosec, nosec_restricted };
const char* family_name(Family f);
Family parse_family(const std::string& s);

struct SamplerConfig {
    std::size_t n_samples = 2000;
    std::uint64_t seed = 1;
    std::size_t hill_climb_steps = 200;
    std::size_t grid = 40;          // structured grid resolution for input PMFs
    std::size_t directions = 33;    // support directions refined by hill-climbing
    // Auxiliary alphabet sizes; 0 selects the theorem's cap.
    std::size_t u0_size = 0, u1_size = 0, u2_size = 0;
    unsigned threads = 0;  // 0 reads SECBC_THREADS, else hardware concurrency
};

struct BoundaryPoint {
    double r1 = 0, r2 = 0;
    std::uint64_t sample_id = 0;  // counter that regenerates the best auxiliary draw
};

struct RegionApprox {
    double r12 = 0, r0 = 0;
    std::vector<BoundaryPoint> boundary;  // sorted by r1, concave upper-right frontier
};

RegionApprox region_union_approx(const BcChannel& ch, Family family, double r12, double r0,
                                 const SamplerConfig& cfg);

// Upper-right hull of a point cloud in the plane, down-closed toward the axes.
std::vector<BoundaryPoint> upper_right_hull(std::vector<BoundaryPoint> pts);
// Hull from closed-form bound triples swept over a parameter.
RegionApprox closed_form_union(const std::vector<RateBounds>& polys, double r12, double r0);
// Largest r2 on a boundary at abscissa r1 (linear interpolation); -1 outside.
double boundary_r2_at(const std::vector<BoundaryPoint>& b, double r1);
// Symmetric Hausdorff distance between the regions under two boundaries,
// measured between the polylines.
double hausdorff(const std::vector<BoundaryPoint>& a, const std::vector<BoundaryPoint>& b);

unsigned default_threads();

// ---------------------------------------------------------------- presets

BcChannel preset_bbc();
BcChannel preset_pd_bbc();
// X = (X1, X2) packed as 2*x1 + x2; Y1 = BSC(p1)(X1); Y2 = X2 xor X1 xor Bern(eps).
BcChannel preset_semi_orthogonal(double p1 = 0.1, double eps = 0.1);
BcChannel preset_channel(const std::string& name);

// BBC closed-form sweeps on an (alpha, beta) grid with `steps` intervals per side.
RegionApprox bbc_closed_form_region(double r12, bool secrecy, std::size_t steps);
RegionApprox gaussian_closed_form_region(const GaussianParams& base, bool secrecy, std::size_t steps);

}  // namespace secbc
