#pragma once

// Numerical layer for the harmonic-analysis engine room: Fourier
// coefficients of smooth torus bumps, perturbation and averaging of
// coefficient series, the nonvanishing-column search, matrix entries of the
// quotient-orbit representations, conditional expectations, Urysohn-type
// elements over a harmonious family, and the kernel-monotonicity probe.

#include "prim/bisect.hpp"
#include "prim/graphalg.hpp"
#include "prim/zklattice.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace prim {

using Cx = std::complex<double>;

// ------------------------------------------------------ Fourier series

// 1-d smooth bump supported on the open arc (lo, hi) of the circle: the
// flat-at-boundary exponential exp(4 - 1/(u(1-u))) in the arc coordinate u,
// peak value 1 at the midpoint.
struct Bump1D {
    Rat lo, hi;  // 0 <= lo < hi <= 1
};

// product of 1-d bumps over the axes of T^k (k = factors.size() <= 2)
struct BumpSpec {
    std::vector<Bump1D> factors;
};

double bump_value(const BumpSpec& psi, const TorusPoint& eta);

struct FourierSeries {
    int k = 1;
    long support_bound = 0;       // coefficients stored for h in the box
    std::map<std::vector<long>, Cx> coef;
    double decay = 0.0;           // max |coef| measured just outside the box
    double aliasing = 0.0;        // grid-halving estimate of the DFT error
};

// dense-grid DFT of the bump, per axis, tensored over axes; throws when the
// grid is too coarse for the requested support bound
FourierSeries fourier(const BumpSpec& psi, long support_bound, long grid = 4096);

// coefficients of eta -> eta(h0) * psi(eta): exact index shift by h0
FourierSeries perturb(const FourierSeries& f, const std::vector<long>& h0);

// exact restriction of the coefficients to the subgroup H
FourierSeries average(const FourierSeries& f, const IntLattice& h_group);

// Sum_h eta(h) coef(h) at a rational point of T^k
Cx reconstruct(const FourierSeries& f, const TorusPoint& eta);

// Sum_{h in H} z^h coef(h - h0), the H-restricted column sum at z
Cx h_restricted_sum(const FourierSeries& f, const TorusPoint& z,
                    const IntLattice& h_group, const std::vector<long>& h0);

// first coset representative (lexicographic within the support box) whose
// H-restricted column sum at z exceeds tol; requires |psi(z)| > tol
std::vector<long> find_h0(const FourierSeries& f, const TorusPoint& z,
                          const IntLattice& h_group, double tol = 1e-6);

// -------------------------------------------- symbolic convolution layer

// finitely supported function on a graph groupoid: a weighted sum of
// indicators of compact open homogeneous bisections
struct CcTerm {
    GBisection b;  // degree is b.c
    Cx weight{1.0, 0.0};
};
struct CcFunction {
    std::vector<CcTerm> terms;
};

CcFunction cc_scale(const CcFunction& f, Cx w);
CcFunction cc_add(const CcFunction& f1, const CcFunction& f2);
// convolution product (termwise bisection composition)
CcFunction cc_mul(const DirGraph& g, const CcFunction& f1, const CcFunction& f2);
// pointwise value at the groupoid element (x, h, y)
Cx cc_value(const DirGraph& g, const CcFunction& f, const PathPoint& x, long h,
            const PathPoint& y);
// degrees carrying at least one term
std::vector<long> cc_degrees(const CcFunction& f);

// ------------------------------------------------- quotient-orbit layer

// groupoid element (y, n, x) of the orbit at the (implicit) base point x
struct OrbitElem {
    PathPoint y;
    long n = 0;
    bool operator==(const OrbitElem&) const = default;
};

struct TruncatedOrbit {
    PathPoint x;
    long radius = 0;
    std::vector<OrbitElem> elems;  // word length <= radius, deduplicated
};

TruncatedOrbit truncated_orbit(const DirGraph& g, const PathPoint& x, long radius);

// index classes of the orbit under (y1, n1) ~ (y2, n2) iff y1 = y2 and
// n1 - n2 in H
std::vector<std::vector<int>> orbit_classes(const TruncatedOrbit& o,
                                            const IntLattice& h_group);

// matrix entry <e_[xi1], pi^H_(x,z)(f) e_[xi2]>: the finite sum over the
// class of xi1 xi2^{-1} of z^h f(y1, h, y2), evaluated symbolically
Cx rep_entry(const DirGraph& g, const CcFunction& f, const IntLattice& h_group,
             const PathPoint& x, Cx z, const OrbitElem& xi1, const OrbitElem& xi2);

// exact degree filter: keep the terms whose degree lies in K
CcFunction cond_expectation(const CcFunction& f, const IntLattice& k_group);

// ------------------------------------------------------ reports

struct CheckItem {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
struct EvalReport {
    bool pass = true;
    std::vector<CheckItem> checks;
};
std::string report_json(const EvalReport& r);

// ------------------------------------------------- Urysohn-type element

// truncated series f = Sum_{h in H} coef_{h0}(h) * (1_{B_h} phi) over the
// family members, where phi is the indicator of a unit cylinder at the
// family base; the report carries (a) nonvanishing of the diagonal entry at
// (base, z*w) for w in H^perp, against the coefficient sum, and (b)
// vanishing of the diagonal entries at the outside sample points
struct UrysohnResult {
    CcFunction f;
    IntLattice h_group;  // H_B(base) inside Z
    EvalReport report;
};

UrysohnResult urysohn(const DirGraph& g, const GFamily& fam, const GBisection& phi,
                      const FourierSeries& psi, const std::vector<long>& h0, Cx z,
                      long truncation, const std::vector<PathPoint>& outside_points,
                      const std::vector<Cx>& outside_chars);

// ------------------------------------------------- kernel monotonicity

// For fixtures whose pi^{H1}-entries vanish, verifies that the pi^{H2}
// entries vanish as well (H1 <= H2).  Following the zero-check reduction,
// only diagonal entries at [(x,0,x)] of the compressions 1_{B1} f 1_{B2} by
// homogeneous bisections drawn from the fixture's own terms are checked.
EvalReport kernel_monotonicity_probe(const DirGraph& g, const IntLattice& h1,
                                     const IntLattice& h2,
                                     const std::vector<CcFunction>& fixtures,
                                     const PathPoint& x, Cx z);

}  // namespace prim
