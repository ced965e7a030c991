#pragma once

// Exact open-subset algebra on T^1 and T^2: rational arcs and rational
// convex polygons modulo 1, with saturation by annihilator subgroups.
// Sets are regular open (identified with the interior of their closure);
// equality and subset tests ignore measure-zero differences, which is the
// right notion for finite unions of arcs/polygons.

#include "prim/zklattice.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prim {

// --- geometric atoms -------------------------------------------------------

// Open arc (lo, hi) with 0 <= lo < hi <= 1 (wrap-around arcs are split).
struct Arc {
    Rat lo, hi;
    bool operator==(const Arc&) const = default;
};

// Open convex polygon, vertices in counter-clockwise order, positive area.
using Pt2 = std::array<Rat, 2>;
struct Poly {
    std::vector<Pt2> verts;
};

struct TorusSet {
    int k = 1;                // 1 or 2
    std::vector<Arc> arcs;    // k = 1
    std::vector<Poly> polys;  // k = 2
};

// The annihilator L^perp as a geometric object: a finite subgroup plus a
// connected part (trivial, a circle in a primitive integer direction, or
// the full torus).
struct ClosedSubgroupT {
    enum class Connected { kTrivial, kCircle, kFull };
    int k = 1;
    std::vector<TorusPoint> finite_part;  // coset representatives, includes 0
    Connected connected = Connected::kTrivial;
    IVec direction;  // primitive integer vector when connected == kCircle
};

// --- constructors ----------------------------------------------------------

TorusSet ts_empty(int k);
TorusSet ts_full(int k);
// Box (lo_i, hi_i) per coordinate; requires lo_i < hi_i <= lo_i + 1; the box
// is folded into the fundamental domain.
TorusSet ts_box(const std::vector<Rat>& lo, const std::vector<Rat>& hi);

// --- boolean algebra (regularized) ----------------------------------------

TorusSet ts_union(const TorusSet& a, const TorusSet& b);
TorusSet ts_intersect(const TorusSet& a, const TorusSet& b);
// Regularized difference / complement (interior of the closed difference).
TorusSet ts_difference(const TorusSet& a, const TorusSet& b);
TorusSet ts_complement(const TorusSet& a);
bool ts_subset(const TorusSet& a, const TorusSet& b);
bool ts_equal(const TorusSet& a, const TorusSet& b);
bool ts_is_empty(const TorusSet& a);
// Membership in the regularization: theta in int(cl(W)).
bool ts_member(const TorusPoint& theta, const TorusSet& w);
// Total measure (length / area), exact.
Rat ts_measure(const TorusSet& a);

// --- annihilator geometry --------------------------------------------------

ClosedSubgroupT subgroup_of(const IntLattice& L);
// W . L^perp: union of annihilator translates of W, regularized.
TorusSet saturate(const TorusSet& w, const IntLattice& L);
bool is_invariant(const TorusSet& w, const IntLattice& L);
// Translate by a rational point (Minkowski sum with {s}).
TorusSet ts_translate(const TorusSet& w, const TorusPoint& s);

// --- expression grammar ----------------------------------------------------

// FULL | EMPTY | BOX(a1,b1) | BOX(a1,b1;a2,b2) | UNION(e,...) | INTER(e,...)
// | SAT(e; H=[[v1...],[v2...]]) with rational literals p/q.  The dimension k
// must be supplied by the caller.
TorusSet parse_torus_set(const std::string& text, int k);
std::string unparse_torus_set(const TorusSet& w);

}  // namespace prim
