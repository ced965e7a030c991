#pragma once

// Exact arithmetic for subgroups of Z^k, their annihilators in T^k, and the
// positive-minimal-generator construction used by the harmonious-family
// machinery.  All values are immutable and all operations are pure.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace prim {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;

// A subgroup of Z^k in canonical form: basis rows are in row Hermite normal
// form with positive pivots and entries above each pivot reduced into
// [0, pivot).  The canonical form makes equality a plain comparison.
struct IntLattice {
    int ambient_rank = 0;
    IMat basis;  // row HNF; possibly empty (zero lattice)

    bool operator==(const IntLattice&) const = default;
};

// A point of T^k with rational angles: z_j = exp(2*pi*i*angles[j]).
// Angles are stored reduced modulo 1 into [0,1).
struct TorusPoint {
    std::vector<Rat> angles;

    bool operator==(const TorusPoint&) const = default;
    int dim() const { return static_cast<int>(angles.size()); }
};

// Coordinates adapted to a lattice L <= Z^k: L = { P*(d_1 a_1, ..., d_r a_r,
// 0, ..., 0) : a_i in Z } with P unimodular and d_1 | d_2 | ... | d_r.
struct AdaptedChart {
    IMat P;               // k x k, det = +-1 (columns are the chart frame)
    IMat P_inv;           // exact integer inverse of P
    std::vector<Int> divisors;
    int free_rank = 0;    // k - r
};

// --- construction and basic lattice algebra ------------------------------

IntLattice canonicalize(int ambient_rank, const IMat& generators);
IntLattice zero_lattice(int ambient_rank);
IntLattice full_lattice(int ambient_rank);

bool member(const IVec& h, const IntLattice& L);
IntLattice meet(const IntLattice& L1, const IntLattice& L2);
IntLattice join(const IntLattice& L1, const IntLattice& L2);
int rank(const IntLattice& L);

// Generators m^1, ..., m^k of a full-rank L with m^i supported on the first
// i coordinates, coordinate i positive, and each m^i minimal in
// (L intersect N^k) \ {0} under the componentwise order.  Follows the
// inductive construction: project to the last coordinate, recurse on the
// sublattice with last coordinate zero, then minimize over the coset of the
// recursion's span (greedy from the last coordinate down, which also fixes
// the lexicographic tie-break among equal-height candidates).
IMat positive_minimal_generators(const IntLattice& L);

// --- annihilators in T^k --------------------------------------------------

AdaptedChart annihilator_chart(const IntLattice& L);
bool in_annihilator(const TorusPoint& z, const IntLattice& L);
bool quotient_equal(const TorusPoint& z1, const TorusPoint& z2,
                    const IntLattice& L);

// --- convergence along a sequence of subgroups ---------------------------

// A symbolic sequence (z_n, H_n): finitely many explicit leading terms, then
// a cyclically repeating tail.  The tail must be nonempty.
struct SymbolicSequence {
    std::vector<std::pair<TorusPoint, IntLattice>> prefix;
    std::vector<std::pair<TorusPoint, IntLattice>> tail;
};

// Decides whether z_n -> z along (H_n): for every open V containing z,
// eventually the image of z_n in T^k / H_n^perp lies in the image of V.
// With eventually-periodic rational data this reduces to quotient equality
// on every tail pair.
bool converges_along(const SymbolicSequence& seq, const TorusPoint& z);

// --- helpers shared across modules ---------------------------------------

Rat mod1(const Rat& x);                       // representative in [0,1)
TorusPoint make_point(std::vector<Rat> angles);
TorusPoint sub_points(const TorusPoint& a, const TorusPoint& b);  // a - b mod 1

}  // namespace prim
