#pragma once

#include "prim/graphalg.hpp"
#include "prim/kgraph2.hpp"
#include "prim/torusgeo.hpp"

#include <array>
#include <string>
#include <vector>

namespace prim {

// ------------------------------------------------------------ graph side
// Compact open homogeneous bisection over a graph groupoid: a finite union
// of cylinder pairs {(lam z, c, rho z)} with constant cocycle value c.
struct GAtom {
    int root_l = 0, root_r = 0;     // ranges of lam / rho (needed when empty)
    std::vector<int> lam, rho;      // edge words
    bool operator==(const GAtom&) const = default;
};

struct GBisection {
    long c = 0;
    std::vector<GAtom> atoms;
};

GBisection g_unit_bisection(const DirGraph& g);
GBisection g_basic(const DirGraph& g, int root_l, std::vector<int> lam, int root_r,
                   std::vector<int> rho);
GBisection g_compose(const DirGraph& g, const GBisection& b1, const GBisection& b2);
GBisection g_inverse(const GBisection& b);
bool g_is_bisection(const DirGraph& g, const GBisection& b);
bool g_subset(const DirGraph& g, const GBisection& a, const GBisection& b,
              int refine_depth = 8);
bool g_equal(const DirGraph& g, const GBisection& a, const GBisection& b,
             int refine_depth = 8);

// intersection with the essential isotropy: unit cylinders plus finitely
// many isolated isotropy points with their cocycle values
struct GEssIso {
    std::vector<GAtom> unit_cylinders;
    std::vector<std::pair<PathPoint, long>> points;
};
GEssIso g_ess_isotropy(const DirGraph& g, const GBisection& b);

// does the groupoid element (x, c, y) lie in the bisection?
bool g_element_in(const DirGraph& g, const GBisection& b, const PathPoint& x,
                  long c, const PathPoint& y);

struct GFamily {
    MaximalTail tail;
    std::vector<int> mu;     // witness cycle; empty for the trivial family
    PathPoint base;          // base point (mu^inf, or a realization)
    long radius = 0;         // members materialized for |n| <= radius
    std::vector<GBisection> members;  // index n + radius
    const GBisection& member(long n) const;
};

GFamily graph_family(const DirGraph& g, const MaximalTail& t, long radius = 4);

struct FamilyReport {
    bool pass = true;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
};

FamilyReport verify_harmonious(const DirGraph& g, const GFamily& f);
GFamily conjugate_family(const DirGraph& g, const GBisection& c, const GFamily& f);
IntLattice g_shared_group(const DirGraph& g, const GFamily& f, const MaximalTail& y);
// per maximal tail meeting the vertex-cylinder set U: saturated circle fiber
std::vector<std::pair<int, TorusSet>> g_saturation_export(const DirGraph& g,
                                                          const GFamily& f,
                                                          const std::vector<int>& u_vertices,
                                                          const TorusSet& v_set);

// ------------------------------------------------------------ 2-graph side
struct KAtom {
    KPath lam, rho;
    bool operator==(const KAtom&) const = default;
};

struct KBisection {
    std::array<long, 2> c{0, 0};
    std::vector<KAtom> atoms;
};

KBisection k_unit_bisection(const TwoGraph& g);
KBisection k_basic(const TwoGraph& g, KPath lam, KPath rho);
KBisection k_compose(const TwoGraph& g, const KBisection& b1, const KBisection& b2);
KBisection k_inverse(const KBisection& b);
bool k_is_bisection(const TwoGraph& g, const KBisection& b);
bool k_subset(const TwoGraph& g, const KBisection& a, const KBisection& b,
              int refine_depth = 3);
bool k_equal(const TwoGraph& g, const KBisection& a, const KBisection& b,
             int refine_depth = 3);

struct KEssIso {
    bool supported = true;   // false when nondeterministic atoms were hit
    std::vector<KAtom> unit_cylinders;
    // isotropy points of deterministic components: (vertex, cocycle value)
    std::vector<std::pair<int, std::array<long, 2>>> points;
};
KEssIso k_ess_isotropy(const TwoGraph& g, const KBisection& b);

struct KFamily {
    int base_vertex = 0;
    std::array<long, 2> base_shift{0, 0};  // orbit shift applied to the base
    IntLattice J;                          // index group
    int rank = 0;
    long radius = 0;
    std::vector<std::array<long, 2>> indices;  // materialized h values
    std::vector<KBisection> members;           // parallel to indices
    const KBisection& member(const std::array<long, 2>& h) const;
};

KFamily twograph_family(const TwoGraph& g, int base_vertex, long radius = 4);
FamilyReport verify_harmonious_k(const TwoGraph& g, const KFamily& f);
FamilyReport verify_relative_commutation(const TwoGraph& g,
                                         const std::vector<KBisection>& gens);
KFamily conjugate_family_k(const TwoGraph& g, const KBisection& c, const KFamily& f);
IntLattice k_shared_group(const TwoGraph& g, const KFamily& f, const ClassTable& tab,
                          int class_index);
std::vector<std::pair<int, TorusSet>> k_saturation_export(const TwoGraph& g,
                                                          const KFamily& f,
                                                          const ClassTable& tab,
                                                          const std::vector<int>& u_vertices,
                                                          const TorusSet& v_set);

// path helpers shared with the class-table machinery
KPath kpath_trivial(const TwoGraph& g, int v);
KPath kpath_compose(const TwoGraph& g, const KPath& a, const KPath& b);
bool kpath_is_prefix(const KPath& p, const KPath& x);
// prefix of the unique path at v of degree (m,n), optionally restricted to a
// vertex block (deterministic within the restriction)
KPath det_prefix(const TwoGraph& g, int v, int m, int n,
                 const std::vector<int>* block = nullptr);

}  // namespace prim
