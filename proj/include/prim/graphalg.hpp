#pragma once

// Directed-graph model and the primitive-ideal calculus for graph
// C*-algebras: maximal tails, periods, the finite presentation of Prim,
// hull-kernel closure, openness, the ideal lattice, sandwich sets and
// convergence.

#include "prim/torusgeo.hpp"
#include "prim/zklattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace prim {

struct GraphEdge {
    std::string name;
    int range = 0;   // r(e)
    int source = 0;  // s(e)
};

// Finite directed graph; no sources means every vertex receives an edge, so
// infinite paths x1 x2 ... with s(x_i) = r(x_{i+1}) never get stuck.
struct DirGraph {
    std::string name;
    std::vector<std::string> vertices;
    std::vector<GraphEdge> edges;

    int vertex_index(const std::string& v) const;
    int edge_index(const std::string& e) const;
};

struct MaximalTail {
    std::vector<int> vertices;    // sorted vertex indices
    int per = 0;                  // Per(T); 0 when no entrance-free cycle
    std::vector<int> cycle;       // witness cycle edges (empty when per = 0)
    IntLattice gauge_group;       // Per * Z inside Z

    bool operator==(const MaximalTail& o) const {
        return vertices == o.vertices;
    }
};

// Eventually periodic infinite path: prefix . cycle^infinity, stored in the
// canonical form with a primitive cycle and the shortest prefix.
struct PathPoint {
    std::vector<int> prefix;  // edge indices
    std::vector<int> cycle;   // edge indices, nonempty

    bool operator==(const PathPoint&) const = default;
};

PathPoint canonical_path(std::vector<int> prefix, std::vector<int> cycle,
                         const DirGraph& g);
int path_vertex_at(const PathPoint& x, long n, const DirGraph& g);
int path_edge_at(const PathPoint& x, long n);     // n-th edge (0-based)
PathPoint shift_path_point(const PathPoint& x, long n, const DirGraph& g);

struct PrimPresentation {
    std::vector<MaximalTail> tails;
    // pairs (i, j) with tails[i] strictly contained in tails[j]
    std::vector<std::pair<int, int>> order;
};

// Open subset of Prim: per tail a boolean (Point fiber, Per = 0) or an open
// arc set in the circle coordinate w = z^Per (Circle fiber).
using OpenFiber = std::variant<bool, TorusSet>;
struct PrimOpenSet {
    std::vector<OpenFiber> fibers;  // aligned with PrimPresentation::tails
};

// Closed-set presentation (output of closure): per tail EMPTY, FULL, or a
// finite rational point set in the circle coordinate.
struct ClosedFiber {
    enum class Kind { kEmpty, kFull, kPoints } kind = Kind::kEmpty;
    std::vector<Rat> points;  // circle coordinates, only for kPoints
};
struct PrimClosedSet {
    std::vector<ClosedFiber> fibers;
};

// A point of Prim for closure/convergence inputs: a tail plus either a
// rational circle coordinate or the whole fiber (FULL).
struct PrimPointSpec {
    std::vector<int> tail;
    std::optional<Rat> w;  // nullopt = FULL fiber
};

std::vector<MaximalTail> maximal_tails(const DirGraph& g);
PrimPresentation prim_presentation(const DirGraph& g);
PathPoint realize_tail(const DirGraph& g, const MaximalTail& t);
std::vector<int> tail_of_path(const DirGraph& g, const PathPoint& x);
IntLattice essential_isotropy_group(const DirGraph& g, const PathPoint& x);

PrimClosedSet closure(const DirGraph& g, const std::vector<PrimPointSpec>& s);
bool is_open(const DirGraph& g, const PrimOpenSet& o);
PrimOpenSet lattice_meet(const DirGraph& g, const PrimOpenSet& o1,
                         const PrimOpenSet& o2);
PrimOpenSet lattice_join(const DirGraph& g, const PrimOpenSet& o1,
                         const PrimOpenSet& o2);
std::vector<std::vector<int>> gauge_invariant_ideals(const DirGraph& g);
std::pair<std::vector<int>, std::vector<int>> sandwich_sets(
    const DirGraph& g, const PrimOpenSet& o);

struct ConvergenceVerdict {
    bool converges = false;
    bool supported = true;  // false would flag an UNSUPPORTED configuration
};
// Sequence: explicit prefix plus cyclically repeating tail of Prim points.
struct PrimSequence {
    std::vector<PrimPointSpec> prefix;
    std::vector<PrimPointSpec> tail;
};
ConvergenceVerdict converge_prim(const DirGraph& g, const PrimSequence& seq,
                                 const PrimPointSpec& target);

// --- text formats ----------------------------------------------------------

DirGraph parse_graph(const std::string& text);
std::string tails_json(const DirGraph& g);
std::string poset_dot(const DirGraph& g);

// Lookup helper: index of a tail (by vertex set) in maximal_tails order.
int find_tail(const std::vector<MaximalTail>& tails, const std::vector<int>& vs);

}  // namespace prim
