#pragma once

#include "prim/zklattice.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace prim {

// A rank-2 graph: bicolored skeleton plus factorization squares.
struct TwoEdge {
    std::string name;
    int range = 0;
    int source = 0;
};

// blue f followed by red g factors as red gp followed by blue fp
struct Square {
    int f = 0, g = 0, gp = 0, fp = 0;
};

struct TwoGraph {
    std::string name;
    std::vector<std::string> vertices;
    std::vector<TwoEdge> blue;
    std::vector<TwoEdge> red;
    std::vector<Square> squares;

    int vertex_index(const std::string& v) const;
    int blue_index(const std::string& e) const;
    int red_index(const std::string& e) const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate(const TwoGraph& g);

// A finite path of degree (m,n) stored as its full commuting grid: vertex at
// grid point (i,j) is the range of the path shifted by (i,j).
struct KPath {
    int m = 0, n = 0;
    int range = 0;
    std::vector<std::vector<int>> blue_rows;  // blue_rows[j][i], j<=n, i<m
    std::vector<std::vector<int>> red_cols;   // red_cols[i][j], i<=m, j<n
    std::vector<std::vector<int>> vgrid;      // vgrid[i][j], vertex at (i,j)
    bool operator==(const KPath&) const = default;
};

// build a path from its blue-then-red normal form; throws on non-composable
KPath make_kpath(const TwoGraph& g, int range_vertex, const std::vector<int>& blues,
                 const std::vector<int>& reds);
int kpath_vertex(const TwoGraph& g, const KPath& x, int i, int j);
int kpath_source(const TwoGraph& g, const KPath& x);
// the subpath from grid offset p to q (0 <= p <= q <= (m,n))
KPath kpath_segment(const KPath& x, std::pair<int, int> p, std::pair<int, int> q);

// all paths with range v and degree (m,n), in canonical enumeration order
std::vector<KPath> enumerate_paths(const TwoGraph& g, int v, int m, int n);

// p-shift of the unique infinite path from a deterministic vertex
int shift_vertex(const TwoGraph& g, int v, long p1, long p2);

// coincidence lattice of the deterministic state map, post-verified
IntLattice periodicity_group(const TwoGraph& g, int v);

struct LocalPeriodicity {
    // confirmed (m, n) pairs: segments agree for every path to the given depth
    std::vector<std::pair<std::array<int, 2>, std::array<int, 2>>> confirmed;
    IntLattice group;  // generated by the confirmed differences m - n
    int bound = 0;
    int depth = 0;
};

LocalPeriodicity local_periodicity_search(const TwoGraph& g, int v, int bound,
                                          int depth);

struct PathClass {
    std::vector<int> block;  // vertex trace: the strongly connected block
    IntLattice group;        // H_x, k = 2
    bool certified = true;   // false when only verified to a finite depth
    int depth = 0;           // certification depth when not deterministic
};

struct ClassTable {
    std::vector<PathClass> classes;
    std::vector<std::vector<int>> acc;               // acc[x] = classes accumulating at x
    std::vector<std::vector<IntLattice>> hshare;     // hshare[x][y]
    // true when hshare[x][y] is provably complete; the auto-filler only
    // certifies witnesses it found, so entries it cannot complete stay false
    std::vector<std::vector<bool>> hshare_exact;
};

ClassTable class_table(const TwoGraph& g, int bound = 2, int depth = 3);

TwoGraph parse_kgraph(const std::string& text);
// manual override table (JSON), vertex names resolved against g
ClassTable parse_class_table(const std::string& json_text, const TwoGraph& g);

}  // namespace prim
