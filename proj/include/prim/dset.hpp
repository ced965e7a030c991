#pragma once

#include "prim/kgraph2.hpp"
#include "prim/torusgeo.hpp"

#include <string>
#include <vector>

namespace prim {

// Ideal datum for a 2-graph: one regular open rational subset of T^2 per
// vertex.  Fibers are aligned with TwoGraph::vertices.
struct DSet {
    std::vector<TorusSet> fibers;
};

// Classwise presentation used by the alpha/delta correspondence: one fiber
// per path class of the ClassTable.
struct ClasswiseSet {
    std::vector<TorusSet> fibers;
};

struct DReport {
    bool pass = true;
    std::vector<std::string> witnesses;
};

// D1: fibers shrink along edges of either color, D(r(e)) subset of D(s(e)).
DReport check_D1(const TwoGraph& g, const DSet& d);
// D2: at every vertex and unit degree, the intersection of the fibers at the
// sources of the incoming paths sits inside the fiber at the vertex.
DReport check_D2(const TwoGraph& g, const DSet& d);
// D3: every cell of every fiber on a class trace saturates, under the shared
// group with each accumulating class, into some fiber on that class's trace.
DReport check_D3(const TwoGraph& g, const DSet& d, const ClassTable& tab);

ClasswiseSet alpha(const TwoGraph& g, const ClassTable& tab, const DSet& d);
DSet delta(const TwoGraph& g, const ClassTable& tab, const ClasswiseSet& a);
bool roundtrip(const TwoGraph& g, const ClassTable& tab, const DSet& d);

DSet dset_meet(const DSet& a, const DSet& b);
DSet dset_join(const DSet& a, const DSet& b);

// file format: one line per vertex, "<vertex> = <torus-set expression>"
DSet parse_dset(const std::string& text, const TwoGraph& g);
std::string unparse_dset(const DSet& d, const TwoGraph& g);

// a rational point inside a nonempty regular open set (used for witnesses)
TorusPoint ts_sample_point(const TorusSet& w);

}  // namespace prim
