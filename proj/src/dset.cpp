#include "prim/dset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace prim {

namespace {

void check_size(const TwoGraph& g, const DSet& d) {
    if (d.fibers.size() != g.vertices.size()) {
        throw std::invalid_argument("fiber count differs from the vertex count");
    }
}

std::string point_str(const TorusPoint& p) {
    std::string s = "(";
    for (int i = 0; i < p.dim(); ++i) {
        if (i) s += ", ";
        s += p.angles[i].str();
    }
    return s + ")";
}

// the individual convex cells of a fiber
std::vector<TorusSet> fiber_cells(const TorusSet& w) {
    std::vector<TorusSet> cells;
    for (const auto& p : w.polys) {
        TorusSet c;
        c.k = 2;
        c.polys = {p};
        cells.push_back(std::move(c));
    }
    return cells;
}

// vertices reachable from each vertex along the skeleton (source -> range)
std::vector<std::vector<bool>> skeleton_reach(const TwoGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int v = 0; v < n; ++v) reach[v][v] = true;
    for (const auto& e : g.blue) reach[e.source][e.range] = true;
    for (const auto& e : g.red) reach[e.source][e.range] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
}

}  // namespace

TorusPoint ts_sample_point(const TorusSet& w) {
    if (w.k == 1) {
        if (w.arcs.empty()) throw std::invalid_argument("empty set has no sample point");
        return make_point({(w.arcs[0].lo + w.arcs[0].hi) / 2});
    }
    if (w.polys.empty()) throw std::invalid_argument("empty set has no sample point");
    Rat cx = 0, cy = 0;
    const auto& vs = w.polys[0].verts;
    for (const auto& p : vs) {
        cx += p[0];
        cy += p[1];
    }
    auto n = static_cast<long>(vs.size());
    return make_point({mod1(cx / n), mod1(cy / n)});
}

DReport check_D1(const TwoGraph& g, const DSet& d) {
    check_size(g, d);
    DReport rep;
    auto edge = [&](const TwoEdge& e, const char* color) {
        if (ts_subset(d.fibers[e.range], d.fibers[e.source])) return;
        rep.pass = false;
        auto diff = ts_difference(d.fibers[e.range], d.fibers[e.source]);
        rep.witnesses.push_back(std::string(color) + " edge " + e.name +
                                ": fiber does not shrink, separating point " +
                                point_str(ts_sample_point(diff)));
    };
    for (const auto& e : g.blue) edge(e, "blue");
    for (const auto& e : g.red) edge(e, "red");
    return rep;
}

DReport check_D2(const TwoGraph& g, const DSet& d) {
    check_size(g, d);
    DReport rep;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        for (int color = 0; color < 2; ++color) {
            const auto& edges = color == 0 ? g.blue : g.red;
            TorusSet inter = ts_full(2);
            for (const auto& e : edges) {
                if (e.range == v) inter = ts_intersect(inter, d.fibers[e.source]);
            }
            if (ts_subset(inter, d.fibers[v])) continue;
            rep.pass = false;
            auto diff = ts_difference(inter, d.fibers[v]);
            rep.witnesses.push_back("vertex " + g.vertices[v] + ", " +
                                    (color == 0 ? "blue" : "red") +
                                    " degree: source intersection escapes, point " +
                                    point_str(ts_sample_point(diff)));
        }
    }
    return rep;
}

DReport check_D3(const TwoGraph& g, const DSet& d, const ClassTable& tab) {
    check_size(g, d);
    DReport rep;
    for (size_t x = 0; x < tab.classes.size(); ++x) {
        std::vector<int> targets = tab.acc[x];
        targets.push_back(static_cast<int>(x));
        for (int v : tab.classes[x].block) {
            auto cells = fiber_cells(d.fibers[v]);
            for (size_t ci = 0; ci < cells.size(); ++ci) {
                for (int y : targets) {
                    auto sat = saturate(cells[ci], tab.hshare[x][y]);
                    bool landed = false;
                    for (int w : tab.classes[static_cast<size_t>(y)].block) {
                        landed |= ts_subset(sat, d.fibers[w]);
                    }
                    if (!landed) {
                        rep.pass = false;
                        rep.witnesses.push_back(
                            "class " + std::to_string(x) + ", vertex " + g.vertices[v] +
                            ", cell " + std::to_string(ci) +
                            ": saturation misses every fiber of class " +
                            std::to_string(y));
                    }
                }
            }
        }
    }
    return rep;
}

ClasswiseSet alpha(const TwoGraph& g, const ClassTable& tab, const DSet& d) {
    check_size(g, d);
    ClasswiseSet a;
    for (const auto& cls : tab.classes) {
        TorusSet u = ts_empty(2);
        for (int v : cls.block) u = ts_union(u, d.fibers[v]);
        a.fibers.push_back(std::move(u));
    }
    return a;
}

DSet delta(const TwoGraph& g, const ClassTable& tab, const ClasswiseSet& a) {
    if (a.fibers.size() != tab.classes.size()) {
        throw std::invalid_argument("classwise fiber count differs from the table");
    }
    auto reach = skeleton_reach(g);
    DSet d;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        TorusSet inter = ts_full(2);
        for (size_t y = 0; y < tab.classes.size(); ++y) {
            bool through = false;
            for (int b : tab.classes[y].block) through |= reach[b][v];
            if (through) inter = ts_intersect(inter, a.fibers[y]);
        }
        d.fibers.push_back(std::move(inter));
    }
    return d;
}

bool roundtrip(const TwoGraph& g, const ClassTable& tab, const DSet& d) {
    auto back = delta(g, tab, alpha(g, tab, d));
    for (size_t v = 0; v < d.fibers.size(); ++v) {
        if (!ts_equal(back.fibers[v], d.fibers[v])) return false;
    }
    return true;
}

DSet dset_meet(const DSet& a, const DSet& b) {
    if (a.fibers.size() != b.fibers.size()) {
        throw std::invalid_argument("fiber counts differ");
    }
    DSet out;
    for (size_t i = 0; i < a.fibers.size(); ++i) {
        out.fibers.push_back(ts_intersect(a.fibers[i], b.fibers[i]));
    }
    return out;
}

DSet dset_join(const DSet& a, const DSet& b) {
    if (a.fibers.size() != b.fibers.size()) {
        throw std::invalid_argument("fiber counts differ");
    }
    DSet out;
    for (size_t i = 0; i < a.fibers.size(); ++i) {
        out.fibers.push_back(ts_union(a.fibers[i], b.fibers[i]));
    }
    return out;
}

DSet parse_dset(const std::string& text, const TwoGraph& g) {
    DSet d;
    d.fibers.assign(g.vertices.size(), ts_empty(2));
    std::vector<bool> seen(g.vertices.size(), false);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string name, eq;
        if (!(ls >> name)) continue;
        if (!(ls >> eq) || eq != "=") {
            throw std::invalid_argument("dset parse error at line " +
                                        std::to_string(lineno) + ": expected '='");
        }
        std::string expr;
        std::getline(ls, expr);
        int v = g.vertex_index(name);
        if (seen[static_cast<size_t>(v)]) {
            throw std::invalid_argument("dset parse error at line " +
                                        std::to_string(lineno) + ": duplicate vertex " +
                                        name);
        }
        seen[static_cast<size_t>(v)] = true;
        d.fibers[static_cast<size_t>(v)] = parse_torus_set(expr, 2);
    }
    for (size_t v = 0; v < seen.size(); ++v) {
        if (!seen[v]) {
            throw std::invalid_argument("dset is missing vertex " + g.vertices[v]);
        }
    }
    return d;
}

std::string unparse_dset(const DSet& d, const TwoGraph& g) {
    check_size(g, d);
    std::string out;
    for (size_t v = 0; v < d.fibers.size(); ++v) {
        out += g.vertices[v] + " = " + unparse_torus_set(d.fibers[v]) + "\n";
    }
    return out;
}

}  // namespace prim
