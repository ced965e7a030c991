#include "prim/kgraph2.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace prim {

namespace {

std::string edge_desc(const TwoGraph& g, const TwoEdge& e) {
    return e.name + " (" + g.vertices[e.range] + " <- " + g.vertices[e.source] + ")";
}

// square lookup keyed by the blue-red pair (f, g)
std::map<std::pair<int, int>, std::pair<int, int>> square_map(const TwoGraph& g) {
    std::map<std::pair<int, int>, std::pair<int, int>> m;
    for (const auto& sq : g.squares) m[{sq.f, sq.g}] = {sq.gp, sq.fp};
    return m;
}

}  // namespace

int TwoGraph::vertex_index(const std::string& v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw std::invalid_argument("unknown vertex " + v);
    return static_cast<int>(it - vertices.begin());
}

int TwoGraph::blue_index(const std::string& e) const {
    for (size_t i = 0; i < blue.size(); ++i) {
        if (blue[i].name == e) return static_cast<int>(i);
    }
    throw std::invalid_argument("unknown blue edge " + e);
}

int TwoGraph::red_index(const std::string& e) const {
    for (size_t i = 0; i < red.size(); ++i) {
        if (red[i].name == e) return static_cast<int>(i);
    }
    throw std::invalid_argument("unknown red edge " + e);
}

ValidationReport validate(const TwoGraph& g) {
    ValidationReport rep;
    auto note = [&](const std::string& s) {
        rep.ok = false;
        rep.violations.push_back(s);
    };
    int n = static_cast<int>(g.vertices.size());
    for (int v = 0; v < n; ++v) {
        bool b = false, r = false;
        for (const auto& e : g.blue) b |= (e.range == v);
        for (const auto& e : g.red) r |= (e.range == v);
        if (!b) note("vertex " + g.vertices[v] + " receives no blue edge");
        if (!r) note("vertex " + g.vertices[v] + " receives no red edge");
    }
    // unique factorization: squares are a bijection between composable
    // blue-red and red-blue pairs with matching endpoints
    std::map<std::pair<int, int>, int> forward, backward;
    for (const auto& sq : g.squares) {
        const auto& f = g.blue[sq.f];
        const auto& gg = g.red[sq.g];
        const auto& gp = g.red[sq.gp];
        const auto& fp = g.blue[sq.fp];
        if (f.source != gg.range) {
            note("square " + f.name + gg.name + ": pair does not compose");
        }
        if (gp.source != fp.range) {
            note("square " + f.name + gg.name + ": factorization does not compose");
        }
        if (gp.range != f.range || fp.source != gg.source) {
            note("square " + f.name + gg.name + ": endpoints differ across the square");
        }
        if (forward.count({sq.f, sq.g})) {
            note("pair (" + f.name + "," + gg.name + ") has two factorizations");
        }
        forward[{sq.f, sq.g}] = 1;
        if (backward.count({sq.gp, sq.fp})) {
            note("pair (" + gp.name + "," + fp.name + ") is the factorization of two squares");
        }
        backward[{sq.gp, sq.fp}] = 1;
    }
    for (int f = 0; f < static_cast<int>(g.blue.size()); ++f) {
        for (int r = 0; r < static_cast<int>(g.red.size()); ++r) {
            if (g.blue[f].source == g.red[r].range && !forward.count({f, r})) {
                note("composable pair (" + edge_desc(g, g.blue[f]) + ", " +
                     edge_desc(g, g.red[r]) + ") has no square");
            }
            if (g.red[r].source == g.blue[f].range && !backward.count({r, f})) {
                note("composable pair (" + edge_desc(g, g.red[r]) + ", " +
                     edge_desc(g, g.blue[f]) + ") is not hit by any square");
            }
        }
    }
    return rep;
}

KPath make_kpath(const TwoGraph& g, int range_vertex, const std::vector<int>& blues,
                 const std::vector<int>& reds) {
    KPath x;
    x.m = static_cast<int>(blues.size());
    x.n = static_cast<int>(reds.size());
    x.range = range_vertex;
    int at = range_vertex;
    for (int b : blues) {
        if (g.blue[b].range != at) throw std::invalid_argument("blue word does not compose");
        at = g.blue[b].source;
    }
    for (int r : reds) {
        if (g.red[r].range != at) throw std::invalid_argument("red word does not compose");
        at = g.red[r].source;
    }
    x.blue_rows.assign(x.n + 1, std::vector<int>(x.m, -1));
    x.red_cols.assign(x.m + 1, std::vector<int>(x.n, -1));
    x.blue_rows[0] = blues;
    x.red_cols[x.m] = reds;
    auto sq = square_map(g);
    for (int j = 0; j < x.n; ++j) {
        for (int i = x.m - 1; i >= 0; --i) {
            auto it = sq.find({x.blue_rows[j][i], x.red_cols[i + 1][j]});
            if (it == sq.end()) {
                throw std::invalid_argument("missing factorization square for pair (" +
                                            g.blue[x.blue_rows[j][i]].name + "," +
                                            g.red[x.red_cols[i + 1][j]].name + ")");
            }
            x.red_cols[i][j] = it->second.first;
            x.blue_rows[j + 1][i] = it->second.second;
        }
    }
    x.vgrid.assign(x.m + 1, std::vector<int>(x.n + 1, -1));
    for (int i = 0; i <= x.m; ++i) {
        for (int j = 0; j <= x.n; ++j) {
            if (i < x.m) {
                x.vgrid[i][j] = g.blue[x.blue_rows[j][i]].range;
            } else if (j < x.n) {
                x.vgrid[i][j] = g.red[x.red_cols[i][j]].range;
            } else if (i > 0) {
                x.vgrid[i][j] = g.blue[x.blue_rows[j][i - 1]].source;
            } else if (j > 0) {
                x.vgrid[i][j] = g.red[x.red_cols[i][j - 1]].source;
            } else {
                x.vgrid[i][j] = x.range;
            }
        }
    }
    return x;
}

int kpath_vertex(const TwoGraph& g, const KPath& x, int i, int j) {
    (void)g;
    if (i < 0 || j < 0 || i > x.m || j > x.n) throw std::out_of_range("grid point");
    return x.vgrid[i][j];
}

int kpath_source(const TwoGraph& g, const KPath& x) {
    return kpath_vertex(g, x, x.m, x.n);
}

KPath kpath_segment(const KPath& x, std::pair<int, int> p, std::pair<int, int> q) {
    if (p.first < 0 || p.second < 0 || q.first < p.first || q.second < p.second ||
        q.first > x.m || q.second > x.n) {
        throw std::out_of_range("segment outside the path degree");
    }
    KPath s;
    s.m = q.first - p.first;
    s.n = q.second - p.second;
    s.blue_rows.assign(s.n + 1, std::vector<int>(s.m));
    s.red_cols.assign(s.m + 1, std::vector<int>(s.n));
    for (int j = 0; j <= s.n; ++j) {
        for (int i = 0; i < s.m; ++i) {
            s.blue_rows[j][i] = x.blue_rows[p.second + j][p.first + i];
        }
    }
    for (int i = 0; i <= s.m; ++i) {
        for (int j = 0; j < s.n; ++j) {
            s.red_cols[i][j] = x.red_cols[p.first + i][p.second + j];
        }
    }
    s.vgrid.assign(s.m + 1, std::vector<int>(s.n + 1, -1));
    for (int i = 0; i <= s.m; ++i) {
        for (int j = 0; j <= s.n; ++j) {
            s.vgrid[i][j] = x.vgrid[p.first + i][p.second + j];
        }
    }
    s.range = s.vgrid[0][0];
    return s;
}

std::vector<KPath> enumerate_paths(const TwoGraph& g, int v, int m, int n) {
    std::vector<std::vector<int>> blue_words;
    std::vector<int> cur;
    // depth-first enumeration of blue words with range v
    std::function<void(int, int)> rec_blue = [&](int at, int left) {
        if (left == 0) {
            blue_words.push_back(cur);
            return;
        }
        for (int b = 0; b < static_cast<int>(g.blue.size()); ++b) {
            if (g.blue[b].range != at) continue;
            cur.push_back(b);
            rec_blue(g.blue[b].source, left - 1);
            cur.pop_back();
        }
    };
    rec_blue(v, m);
    std::vector<KPath> out;
    for (const auto& bw : blue_words) {
        int mid = v;
        for (int b : bw) mid = g.blue[b].source;
        std::vector<int> rw;
        std::function<void(int, int)> rec_red = [&](int at, int left) {
            if (left == 0) {
                out.push_back(make_kpath(g, v, bw, rw));
                return;
            }
            for (int r = 0; r < static_cast<int>(g.red.size()); ++r) {
                if (g.red[r].range != at) continue;
                rw.push_back(r);
                rec_red(g.red[r].source, left - 1);
                rw.pop_back();
            }
        };
        rec_red(mid, n);
    }
    return out;
}

namespace {

// unique blue/red out of each vertex of the reachable component, or throw;
// optionally restricted to an induced vertex block
struct DetComponent {
    std::vector<int> reachable;           // sorted
    std::vector<int> next_blue, next_red; // per vertex, -1 off-component
};

DetComponent deterministic_component(const TwoGraph& g, int v,
                                     const std::vector<int>* block) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<bool> allowed(n, block == nullptr);
    if (block) {
        for (int u : *block) allowed[u] = true;
    }
    DetComponent c;
    c.next_blue.assign(n, -1);
    c.next_red.assign(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<int> queue{v};
    seen[v] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        c.reachable.push_back(u);
        int nb = -1, nr = -1;
        for (int b = 0; b < static_cast<int>(g.blue.size()); ++b) {
            if (g.blue[b].range == u && allowed[g.blue[b].source]) {
                if (nb >= 0) {
                    throw std::invalid_argument("vertex " + g.vertices[u] +
                                                " is not deterministic (blue)");
                }
                nb = b;
            }
        }
        for (int r = 0; r < static_cast<int>(g.red.size()); ++r) {
            if (g.red[r].range == u && allowed[g.red[r].source]) {
                if (nr >= 0) {
                    throw std::invalid_argument("vertex " + g.vertices[u] +
                                                " is not deterministic (red)");
                }
                nr = r;
            }
        }
        if (nb < 0 || nr < 0) {
            throw std::invalid_argument("vertex " + g.vertices[u] +
                                        " has no admissible edge of each color");
        }
        c.next_blue[u] = nb;
        c.next_red[u] = nr;
        for (int t : {g.blue[nb].source, g.red[nr].source}) {
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    std::sort(c.reachable.begin(), c.reachable.end());
    return c;
}

IntLattice periodicity_group_impl(const TwoGraph& g, int v,
                                  const std::vector<int>* block) {
    auto comp = deterministic_component(g, v, block);
    int B = static_cast<int>(comp.reachable.size()) + 1;
    int S = 2 * B + 2;
    std::vector<std::vector<int>> state(S + 1, std::vector<int>(S + 1));
    state[0][0] = v;
    for (int i = 1; i <= S; ++i) {
        state[i][0] = g.blue[comp.next_blue[state[i - 1][0]]].source;
    }
    for (int j = 1; j <= S; ++j) {
        for (int i = 0; i <= S; ++i) {
            state[i][j] = g.red[comp.next_red[state[i][j - 1]]].source;
        }
    }
    // every state coincidence inside the window is a genuine period of the
    // unique infinite path (determinism: state determines the continuation)
    IMat gens;
    for (int i = 0; i <= B; ++i) {
        for (int j = 0; j <= B; ++j) {
            for (int p = 0; p <= B; ++p) {
                for (int q = 0; q <= B; ++q) {
                    if (state[i][j] == state[p][q] && (i != p || j != q)) {
                        gens.push_back({Int(i - p), Int(j - q)});
                    }
                }
            }
        }
    }
    IntLattice L = canonicalize(2, gens);
    // mandated post-verification of each basis generator over the window
    for (const auto& h : L.basis) {
        long g1 = static_cast<long>(h[0]), g2 = static_cast<long>(h[1]);
        long a1 = std::max(g1, 0L), a2 = std::max(g2, 0L);
        long b1 = std::max(-g1, 0L), b2 = std::max(-g2, 0L);
        for (int i = 0; i <= B; ++i) {
            for (int j = 0; j <= B; ++j) {
                if (state[i + a1][j + a2] != state[i + b1][j + b2]) {
                    throw std::runtime_error("periodicity verification FAILED at " +
                                             g.vertices[v]);
                }
            }
        }
    }
    return L;
}

}  // namespace

int shift_vertex(const TwoGraph& g, int v, long p1, long p2) {
    if (p1 < 0 || p2 < 0) throw std::invalid_argument("shift must be nonnegative");
    auto comp = deterministic_component(g, v, nullptr);
    int at = v;
    for (long i = 0; i < p1; ++i) at = g.blue[comp.next_blue[at]].source;
    for (long j = 0; j < p2; ++j) at = g.red[comp.next_red[at]].source;
    return at;
}

IntLattice periodicity_group(const TwoGraph& g, int v) {
    return periodicity_group_impl(g, v, nullptr);
}

LocalPeriodicity local_periodicity_search(const TwoGraph& g, int v, int bound,
                                          int depth) {
    if (bound < 1 || depth < 1) throw std::invalid_argument("bound and depth must be >= 1");
    LocalPeriodicity out;
    out.bound = bound;
    out.depth = depth;
    IMat gens;
    for (int m1 = 0; m1 <= bound; ++m1) {
        for (int m2 = 0; m2 <= bound; ++m2) {
            for (int n1 = 0; n1 <= bound; ++n1) {
                for (int n2 = 0; n2 <= bound; ++n2) {
                    if (std::make_pair(m1, m2) >= std::make_pair(n1, n2)) continue;
                    int M1 = std::max(m1, n1) + depth;
                    int M2 = std::max(m2, n2) + depth;
                    bool all = true;
                    for (const auto& lam : enumerate_paths(g, v, M1, M2)) {
                        auto a = kpath_segment(lam, {m1, m2}, {m1 + depth, m2 + depth});
                        auto b = kpath_segment(lam, {n1, n2}, {n1 + depth, n2 + depth});
                        if (!(a == b)) {
                            all = false;
                            break;
                        }
                    }
                    if (all) {
                        out.confirmed.push_back({{m1, m2}, {n1, n2}});
                        gens.push_back({Int(m1 - n1), Int(m2 - n2)});
                    }
                }
            }
        }
    }
    out.group = canonicalize(2, gens);
    return out;
}

namespace {

// strongly connected components of the combined skeleton containing a cycle
std::vector<std::vector<int>> cycle_blocks(const TwoGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    auto add = [&](const TwoEdge& e) { reach[e.source][e.range] = true; };
    for (const auto& e : g.blue) add(e);
    for (const auto& e : g.red) add(e);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::vector<std::vector<int>> blocks;
    std::vector<bool> used(n, false);
    for (int v = 0; v < n; ++v) {
        if (used[v] || !reach[v][v]) continue;
        std::vector<int> blk;
        for (int u = 0; u < n; ++u) {
            if (reach[v][u] && reach[u][v]) {
                blk.push_back(u);
                used[u] = true;
            }
        }
        blocks.push_back(blk);
    }
    return blocks;
}

bool block_deterministic(const TwoGraph& g, const std::vector<int>& blk) {
    std::set<int> in(blk.begin(), blk.end());
    for (int v : blk) {
        int nb = 0, nr = 0;
        for (const auto& e : g.blue) nb += (e.range == v && in.count(e.source));
        for (const auto& e : g.red) nr += (e.range == v && in.count(e.source));
        if (nb != 1 || nr != 1) return false;
    }
    return true;
}

// Does an infinite path exist that is (0,k)-periodic (red==true) or
// (k,0)-periodic, starts arbitrarily deep inside xblock, and eventually stays
// in yblock?  Such a path is a witness that the axis vector lies in the
// shared group of the canonical family at x evaluated on class y.  States of
// the search are (vertex, k-cycle of the periodic color at that vertex);
// one step of the transverse color is consistent iff commuting the cycle
// through it closes up (the grid has the claimed period).
bool axis_witness(const TwoGraph& g, const std::vector<int>& xblock,
                  const std::vector<int>& yblock, int k, bool red_axis) {
    const auto& cyc_edges = red_axis ? g.red : g.blue;
    const auto& step_edges = red_axis ? g.blue : g.red;
    // square maps oriented for the two cases (see grid orientation notes)
    std::map<std::pair<int, int>, std::pair<int, int>> fwd;
    for (const auto& sq : g.squares) {
        if (red_axis) {
            fwd[{sq.f, sq.g}] = {sq.gp, sq.fp};  // (blue, red) -> (red, blue)
        } else {
            fwd[{sq.gp, sq.fp}] = {sq.f, sq.g};  // (red, blue) -> (blue, red)
        }
    }
    // enumerate k-cycles of the periodic color per vertex
    struct State {
        int v;
        std::vector<int> cyc;
        bool operator<(const State& o) const { return std::tie(v, cyc) < std::tie(o.v, o.cyc); }
    };
    std::vector<State> states;
    {
        std::vector<int> word;
        std::function<void(int, int, int)> rec = [&](int v0, int at, int left) {
            if (left == 0) {
                if (at == v0) states.push_back({v0, word});
                return;
            }
            for (int e = 0; e < static_cast<int>(cyc_edges.size()); ++e) {
                if (cyc_edges[e].range != at) continue;
                word.push_back(e);
                rec(v0, cyc_edges[e].source, left - 1);
                word.pop_back();
            }
        };
        for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) rec(v, v, k);
    }
    if (states.empty()) return false;
    std::map<State, int> id;
    for (size_t i = 0; i < states.size(); ++i) id[states[i]] = static_cast<int>(i);
    int ns = static_cast<int>(states.size());
    std::vector<std::vector<bool>> adj(ns, std::vector<bool>(ns, false));
    for (int sp = 0; sp < ns; ++sp) {
        const auto& tgt = states[sp];
        for (int b = 0; b < static_cast<int>(step_edges.size()); ++b) {
            if (step_edges[b].source != tgt.v) continue;
            int bb = b;
            std::vector<int> cyc;
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                auto it = fwd.find({bb, tgt.cyc[j]});
                if (it == fwd.end()) {
                    ok = false;
                    break;
                }
                cyc.push_back(it->second.first);
                bb = it->second.second;
            }
            if (!ok || bb != b) continue;
            State src{step_edges[b].range, cyc};
            auto idit = id.find(src);
            if (idit != id.end()) adj[idit->second][sp] = true;
        }
    }
    // reachability closure over states
    std::vector<std::vector<bool>> reach = adj;
    for (int m = 0; m < ns; ++m)
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j)
                if (reach[i][m] && reach[m][j]) reach[i][j] = true;
    std::set<int> xin(xblock.begin(), xblock.end());
    std::set<int> yin(yblock.begin(), yblock.end());
    // cyclic states within a block: a cycle of states whose vertices stay in
    // the block (check via reachability restricted to the block)
    auto cyclic_in = [&](const std::set<int>& blk) {
        std::vector<std::vector<bool>> r2(ns, std::vector<bool>(ns, false));
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j)
                if (adj[i][j] && blk.count(states[i].v) && blk.count(states[j].v))
                    r2[i][j] = true;
        for (int m = 0; m < ns; ++m)
            for (int i = 0; i < ns; ++i)
                for (int j = 0; j < ns; ++j)
                    if (r2[i][m] && r2[m][j]) r2[i][j] = true;
        std::vector<bool> cyc(ns, false);
        for (int i = 0; i < ns; ++i) cyc[i] = r2[i][i];
        return cyc;
    };
    auto xcyc = cyclic_in(xin);
    auto ycyc = cyclic_in(yin);
    for (int i = 0; i < ns; ++i) {
        if (!xcyc[i]) continue;
        for (int j = 0; j < ns; ++j) {
            if (ycyc[j] && (i == j || reach[i][j])) return true;
        }
    }
    return false;
}

}  // namespace

ClassTable class_table(const TwoGraph& g, int bound, int depth) {
    ClassTable tab;
    auto blocks = cycle_blocks(g);
    if (blocks.empty()) {
        throw std::invalid_argument("UNANALYZABLE: graph has no recurrent block");
    }
    for (const auto& blk : blocks) {
        PathClass c;
        c.block = blk;
        if (block_deterministic(g, blk)) {
            c.group = periodicity_group_impl(g, blk.front(), &blk);
            c.certified = true;
        } else {
            c.group = local_periodicity_search(g, blk.front(), bound, depth).group;
            c.certified = false;
            c.depth = depth;
        }
        tab.classes.push_back(std::move(c));
    }
    // reachability between blocks along the skeleton (arrows source -> range)
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int v = 0; v < n; ++v) reach[v][v] = true;
    for (const auto& e : g.blue) reach[e.source][e.range] = true;
    for (const auto& e : g.red) reach[e.source][e.range] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    size_t nc = tab.classes.size();
    tab.acc.assign(nc, {});
    for (size_t x = 0; x < nc; ++x) {
        for (size_t y = 0; y < nc; ++y) {
            if (x == y) continue;
            bool hits = false;
            for (int u : tab.classes[y].block) {
                for (int w : tab.classes[x].block) hits |= reach[u][w];
            }
            if (hits) tab.acc[x].push_back(static_cast<int>(y));
        }
    }
    tab.hshare.assign(nc, std::vector<IntLattice>(nc, zero_lattice(2)));
    tab.hshare_exact.assign(nc, std::vector<bool>(nc, true));
    int kmax = n + 2;
    for (size_t x = 0; x < nc; ++x) {
        for (size_t y = 0; y < nc; ++y) {
            if (x == y) {
                tab.hshare[x][y] = tab.classes[x].group;
                continue;
            }
            bool accs = std::find(tab.acc[x].begin(), tab.acc[x].end(),
                                  static_cast<int>(y)) != tab.acc[x].end();
            if (!accs) {
                tab.hshare[x][y] = tab.classes[y].group;
                continue;
            }
            // witnessed axis periods shared between the canonical family at
            // x and the accumulating class y
            IMat gens;
            for (int k = 1; k <= kmax; ++k) {
                if (axis_witness(g, tab.classes[x].block, tab.classes[y].block, k, true)) {
                    gens.push_back({Int(0), Int(k)});
                    break;
                }
            }
            for (int k = 1; k <= kmax; ++k) {
                if (axis_witness(g, tab.classes[x].block, tab.classes[y].block, k, false)) {
                    gens.push_back({Int(k), Int(0)});
                    break;
                }
            }
            tab.hshare[x][y] = meet(canonicalize(2, gens), tab.classes[y].group);
            // only complete when nothing between the found value and the
            // ceiling H_x ∩ H_y remains
            tab.hshare_exact[x][y] =
                tab.hshare[x][y].basis ==
                meet(tab.classes[x].group, tab.classes[y].group).basis;
        }
    }
    return tab;
}

TwoGraph parse_kgraph(const std::string& text) {
    TwoGraph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("kgraph parse error at line " +
                                    std::to_string(lineno) + ": " + msg);
    };
    struct RawSquare {
        std::string f, g, gp, fp;
        int line;
    };
    std::vector<RawSquare> raw;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "kgraph") {
            if (!(ls >> g.name)) fail("kgraph needs a name");
        } else if (kw == "vertex") {
            std::string v;
            bool any = false;
            while (ls >> v) {
                if (std::find(g.vertices.begin(), g.vertices.end(), v) != g.vertices.end()) {
                    fail("duplicate vertex " + v);
                }
                g.vertices.push_back(v);
                any = true;
            }
            if (!any) fail("vertex line needs names");
        } else if (kw == "blue" || kw == "red") {
            std::string e, r, s;
            if (!(ls >> e >> r >> s)) fail(kw + " needs <name> <range> <source>");
            for (const auto& ed : g.blue) {
                if (ed.name == e) fail("duplicate edge " + e);
            }
            for (const auto& ed : g.red) {
                if (ed.name == e) fail("duplicate edge " + e);
            }
            auto vi = [&](const std::string& v) {
                auto it = std::find(g.vertices.begin(), g.vertices.end(), v);
                if (it == g.vertices.end()) fail("unknown vertex " + v);
                return static_cast<int>(it - g.vertices.begin());
            };
            TwoEdge ed{e, vi(r), vi(s)};
            (kw == "blue" ? g.blue : g.red).push_back(ed);
        } else if (kw == "square") {
            RawSquare sq;
            std::string eq;
            if (!(ls >> sq.f >> sq.g >> eq >> sq.gp >> sq.fp) || eq != "=") {
                fail("square needs <blue> <red> = <red> <blue>");
            }
            sq.line = lineno;
            raw.push_back(sq);
        } else {
            fail("unknown declaration '" + kw + "'");
        }
    }
    for (const auto& sq : raw) {
        lineno = sq.line;
        try {
            g.squares.push_back(Square{g.blue_index(sq.f), g.red_index(sq.g),
                                       g.red_index(sq.gp), g.blue_index(sq.fp)});
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
    if (g.vertices.empty()) {
        lineno = 0;
        fail("no vertices");
    }
    return g;
}

ClassTable parse_class_table(const std::string& json_text, const TwoGraph& g) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    ClassTable tab;
    auto lattice_of = [](const nlohmann::json& gens) {
        IMat rows;
        for (const auto& v : gens) rows.push_back({Int(v[0].get<long>()), Int(v[1].get<long>())});
        return canonicalize(2, rows);
    };
    for (const auto& jc : j.at("classes")) {
        PathClass c;
        for (const auto& v : jc.at("trace")) c.block.push_back(g.vertex_index(v.get<std::string>()));
        std::sort(c.block.begin(), c.block.end());
        c.group = lattice_of(jc.at("H"));
        c.certified = jc.value("certified", true);
        tab.classes.push_back(std::move(c));
        tab.acc.push_back({});
        for (const auto& a : jc.at("acc")) tab.acc.back().push_back(a.get<int>());
    }
    size_t nc = tab.classes.size();
    tab.hshare.assign(nc, std::vector<IntLattice>(nc, zero_lattice(2)));
    tab.hshare_exact.assign(nc, std::vector<bool>(nc, true));
    for (size_t x = 0; x < nc; ++x) {
        const auto& jc = j.at("classes")[x];
        if (jc.contains("hshare")) {
            const auto& hs = jc.at("hshare");
            if (hs.size() != nc) throw std::invalid_argument("hshare row size mismatch");
            for (size_t y = 0; y < nc; ++y) tab.hshare[x][y] = lattice_of(hs[y]);
        } else {
            for (size_t y = 0; y < nc; ++y) tab.hshare[x][y] = tab.classes[y].group;
            tab.hshare[x][x] = tab.classes[x].group;
        }
    }
    return tab;
}

}  // namespace prim
