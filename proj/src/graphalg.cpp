#include "prim/graphalg.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace prim {

namespace {

// downstream(v) = vertices reachable from v along edges s(e) -> r(e),
// including v itself.
std::vector<std::vector<bool>> downstream_table(const DirGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int v = 0; v < n; ++v) {
        std::deque<int> queue{v};
        reach[v][v] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (const auto& e : g.edges) {
                if (e.source == u && !reach[v][e.range]) {
                    reach[v][e.range] = true;
                    queue.push_back(e.range);
                }
            }
        }
    }
    return reach;
}

bool no_entrance(const DirGraph& g, const std::vector<int>& cycle,
                 const std::vector<bool>& support) {
    std::set<int> cyc_edges(cycle.begin(), cycle.end());
    std::set<int> cyc_verts;
    for (int e : cycle) cyc_verts.insert(g.edges[e].range);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (cyc_edges.count(e)) continue;
        if (cyc_verts.count(g.edges[e].range) && support[g.edges[e].source]) {
            return false;
        }
    }
    return true;
}

std::vector<bool> to_mask(const std::vector<int>& vs, int n) {
    std::vector<bool> mask(n, false);
    for (int v : vs) mask[v] = true;
    return mask;
}

// Minimal entrance-free cycle inside T (unique up to rotation when it
// exists): each vertex of such a cycle has exactly one T-incoming edge, so
// cycles of the resulting partial function are exactly the candidates.
std::pair<int, std::vector<int>> entrance_free_cycle(const DirGraph& g,
                                                     const std::vector<int>& T) {
    int n = static_cast<int>(g.vertices.size());
    auto mask = to_mask(T, n);
    std::vector<int> unique_in(n, -1);  // edge index, or -1 / -2 (many)
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (!mask[g.edges[e].range] || !mask[g.edges[e].source]) continue;
        int v = g.edges[e].range;
        unique_in[v] = (unique_in[v] == -1) ? e : -2;
    }
    int best_len = 0;
    std::vector<int> best;
    std::vector<int> state(n, 0);  // 0 unvisited, 1 done
    for (int v0 : T) {
        if (state[v0] || unique_in[v0] < 0) continue;
        std::vector<int> chain;
        std::map<int, int> pos;
        int v = v0;
        while (!state[v] && unique_in[v] >= 0 && !pos.count(v)) {
            pos[v] = static_cast<int>(chain.size());
            chain.push_back(v);
            v = g.edges[unique_in[v]].source;
        }
        if (!state[v] && unique_in[v] >= 0 && pos.count(v)) {
            std::vector<int> cyc;
            for (int i = pos[v]; i < static_cast<int>(chain.size()); ++i) {
                cyc.push_back(unique_in[chain[i]]);
            }
            if (best_len == 0 || static_cast<int>(cyc.size()) < best_len) {
                best_len = static_cast<int>(cyc.size());
                best = cyc;
            }
        }
        for (int u : chain) state[u] = 1;
    }
    return {best_len, best};
}

ClosedFiber union_values(const std::vector<std::optional<Rat>>& vals) {
    ClosedFiber f;
    if (vals.empty()) {
        f.kind = ClosedFiber::Kind::kEmpty;
        return f;
    }
    for (const auto& v : vals) {
        if (!v) {
            f.kind = ClosedFiber::Kind::kFull;
            return f;
        }
    }
    f.kind = ClosedFiber::Kind::kPoints;
    for (const auto& v : vals) {
        Rat w = mod1(*v);
        if (std::find(f.points.begin(), f.points.end(), w) == f.points.end()) {
            f.points.push_back(w);
        }
    }
    std::sort(f.points.begin(), f.points.end());
    return f;
}

}  // namespace

int DirGraph::vertex_index(const std::string& v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) throw std::invalid_argument("unknown vertex " + v);
    return static_cast<int>(it - vertices.begin());
}

int DirGraph::edge_index(const std::string& e) const {
    for (size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].name == e) return static_cast<int>(i);
    }
    throw std::invalid_argument("unknown edge " + e);
}

std::vector<MaximalTail> maximal_tails(const DirGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    if (n > 20) throw std::invalid_argument("graph too large for tail enumeration");
    auto reach = downstream_table(g);
    std::vector<MaximalTail> tails;
    for (unsigned long long bits = 1; bits < (1ull << n); ++bits) {
        std::vector<int> T;
        std::vector<bool> mask(n, false);
        for (int v = 0; v < n; ++v) {
            if (bits & (1ull << v)) {
                T.push_back(v);
                mask[v] = true;
            }
        }
        // (1) downstream-closed
        bool ok = true;
        for (int v : T) {
            for (int w = 0; w < n && ok; ++w) {
                if (reach[v][w] && !mask[w]) ok = false;
            }
            if (!ok) break;
        }
        if (!ok) continue;
        // (2) every vertex of T receives an edge with source in T
        for (int v : T) {
            bool has = false;
            for (const auto& e : g.edges) {
                if (e.range == v && mask[e.source]) {
                    has = true;
                    break;
                }
            }
            if (!has) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        // (3) cofinality: common ancestor inside T
        for (size_t i = 0; i < T.size() && ok; ++i) {
            for (size_t j = i; j < T.size() && ok; ++j) {
                bool has = false;
                for (int w : T) {
                    if (reach[w][T[i]] && reach[w][T[j]]) {
                        has = true;
                        break;
                    }
                }
                ok = has;
            }
        }
        if (!ok) continue;
        MaximalTail t;
        t.vertices = T;
        auto [len, cyc] = entrance_free_cycle(g, T);
        t.per = len;
        t.cycle = cyc;
        t.gauge_group = canonicalize(1, len ? IMat{{Int(len)}} : IMat{});
        tails.push_back(std::move(t));
    }
    std::sort(tails.begin(), tails.end(), [](const MaximalTail& a, const MaximalTail& b) {
        return a.vertices < b.vertices;
    });
    return tails;
}

PrimPresentation prim_presentation(const DirGraph& g) {
    PrimPresentation p;
    p.tails = maximal_tails(g);
    for (size_t i = 0; i < p.tails.size(); ++i) {
        for (size_t j = 0; j < p.tails.size(); ++j) {
            if (i == j) continue;
            if (std::includes(p.tails[j].vertices.begin(), p.tails[j].vertices.end(),
                              p.tails[i].vertices.begin(), p.tails[i].vertices.end())) {
                p.order.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return p;
}

int find_tail(const std::vector<MaximalTail>& tails, const std::vector<int>& vs) {
    std::vector<int> sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < tails.size(); ++i) {
        if (tails[i].vertices == sorted) return static_cast<int>(i);
    }
    return -1;
}

PathPoint canonical_path(std::vector<int> prefix, std::vector<int> cycle,
                         const DirGraph& g) {
    if (cycle.empty()) throw std::invalid_argument("path needs a cycle part");
    // validate composability: s(x_i) = r(x_{i+1}) along prefix.cycle^2
    std::vector<int> probe = prefix;
    probe.insert(probe.end(), cycle.begin(), cycle.end());
    probe.insert(probe.end(), cycle.begin(), cycle.end());
    for (size_t i = 0; i + 1 < probe.size(); ++i) {
        if (g.edges[probe[i]].source != g.edges[probe[i + 1]].range) {
            throw std::invalid_argument("edges do not compose in path");
        }
    }
    if (g.edges[cycle.back()].source != g.edges[cycle.front()].range) {
        throw std::invalid_argument("cycle part does not close");
    }
    // primitive cycle root
    int m = static_cast<int>(cycle.size());
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        bool periodic = true;
        for (int i = 0; i + d < m && periodic; ++i) periodic = (cycle[i] == cycle[i + d]);
        if (periodic) {
            cycle.resize(d);
            break;
        }
    }
    // absorb prefix tail into the cycle: rotating the cycle right by one
    // swallows a trailing prefix edge equal to the cycle's last edge
    while (!prefix.empty() && prefix.back() == cycle.back()) {
        prefix.pop_back();
        std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    }
    return PathPoint{std::move(prefix), std::move(cycle)};
}

int path_edge_at(const PathPoint& x, long n) {
    long p = static_cast<long>(x.prefix.size());
    if (n < p) return x.prefix[n];
    return x.cycle[(n - p) % static_cast<long>(x.cycle.size())];
}

int path_vertex_at(const PathPoint& x, long n, const DirGraph& g) {
    // vertex before edge n: r(x_{n+1}) = s(x_n); position 0 is r(x_1)
    if (n == 0) return g.edges[path_edge_at(x, 0)].range;
    return g.edges[path_edge_at(x, n - 1)].source;
}

PathPoint shift_path_point(const PathPoint& x, long n, const DirGraph& g) {
    std::vector<int> prefix = x.prefix;
    std::vector<int> cycle = x.cycle;
    for (long i = 0; i < n; ++i) {
        if (!prefix.empty()) {
            prefix.erase(prefix.begin());
        } else {
            cycle.push_back(cycle.front());
            cycle.erase(cycle.begin());
        }
    }
    return canonical_path(prefix, cycle, g);
}

std::vector<int> tail_of_path(const DirGraph& g, const PathPoint& x) {
    auto reach = downstream_table(g);
    int n = static_cast<int>(g.vertices.size());
    std::vector<bool> in_tail(n, false);
    std::vector<int> seeds;
    for (size_t i = 0; i < x.prefix.size(); ++i) seeds.push_back(g.edges[x.prefix[i]].source);
    for (int e : x.cycle) seeds.push_back(g.edges[e].source);
    seeds.push_back(g.edges[x.prefix.empty() ? x.cycle[0] : x.prefix[0]].range);
    for (int sdx : seeds) {
        for (int w = 0; w < n; ++w) in_tail[w] = in_tail[w] || reach[sdx][w];
    }
    std::vector<int> T;
    for (int v = 0; v < n; ++v) {
        if (in_tail[v]) T.push_back(v);
    }
    return T;
}

IntLattice essential_isotropy_group(const DirGraph& g, const PathPoint& x) {
    auto T = tail_of_path(g, x);
    auto [len, cyc] = entrance_free_cycle(g, T);
    (void)cyc;
    return canonicalize(1, len ? IMat{{Int(len)}} : IMat{});
}

PathPoint realize_tail(const DirGraph& g, const MaximalTail& t) {
    int n = static_cast<int>(g.vertices.size());
    auto mask = to_mask(t.vertices, n);
    if (t.per != 0) {
        return canonical_path({}, t.cycle, g);
    }
    auto reach = downstream_table(g);
    // Walk upstream: repeatedly extend by a nonempty path from w' to w where
    // w' also reaches the next tail vertex on the round-robin list; stop when
    // the (w, list position) state recurs, which closes the periodic part.
    int m = static_cast<int>(t.vertices.size());
    std::vector<int> stream;  // edge indices of x so far
    std::map<std::pair<int, int>, size_t> seen;  // state -> stream length
    int w = t.vertices[0];
    int idx = 0;
    size_t cycle_start = 0, cycle_end = 0;
    for (;;) {
        auto state = std::make_pair(w, idx);
        auto it = seen.find(state);
        if (it != seen.end()) {
            cycle_start = it->second;
            cycle_end = stream.size();
            break;
        }
        seen[state] = stream.size();
        int target = t.vertices[idx];
        // candidate w': reaches both w (by a nonempty path inside T) and
        // target; backward BFS seeded one step out so loops back to w count.
        std::vector<int> prev_edge(n, -1), dist(n, -1);
        std::deque<int> queue;
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            const auto& ed = g.edges[e];
            if (ed.range == w && mask[ed.source] && dist[ed.source] < 0) {
                dist[ed.source] = 1;
                prev_edge[ed.source] = e;
                queue.push_back(ed.source);
            }
        }
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
                const auto& ed = g.edges[e];
                if (ed.range == u && mask[ed.source] && dist[ed.source] < 0) {
                    dist[ed.source] = dist[u] + 1;
                    prev_edge[ed.source] = e;
                    queue.push_back(ed.source);
                }
            }
        }
        int wprime = -1;
        for (int cand : t.vertices) {
            if (dist[cand] >= 1 && reach[cand][target]) {
                wprime = cand;
                break;
            }
        }
        if (wprime < 0) throw std::logic_error("tail realization failed: not a tail?");
        // walk w' -> w collecting edges, then reverse so the leg reads as a
        // path stream with its range (w) first
        std::vector<int> rev;
        int u = wprime;
        do {
            int e = prev_edge[u];
            rev.push_back(e);
            u = g.edges[e].range;
        } while (u != w || static_cast<int>(rev.size()) < dist[wprime]);
        std::reverse(rev.begin(), rev.end());
        for (int e : rev) stream.push_back(e);
        w = wprime;
        idx = (idx + 1) % m;
    }
    std::vector<int> prefix(stream.begin(), stream.begin() + cycle_start);
    std::vector<int> cyc(stream.begin() + cycle_start, stream.end());
    return canonical_path(prefix, cyc, g);
}

PrimClosedSet closure(const DirGraph& g, const std::vector<PrimPointSpec>& s) {
    auto tails = maximal_tails(g);
    int n = static_cast<int>(g.vertices.size());
    std::vector<bool> support(n, false);
    std::vector<std::vector<std::optional<Rat>>> per_tail(tails.size());
    for (const auto& spec : s) {
        int ti = find_tail(tails, spec.tail);
        if (ti < 0) throw std::invalid_argument("closure input tail is not a maximal tail");
        per_tail[ti].push_back(spec.w);
        for (int v : tails[ti].vertices) support[v] = true;
    }
    PrimClosedSet out;
    out.fibers.resize(tails.size());
    for (size_t i = 0; i < tails.size(); ++i) {
        bool contained = true;
        for (int v : tails[i].vertices) contained &= support[v];
        if (!contained) {
            out.fibers[i] = union_values(per_tail[i]);
            continue;
        }
        if (tails[i].per != 0 && no_entrance(g, tails[i].cycle, support)) {
            out.fibers[i] = union_values(per_tail[i]);
        } else {
            out.fibers[i].kind = ClosedFiber::Kind::kFull;
        }
    }
    return out;
}

namespace {

bool closed_fiber_nonempty(const MaximalTail& t, const OpenFiber& f) {
    if (t.per == 0) return !std::get<bool>(f);
    return !ts_equal(std::get<TorusSet>(f), ts_full(1));
}

bool open_fiber_empty(const MaximalTail& t, const OpenFiber& f) {
    if (t.per == 0) return !std::get<bool>(f);
    return ts_is_empty(std::get<TorusSet>(f));
}

void check_shape(const std::vector<MaximalTail>& tails, const PrimOpenSet& o) {
    if (o.fibers.size() != tails.size()) {
        throw std::invalid_argument("open set does not match the tail list");
    }
    for (size_t i = 0; i < tails.size(); ++i) {
        if (tails[i].per == 0 && !std::holds_alternative<bool>(o.fibers[i])) {
            throw std::invalid_argument("point tail needs a boolean fiber");
        }
        if (tails[i].per != 0 && !std::holds_alternative<TorusSet>(o.fibers[i])) {
            throw std::invalid_argument("circle tail needs an arc-set fiber");
        }
    }
}

}  // namespace

bool is_open(const DirGraph& g, const PrimOpenSet& o) {
    auto tails = maximal_tails(g);
    check_shape(tails, o);
    int n = static_cast<int>(g.vertices.size());
    // Support of the complement (the candidate closed set).
    std::vector<bool> support(n, false);
    for (size_t i = 0; i < tails.size(); ++i) {
        if (closed_fiber_nonempty(tails[i], o.fibers[i])) {
            for (int v : tails[i].vertices) support[v] = true;
        }
    }
    for (size_t i = 0; i < tails.size(); ++i) {
        bool contained = true;
        for (int v : tails[i].vertices) contained &= support[v];
        if (!contained) continue;
        bool protected_fiber =
            tails[i].per != 0 && no_entrance(g, tails[i].cycle, support);
        if (!protected_fiber && !open_fiber_empty(tails[i], o.fibers[i])) {
            return false;  // the closure of the complement spills into O
        }
    }
    return true;
}

PrimOpenSet lattice_meet(const DirGraph& g, const PrimOpenSet& o1,
                         const PrimOpenSet& o2) {
    auto tails = maximal_tails(g);
    check_shape(tails, o1);
    check_shape(tails, o2);
    PrimOpenSet out;
    for (size_t i = 0; i < tails.size(); ++i) {
        if (tails[i].per == 0) {
            out.fibers.emplace_back(std::get<bool>(o1.fibers[i]) &&
                                    std::get<bool>(o2.fibers[i]));
        } else {
            out.fibers.emplace_back(
                ts_intersect(std::get<TorusSet>(o1.fibers[i]), std::get<TorusSet>(o2.fibers[i])));
        }
    }
    return out;
}

PrimOpenSet lattice_join(const DirGraph& g, const PrimOpenSet& o1,
                         const PrimOpenSet& o2) {
    auto tails = maximal_tails(g);
    check_shape(tails, o1);
    check_shape(tails, o2);
    PrimOpenSet out;
    for (size_t i = 0; i < tails.size(); ++i) {
        if (tails[i].per == 0) {
            out.fibers.emplace_back(std::get<bool>(o1.fibers[i]) ||
                                    std::get<bool>(o2.fibers[i]));
        } else {
            out.fibers.emplace_back(
                ts_union(std::get<TorusSet>(o1.fibers[i]), std::get<TorusSet>(o2.fibers[i])));
        }
    }
    return out;
}

std::vector<std::vector<int>> gauge_invariant_ideals(const DirGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<int>> out;
    for (unsigned long long bits = 0; bits < (1ull << n); ++bits) {
        std::vector<bool> mask(n, false);
        for (int v = 0; v < n; ++v) mask[v] = bits & (1ull << v);
        bool hereditary = true;
        for (const auto& e : g.edges) {
            if (mask[e.range] && !mask[e.source]) hereditary = false;
        }
        if (!hereditary) continue;
        bool saturated = true;
        for (int v = 0; v < n; ++v) {
            if (mask[v]) continue;
            bool all_in = true, any = false;
            for (const auto& e : g.edges) {
                if (e.range != v) continue;
                any = true;
                all_in &= mask[e.source];
            }
            if (any && all_in) saturated = false;
        }
        if (!saturated) continue;
        std::vector<int> H;
        for (int v = 0; v < n; ++v) {
            if (mask[v]) H.push_back(v);
        }
        out.push_back(H);
    }
    return out;
}

std::pair<std::vector<int>, std::vector<int>> sandwich_sets(const DirGraph& g,
                                                            const PrimOpenSet& o) {
    auto tails = maximal_tails(g);
    check_shape(tails, o);
    if (!is_open(g, o)) throw std::invalid_argument("sandwich_sets needs an open set");
    int n = static_cast<int>(g.vertices.size());
    std::vector<int> U, V;
    for (int v = 0; v < n; ++v) {
        bool all_full = true, all_nonempty = true;
        for (size_t i = 0; i < tails.size(); ++i) {
            if (!std::binary_search(tails[i].vertices.begin(), tails[i].vertices.end(), v)) {
                continue;
            }
            all_full &= !closed_fiber_nonempty(tails[i], o.fibers[i]);
            all_nonempty &= !open_fiber_empty(tails[i], o.fibers[i]);
        }
        if (all_full) U.push_back(v);
        if (all_nonempty) V.push_back(v);
    }
    return {U, V};
}

ConvergenceVerdict converge_prim(const DirGraph& g, const PrimSequence& seq,
                                 const PrimPointSpec& target) {
    if (seq.tail.empty()) throw std::invalid_argument("sequence needs a periodic tail");
    auto tails = maximal_tails(g);
    int t0 = find_tail(tails, target.tail);
    if (t0 < 0) throw std::invalid_argument("target tail is not a maximal tail");
    ConvergenceVerdict verdict;
    verdict.converges = true;
    for (const auto& spec : seq.tail) {
        // P_n -> P iff P lies in the closure of every periodic value.
        auto cl = closure(g, {spec});
        const auto& fiber = cl.fibers[t0];
        bool inside = false;
        switch (fiber.kind) {
            case ClosedFiber::Kind::kFull:
                inside = true;
                break;
            case ClosedFiber::Kind::kPoints:
                inside = target.w.has_value() &&
                         std::find(fiber.points.begin(), fiber.points.end(),
                                   mod1(*target.w)) != fiber.points.end();
                break;
            case ClosedFiber::Kind::kEmpty:
                inside = false;
                break;
        }
        if (!inside) verdict.converges = false;
        // Off-orbit members whose tail still protects the target's witness
        // cycle would need family data the graph calculus cannot supply; the
        // canonical family argument rules this out, but flag it if seen.
        int ti = find_tail(tails, spec.tail);
        if (ti != t0 && tails[t0].per != 0) {
            std::vector<bool> sup(g.vertices.size(), false);
            for (int v : tails[ti].vertices) sup[v] = true;
            bool contained = true;
            for (int v : tails[t0].vertices) contained &= sup[v];
            if (contained && no_entrance(g, tails[t0].cycle, sup)) {
                verdict.supported = false;
            }
        }
    }
    return verdict;
}

// ------------------------------------------------------------- text formats

DirGraph parse_graph(const std::string& text) {
    DirGraph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("graph parse error at line " +
                                    std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "graph") {
            if (!(ls >> g.name)) fail("graph needs a name");
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
        } else if (kw == "edge") {
            std::string e, r, s;
            if (!(ls >> e >> r >> s)) fail("edge needs <name> <range> <source>");
            for (const auto& ed : g.edges) {
                if (ed.name == e) fail("duplicate edge " + e);
            }
            auto vi = [&](const std::string& v) {
                auto it = std::find(g.vertices.begin(), g.vertices.end(), v);
                if (it == g.vertices.end()) fail("unknown vertex " + v);
                return static_cast<int>(it - g.vertices.begin());
            };
            g.edges.push_back({e, vi(r), vi(s)});
        } else {
            fail("unknown declaration '" + kw + "'");
        }
    }
    if (g.vertices.empty()) {
        lineno = 0;
        fail("no vertices");
    }
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        bool receives = false;
        for (const auto& e : g.edges) receives |= (e.range == v);
        if (!receives) {
            lineno = 0;
            fail("vertex " + g.vertices[v] + " is a source (receives no edge)");
        }
    }
    return g;
}

std::string tails_json(const DirGraph& g) {
    auto p = prim_presentation(g);
    nlohmann::json j;
    j["tails"] = nlohmann::json::array();
    for (const auto& t : p.tails) {
        nlohmann::json jt;
        jt["vertices"] = nlohmann::json::array();
        for (int v : t.vertices) jt["vertices"].push_back(g.vertices[v]);
        jt["per"] = t.per;
        jt["cycle"] = nlohmann::json::array();
        for (int e : t.cycle) jt["cycle"].push_back(g.edges[e].name);
        j["tails"].push_back(jt);
    }
    j["order"] = nlohmann::json::array();
    for (const auto& [i, jdx] : p.order) j["order"].push_back({i, jdx});
    return j.dump(2);
}

std::string poset_dot(const DirGraph& g) {
    auto p = prim_presentation(g);
    // Hasse reduction of the containment order; arrows point from the more
    // general (larger tail) node to the specialization.
    auto leq = [&](int i, int j) {
        for (const auto& [a, b] : p.order) {
            if (a == i && b == j) return true;
        }
        return false;
    };
    std::ostringstream os;
    os << "digraph prim {\n";
    for (size_t i = 0; i < p.tails.size(); ++i) {
        os << "  t" << i << " [label=\"{";
        for (size_t v = 0; v < p.tails[i].vertices.size(); ++v) {
            if (v) os << ",";
            os << g.vertices[p.tails[i].vertices[v]];
        }
        os << "}";
        if (p.tails[i].per != 0) os << " per=" << p.tails[i].per;
        os << "\"];\n";
    }
    for (const auto& [i, j] : p.order) {
        bool covering = true;
        for (size_t mid = 0; mid < p.tails.size(); ++mid) {
            int m = static_cast<int>(mid);
            if (m != i && m != j && leq(i, m) && leq(m, j)) covering = false;
        }
        if (covering) os << "  t" << j << " -> t" << i << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace prim
