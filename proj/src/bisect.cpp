#include "prim/bisect.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace prim {

// ===================================================================== graph

namespace {

// walk a word from its range vertex and return the source; validates
int word_source(const DirGraph& g, int root, const std::vector<int>& w) {
    int at = root;
    for (int e : w) {
        if (e < 0 || e >= static_cast<int>(g.edges.size())) {
            throw std::invalid_argument("bad edge index in word");
        }
        if (g.edges[e].range != at) throw std::invalid_argument("word does not compose");
        at = g.edges[e].source;
    }
    return at;
}

bool is_word_prefix(const std::vector<int>& p, const std::vector<int>& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

std::vector<int> word_tail(const std::vector<int>& w, size_t from) {
    return std::vector<int>(w.begin() + static_cast<long>(from), w.end());
}

std::vector<int> word_cat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// cylinders overlap iff same root and one word is a prefix of the other
bool cylinders_overlap(int ra, const std::vector<int>& wa, int rb,
                       const std::vector<int>& wb) {
    if (ra != rb) return false;
    return is_word_prefix(wa, wb) || is_word_prefix(wb, wa);
}

void g_validate_atom(const DirGraph& g, const GAtom& a) {
    int sl = word_source(g, a.root_l, a.lam);
    int sr = word_source(g, a.root_r, a.rho);
    if (sl != sr) throw std::invalid_argument("atom words have different sources");
}

void push_unique(GBisection& b, const GAtom& a) {
    if (std::find(b.atoms.begin(), b.atoms.end(), a) == b.atoms.end()) {
        b.atoms.push_back(a);
    }
}

// word prefix of an eventually periodic path
bool point_has_prefix(const DirGraph& g, const PathPoint& x, int root,
                      const std::vector<int>& w) {
    if (path_vertex_at(x, 0, g) != root) return false;
    for (size_t i = 0; i < w.size(); ++i) {
        if (path_edge_at(x, static_cast<long>(i)) != w[i]) return false;
    }
    return true;
}

// does (x, c, y) belong to the cylinder pair of the atom?
bool element_in_atom(const DirGraph& g, const GAtom& a, const PathPoint& x,
                     const PathPoint& y) {
    if (!point_has_prefix(g, x, a.root_l, a.lam)) return false;
    if (!point_has_prefix(g, y, a.root_r, a.rho)) return false;
    return shift_path_point(x, static_cast<long>(a.lam.size()), g) ==
           shift_path_point(y, static_cast<long>(a.rho.size()), g);
}

bool element_in_bisection(const DirGraph& g, const GBisection& b, const PathPoint& x,
                          long c, const PathPoint& y) {
    if (c != b.c) return false;
    for (const auto& a : b.atoms) {
        if (element_in_atom(g, a, x, y)) return true;
    }
    return false;
}

bool atom_covered(const DirGraph& g, const GAtom& a, const GBisection& b, int depth) {
    for (const auto& o : b.atoms) {
        if (a.root_l == o.root_l && a.root_r == o.root_r &&
            is_word_prefix(o.lam, a.lam) && is_word_prefix(o.rho, a.rho) &&
            word_tail(a.lam, o.lam.size()) == word_tail(a.rho, o.rho.size())) {
            return true;
        }
    }
    if (depth == 0) return false;
    int s = word_source(g, a.root_l, a.lam);
    bool any = false;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (g.edges[e].range != s) continue;
        any = true;
        GAtom child = a;
        child.lam.push_back(e);
        child.rho.push_back(e);
        if (!atom_covered(g, child, b, depth - 1)) return false;
    }
    return any;
}

bool words_rotation_equal(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size() || a.empty()) return false;
    for (size_t r = 0; r < a.size(); ++r) {
        bool ok = true;
        for (size_t i = 0; i < a.size() && ok; ++i) {
            ok = (a[(i + r) % a.size()] == b[i]);
        }
        if (ok) return true;
    }
    return false;
}

std::vector<int> word_power(const std::vector<int>& w, long n) {
    std::vector<int> out;
    for (long i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
}

}  // namespace

bool g_element_in(const DirGraph& g, const GBisection& b, const PathPoint& x,
                  long c, const PathPoint& y) {
    return element_in_bisection(g, b, x, c, y);
}

GBisection g_unit_bisection(const DirGraph& g) {
    GBisection b;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        b.atoms.push_back(GAtom{v, v, {}, {}});
    }
    return b;
}

GBisection g_basic(const DirGraph& g, int root_l, std::vector<int> lam, int root_r,
                   std::vector<int> rho) {
    GBisection b;
    b.c = static_cast<long>(lam.size()) - static_cast<long>(rho.size());
    GAtom a{root_l, root_r, std::move(lam), std::move(rho)};
    g_validate_atom(g, a);
    b.atoms.push_back(std::move(a));
    return b;
}

GBisection g_inverse(const GBisection& b) {
    GBisection out;
    out.c = -b.c;
    for (const auto& a : b.atoms) {
        out.atoms.push_back(GAtom{a.root_r, a.root_l, a.rho, a.lam});
    }
    return out;
}

bool g_is_bisection(const DirGraph& g, const GBisection& b) {
    for (const auto& a : b.atoms) {
        g_validate_atom(g, a);
        long c = static_cast<long>(a.lam.size()) - static_cast<long>(a.rho.size());
        if (c != b.c) return false;
    }
    for (size_t i = 0; i < b.atoms.size(); ++i) {
        for (size_t j = i + 1; j < b.atoms.size(); ++j) {
            const auto& a = b.atoms[i];
            const auto& o = b.atoms[j];
            if (cylinders_overlap(a.root_l, a.lam, o.root_l, o.lam)) return false;
            if (cylinders_overlap(a.root_r, a.rho, o.root_r, o.rho)) return false;
        }
    }
    return true;
}

GBisection g_compose(const DirGraph& g, const GBisection& b1, const GBisection& b2) {
    GBisection out;
    out.c = b1.c + b2.c;
    for (const auto& a1 : b1.atoms) {
        for (const auto& a2 : b2.atoms) {
            if (a1.root_r != a2.root_l) continue;
            if (is_word_prefix(a1.rho, a2.lam)) {
                auto tau = word_tail(a2.lam, a1.rho.size());
                push_unique(out, GAtom{a1.root_l, a2.root_r, word_cat(a1.lam, tau),
                                       a2.rho});
            } else if (is_word_prefix(a2.lam, a1.rho)) {
                auto tau = word_tail(a1.rho, a2.lam.size());
                push_unique(out, GAtom{a1.root_l, a2.root_r, a1.lam,
                                       word_cat(a2.rho, tau)});
            }
        }
    }
    return out;
}

bool g_subset(const DirGraph& g, const GBisection& a, const GBisection& b,
              int refine_depth) {
    if (a.atoms.empty()) return true;
    if (a.c != b.c) return false;
    for (const auto& at : a.atoms) {
        if (!atom_covered(g, at, b, refine_depth)) return false;
    }
    return true;
}

bool g_equal(const DirGraph& g, const GBisection& a, const GBisection& b,
             int refine_depth) {
    return g_subset(g, a, b, refine_depth) && g_subset(g, b, a, refine_depth);
}

GEssIso g_ess_isotropy(const DirGraph& g, const GBisection& b) {
    GEssIso out;
    auto tails = maximal_tails(g);
    for (const auto& a : b.atoms) {
        if (a.root_l == a.root_r && a.lam == a.rho) {
            out.unit_cylinders.push_back(a);
            continue;
        }
        if (a.root_l != a.root_r) continue;
        std::vector<int> shorter, tau;
        bool lam_longer;
        if (is_word_prefix(a.rho, a.lam)) {
            shorter = a.rho;
            tau = word_tail(a.lam, a.rho.size());
            lam_longer = true;
        } else if (is_word_prefix(a.lam, a.rho)) {
            shorter = a.lam;
            tau = word_tail(a.rho, a.lam.size());
            lam_longer = false;
        } else {
            continue;
        }
        // lam z = rho z forces z = tau^inf, which needs tau to be a cycle
        int r_tau = word_source(g, a.root_l, shorter);
        if (word_source(g, r_tau, tau) != r_tau) continue;
        PathPoint x = canonical_path(shorter, tau, g);
        auto tvs = tail_of_path(g, x);
        int ti = find_tail(tails, tvs);
        if (ti < 0) continue;
        const auto& t = tails[ti];
        if (t.per == 0) continue;
        // essential only along the entrance-free cycle of the tail
        std::vector<int> wit;
        for (int e : t.cycle) wit.push_back(e);
        if (!words_rotation_equal(x.cycle, wit)) continue;
        long val = lam_longer ? static_cast<long>(tau.size())
                              : -static_cast<long>(tau.size());
        auto pr = std::make_pair(x, val);
        if (std::find(out.points.begin(), out.points.end(), pr) == out.points.end()) {
            out.points.push_back(pr);
        }
    }
    return out;
}

const GBisection& GFamily::member(long n) const {
    if (n < -radius || n > radius) throw std::out_of_range("family index out of range");
    return members[static_cast<size_t>(n + radius)];
}

GFamily graph_family(const DirGraph& g, const MaximalTail& t, long radius) {
    GFamily f;
    f.tail = t;
    if (t.per == 0) {
        // aperiodic class: the family degenerates to the unit-space member
        f.radius = 0;
        f.base = realize_tail(g, t);
        f.members.push_back(g_unit_bisection(g));
        return f;
    }
    f.mu = t.cycle;
    f.radius = radius;
    int rmu = g.edges[t.cycle.front()].range;
    f.base = canonical_path({}, t.cycle, g);
    for (long n = -radius; n <= radius; ++n) {
        if (n == 0) {
            f.members.push_back(g_basic(g, rmu, {}, rmu, {}));
        } else if (n > 0) {
            f.members.push_back(g_basic(g, rmu, word_power(f.mu, n), rmu, {}));
        } else {
            f.members.push_back(g_inverse(g_basic(g, rmu, word_power(f.mu, -n), rmu, {})));
        }
    }
    return f;
}

FamilyReport verify_harmonious(const DirGraph& g, const GFamily& f) {
    FamilyReport rep;
    auto fail = [&](const std::string& s) {
        rep.pass = false;
        rep.failures.push_back(s);
    };
    long per = f.mu.empty() ? 0 : static_cast<long>(f.mu.size());
    // (i) the zero member sits inside the unit space
    for (const auto& a : f.member(0).atoms) {
        if (a.root_l != a.root_r || a.lam != a.rho) {
            fail("(i) zero member leaves the unit space");
            break;
        }
    }
    // (ii) homogeneity and base membership
    for (long n = -f.radius; n <= f.radius; ++n) {
        const auto& b = f.member(n);
        if (b.c != n * per) fail("(ii) member cocycle is not homogeneous");
        for (const auto& a : b.atoms) {
            long c = static_cast<long>(a.lam.size()) - static_cast<long>(a.rho.size());
            if (c != b.c) fail("(ii) atom cocycle differs from the member value");
        }
        if (!g_is_bisection(g, b)) fail("(ii) member is not a bisection");
        if (per != 0 && !element_in_bisection(g, b, f.base, n * per, f.base)) {
            fail("(ii) base isotropy element missing from member");
        }
    }
    // (iii) the essential-isotropy part inverts onto the opposite member
    for (long n = 0; n <= f.radius; ++n) {
        auto ep = g_ess_isotropy(g, f.member(n));
        auto em = g_ess_isotropy(g, f.member(-n));
        auto neg = em;
        for (auto& p : neg.points) p.second = -p.second;
        auto key = [](GEssIso e) {
            std::sort(e.points.begin(), e.points.end(),
                      [](const auto& a, const auto& b) {
                          return std::make_tuple(a.second, a.first.prefix, a.first.cycle) <
                                 std::make_tuple(b.second, b.first.prefix, b.first.cycle);
                      });
            return e.points;
        };
        if (key(ep) != key(neg)) {
            fail("(iii) essential isotropy of opposite members does not invert");
        }
    }
    // (iv) multiplying an essential-isotropy element lands in the sum member
    for (long m = -f.radius; m <= f.radius; ++m) {
        for (long n = -f.radius; n <= f.radius; ++n) {
            if (m + n < -f.radius || m + n > f.radius) continue;
            auto en = g_ess_isotropy(g, f.member(n));
            for (const auto& [x, val] : en.points) {
                for (const auto& a : f.member(m).atoms) {
                    if (!point_has_prefix(g, x, a.root_r, a.rho)) continue;
                    auto rem = shift_path_point(x, static_cast<long>(a.rho.size()), g);
                    PathPoint y =
                        canonical_path(word_cat(a.lam, rem.prefix), rem.cycle, g);
                    if (!element_in_bisection(g, f.member(m + n), y,
                                              f.member(m).c + val, x)) {
                        fail("(iv) product with essential isotropy escapes the family");
                    }
                }
            }
        }
    }
    rep.notes.push_back("(v) members are compact open by construction");
    return rep;
}

GFamily conjugate_family(const DirGraph& g, const GBisection& c, const GFamily& f) {
    GFamily out = f;
    bool moved = false;
    for (const auto& a : c.atoms) {
        if (point_has_prefix(g, f.base, a.root_r, a.rho)) {
            auto rem = shift_path_point(f.base, static_cast<long>(a.rho.size()), g);
            out.base = canonical_path(word_cat(a.lam, rem.prefix), rem.cycle, g);
            moved = true;
            break;
        }
    }
    if (!moved) {
        throw std::invalid_argument("base point is outside the conjugator source");
    }
    auto cinv = g_inverse(c);
    for (auto& m : out.members) m = g_compose(g, g_compose(g, c, m), cinv);
    return out;
}

IntLattice g_shared_group(const DirGraph& g, const GFamily& f, const MaximalTail& y) {
    IMat gens;
    for (long n = -f.radius; n <= f.radius; ++n) {
        auto e = g_ess_isotropy(g, f.member(n));
        for (const auto& [x, val] : e.points) {
            if (tail_of_path(g, x) == y.vertices) gens.push_back({Int(val)});
        }
    }
    return canonicalize(1, gens);
}

std::vector<std::pair<int, TorusSet>> g_saturation_export(
    const DirGraph& g, const GFamily& f, const std::vector<int>& u_vertices,
    const TorusSet& v_set) {
    std::vector<std::pair<int, TorusSet>> out;
    auto tails = maximal_tails(g);
    for (int i = 0; i < static_cast<int>(tails.size()); ++i) {
        bool meets = false;
        for (int u : u_vertices) {
            meets |= std::binary_search(tails[i].vertices.begin(),
                                        tails[i].vertices.end(), u);
        }
        if (!meets) continue;
        out.emplace_back(i, saturate(v_set, g_shared_group(g, f, tails[i])));
    }
    return out;
}

// =================================================================== 2-graph

namespace {

std::pair<int, int> kdeg(const KPath& p) { return {p.m, p.n}; }

// unique admissible edges out of each reachable vertex, or throw
struct DetWalk {
    std::vector<int> next_blue, next_red;  // per vertex, -1 when unreachable
    std::vector<int> reachable;
};

DetWalk det_walk(const TwoGraph& g, int v, const std::vector<int>* block) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<bool> allowed(n, block == nullptr);
    if (block) {
        for (int u : *block) allowed[u] = true;
    }
    DetWalk w;
    w.next_blue.assign(n, -1);
    w.next_red.assign(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<int> queue{v};
    seen[v] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        w.reachable.push_back(u);
        int nb = -1, nr = -1;
        for (int b = 0; b < static_cast<int>(g.blue.size()); ++b) {
            if (g.blue[b].range == u && allowed[g.blue[b].source]) {
                if (nb >= 0) throw std::invalid_argument("vertex not deterministic (blue)");
                nb = b;
            }
        }
        for (int r = 0; r < static_cast<int>(g.red.size()); ++r) {
            if (g.red[r].range == u && allowed[g.red[r].source]) {
                if (nr >= 0) throw std::invalid_argument("vertex not deterministic (red)");
                nr = r;
            }
        }
        if (nb < 0 || nr < 0) {
            throw std::invalid_argument("vertex has no admissible edge of a color");
        }
        w.next_blue[u] = nb;
        w.next_red[u] = nr;
        for (int t : {g.blue[nb].source, g.red[nr].source}) {
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    return w;
}

void push_unique_k(KBisection& b, const KAtom& a) {
    if (std::find(b.atoms.begin(), b.atoms.end(), a) == b.atoms.end()) {
        b.atoms.push_back(a);
    }
}

bool kcyl_overlap(const KPath& a, const KPath& b) {
    return kpath_is_prefix(a, b) || kpath_is_prefix(b, a);
}

KPath kpath_remainder(const KPath& x, const KPath& p) {
    return kpath_segment(x, {p.m, p.n}, {x.m, x.n});
}

bool atom_covered_k(const TwoGraph& g, const KAtom& a, const KBisection& b,
                    int depth) {
    for (const auto& o : b.atoms) {
        if (kpath_is_prefix(o.lam, a.lam) && kpath_is_prefix(o.rho, a.rho) &&
            kpath_remainder(a.lam, o.lam) == kpath_remainder(a.rho, o.rho)) {
            return true;
        }
    }
    if (depth == 0) return false;
    int s = kpath_source(g, a.lam);
    auto exts = enumerate_paths(g, s, 1, 1);
    if (exts.empty()) return false;
    for (const auto& e : exts) {
        KAtom child{kpath_compose(g, a.lam, e), kpath_compose(g, a.rho, e)};
        if (!atom_covered_k(g, child, b, depth - 1)) return false;
    }
    return true;
}

std::array<long, 2> kadd(const std::array<long, 2>& a, const std::array<long, 2>& b) {
    return {a[0] + b[0], a[1] + b[1]};
}

IVec to_ivec(const std::array<long, 2>& h) { return {Int(h[0]), Int(h[1])}; }

}  // namespace

KPath kpath_trivial(const TwoGraph& g, int v) { return make_kpath(g, v, {}, {}); }

KPath kpath_compose(const TwoGraph& g, const KPath& a, const KPath& b) {
    if (kpath_source(g, a) != b.range) {
        throw std::invalid_argument("paths do not compose");
    }
    // commute a's red word past b's blue word to restore the normal form
    std::map<std::pair<int, int>, std::pair<int, int>> rev;
    for (const auto& sq : g.squares) rev[{sq.gp, sq.fp}] = {sq.f, sq.g};
    const auto& reds1 = a.red_cols[a.m];
    const auto& blues2 = b.blue_rows[0];
    int m = static_cast<int>(blues2.size());
    int n = static_cast<int>(reds1.size());
    std::vector<std::vector<int>> brows(n + 1, std::vector<int>(m, -1));
    std::vector<std::vector<int>> rcols(m + 1, std::vector<int>(n, -1));
    rcols[0] = reds1;
    brows[n] = blues2;
    for (int i = 0; i < m; ++i) {
        for (int j = n - 1; j >= 0; --j) {
            auto it = rev.find({rcols[i][j], brows[j + 1][i]});
            if (it == rev.end()) {
                throw std::invalid_argument("missing factorization square in composition");
            }
            brows[j][i] = it->second.first;
            rcols[i + 1][j] = it->second.second;
        }
    }
    std::vector<int> blues = a.blue_rows[0];
    blues.insert(blues.end(), brows[0].begin(), brows[0].end());
    std::vector<int> reds = rcols[m];
    reds.insert(reds.end(), b.red_cols[b.m].begin(), b.red_cols[b.m].end());
    return make_kpath(g, a.range, blues, reds);
}

bool kpath_is_prefix(const KPath& p, const KPath& x) {
    if (p.range != x.range || p.m > x.m || p.n > x.n) return false;
    return kpath_segment(x, {0, 0}, {p.m, p.n}) == p;
}

KPath det_prefix(const TwoGraph& g, int v, int m, int n, const std::vector<int>* block) {
    auto w = det_walk(g, v, block);
    std::vector<int> blues, reds;
    int at = v;
    for (int i = 0; i < m; ++i) {
        blues.push_back(w.next_blue[at]);
        at = g.blue[w.next_blue[at]].source;
    }
    for (int j = 0; j < n; ++j) {
        reds.push_back(w.next_red[at]);
        at = g.red[w.next_red[at]].source;
    }
    return make_kpath(g, v, blues, reds);
}

KBisection k_unit_bisection(const TwoGraph& g) {
    KBisection b;
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
        auto t = kpath_trivial(g, v);
        b.atoms.push_back(KAtom{t, t});
    }
    return b;
}

KBisection k_basic(const TwoGraph& g, KPath lam, KPath rho) {
    if (kpath_source(g, lam) != kpath_source(g, rho)) {
        throw std::invalid_argument("atom paths have different sources");
    }
    KBisection b;
    b.c = {static_cast<long>(lam.m - rho.m), static_cast<long>(lam.n - rho.n)};
    b.atoms.push_back(KAtom{std::move(lam), std::move(rho)});
    return b;
}

KBisection k_inverse(const KBisection& b) {
    KBisection out;
    out.c = {-b.c[0], -b.c[1]};
    for (const auto& a : b.atoms) out.atoms.push_back(KAtom{a.rho, a.lam});
    return out;
}

bool k_is_bisection(const TwoGraph& g, const KBisection& b) {
    for (const auto& a : b.atoms) {
        if (kpath_source(g, a.lam) != kpath_source(g, a.rho)) return false;
        if (a.lam.m - a.rho.m != b.c[0] || a.lam.n - a.rho.n != b.c[1]) return false;
    }
    for (size_t i = 0; i < b.atoms.size(); ++i) {
        for (size_t j = i + 1; j < b.atoms.size(); ++j) {
            if (kcyl_overlap(b.atoms[i].lam, b.atoms[j].lam)) return false;
            if (kcyl_overlap(b.atoms[i].rho, b.atoms[j].rho)) return false;
        }
    }
    return true;
}

KBisection k_compose(const TwoGraph& g, const KBisection& b1, const KBisection& b2) {
    KBisection out;
    out.c = kadd(b1.c, b2.c);
    for (const auto& a1 : b1.atoms) {
        for (const auto& a2 : b2.atoms) {
            if (a1.rho.range != a2.lam.range) continue;
            int dm = std::max(a1.rho.m, a2.lam.m);
            int dn = std::max(a1.rho.n, a2.lam.n);
            // extend the larger of the two overlapping paths to the join degree
            const KPath& big =
                (a1.rho.m + a1.rho.n >= a2.lam.m + a2.lam.n) ? a1.rho : a2.lam;
            int s = kpath_source(g, big);
            for (const auto& tau : enumerate_paths(g, s, dm - big.m, dn - big.n)) {
                KPath gamma = kpath_compose(g, big, tau);
                if (!kpath_is_prefix(a1.rho, gamma) || !kpath_is_prefix(a2.lam, gamma)) {
                    continue;
                }
                KPath d1 = kpath_remainder(gamma, a1.rho);
                KPath d2 = kpath_remainder(gamma, a2.lam);
                push_unique_k(out, KAtom{kpath_compose(g, a1.lam, d1),
                                         kpath_compose(g, a2.rho, d2)});
            }
        }
    }
    return out;
}

bool k_subset(const TwoGraph& g, const KBisection& a, const KBisection& b,
              int refine_depth) {
    if (a.atoms.empty()) return true;
    if (a.c != b.c) return false;
    for (const auto& at : a.atoms) {
        if (!atom_covered_k(g, at, b, refine_depth)) return false;
    }
    return true;
}

bool k_equal(const TwoGraph& g, const KBisection& a, const KBisection& b,
             int refine_depth) {
    return k_subset(g, a, b, refine_depth) && k_subset(g, b, a, refine_depth);
}

KEssIso k_ess_isotropy(const TwoGraph& g, const KBisection& b) {
    KEssIso out;
    for (const auto& a : b.atoms) {
        if (a.lam == a.rho) {
            out.unit_cylinders.push_back(a);
            continue;
        }
        if (a.lam.range != a.rho.range) continue;
        int r = a.lam.range;
        DetWalk w;
        try {
            w = det_walk(g, r, nullptr);
        } catch (const std::invalid_argument&) {
            out.supported = false;
            continue;
        }
        // the unique path at r is isotropic for the atom iff both paths are
        // its prefixes and the two shifts land on the same vertex
        if (det_prefix(g, r, a.lam.m, a.lam.n) != a.lam) continue;
        if (det_prefix(g, r, a.rho.m, a.rho.n) != a.rho) continue;
        if (shift_vertex(g, r, a.lam.m, a.lam.n) !=
            shift_vertex(g, r, a.rho.m, a.rho.n)) {
            continue;
        }
        auto pr = std::make_pair(r, b.c);
        if (std::find(out.points.begin(), out.points.end(), pr) == out.points.end()) {
            out.points.push_back(pr);
        }
    }
    return out;
}

const KBisection& KFamily::member(const std::array<long, 2>& h) const {
    for (size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] == h) return members[i];
    }
    throw std::out_of_range("family index not materialized");
}

namespace {

// fold a signed product of generator bisections, negative exponents first
KBisection signed_product(const TwoGraph& g, const std::vector<KBisection>& gens,
                          const std::vector<long>& coeff) {
    std::vector<const KBisection*> factors;
    std::vector<KBisection> inverses;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (coeff[i] < 0) inverses.push_back(k_inverse(gens[i]));
    }
    size_t ni = 0;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (coeff[i] < 0) {
            for (long j = 0; j < -coeff[i]; ++j) factors.push_back(&inverses[ni]);
            ++ni;
        }
    }
    for (size_t i = 0; i < gens.size(); ++i) {
        for (long j = 0; j < coeff[i]; ++j) factors.push_back(&gens[i]);
    }
    if (factors.empty()) return k_unit_bisection(g);
    KBisection acc = *factors[0];
    for (size_t i = 1; i < factors.size(); ++i) acc = k_compose(g, acc, *factors[i]);
    return acc;
}

long ivec_long(const Int& x) { return static_cast<long>(x); }

}  // namespace

KFamily twograph_family(const TwoGraph& g, int base_vertex, long radius) {
    KFamily f;
    f.base_vertex = base_vertex;
    f.radius = radius;

    // locate the recurrent block of the base vertex and its index group
    auto tab = class_table(g);
    const std::vector<int>* block = nullptr;
    for (const auto& cls : tab.classes) {
        if (std::find(cls.block.begin(), cls.block.end(), base_vertex) !=
            cls.block.end()) {
            block = &cls.block;
            f.J = cls.group;
            break;
        }
    }
    if (!block) throw std::invalid_argument("base vertex lies in no recurrent class");
    f.rank = rank(f.J);

    if (f.rank == 0) {
        f.indices.push_back({0, 0});
        f.members.push_back(k_unit_bisection(g));
        f.radius = 0;
        return f;
    }

    std::vector<KBisection> gens;
    std::vector<std::array<long, 2>> hgen;
    if (f.rank == 2) {
        auto mg = positive_minimal_generators(f.J);
        for (const auto& h : mg) {
            std::array<long, 2> hv{ivec_long(h[0]), ivec_long(h[1])};
            KPath lam = det_prefix(g, base_vertex, static_cast<int>(hv[0]),
                                   static_cast<int>(hv[1]), block);
            gens.push_back(k_basic(g, lam, kpath_trivial(g, kpath_source(g, lam))));
            hgen.push_back(hv);
        }
    } else {
        std::array<long, 2> h{ivec_long(f.J.basis[0][0]), ivec_long(f.J.basis[0][1])};
        std::array<long, 2> hp{std::max(h[0], 0L), std::max(h[1], 0L)};
        std::array<long, 2> hm{std::max(-h[0], 0L), std::max(-h[1], 0L)};
        KBisection gen;
        try {
            KPath lam = det_prefix(g, base_vertex, static_cast<int>(hp[0]),
                                   static_cast<int>(hp[1]), block);
            KPath rho = det_prefix(g, base_vertex, static_cast<int>(hm[0]),
                                   static_cast<int>(hm[1]), block);
            gen = k_basic(g, std::move(lam), std::move(rho));
        } catch (const std::invalid_argument&) {
            // nondeterministic base: pair prefixes through common extensions
            gen.c = {h[0], h[1]};
            for (const auto& gamma :
                 enumerate_paths(g, base_vertex, static_cast<int>(hp[0] + hm[0]),
                                 static_cast<int>(hp[1] + hm[1]))) {
                KAtom a{kpath_segment(gamma, {0, 0},
                                      {static_cast<int>(hp[0]), static_cast<int>(hp[1])}),
                        kpath_segment(gamma, {0, 0},
                                      {static_cast<int>(hm[0]), static_cast<int>(hm[1])})};
                push_unique_k(gen, a);
            }
            if (!k_is_bisection(g, gen)) {
                throw std::invalid_argument(
                    "UNANALYZABLE: no bisection pairing at the base vertex");
            }
        }
        gens.push_back(std::move(gen));
        hgen.push_back(h);
    }

    // materialize members on the index box |h_i| <= radius
    if (f.rank == 1) {
        for (long n = -radius; n <= radius; ++n) {
            f.indices.push_back({n * hgen[0][0], n * hgen[0][1]});
            f.members.push_back(signed_product(g, gens, {n}));
        }
    } else {
        long bound = radius * (std::abs(hgen[0][0]) + std::abs(hgen[0][1]) +
                               std::abs(hgen[1][0]) + std::abs(hgen[1][1]) + 1);
        for (long a1 = -bound; a1 <= bound; ++a1) {
            for (long a2 = -bound; a2 <= bound; ++a2) {
                std::array<long, 2> h{a1 * hgen[0][0] + a2 * hgen[1][0],
                                      a1 * hgen[0][1] + a2 * hgen[1][1]};
                if (std::abs(h[0]) > radius || std::abs(h[1]) > radius) continue;
                f.indices.push_back(h);
                f.members.push_back(signed_product(g, gens, {a1, a2}));
            }
        }
    }
    return f;
}

FamilyReport verify_harmonious_k(const TwoGraph& g, const KFamily& f) {
    FamilyReport rep;
    auto fail = [&](const std::string& s) {
        rep.pass = false;
        rep.failures.push_back(s);
    };
    bool det_base = true;
    try {
        det_walk(g, f.base_vertex, nullptr);
    } catch (const std::invalid_argument&) {
        det_base = false;
    }
    // (i) zero member inside the unit space
    for (const auto& a : f.member({0, 0}).atoms) {
        if (!(a.lam == a.rho)) {
            fail("(i) zero member leaves the unit space");
            break;
        }
    }
    // (ii) homogeneity and base membership
    for (size_t i = 0; i < f.indices.size(); ++i) {
        const auto& h = f.indices[i];
        const auto& b = f.members[i];
        if (b.c != h) fail("(ii) member cocycle differs from its index");
        if (!k_is_bisection(g, b)) fail("(ii) member is not a bisection");
        if (det_base) {
            bool found = b.atoms.empty();
            for (const auto& a : b.atoms) {
                if (det_prefix(g, f.base_vertex, a.lam.m, a.lam.n) == a.lam &&
                    det_prefix(g, f.base_vertex, a.rho.m, a.rho.n) == a.rho) {
                    found = true;
                    break;
                }
            }
            if (!found) fail("(ii) base isotropy element missing from member");
        }
    }
    if (!det_base) {
        rep.notes.push_back("(ii) base membership skipped: nondeterministic base");
    }
    // (iii) inverse law; implies the essential-isotropy inversion condition
    for (size_t i = 0; i < f.indices.size(); ++i) {
        std::array<long, 2> mh{-f.indices[i][0], -f.indices[i][1]};
        if (!k_equal(g, k_inverse(f.members[i]), f.member(mh))) {
            fail("(iii) inverse of a member differs from the opposite member");
        }
    }
    rep.notes.push_back("(iii)/(iv) checked through the set-level group laws");
    // (iv) product law; implies absorption of essential-isotropy products
    std::set<std::array<long, 2>> have(f.indices.begin(), f.indices.end());
    for (size_t i = 0; i < f.indices.size(); ++i) {
        for (size_t j = 0; j < f.indices.size(); ++j) {
            auto s = kadd(f.indices[i], f.indices[j]);
            if (!have.count(s)) continue;
            if (!k_subset(g, k_compose(g, f.members[i], f.members[j]), f.member(s))) {
                fail("(iv) product of members escapes the sum member");
            }
        }
    }
    rep.notes.push_back("(v) members are compact open by construction");
    return rep;
}

FamilyReport verify_relative_commutation(const TwoGraph& g,
                                         const std::vector<KBisection>& gens) {
    FamilyReport rep;
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = 0; j < gens.size(); ++j) {
            if (i == j) continue;
            auto lhs = k_compose(g, gens[i], k_inverse(gens[j]));
            auto rhs = k_compose(g, k_inverse(gens[j]), gens[i]);
            if (!k_subset(g, lhs, rhs)) {
                rep.pass = false;
                rep.failures.push_back("generators " + std::to_string(i) + " and " +
                                       std::to_string(j) + " do not relatively commute");
            }
        }
    }
    return rep;
}

KFamily conjugate_family_k(const TwoGraph& g, const KBisection& c, const KFamily& f) {
    KFamily out = f;
    auto cinv = k_inverse(c);
    for (auto& m : out.members) m = k_compose(g, k_compose(g, c, m), cinv);
    // move the base along the conjugator when it acts on the base orbit
    for (const auto& a : c.atoms) {
        if (kpath_source(g, a.rho) == f.base_vertex || a.rho.range == f.base_vertex) {
            out.base_vertex = a.lam.range;
            out.base_shift = kadd(f.base_shift, c.c);
            break;
        }
    }
    return out;
}

IntLattice k_shared_group(const TwoGraph& g, const KFamily& f, const ClassTable& tab,
                          int class_index) {
    IMat gens;
    long far = static_cast<long>(g.vertices.size()) + 1;
    for (const auto& b : f.members) {
        auto e = k_ess_isotropy(g, b);
        if (!e.supported) {
            throw std::invalid_argument(
                "UNSUPPORTED: essential isotropy needs a deterministic component");
        }
        for (const auto& [v, val] : e.points) {
            int deep = shift_vertex(g, v, far, far);
            const auto& blk = tab.classes[class_index].block;
            if (std::find(blk.begin(), blk.end(), deep) != blk.end()) {
                gens.push_back(to_ivec(val));
            }
        }
    }
    return canonicalize(2, gens);
}

std::vector<std::pair<int, TorusSet>> k_saturation_export(
    const TwoGraph& g, const KFamily& f, const ClassTable& tab,
    const std::vector<int>& u_vertices, const TorusSet& v_set) {
    int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int v = 0; v < n; ++v) reach[v][v] = true;
    for (const auto& e : g.blue) reach[e.source][e.range] = true;
    for (const auto& e : g.red) reach[e.source][e.range] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::vector<std::pair<int, TorusSet>> out;
    for (int ci = 0; ci < static_cast<int>(tab.classes.size()); ++ci) {
        bool meets = false;
        for (int b : tab.classes[ci].block) {
            for (int u : u_vertices) meets |= reach[b][u];
        }
        if (!meets) continue;
        out.emplace_back(ci, saturate(v_set, k_shared_group(g, f, tab, ci)));
    }
    return out;
}

}  // namespace prim
