#include "prim/repsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace prim {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double rat_d(const Rat& x) { return x.convert_to<double>(); }

// flat-at-boundary exponential bump in the arc coordinate, peak 1
double bump1(double t, double lo, double hi) {
    t -= std::floor(t);
    if (t <= lo || t >= hi) return 0.0;
    double u = (t - lo) / (hi - lo);
    return std::exp(4.0 - 1.0 / (u * (1.0 - u)));
}

// (1/N) Sum_j vals[j] e^{-2 pi i h j / N} for h in [-hmax, hmax]
std::map<long, Cx> dft_axis(const std::vector<double>& vals, long hmax) {
    long n = static_cast<long>(vals.size());
    std::map<long, Cx> out;
    for (long h = -hmax; h <= hmax; ++h) {
        Cx acc{0.0, 0.0};
        for (long j = 0; j < n; ++j) {
            double ang = -kTau * static_cast<double>(h) * static_cast<double>(j) /
                         static_cast<double>(n);
            acc += vals[static_cast<size_t>(j)] * Cx{std::cos(ang), std::sin(ang)};
        }
        out[h] = acc / static_cast<double>(n);
    }
    return out;
}

std::vector<double> sample_axis(const Bump1D& b, long grid) {
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(grid));
    double lo = rat_d(b.lo), hi = rat_d(b.hi);
    for (long j = 0; j < grid; ++j) {
        vals.push_back(bump1(static_cast<double>(j) / static_cast<double>(grid), lo, hi));
    }
    return vals;
}

Cx zpow(Cx z, long h) {
    return std::polar(std::pow(std::abs(z), static_cast<double>(h)),
                      static_cast<double>(h) * std::arg(z));
}

// e^{2 pi i <h, theta>} at a rational torus point
Cx character(const TorusPoint& eta, const std::vector<long>& h) {
    double ang = 0.0;
    for (size_t j = 0; j < h.size(); ++j) {
        ang += static_cast<double>(h[j]) * rat_d(eta.angles[j]);
    }
    return std::polar(1.0, kTau * ang);
}

IVec to_ivec(const std::vector<long>& h) {
    IVec v;
    for (long x : h) v.push_back(Int(x));
    return v;
}

}  // namespace

// ------------------------------------------------------ Fourier series

double bump_value(const BumpSpec& psi, const TorusPoint& eta) {
    if (eta.dim() != static_cast<int>(psi.factors.size())) {
        throw std::invalid_argument("bump evaluation dimension mismatch");
    }
    double v = 1.0;
    for (size_t j = 0; j < psi.factors.size(); ++j) {
        v *= bump1(rat_d(eta.angles[j]), rat_d(psi.factors[j].lo),
                   rat_d(psi.factors[j].hi));
    }
    return v;
}

FourierSeries fourier(const BumpSpec& psi, long support_bound, long grid) {
    int k = static_cast<int>(psi.factors.size());
    if (k < 1 || k > 2) throw std::invalid_argument("bump dimension must be 1 or 2");
    if (support_bound < 1) throw std::invalid_argument("support bound must be >= 1");
    long hext = support_bound + 8;
    if (grid < 4 * (hext + 1) || grid % 2 != 0) {
        std::ostringstream os;
        os << "insufficient sampling resolution: grid " << grid
           << " cannot resolve coefficients up to " << hext << " (need >= "
           << 4 * (hext + 1) << ", even)";
        throw std::runtime_error(os.str());
    }
    for (const auto& b : psi.factors) {
        if (!(Rat(0) <= b.lo && b.lo < b.hi && b.hi <= Rat(1))) {
            throw std::invalid_argument("bump arc must satisfy 0 <= lo < hi <= 1");
        }
    }

    std::vector<std::map<long, Cx>> full, half;
    for (const auto& b : psi.factors) {
        full.push_back(dft_axis(sample_axis(b, grid), hext));
        half.push_back(dft_axis(sample_axis(b, grid / 2), hext));
    }

    FourierSeries f;
    f.k = k;
    f.support_bound = support_bound;
    auto box_walk = [&](auto&& visit) {
        if (k == 1) {
            for (long h = -hext; h <= hext; ++h) visit(std::vector<long>{h});
        } else {
            for (long h1 = -hext; h1 <= hext; ++h1) {
                for (long h2 = -hext; h2 <= hext; ++h2) visit(std::vector<long>{h1, h2});
            }
        }
    };
    box_walk([&](const std::vector<long>& h) {
        Cx cf{1.0, 0.0}, ch{1.0, 0.0};
        bool inside = true;
        for (size_t j = 0; j < h.size(); ++j) {
            cf *= full[j].at(h[j]);
            ch *= half[j].at(h[j]);
            inside = inside && std::labs(h[j]) <= support_bound;
        }
        if (inside) {
            f.coef[h] = cf;
            f.aliasing = std::max(f.aliasing, std::abs(cf - ch));
        } else {
            f.decay = std::max(f.decay, std::abs(cf));
        }
    });
    return f;
}

FourierSeries perturb(const FourierSeries& f, const std::vector<long>& h0) {
    if (static_cast<int>(h0.size()) != f.k) {
        throw std::invalid_argument("perturbation shift dimension mismatch");
    }
    FourierSeries out = f;
    out.coef.clear();
    for (const auto& [h, c] : f.coef) {
        std::vector<long> s = h;
        for (size_t j = 0; j < s.size(); ++j) s[j] += h0[j];
        out.coef[s] = c;
    }
    return out;
}

FourierSeries average(const FourierSeries& f, const IntLattice& h_group) {
    if (h_group.ambient_rank != f.k) {
        throw std::invalid_argument("averaging subgroup dimension mismatch");
    }
    FourierSeries out = f;
    out.coef.clear();
    for (const auto& [h, c] : f.coef) {
        if (member(to_ivec(h), h_group)) out.coef[h] = c;
    }
    return out;
}

Cx reconstruct(const FourierSeries& f, const TorusPoint& eta) {
    if (eta.dim() != f.k) throw std::invalid_argument("reconstruction dimension mismatch");
    Cx acc{0.0, 0.0};
    for (const auto& [h, c] : f.coef) acc += character(eta, h) * c;
    return acc;
}

Cx h_restricted_sum(const FourierSeries& f, const TorusPoint& z,
                    const IntLattice& h_group, const std::vector<long>& h0) {
    Cx acc{0.0, 0.0};
    for (const auto& [g, c] : f.coef) {
        std::vector<long> h = g;
        for (size_t j = 0; j < h.size(); ++j) h[j] += h0[j];
        if (member(to_ivec(h), h_group)) acc += character(z, h) * c;
    }
    return acc;
}

std::vector<long> find_h0(const FourierSeries& f, const TorusPoint& z,
                          const IntLattice& h_group, double tol) {
    double at_z = std::abs(reconstruct(f, z));
    if (at_z <= tol) {
        std::ostringstream os;
        os << "psi(z) = " << at_z << " is zero within tolerance " << tol;
        throw std::invalid_argument(os.str());
    }
    std::vector<std::vector<long>> seen;
    double best = 0.0;
    std::vector<long> best_h0(static_cast<size_t>(f.k), 0);
    std::vector<long> h0(static_cast<size_t>(f.k), -f.support_bound);
    for (;;) {
        bool fresh = true;
        for (const auto& rep : seen) {
            std::vector<long> diff = h0;
            for (size_t j = 0; j < diff.size(); ++j) diff[j] -= rep[j];
            if (member(to_ivec(diff), h_group)) {
                fresh = false;
                break;
            }
        }
        if (fresh) {
            seen.push_back(h0);
            double s = std::abs(h_restricted_sum(f, z, h_group, h0));
            if (s > tol) return h0;
            if (s > best) {
                best = s;
                best_h0 = h0;
            }
        }
        size_t j = h0.size();
        while (j > 0 && h0[j - 1] == f.support_bound) h0[--j] = -f.support_bound;
        if (j == 0) break;
        ++h0[j - 1];
    }
    std::ostringstream os;
    os << "h0 search exhausted within the support bound " << f.support_bound
       << "; best |sum| = " << best << " at h0 = (";
    for (size_t j = 0; j < best_h0.size(); ++j) os << (j ? "," : "") << best_h0[j];
    os << ")";
    throw std::runtime_error(os.str());
}

// -------------------------------------------- symbolic convolution layer

CcFunction cc_scale(const CcFunction& f, Cx w) {
    CcFunction out = f;
    for (auto& t : out.terms) t.weight *= w;
    return out;
}

CcFunction cc_add(const CcFunction& f1, const CcFunction& f2) {
    CcFunction out = f1;
    out.terms.insert(out.terms.end(), f2.terms.begin(), f2.terms.end());
    return out;
}

CcFunction cc_mul(const DirGraph& g, const CcFunction& f1, const CcFunction& f2) {
    CcFunction out;
    for (const auto& t1 : f1.terms) {
        for (const auto& t2 : f2.terms) {
            GBisection p = g_compose(g, t1.b, t2.b);
            if (p.atoms.empty()) continue;
            out.terms.push_back({std::move(p), t1.weight * t2.weight});
        }
    }
    return out;
}

Cx cc_value(const DirGraph& g, const CcFunction& f, const PathPoint& x, long h,
            const PathPoint& y) {
    Cx acc{0.0, 0.0};
    for (const auto& t : f.terms) {
        if (t.b.c == h && g_element_in(g, t.b, x, h, y)) acc += t.weight;
    }
    return acc;
}

std::vector<long> cc_degrees(const CcFunction& f) {
    std::set<long> ds;
    for (const auto& t : f.terms) {
        if (!t.b.atoms.empty()) ds.insert(t.b.c);
    }
    return {ds.begin(), ds.end()};
}

// ------------------------------------------------- quotient-orbit layer

TruncatedOrbit truncated_orbit(const DirGraph& g, const PathPoint& x, long radius) {
    TruncatedOrbit o;
    o.x = x;
    o.radius = radius;
    for (long a = 0; a <= radius; ++a) {
        PathPoint tail = shift_path_point(x, a, g);
        int va = path_vertex_at(x, a, g);
        // words lam with s(lam) = va and |lam| <= radius, built right to left
        std::vector<std::pair<std::vector<int>, int>> stack{{{}, va}};
        while (!stack.empty()) {
            auto [lam, root] = stack.back();
            stack.pop_back();
            PathPoint y = tail;
            if (!lam.empty()) {
                std::vector<int> pre = lam;
                pre.insert(pre.end(), tail.prefix.begin(), tail.prefix.end());
                y = canonical_path(std::move(pre), tail.cycle, g);
            }
            OrbitElem el{y, static_cast<long>(lam.size()) - a};
            if (std::find(o.elems.begin(), o.elems.end(), el) == o.elems.end()) {
                o.elems.push_back(el);
            }
            if (static_cast<long>(lam.size()) == radius) continue;
            for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
                if (g.edges[e].source != root) continue;
                std::vector<int> ext{e};
                ext.insert(ext.end(), lam.begin(), lam.end());
                stack.push_back({std::move(ext), g.edges[e].range});
            }
        }
    }
    return o;
}

std::vector<std::vector<int>> orbit_classes(const TruncatedOrbit& o,
                                            const IntLattice& h_group) {
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < static_cast<int>(o.elems.size()); ++i) {
        bool placed = false;
        for (auto& cls : classes) {
            const OrbitElem& rep = o.elems[static_cast<size_t>(cls.front())];
            if (rep.y == o.elems[static_cast<size_t>(i)].y &&
                member({Int(o.elems[static_cast<size_t>(i)].n - rep.n)}, h_group)) {
                cls.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({i});
    }
    return classes;
}

Cx rep_entry(const DirGraph& g, const CcFunction& f, const IntLattice& h_group,
             const PathPoint& x, Cx z, const OrbitElem& xi1, const OrbitElem& xi2) {
    (void)x;
    long d = xi1.n - xi2.n;
    Cx acc{0.0, 0.0};
    for (long h : cc_degrees(f)) {
        if (!member({Int(h - d)}, h_group)) continue;
        acc += zpow(z, h) * cc_value(g, f, xi1.y, h, xi2.y);
    }
    return acc;
}

CcFunction cond_expectation(const CcFunction& f, const IntLattice& k_group) {
    CcFunction out;
    for (const auto& t : f.terms) {
        if (member({Int(t.b.c)}, k_group)) out.terms.push_back(t);
    }
    return out;
}

// ------------------------------------------------------ reports

std::string report_json(const EvalReport& r) {
    nlohmann::json j;
    j["pass"] = r.pass;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"value", c.value},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    }
    return j.dump(2);
}

namespace {

void push_check(EvalReport& r, const std::string& name, double value, double tol,
                bool pass) {
    r.checks.push_back({name, value, tol, pass});
    r.pass = r.pass && pass;
}

// diagonal value Sum_h w^h f(y, h, y) of the full orbit representation
Cx full_diagonal(const DirGraph& g, const CcFunction& f, const PathPoint& y, Cx w) {
    Cx acc{0.0, 0.0};
    for (long h : cc_degrees(f)) acc += zpow(w, h) * cc_value(g, f, y, h, y);
    return acc;
}

}  // namespace

// ------------------------------------------------- Urysohn-type element

UrysohnResult urysohn(const DirGraph& g, const GFamily& fam, const GBisection& phi,
                      const FourierSeries& psi, const std::vector<long>& h0, Cx z,
                      long truncation, const std::vector<PathPoint>& outside_points,
                      const std::vector<Cx>& outside_chars) {
    if (psi.k != 1) throw std::invalid_argument("graph families live over T^1");
    if (phi.c != 0) throw std::invalid_argument("phi must be a unit-space bump");
    long per = static_cast<long>(fam.mu.size());
    UrysohnResult res;
    res.h_group = per == 0 ? zero_lattice(1) : canonicalize(1, {{Int(per)}});

    FourierSeries fp = perturb(psi, h0);
    long nmax = std::min(truncation, fam.radius);
    Cx expected{0.0, 0.0};
    for (long n = -nmax; n <= nmax; ++n) {
        long h = fam.member(n).c;
        auto it = fp.coef.find({h});
        if (it == fp.coef.end() || std::abs(it->second) == 0.0) continue;
        GBisection b = g_compose(g, fam.member(n), phi);
        if (b.atoms.empty()) continue;
        res.f.terms.push_back({std::move(b), it->second});
        expected += zpow(z, h) * it->second;
        if (per == 0) break;  // single member
    }

    const double kStructural = 1e-6, kArithmetic = 1e-8;

    // (a) diagonal entries at (base, z*w) for w in H^perp match the
    // H-restricted column sum and do not vanish
    std::vector<Cx> wperp;
    long order = per == 0 ? 4 : per;  // {0}^perp = T: sample 4th roots
    for (long j = 0; j < order; ++j) {
        wperp.push_back(std::polar(1.0, kTau * static_cast<double>(j) /
                                            static_cast<double>(order)));
    }
    for (size_t j = 0; j < wperp.size(); ++j) {
        Cx entry = full_diagonal(g, res.f, fam.base, z * wperp[j]);
        std::ostringstream nm;
        nm << "diagonal_matches_column_sum_w" << j;
        push_check(res.report, nm.str(), std::abs(entry - expected), kArithmetic,
                   std::abs(entry - expected) <= kArithmetic);
        std::ostringstream nv;
        nv << "diagonal_nonvanishing_w" << j;
        push_check(res.report, nv.str(), std::abs(entry), kStructural,
                   std::abs(entry) > kStructural);
    }

    // (b) diagonal entries vanish at the outside samples
    for (size_t i = 0; i < outside_points.size(); ++i) {
        Cx entry = full_diagonal(g, res.f, outside_points[i], z);
        std::ostringstream nm;
        nm << "outside_point_" << i << "_vanishes";
        push_check(res.report, nm.str(), std::abs(entry), kStructural,
                   std::abs(entry) <= kStructural);
    }
    for (size_t i = 0; i < outside_chars.size(); ++i) {
        Cx entry = full_diagonal(g, res.f, fam.base, outside_chars[i]);
        std::ostringstream nm;
        nm << "outside_char_" << i << "_vanishes";
        push_check(res.report, nm.str(), std::abs(entry), kStructural,
                   std::abs(entry) <= kStructural);
    }
    return res;
}

// ------------------------------------------------- kernel monotonicity

EvalReport kernel_monotonicity_probe(const DirGraph& g, const IntLattice& h1,
                                     const IntLattice& h2,
                                     const std::vector<CcFunction>& fixtures,
                                     const PathPoint& x, Cx z) {
    if (h1.ambient_rank != 1 || h2.ambient_rank != 1) {
        throw std::invalid_argument("graph groupoid subgroups live in Z");
    }
    for (const auto& row : h1.basis) {
        if (!member(row, h2)) throw std::invalid_argument("H1 is not contained in H2");
    }
    EvalReport rep;
    const double kStructural = 1e-6;
    OrbitElem unit{x, 0};
    for (size_t i = 0; i < fixtures.size(); ++i) {
        // compressors: the fixture's own homogeneous bisections, their
        // inverses, and the unit
        std::vector<GBisection> comp{g_unit_bisection(g)};
        for (const auto& t : fixtures[i].terms) {
            comp.push_back(t.b);
            comp.push_back(g_inverse(t.b));
        }
        for (size_t a = 0; a < comp.size(); ++a) {
            for (size_t b = 0; b < comp.size(); ++b) {
                CcFunction squeezed =
                    cc_mul(g, cc_mul(g, CcFunction{{{comp[a], Cx{1.0, 0.0}}}},
                                     fixtures[i]),
                           CcFunction{{{comp[b], Cx{1.0, 0.0}}}});
                for (int which = 0; which < 2; ++which) {
                    const IntLattice& h = which == 0 ? h1 : h2;
                    Cx entry = rep_entry(g, squeezed, h, x, z, unit, unit);
                    std::ostringstream nm;
                    nm << "fixture" << i << "_H" << which + 1 << "_comp" << a << "x" << b;
                    push_check(rep, nm.str(), std::abs(entry), kStructural,
                               std::abs(entry) <= kStructural);
                }
            }
        }
    }
    return rep;
}

}  // namespace prim
