#include "doctest.h"

#include "prim/repsim.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"

using namespace prim;

namespace {

const char* kDumbbell = R"(graph dumbbell
vertex v w
edge e v v
edge f v w
edge g w w
)";

const char* kTwoLoop = R"(graph twoloop
vertex v
edge a v v
edge b v v
)";

constexpr double kTau = 2.0 * std::numbers::pi;

// independent oracle: plain DFT of explicit samples, one coefficient at a time
Cx dft_oracle(const std::vector<Cx>& vals, long h) {
    Cx acc{0.0, 0.0};
    long n = static_cast<long>(vals.size());
    for (long j = 0; j < n; ++j) {
        double ang = -kTau * static_cast<double>(h) * static_cast<double>(j) /
                     static_cast<double>(n);
        acc += vals[static_cast<size_t>(j)] * Cx{std::cos(ang), std::sin(ang)};
    }
    return acc / static_cast<double>(n);
}

std::vector<Cx> bump_samples(const BumpSpec& psi, long grid) {
    std::vector<Cx> vals;
    for (long j = 0; j < grid; ++j) {
        vals.push_back(Cx{bump_value(psi, TorusPoint{{Rat(j, grid)}}), 0.0});
    }
    return vals;
}

CcFunction cc_of(const GBisection& b, Cx w = Cx{1.0, 0.0}) {
    return CcFunction{{{b, w}}};
}

Cx unit_z(double angle01) { return std::polar(1.0, kTau * angle01); }

Cx zpow_for_test(Cx z, long h) {
    return std::polar(1.0, static_cast<double>(h) * std::arg(z));
}

}  // namespace

TEST_CASE("fourier coefficients of smooth bumps") {
    BumpSpec psi{{Bump1D{Rat(1, 4), Rat(3, 4)}}};
    FourierSeries f = fourier(psi, 48);

    // sanity and certificates
    CHECK(f.k == 1);
    CHECK(f.coef.size() == 97);
    CHECK(f.decay < 1e-7);
    CHECK(f.aliasing < 1e-10);

    // psi is real: conjugate symmetry of the coefficients
    for (const auto& [h, c] : f.coef) {
        CHECK(std::abs(c - std::conj(f.coef.at({-h[0]}))) < 1e-12);
    }

    // reconstruction at 64 random rational points within 1e-6
    std::mt19937 rng(501);
    for (int it = 0; it < 64; ++it) {
        TorusPoint eta{{Rat(static_cast<long>(rng() % 997), 997)}};
        CHECK(std::abs(reconstruct(f, eta) - Cx{bump_value(psi, eta), 0.0}) < 1e-6);
    }

    // a 2-d product bump reconstructs as the product of the factors
    BumpSpec psi2{{Bump1D{Rat(1, 4), Rat(3, 4)}, Bump1D{Rat(3, 8), Rat(7, 8)}}};
    FourierSeries f2 = fourier(psi2, 48, 512);
    for (int it = 0; it < 16; ++it) {
        TorusPoint eta{{Rat(static_cast<long>(rng() % 97), 97),
                        Rat(static_cast<long>(rng() % 97), 97)}};
        CHECK(std::abs(reconstruct(f2, eta) - Cx{bump_value(psi2, eta), 0.0}) < 1e-6);
    }

    // insufficient resolution is an error, not a silent degradation
    CHECK_THROWS_AS(fourier(psi, 48, 64), std::runtime_error);
    CHECK_THROWS_AS(fourier(BumpSpec{{Bump1D{Rat(3, 4), Rat(1, 4)}}}, 8),
                    std::invalid_argument);
}

TEST_CASE("perturbation is an exact index shift") {
    BumpSpec psi{{Bump1D{Rat(1, 4), Rat(3, 4)}}};
    FourierSeries f = fourier(psi, 32);

    // perturb by 0 is the identity
    CHECK(perturb(f, {0}).coef == f.coef);

    // oracle: DFT of the pointwise-multiplied samples eta(h0) psi(eta)
    long grid = 1024;
    long h0 = 5;
    auto vals = bump_samples(psi, grid);
    for (long j = 0; j < grid; ++j) {
        double ang = kTau * static_cast<double>(h0) * static_cast<double>(j) /
                     static_cast<double>(grid);
        vals[static_cast<size_t>(j)] *= Cx{std::cos(ang), std::sin(ang)};
    }
    FourierSeries shifted = perturb(f, {h0});
    for (long h : {-20L, -3L, 0L, 5L, 11L, 30L}) {
        CHECK(std::abs(shifted.coef.at({h}) - dft_oracle(vals, h)) < 1e-8);
    }
}

TEST_CASE("averaging restricts the coefficients to the subgroup") {
    BumpSpec psi{{Bump1D{Rat(1, 8), Rat(7, 8)}}};
    FourierSeries f = fourier(psi, 24);
    IntLattice h3 = canonicalize(1, {{Int(3)}});
    FourierSeries a = average(f, h3);

    // exact restriction: kept coefficients are bitwise equal, others dropped
    for (const auto& [h, c] : f.coef) {
        if (h[0] % 3 == 0) {
            CHECK(a.coef.at(h) == c);
        } else {
            CHECK(a.coef.find(h) == a.coef.end());
        }
    }

    // idempotent projection
    CHECK(average(a, h3).coef == a.coef);

    // whole group: unchanged; constant function: untouched by any H
    CHECK(average(f, full_lattice(1)).coef == f.coef);
    FourierSeries one;
    one.k = 1;
    one.support_bound = 4;
    one.coef[{0}] = Cx{1.0, 0.0};
    CHECK(average(one, h3).coef == one.coef);
    CHECK(average(one, zero_lattice(1)).coef == one.coef);
}

TEST_CASE("nonvanishing column search") {
    // whole group: any h0 gives |sum| = |psi(z)|, so the first one works
    BumpSpec psi{{Bump1D{Rat(1, 4), Rat(3, 4)}}};
    FourierSeries f = fourier(psi, 32);
    TorusPoint z{{Rat(1, 2)}};
    auto h0 = find_h0(f, z, full_lattice(1));
    CHECK(h0 == std::vector<long>{-32});
    CHECK(std::abs(h_restricted_sum(f, z, full_lattice(1), h0)) > 1e-6);

    // narrow 2-d bump, column subgroup H = {0} x Z
    BumpSpec psi2{{Bump1D{Rat(3, 8), Rat(5, 8)}, Bump1D{Rat(3, 8), Rat(5, 8)}}};
    FourierSeries f2 = fourier(psi2, 16, 512);
    IntLattice hcol = canonicalize(2, {{Int(0), Int(1)}});
    TorusPoint z2{{Rat(1, 2), Rat(1, 2)}};
    auto h02 = find_h0(f2, z2, hcol);

    // oracle: evaluate the column sum directly from the stored coefficients
    auto column_sum = [&](long a, long b) {
        Cx acc{0.0, 0.0};
        for (const auto& [g, c] : f2.coef) {
            long h1 = g[0] + a, h2 = g[1] + b;
            if (h1 != 0) continue;  // h must lie in {0} x Z
            double ang = 0.5 * static_cast<double>(h1) + 0.5 * static_cast<double>(h2);
            acc += std::polar(1.0, kTau * ang) * c;
        }
        return acc;
    };
    CHECK(std::abs(column_sum(h02[0], h02[1])) > 1e-6);
    CHECK(std::abs(column_sum(h02[0], h02[1]) -
                   h_restricted_sum(f2, z2, hcol, h02)) < 1e-12);
    // earlier coset representatives (lex order pins h0[1] = -bound) fail
    for (long a = -f2.support_bound; a < h02[0]; ++a) {
        CHECK(std::abs(column_sum(a, -f2.support_bound)) <= 1e-6);
    }
    CHECK(h02[1] == -f2.support_bound);

    // guard: psi(z) = 0 is a precondition violation
    CHECK_THROWS_AS(find_h0(f, TorusPoint{{Rat(0)}}, full_lattice(1)),
                    std::invalid_argument);
}

TEST_CASE("orbit truncation and quotient classes") {
    DirGraph g = parse_graph(kDumbbell);
    int e = g.edge_index("e"), fe = g.edge_index("f"), gg = g.edge_index("g");
    PathPoint x = canonical_path({}, {e}, g);

    // the loop point is its own orbit: elements (e^inf, n) for |n| <= radius
    TruncatedOrbit o = truncated_orbit(g, x, 4);
    CHECK(o.elems.size() == 9);
    for (const auto& el : o.elems) {
        CHECK(el.y == x);
        CHECK(std::labs(el.n) <= 4);
    }
    CHECK(orbit_classes(o, full_lattice(1)).size() == 1);
    CHECK(orbit_classes(o, canonicalize(1, {{Int(2)}})).size() == 2);
    CHECK(orbit_classes(o, zero_lattice(1)).size() == 9);

    // a point flowing into the second loop has a richer truncated orbit
    PathPoint y = canonical_path({fe}, {gg}, g);
    TruncatedOrbit oy = truncated_orbit(g, y, 3);
    auto has = [&](const PathPoint& p, long n) {
        return std::find(oy.elems.begin(), oy.elems.end(), OrbitElem{p, n}) !=
               oy.elems.end();
    };
    CHECK(has(y, 0));
    CHECK(has(canonical_path({}, {gg}, g), -1));          // shift past f
    CHECK(has(canonical_path({e, fe}, {gg}, g), 1));      // extend by e
    CHECK(has(canonical_path({e, e, e, fe}, {gg}, g), 3));
    CHECK(!has(x, 0));  // e^inf is not in the orbit of f g^inf
}

TEST_CASE("representation matrix entries") {
    DirGraph g = parse_graph(kDumbbell);
    int e = g.edge_index("e");
    PathPoint x = canonical_path({}, {e}, g);
    OrbitElem unit{x, 0};
    Cx z = unit_z(0.3);

    // unit-space indicator: only the h = 0 term survives
    CcFunction funit = cc_of(g_unit_bisection(g));
    CHECK(std::abs(rep_entry(g, funit, full_lattice(1), x, z, unit, unit) -
                   Cx{1.0, 0.0}) < 1e-12);

    // degree outside (difference degrees + H): empty class intersection
    CcFunction f5 = cc_of(g_basic(g, 0, {e, e, e, e, e}, 0, {}));
    CHECK(std::abs(rep_entry(g, f5, canonicalize(1, {{Int(2)}}), x, z, unit, unit)) ==
          0.0);

    // single class member: f = 1 on the atom (e, v) gives z^1
    CcFunction fe1 = cc_of(g_basic(g, 0, {e}, 0, {}));
    for (double a : {0.0, 0.125, 0.3, 0.77}) {
        Cx zz = unit_z(a);
        CHECK(std::abs(rep_entry(g, fe1, full_lattice(1), x, zz, unit, unit) - zz) <
              1e-12);
    }

    // off-diagonal: xi1 = (x, 1), xi2 = unit picks the class of degree 1 - H
    OrbitElem xi1{x, 1};
    CHECK(std::abs(rep_entry(g, fe1, zero_lattice(1), x, z, xi1, unit) - z) < 1e-12);
    CHECK(std::abs(rep_entry(g, funit, zero_lattice(1), x, z, xi1, unit)) == 0.0);
}

TEST_CASE("conditional expectation filters degrees") {
    DirGraph g = parse_graph(kDumbbell);
    int e = g.edge_index("e");
    CcFunction f;
    f = cc_add(f, cc_of(g_inverse(g_basic(g, 0, {e}, 0, {})), Cx{2.0, 0.0}));  // -1
    f = cc_add(f, cc_of(g_unit_bisection(g), Cx{0.0, 1.0}));                   // 0
    f = cc_add(f, cc_of(g_basic(g, 0, {e, e}, 0, {}), Cx{-1.0, 0.5}));         // 2

    CHECK(cc_degrees(f) == std::vector<long>{-1, 0, 2});

    // K = Z: identity; K = {0}: degree-0 part; K = 2Z: degrees {0, 2}
    CHECK(cond_expectation(f, full_lattice(1)).terms.size() == 3);
    CHECK(cc_degrees(cond_expectation(f, zero_lattice(1))) == std::vector<long>{0});
    IntLattice twoZ = canonicalize(1, {{Int(2)}});
    CHECK(cc_degrees(cond_expectation(f, twoZ)) == std::vector<long>{0, 2});

    // idempotent and multiplicative over nested subgroups (meet of filters)
    auto e2 = cond_expectation(f, twoZ);
    CHECK(cc_degrees(cond_expectation(e2, twoZ)) == cc_degrees(e2));
    IntLattice fourZ = canonicalize(1, {{Int(4)}});
    CHECK(cc_degrees(cond_expectation(e2, fourZ)) ==
          cc_degrees(cond_expectation(f, meet(twoZ, fourZ))));

    // linear: filtering a sum equals summing the filtered parts
    auto lhs = cond_expectation(cc_add(f, f), twoZ);
    auto rhs = cc_add(cond_expectation(f, twoZ), cond_expectation(f, twoZ));
    CHECK(lhs.terms.size() == rhs.terms.size());

    // commutes with coefficient averaging through degrees: filtering by K
    // then H equals filtering by the meet
    CHECK(cc_degrees(cond_expectation(cond_expectation(f, twoZ), zero_lattice(1))) ==
          cc_degrees(cond_expectation(f, zero_lattice(1))));
}

TEST_CASE("urysohn element over the loop family") {
    DirGraph g = parse_graph(kDumbbell);
    int e = g.edge_index("e"), gg = g.edge_index("g");
    auto tails = maximal_tails(g);
    int tv = find_tail(tails, {0});
    REQUIRE(tv >= 0);

    // loop family at e^inf, phi the indicator of the root-vertex cylinder
    GFamily fam = graph_family(g, tails[tv], 96);
    GBisection phi = g_basic(g, 0, {}, 0, {});
    BumpSpec psi{{Bump1D{Rat(1, 4), Rat(3, 4)}}};
    FourierSeries f = fourier(psi, 40);
    TorusPoint zpt{{Rat(1, 2)}};
    Cx z = unit_z(0.5);
    auto h0 = find_h0(f, zpt, full_lattice(1));

    std::vector<PathPoint> outside{canonical_path({}, {gg}, g)};
    std::vector<Cx> outchar{unit_z(0.0)};  // angle 0 lies outside (1/4, 3/4)
    UrysohnResult res = urysohn(g, fam, phi, f, h0, z, 96, outside, outchar);
    CHECK(res.report.pass);
    CHECK(res.h_group == full_lattice(1));
    CHECK(!res.f.terms.empty());

    // independent check of the headline entry: sum over H of z^h psi_{h0}(h)
    Cx expected = h_restricted_sum(f, zpt, full_lattice(1), h0);
    Cx entry{0.0, 0.0};
    for (long h : cc_degrees(res.f)) {
        entry += std::polar(1.0, kTau * 0.5 * static_cast<double>(h)) *
                 cc_value(g, res.f, fam.base, h, fam.base);
    }
    CHECK(std::abs(entry - expected) < 1e-6);
    CHECK(std::abs(entry) > 1e-6);

    // the report is serializable JSON with the per-check schema
    auto j = nlohmann::json::parse(report_json(res.report));
    CHECK(j["pass"].get<bool>());
    REQUIRE(!j["checks"].empty());
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("value"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }

    // trivial family: psi = 1, f reduces to phi with diagonal entry 1
    DirGraph tl = parse_graph(kTwoLoop);
    auto ttails = maximal_tails(tl);
    GFamily ft = graph_family(tl, ttails[0], 3);
    REQUIRE(ft.radius == 0);
    FourierSeries one;
    one.k = 1;
    one.support_bound = 1;
    one.coef[{0}] = Cx{1.0, 0.0};
    GBisection phit = g_basic(tl, 0, {}, 0, {});
    UrysohnResult rt = urysohn(tl, ft, phit, one, {0}, unit_z(0.2), 3, {}, {});
    CHECK(rt.report.pass);
    CHECK(rt.h_group == zero_lattice(1));
    CHECK(std::abs(cc_value(tl, rt.f, ft.base, 0, ft.base) - Cx{1.0, 0.0}) < 1e-12);
}

TEST_CASE("kernel monotonicity probe") {
    DirGraph g = parse_graph(kDumbbell);
    int e = g.edge_index("e");
    PathPoint x = canonical_path({}, {e}, g);
    IntLattice h1 = canonicalize(1, {{Int(2)}});
    IntLattice h2 = full_lattice(1);
    Cx z = unit_z(0.15);

    // the zero function lies in both kernels
    CHECK(kernel_monotonicity_probe(g, h1, h2, {CcFunction{}}, x, z).pass);

    // pinned fixture: atoms at the same source cylinder with degrees
    // differing by 2 in H1; the class sums cancel pairwise
    auto fixture = [&](long a, long b, long step) {
        CcFunction f;
        std::vector<int> la(static_cast<size_t>(a + step), e);
        std::vector<int> lb(static_cast<size_t>(a), e);
        std::vector<int> rho(static_cast<size_t>(b), e);
        f = cc_add(f, cc_of(g_basic(g, 0, la, 0, rho)));
        f = cc_add(f, cc_of(g_basic(g, 0, lb, 0, rho), -zpow_for_test(z, step)));
        return f;
    };
    CHECK(kernel_monotonicity_probe(g, h1, h2, {fixture(1, 0, 2)}, x, z).pass);

    // a degree gap outside H1 is caught by the H1 entries themselves
    auto bad = kernel_monotonicity_probe(g, h1, h2, {fixture(1, 0, 1)}, x, z);
    CHECK(!bad.pass);

    // H1 must sit inside H2
    CHECK_THROWS_AS(kernel_monotonicity_probe(g, full_lattice(1), h1, {}, x, z),
                    std::invalid_argument);

    // randomized fixtures: 20 symbolic kernel elements for H1 = 2Z in H2 = Z
    std::mt19937 rng(77);
    std::vector<CcFunction> fixtures;
    for (int it = 0; it < 20; ++it) {
        long a = static_cast<long>(rng() % 4);
        long b = static_cast<long>(rng() % 4);
        long step = 2 * (1 + static_cast<long>(rng() % 2));
        fixtures.push_back(fixture(a, b, step));
    }
    auto rep = kernel_monotonicity_probe(g, h1, h2, fixtures, x, z);
    CHECK(rep.pass);
    CHECK(rep.checks.size() > 100);
}
