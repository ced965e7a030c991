// primtool: command-line front end for the groupoid/graph-algebra toolkit.
// Parses the text DSLs, dispatches to the library modules, and emits
// JSON/DOT/text reports.  Exit codes: 0 = success/pass, 1 = check failure,
// 2 = input error.

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "prim/bisect.hpp"
#include "prim/dset.hpp"
#include "prim/graphalg.hpp"
#include "prim/kgraph2.hpp"
#include "prim/repsim.hpp"
#include "prim/torusgeo.hpp"
#include "prim/zklattice.hpp"

using nlohmann::json;
using namespace prim;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw InputError("malformed rational: " + s);
    }
}

// point spec "({v,w},1/3)" or "({v},FULL)"
PrimPointSpec parse_point(const std::string& text, const DirGraph& g) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.size() < 6 || s.front() != '(' || s.back() != ')' || s[1] != '{') {
        throw InputError("malformed point spec (expected \"({v,...},w)\"): " + text);
    }
    auto close = s.find('}');
    if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != ',') {
        throw InputError("malformed point spec: " + text);
    }
    PrimPointSpec p;
    std::stringstream names(s.substr(2, close - 2));
    std::string name;
    while (std::getline(names, name, ',')) {
        if (name.empty()) continue;
        int v = g.vertex_index(name);
        if (v < 0) throw InputError("unknown vertex in point spec: " + name);
        p.tail.push_back(v);
    }
    std::sort(p.tail.begin(), p.tail.end());
    std::string w = s.substr(close + 2, s.size() - close - 3);
    if (w != "FULL") p.w = parse_rat(w);
    return p;
}

// balanced "(...)" groups; '|' at top level separates prefix from tail
std::pair<std::vector<std::string>, std::vector<std::string>> split_points(
    const std::string& text) {
    std::vector<std::string> pre, tail;
    bool in_tail = false;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ';') {
            ++i;
        } else if (c == '|') {
            in_tail = true;
            ++i;
        } else if (c == '(') {
            int depth = 0;
            size_t j = i;
            for (; j < text.size(); ++j) {
                if (text[j] == '(') ++depth;
                if (text[j] == ')' && --depth == 0) break;
            }
            if (depth != 0) throw InputError("unbalanced parentheses in: " + text);
            (in_tail ? tail : pre).push_back(text.substr(i, j - i + 1));
            i = j + 1;
        } else {
            throw InputError(std::string("unexpected character '") + c +
                             "' in point list");
        }
    }
    return {pre, tail};
}

// open-set file: one line per maximal tail (tails order), each line either
// true/false (point fibers) or a rank-1 torus-set expression (circle fibers)
PrimOpenSet parse_open_set(const std::string& text, const DirGraph& g) {
    auto tails = maximal_tails(g);
    PrimOpenSet o;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string s;
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        }
        if (s.empty()) continue;
        if (o.fibers.size() >= tails.size()) {
            throw InputError("open-set file has more fibers than maximal tails");
        }
        if (s == "true") {
            o.fibers.emplace_back(true);
        } else if (s == "false") {
            o.fibers.emplace_back(false);
        } else {
            try {
                o.fibers.emplace_back(parse_torus_set(s, 1));
            } catch (const std::exception& ex) {
                throw InputError("open-set line " + std::to_string(lineno) + ": " +
                                 ex.what());
            }
        }
    }
    if (o.fibers.size() != tails.size()) {
        throw InputError("open-set file must provide one fiber per maximal tail (" +
                         std::to_string(tails.size()) + " expected)");
    }
    return o;
}

json lattice_json(const IntLattice& l) {
    json rows = json::array();
    for (const auto& r : l.basis) {
        json row = json::array();
        for (const auto& x : r) row.push_back(x.convert_to<long long>());
        rows.push_back(row);
    }
    return {{"ambient_rank", l.ambient_rank}, {"generators", rows}};
}

json tail_json(const DirGraph& g, const MaximalTail& t) {
    json vs = json::array();
    for (int v : t.vertices) vs.push_back(g.vertices[static_cast<size_t>(v)]);
    json cyc = json::array();
    for (int e : t.cycle) cyc.push_back(g.edges[static_cast<size_t>(e)].name);
    return {{"vertices", vs}, {"per", t.per}, {"cycle", cyc}};
}

struct Emit {
    std::string format = "json";
    std::string command;

    // prints the report and mirrors it into PRIMTOOL_OUT when that is set
    void operator()(const json& j, const std::string& text_summary) const {
        if (format == "text") {
            std::cout << text_summary << "\n";
        } else {
            std::cout << j.dump(2) << "\n";
        }
        if (const char* dir = std::getenv("PRIMTOOL_OUT")) {
            std::ofstream out(std::string(dir) + "/" + command + ".json");
            if (out) out << j.dump(2) << "\n";
        }
    }
};

std::string fiber_text(const ClosedFiber& f) {
    if (f.kind == ClosedFiber::Kind::kEmpty) return "EMPTY";
    if (f.kind == ClosedFiber::Kind::kFull) return "FULL";
    std::string s = "points";
    for (const auto& p : f.points) {
        std::ostringstream os;
        os << " " << p;
        s += os.str();
    }
    return s;
}

json family_report_json(const FamilyReport& r) {
    return {{"pass", r.pass}, {"failures", r.failures}, {"notes", r.notes}};
}

Cx unit_z(const Rat& angle) {
    return std::polar(1.0, 2.0 * std::numbers::pi * angle.convert_to<double>());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"groupoid and graph-algebra toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    unsigned long seed = 17;
    app.add_option("--format", format, "output format: json|dot|text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    app.add_option("--seed", seed, "seed for randomized property commands");

    std::string in_path, dset_path, set_path, seq_text, target_text, points_text;
    std::string vertex_name, tail_csv, arc_text = "1/4:3/4", z_text = "1/2";
    long radius = 4, bound = 40, truncation = 96, fixtures_n = 20;
    long kbound = 2, kdepth = 3, h1_mult = 2, h2_mult = 1;
    bool gauge_invariant = false, want_dot = false;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", in_path, "input file")->required();
    };

    CLI::App* c_tails = app.add_subcommand("tails", "maximal tails of a graph");
    add_input(c_tails);
    CLI::App* c_prim = app.add_subcommand("prim", "primitive-ideal presentation");
    add_input(c_prim);
    c_prim->add_flag("--dot", want_dot, "emit the specialization poset as DOT");
    CLI::App* c_closure = app.add_subcommand("closure", "hull-kernel closure");
    add_input(c_closure);
    c_closure->add_option("--points", points_text, "point specs \"({v},w)...\"")
        ->required();
    CLI::App* c_isopen = app.add_subcommand("is-open", "openness of a fiberwise set");
    add_input(c_isopen);
    c_isopen->add_option("--set", set_path, "open-set file")->required();
    CLI::App* c_ideals = app.add_subcommand("ideals", "ideal lattice");
    add_input(c_ideals);
    c_ideals->add_flag("--gauge-invariant", gauge_invariant,
                       "list gauge-invariant ideals");
    CLI::App* c_sandwich = app.add_subcommand("sandwich", "sandwich vertex sets");
    add_input(c_sandwich);
    c_sandwich->add_option("--set", set_path, "open-set file")->required();
    CLI::App* c_conv = app.add_subcommand("converge", "sequence convergence in Prim");
    add_input(c_conv);
    c_conv->add_option("--seq", seq_text, "points, '|' before the repeating tail")
        ->required();
    c_conv->add_option("--target", target_text, "target point")->required();
    CLI::App* c_kval = app.add_subcommand("kvalidate", "validate a 2-graph");
    add_input(c_kval);
    CLI::App* c_per = app.add_subcommand("periodicity", "periodicity groups");
    add_input(c_per);
    c_per->add_option("--vertex", vertex_name, "restrict to one vertex");
    c_per->add_option("--bound", kbound, "local-search bound (nondeterministic)");
    c_per->add_option("--depth", kdepth, "local-search depth (nondeterministic)");
    CLI::App* c_harm = app.add_subcommand("harmonious", "harmonious family check");
    add_input(c_harm);
    c_harm->add_option("--vertex", vertex_name, "base vertex (2-graphs)");
    c_harm->add_option("--radius", radius, "truncation radius");
    CLI::App* c_dcheck = app.add_subcommand("dcheck", "D-set conditions D1-D3");
    add_input(c_dcheck);
    c_dcheck->add_option("--dset", dset_path, "D-set file")->required();
    CLI::App* c_ury = app.add_subcommand("urysohn", "Urysohn-type element report");
    add_input(c_ury);
    c_ury->add_option("--tail", tail_csv, "tail vertex names, comma separated");
    c_ury->add_option("--arc", arc_text, "bump arc lo:hi");
    c_ury->add_option("--z", z_text, "circle coordinate of the base character");
    c_ury->add_option("--bound", bound, "coefficient support bound");
    c_ury->add_option("--truncation", truncation, "series truncation radius");
    CLI::App* c_rep = app.add_subcommand("repcheck", "kernel monotonicity probe");
    add_input(c_rep);
    c_rep->add_option("--tail", tail_csv, "tail vertex names, comma separated");
    c_rep->add_option("--h1", h1_mult, "H1 = h1 * Per * Z");
    c_rep->add_option("--h2", h2_mult, "H2 = h2 * Per * Z");
    c_rep->add_option("--fixtures", fixtures_n, "number of random fixtures");
    c_rep->add_option("--z", z_text, "circle coordinate of the character");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Emit emit;
    emit.format = format;
    emit.command = app.get_subcommands().front()->get_name();

    try {
        auto pick_tail = [&](const DirGraph& g) -> MaximalTail {
            auto tails = maximal_tails(g);
            if (!tail_csv.empty()) {
                std::vector<int> vs;
                std::stringstream ss(tail_csv);
                std::string name;
                while (std::getline(ss, name, ',')) {
                    int v = g.vertex_index(name);
                    if (v < 0) throw InputError("unknown vertex: " + name);
                    vs.push_back(v);
                }
                std::sort(vs.begin(), vs.end());
                int i = find_tail(tails, vs);
                if (i < 0) throw InputError("no maximal tail with those vertices");
                return tails[static_cast<size_t>(i)];
            }
            for (const auto& t : tails) {
                if (t.per != 0) return t;
            }
            throw InputError("no periodic maximal tail; pass --tail");
        };

        if (c_tails->parsed()) {
            DirGraph g = parse_graph(slurp(in_path));
            json j = json::parse(tails_json(g));
            emit(j, "tails: " + std::to_string(j["tails"].size()));
            return 0;
        }
        if (c_prim->parsed()) {
            DirGraph g = parse_graph(slurp(in_path));
            if (want_dot || format == "dot") {
                std::cout << poset_dot(g);
                return 0;
            }
            auto p = prim_presentation(g);
            json jt = json::array();
            for (const auto& t : p.tails) jt.push_back(tail_json(g, t));
            json jo = json::array();
            for (auto [i, k] : p.order) jo.push_back({i, k});
            json j = {{"tails", jt}, {"order", jo}};
            emit(j, "tails: " + std::to_string(p.tails.size()) +
                        ", strict inclusions: " + std::to_string(p.order.size()));
            return 0;
        }
        if (c_closure->parsed()) {
            DirGraph g = parse_graph(slurp(in_path));
            auto [pts, tail] = split_points(points_text);
            pts.insert(pts.end(), tail.begin(), tail.end());
            std::vector<PrimPointSpec> specs;
            for (const auto& s : pts) specs.push_back(parse_point(s, g));
            if (specs.empty()) throw InputError("no points given");
            auto closed = closure(g, specs);
            auto tails = maximal_tails(g);
            json jf = json::array();
            std::string txt;
            for (size_t i = 0; i < closed.fibers.size(); ++i) {
                json pw = json::array();
                for (const auto& r : closed.fibers[i].points) {
                    std::ostringstream os;
                    os << r;
                    pw.push_back(os.str());
                }
                jf.push_back({{"tail", tail_json(g, tails[i])["vertices"]},
                              {"kind",
                               closed.fibers[i].kind == ClosedFiber::Kind::kEmpty
                                   ? "EMPTY"
                                   : closed.fibers[i].kind == ClosedFiber::Kind::kFull
                                         ? "FULL"
                                         : "POINTS"},
                              {"points", pw}});
                txt += fiber_text(closed.fibers[i]) + "\n";
            }
            emit(json{{"fibers", jf}}, txt);
            return 0;
        }
        if (c_isopen->parsed()) {
            DirGraph g = parse_graph(slurp(in_path));
            PrimOpenSet o = parse_open_set(slurp(set_path), g);
            bool open = is_open(g, o);
            emit(json{{"open", open}}, open ? "open" : "not open");
            return open ? 0 : 1;
        }
        if (c_ideals->parsed()) {
            if (!gauge_invariant) throw InputError("only --gauge-invariant is supported");
            DirGraph g = parse_graph(slurp(in_path));
            auto ideals = gauge_invariant_ideals(g);
            json ja = json::array();
            for (const auto& hs : ideals) {
                json names = json::array();
                for (int v : hs) names.push_back(g.vertices[static_cast<size_t>(v)]);
                ja.push_back(names);
            }
            emit(json{{"gauge_invariant_ideals", ja}},
                 std::to_string(ideals.size()) + " gauge-invariant ideals");
            return 0;
        }
        if (c_sandwich->parsed()) {
            DirGraph g = parse_graph(slurp(in_path));
            PrimOpenSet o = parse_open_set(slurp(set_path), g);
            auto [lo, hi] = sandwich_sets(g, o);
            auto names = [&](const std::vector<int>& vs) {
                json a = json::array();
                for (int v : vs) a.push_back(g.vertices[static_cast<size_t>(v)]);
                return a;
            };
            emit(json{{"inner", names(lo)}, {"outer", names(hi)}},
                 "inner " + std::to_string(lo.size()) + ", outer " +
                     std::to_string(hi.size()));
            return 0;
        }
        if (c_conv->parsed()) {
            DirGraph g = parse_graph(slurp(in_path));
            auto [pre, tail] = split_points(seq_text);
            if (tail.empty()) {
                // with no '|' the whole list is the repeating tail
                tail = pre;
                pre.clear();
            }
            PrimSequence seq;
            for (const auto& s : pre) seq.prefix.push_back(parse_point(s, g));
            for (const auto& s : tail) seq.tail.push_back(parse_point(s, g));
            if (seq.tail.empty()) throw InputError("sequence tail must be nonempty");
            PrimPointSpec target = parse_point(target_text, g);
            auto v = converge_prim(g, seq, target);
            emit(json{{"converges", v.converges}, {"supported", v.supported}},
                 v.supported ? (v.converges ? "true" : "false") : "UNSUPPORTED");
            return v.supported && v.converges ? 0 : 1;
        }
        if (c_kval->parsed()) {
            TwoGraph g = parse_kgraph(slurp(in_path));
            auto rep = validate(g);
            emit(json{{"ok", rep.ok},
                      {"violations", rep.violations},
                      {"vertices", g.vertices.size()},
                      {"blue", g.blue.size()},
                      {"red", g.red.size()},
                      {"squares", g.squares.size()}},
                 rep.ok ? "valid" : "invalid");
            return rep.ok ? 0 : 1;
        }
        if (c_per->parsed()) {
            TwoGraph g = parse_kgraph(slurp(in_path));
            json ja = json::array();
            std::string txt;
            for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
                if (!vertex_name.empty() && g.vertices[static_cast<size_t>(v)] != vertex_name) {
                    continue;
                }
                json entry = {{"vertex", g.vertices[static_cast<size_t>(v)]}};
                try {
                    IntLattice h = periodicity_group(g, v);
                    entry["group"] = lattice_json(h);
                    entry["certified"] = true;
                } catch (const std::exception&) {
                    auto lp = local_periodicity_search(g, v, static_cast<int>(kbound),
                                                       static_cast<int>(kdepth));
                    entry["group"] = lattice_json(lp.group);
                    entry["certified"] = false;
                    entry["bound"] = lp.bound;
                    entry["depth"] = lp.depth;
                }
                txt += entry.dump() + "\n";
                ja.push_back(entry);
            }
            if (!vertex_name.empty() && ja.empty()) {
                throw InputError("unknown vertex: " + vertex_name);
            }
            emit(json{{"periodicity", ja}}, txt);
            return 0;
        }
        if (c_harm->parsed()) {
            std::string text = slurp(in_path);
            // first keyword of the first non-comment line decides the dialect
            bool is_kgraph = false;
            {
                std::istringstream in(text);
                std::string line, tok;
                while (std::getline(in, line)) {
                    auto hash = line.find('#');
                    if (hash != std::string::npos) line = line.substr(0, hash);
                    std::istringstream ls(line);
                    if (ls >> tok) {
                        is_kgraph = (tok == "kgraph");
                        break;
                    }
                }
            }
            if (is_kgraph) {
                TwoGraph g = parse_kgraph(text);
                int v = 0;
                if (!vertex_name.empty()) {
                    v = g.vertex_index(vertex_name);
                    if (v < 0) throw InputError("unknown vertex: " + vertex_name);
                }
                try {
                    KFamily fam = twograph_family(g, v, radius);
                    auto rep = verify_harmonious_k(g, fam);
                    json j = family_report_json(rep);
                    j["rank"] = fam.rank;
                    j["members"] = fam.members.size();
                    emit(j, rep.pass ? "pass" : "fail");
                    return rep.pass ? 0 : 1;
                } catch (const std::runtime_error& ex) {
                    std::string msg = ex.what();
                    if (msg.find("UNANALYZABLE") != std::string::npos) {
                        emit(json{{"pass", false}, {"failures", {msg}}}, msg);
                        return 1;
                    }
                    throw;
                }
            }
            DirGraph g = parse_graph(text);
            auto tails = maximal_tails(g);
            json ja = json::array();
            bool all = true;
            for (const auto& t : tails) {
                GFamily fam = graph_family(g, t, radius);
                auto rep = verify_harmonious(g, fam);
                json j = family_report_json(rep);
                j["tail"] = tail_json(g, t)["vertices"];
                ja.push_back(j);
                all = all && rep.pass;
            }
            emit(json{{"pass", all}, {"families", ja}}, all ? "pass" : "fail");
            return all ? 0 : 1;
        }
        if (c_dcheck->parsed()) {
            TwoGraph g = parse_kgraph(slurp(in_path));
            DSet d = parse_dset(slurp(dset_path), g);
            auto tab = class_table(g);
            auto r1 = check_D1(g, d);
            auto r2 = check_D2(g, d);
            auto r3 = check_D3(g, d, tab);
            bool rt = r1.pass && r2.pass ? roundtrip(g, tab, d) : false;
            bool pass = r1.pass && r2.pass && r3.pass && rt;
            json j = {{"pass", pass},
                      {"D1", {{"pass", r1.pass}, {"witnesses", r1.witnesses}}},
                      {"D2", {{"pass", r2.pass}, {"witnesses", r2.witnesses}}},
                      {"D3", {{"pass", r3.pass}, {"witnesses", r3.witnesses}}},
                      {"roundtrip", rt}};
            emit(j, pass ? "pass" : "fail");
            return pass ? 0 : 1;
        }
        if (c_ury->parsed()) {
            DirGraph g = parse_graph(slurp(in_path));
            MaximalTail t = pick_tail(g);
            if (t.per == 0) throw InputError("urysohn needs a periodic tail");
            GFamily fam = graph_family(g, t, truncation);
            auto colon = arc_text.find(':');
            if (colon == std::string::npos) throw InputError("--arc expects lo:hi");
            BumpSpec psi{{Bump1D{parse_rat(arc_text.substr(0, colon)),
                                 parse_rat(arc_text.substr(colon + 1))}}};
            FourierSeries f = fourier(psi, bound);
            Rat zr = parse_rat(z_text);
            auto h0 = find_h0(f, TorusPoint{{zr}}, full_lattice(1));
            int root = g.edges[static_cast<size_t>(t.cycle.front())].range;
            GBisection phi = g_basic(g, root, {}, root, {});
            // outside samples: realizations of other tails rooted elsewhere,
            // plus a character where the bump vanishes
            std::vector<PathPoint> outside;
            for (const auto& o : maximal_tails(g)) {
                if (o == t) continue;
                PathPoint y = realize_tail(g, o);
                if (path_vertex_at(y, 0, g) != root) outside.push_back(y);
            }
            std::vector<Cx> outchar;
            BumpSpec arc = psi;
            if (bump_value(arc, TorusPoint{{Rat(0)}}) == 0.0) {
                outchar.push_back(unit_z(Rat(0)));
            }
            UrysohnResult res =
                urysohn(g, fam, phi, f, h0, unit_z(zr), truncation, outside, outchar);
            json j = json::parse(report_json(res.report));
            j["h0"] = h0[0];
            j["terms"] = res.f.terms.size();
            emit(j, res.report.pass ? "pass" : "fail");
            return res.report.pass ? 0 : 1;
        }
        if (c_rep->parsed()) {
            DirGraph g = parse_graph(slurp(in_path));
            MaximalTail t = pick_tail(g);
            if (t.per == 0) throw InputError("repcheck needs a periodic tail");
            if (h1_mult <= 0 || h2_mult <= 0 || h1_mult % h2_mult != 0) {
                throw InputError("--h1 must be a positive multiple of --h2");
            }
            long per = t.per;
            IntLattice h1 = canonicalize(1, {{Int(h1_mult * per)}});
            IntLattice h2 = canonicalize(1, {{Int(h2_mult * per)}});
            PathPoint x = canonical_path({}, t.cycle, g);
            Cx z = unit_z(parse_rat(z_text));
            int root = g.edges[static_cast<size_t>(t.cycle.front())].range;
            auto mu_pow = [&](long n) {
                std::vector<int> w;
                for (long i = 0; i < n; ++i) {
                    w.insert(w.end(), t.cycle.begin(), t.cycle.end());
                }
                return w;
            };
            std::mt19937 rng(static_cast<unsigned>(seed));
            std::vector<CcFunction> fs;
            for (long i = 0; i < fixtures_n; ++i) {
                long a = static_cast<long>(rng() % 4);
                long b = static_cast<long>(rng() % 4);
                long step = h1_mult * (1 + static_cast<long>(rng() % 2));
                CcFunction fx;
                fx.terms.push_back({g_basic(g, root, mu_pow(a + step), root, mu_pow(b)),
                                    Cx{1.0, 0.0}});
                fx.terms.push_back(
                    {g_basic(g, root, mu_pow(a), root, mu_pow(b)),
                     -std::polar(1.0, static_cast<double>(step * per) * std::arg(z))});
                fs.push_back(std::move(fx));
            }
            EvalReport rep = kernel_monotonicity_probe(g, h1, h2, fs, x, z);
            json j = json::parse(report_json(rep));
            emit(j, rep.pass ? "pass" : "fail");
            return rep.pass ? 0 : 1;
        }
        throw InputError("no subcommand dispatched");
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
