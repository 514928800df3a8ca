#include "plumbing/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>

#include "plumbing/catalog.hpp"
#include "plumbing/classifier.hpp"
#include "plumbing/contraction.hpp"
#include "plumbing/error.hpp"
#include "plumbing/graph.hpp"
#include "plumbing/sweeps.hpp"
#include "plumbing/twig.hpp"

namespace plumbing {

namespace {

using nlohmann::json;

struct Ctx {
    std::ostream& out;
    bool json = false;
    bool dot = false;
    bool trace = false;
    bool parallel = false;
};

Exec exec_of(const Ctx& c) { return c.parallel ? Exec::Parallel : Exec::Serial; }

json twig_json(const Twig& t) { return json(std::vector<std::int64_t>(t.begin(), t.end())); }

json graph_json(const WeightedDualGraph& g) { return json::parse(graph_to_json(g)); }

void print_json(const Ctx& c, const json& j) { c.out << j.dump(2) << "\n"; }

// Graph output in the chosen format; the text form is the graph file format.
void emit_graph(const Ctx& c, const WeightedDualGraph& g) {
    if (c.dot) c.out << graph_to_dot(g);
    else c.out << format_graph(g);
}

json steps_json(const std::vector<ContractionStep>& steps) {
    json a = json::array();
    for (const auto& s : steps) {
        json w = json::object();
        for (const auto& [id, weight] : s.weights) w[id] = weight;
        json e = json::array();
        for (const auto& [x, y] : s.new_edges) e.push_back({x, y});
        a.push_back({{"contracted", s.contracted}, {"weights", w}, {"new_edges", e}});
    }
    return a;
}

void print_steps(const Ctx& c, const std::vector<ContractionStep>& steps) {
    for (std::size_t i = 0; i < steps.size(); ++i) c.out << "step " << i + 1 << ": " << format_step(steps[i]) << "\n";
}

std::string shape_text(const std::optional<MncShape>& s) { return s ? s->str() : "-"; }

// ---- twig ----

int twig_command(const Ctx& c, const std::string& op, const std::string& text) {
    Twig t = parse_twig(text);
    json j{{"twig", twig_json(t)}};
    std::string line;
    if (op == "det") {
        line = det(t).str();
        j["det"] = line;
    } else if (op == "inductance") {
        line = inductance(t).str();
        j["inductance"] = line;
    } else if (op == "adjoint") {
        Twig a = adjoint(t);
        line = format_twig(a);
        j["adjoint"] = twig_json(a);
    } else if (op == "ma") {
        line = std::to_string(m_A(t));
        j["m_A"] = m_A(t);
    } else {
        auto d = decompose_boundary(t);
        line = kind_name(d.kind) + " A=" + format_twig(d.a) + " m=" + std::to_string(d.m) + " t=" + std::to_string(d.t) +
               " r'=" + std::to_string(d.r_prime) + (d.reversed ? " reversed" : "");
        j["decomposition"] = {{"case", kind_name(d.kind)}, {"A", twig_json(d.a)}, {"m", d.m},
                              {"t", d.t},                  {"r_prime", d.r_prime}, {"reversed", d.reversed}};
    }
    if (c.json) print_json(c, j);
    else c.out << line << "\n";
    return 0;
}

// ---- graph ----

int graph_check(const Ctx& c, const WeightedDualGraph& g) {
    const bool forest = is_forest(g);
    auto orbits = orbit_audit(g);
    auto rank = picard_rank(g);
    auto exc = exceptional_vertices(g);
    const bool nd = exc.empty() || is_negative_definite(g.induced(exc));
    auto chain = as_linear_chain(g);
    if (c.json) {
        print_json(c, {{"vertices", g.size()},
                       {"edges", g.edge_count()},
                       {"forest", forest},
                       {"orbit_audit", orbits.pass()},
                       {"orbit_problems", orbits.problems},
                       {"exceptional_negative_definite", nd},
                       {"picard_rank", {{"closure", rank.over_closure}, {"base", rank.over_base}}},
                       {"mnc", is_mnc(g)},
                       {"chain", chain ? twig_json(*chain) : json(nullptr)}});
    } else {
        c.out << "vertices: " << g.size() << "\nedges: " << g.edge_count() << "\nforest: " << (forest ? "yes" : "no")
              << "\norbit audit: " << (orbits.pass() ? "pass" : "fail") << "\n";
        for (const auto& p : orbits.problems) c.out << "  " << p << "\n";
        c.out << "exceptional part negative definite: " << (nd ? "yes" : "no") << "\npicard rank: " << rank.over_closure
              << " over the closure, " << rank.over_base << " over the base\nmnc: " << (is_mnc(g) ? "yes" : "no")
              << "\nchain: " << (chain ? format_twig(*chain) : "no") << "\n";
    }
    return forest && orbits.pass() ? 0 : 1;
}

int graph_contract(const Ctx& c, const WeightedDualGraph& g, const std::string& vertex, const std::string& block) {
    if (vertex.empty() == block.empty()) throw Error("Usage", "graph contract needs exactly one of --vertex or --block");
    ContractionStep step;
    WeightedDualGraph h;
    if (!vertex.empty()) {
        auto v = g.find(vertex);
        if (!v) throw Error("UnknownVertex", "no vertex '" + vertex + "'");
        h = blow_down(g, *v);
        step.contracted = {vertex};
    } else {
        std::vector<int> members;
        for (int v : g.sorted_by_id())
            if (g.orbit(v) == block) members.push_back(v);
        if (members.empty()) throw Error("UnknownBlock", "no orbit block '" + block + "'");
        h = contract_orbit(g, members, &step);
    }
    if (c.json) {
        json j{{"graph", graph_json(h)}};
        if (!block.empty()) j["step"] = steps_json({step})[0];
        print_json(c, j);
        return 0;
    }
    if (c.trace && !block.empty()) c.out << "# " << format_step(step) << "\n";
    emit_graph(c, h);
    return 0;
}

int graph_normalize(const Ctx& c, const WeightedDualGraph& g) {
    NormalizeResult r;
    try {
        r = normalize(g);
    } catch (const Error& e) {
        if (e.code() != "Stuck") throw;
        if (c.json) print_json(c, {{"shape", nullptr}, {"stuck", e.message()}});
        else c.out << "stuck: " << e.message() << "\n";
        return 1;
    }
    auto m = morrow_audit(r.graph);
    if (c.json) {
        json j{{"shape", r.shape.str()}, {"graph", graph_json(r.graph)}, {"morrow", m.violations}};
        if (c.trace) j["steps"] = steps_json(r.steps);
        print_json(c, j);
        return 0;
    }
    if (c.trace) print_steps(c, r.steps);
    c.out << "shape: " << r.shape.str() << "\nmnc audit: " << (m.pass() ? "pass" : m.violations.front()) << "\n";
    emit_graph(c, r.graph);
    return 0;
}

json singularities_json(const SingularityReport& s) {
    json comps = json::array();
    for (const auto& k : s.components)
        comps.push_back({{"vertices", k.vertices}, {"type", type_name(k.type)}, {"label", k.label}, {"orbit_size", k.orbit_size}});
    return {{"components", comps},
            {"count_closure", s.count_closure},
            {"count_base", s.count_base},
            {"boundary_curves", s.boundary_curves},
            {"du_val_type", s.du_val_type()}};
}

void print_singularities(const Ctx& c, const SingularityReport& s) {
    c.out << "singular points: " << s.count_closure << " over the closure, " << s.count_base << " over the base\n";
    for (const auto& k : s.components) {
        c.out << "  " << type_name(k.type) << " " << k.label << " {";
        for (std::size_t i = 0; i < k.vertices.size(); ++i) c.out << (i ? " " : "") << k.vertices[i];
        c.out << "}" << (k.orbit_size > 1 ? " orbit of " + std::to_string(k.orbit_size) : "") << "\n";
    }
    if (s.all_du_val()) c.out << "du val type: " << s.du_val_type() << "\n";
}

int graph_singularities(const Ctx& c, const WeightedDualGraph& g) {
    auto s = analyze_singularities(g);
    if (c.json) {
        json j = singularities_json(s);
        if (s.all_du_val()) j["degree"] = du_val_degree(g);
        print_json(c, j);
        return 0;
    }
    print_singularities(c, s);
    if (s.all_du_val()) c.out << "degree: " << du_val_degree(g) << "\n";
    return 0;
}

json audit_json(const AuditReport& a) {
    json j = json::array();
    for (const auto& e : a.entries) j.push_back({{"check", e.check}, {"status", status_name(e.status)}, {"detail", e.detail}});
    return j;
}

void print_audit(const Ctx& c, const AuditReport& a) {
    for (const auto& e : a.entries) c.out << e.check << "\t" << status_name(e.status) << "\t" << e.detail << "\n";
}

int graph_audit(const Ctx& c, const WeightedDualGraph& g) {
    auto a = structural_lemma_audit(g);
    if (c.json) print_json(c, {{"checks", audit_json(a)}, {"pass", a.pass()}});
    else print_audit(c, a);
    return a.pass() ? 0 : 1;
}

std::string candidate_text(const Catalog& cat, const MatchCandidate& m) {
    std::string d = cat.family(m.id).describe(m.params);
    return "(" + std::to_string(m.id) + ")" + (d == "-" ? "" : " " + d);
}

json candidate_json(const Catalog& cat, const MatchCandidate& m) {
    return {{"family", m.id}, {"params", cat.family(m.id).describe(m.params)}};
}

int graph_classify(const Ctx& c, const WeightedDualGraph& g, bool audit) {
    const auto& cat = Catalog::builtin();
    auto v = classify_boundary(g, cat);
    const int code = v.kind == BoundaryVerdict::Kind::ContainsA2 ? 0 : 1;
    if (c.json) {
        json j{{"verdict", kind_name(v.kind)}, {"reason", v.reason}, {"evidence", v.evidence}};
        j["match"] = v.match ? candidate_json(cat, *v.match) : json(nullptr);
        json all = json::array();
        for (const auto& m : v.all_matches) all.push_back(candidate_json(cat, m));
        j["all_matches"] = all;
        j["target"] = v.target ? json(v.target->str()) : json(nullptr);
        j["reached"] = v.reached ? json(v.reached->str()) : json(nullptr);
        if (v.singularities) j["singularities"] = singularities_json(*v.singularities);
        if (c.trace) j["steps"] = steps_json(v.steps);
        if (audit) j["audit"] = audit_json(structural_lemma_audit(g));
        print_json(c, j);
        return code;
    }
    c.out << "verdict: " << kind_name(v.kind) << "\nreason: " << v.reason << "\n";
    if (v.match) c.out << "match: " << candidate_text(cat, *v.match) << "\n";
    for (std::size_t i = 1; i < v.all_matches.size(); ++i) c.out << "also: " << candidate_text(cat, v.all_matches[i]) << "\n";
    if (v.target) c.out << "target: " << v.target->str() << "\nreached: " << shape_text(v.reached) << "\n";
    c.out << "evidence:\n";
    for (const auto& e : v.evidence) c.out << "  " << e << "\n";
    if (v.singularities) print_singularities(c, *v.singularities);
    if (c.trace) print_steps(c, v.steps);
    if (audit) print_audit(c, structural_lemma_audit(g));
    return code;
}

int graph_blow_up(const Ctx& c, const WeightedDualGraph& g, const std::string& at, const std::string& with,
                  const std::string& id) {
    auto h = blow_up(g, BlowUpSite{at, with}, id);
    if (c.json) print_json(c, {{"graph", graph_json(h)}});
    else emit_graph(c, h);
    return 0;
}

// ---- catalog ----

struct ParamFlags {
    std::optional<std::int64_t> t, t2, m, n;
    std::string twig;
};

void add_param_flags(CLI::App* s, ParamFlags& p) {
    s->add_option("--t", p.t, "parameter t");
    s->add_option("--t2", p.t2, "parameter t'");
    s->add_option("--m", p.m, "parameter m");
    s->add_option("--n", p.n, "parameter n (or n' for families that use n')");
    s->add_option("--twig", p.twig, "admissible twig A, e.g. [2,3]");
}

// Unset parameters take their smallest admissible value; A defaults to [2].
FamilyParams resolve_params(const FamilyTemplate& f, const ParamFlags& flags, bool strict) {
    auto pick = [&](const std::optional<std::int64_t>& v, std::initializer_list<const char*> names,
                    const std::string& flag) -> std::int64_t {
        for (const char* name : names)
            if (f.uses(name)) return v ? *v : f.minimum(name, strict);
        if (v) throw Error("BadParams", "family (" + std::to_string(f.id) + ") has no parameter for " + flag);
        return 0;
    };
    FamilyParams p;
    p.t = pick(flags.t, {"t"}, "--t");
    p.tp = pick(flags.t2, {"tp"}, "--t2");
    p.m = pick(flags.m, {"m"}, "--m");
    p.n = pick(flags.n, {"n", "np"}, "--n");
    if (f.uses("A")) p.a = flags.twig.empty() ? Twig{2} : parse_twig(flags.twig);
    else if (!flags.twig.empty()) throw Error("BadParams", "family (" + std::to_string(f.id) + ") has no twig parameter");
    return p;
}

int catalog_gen(const Ctx& c, int id, const ParamFlags& flags, bool strict) {
    const auto& cat = Catalog::builtin();
    const auto& f = cat.family(id);
    auto p = resolve_params(f, flags, strict);
    auto inst = cat.instantiate(id, p, strict);
    auto target = cat.mnc_target(id, p);
    if (c.json) {
        print_json(c, {{"family", id}, {"params", f.describe(p)}, {"target", target.str()}, {"graph", graph_json(inst.graph)}});
        return 0;
    }
    if (!c.dot) c.out << "# " << candidate_text(cat, {id, p}) << " -> " << target.str() << "\n";
    emit_graph(c, inst.graph);
    return 0;
}

int catalog_match(const Ctx& c, const WeightedDualGraph& g) {
    const auto& cat = Catalog::builtin();
    auto r = cat.match(g);
    if (c.json) {
        json all = json::array();
        for (const auto& m : r.all) all.push_back(candidate_json(cat, m));
        print_json(c, {{"match", r.best ? candidate_json(cat, *r.best) : json(nullptr)}, {"all", all}, {"reason", r.reason}});
    } else if (r.best) {
        c.out << "match: " << candidate_text(cat, *r.best) << "\n";
        for (std::size_t i = 1; i < r.all.size(); ++i) c.out << "also: " << candidate_text(cat, r.all[i]) << "\n";
    } else {
        c.out << "no match: " << r.reason << "\n";
    }
    return r.best ? 0 : 1;
}

struct VerifyFlags {
    std::int64_t max_t = 1;
    std::int64_t max_m = 3;
    std::int64_t twig_det = 12;
    std::int64_t n_extra = 1;
    bool strict = false;
};

int catalog_verify(const Ctx& c, const VerifyFlags& v) {
    if (v.max_t < 0 || v.max_m < 2 || v.twig_det < 2 || v.n_extra < 0)
        throw Error("BadParams", "verify bounds need --max-t >= 0, --max-m >= 2, --twig-det >= 2, --n-extra >= 0");
    Bounds b;
    b.max_t = b.max_tp = v.max_t;
    b.max_m = v.max_m;
    b.n_extra = v.n_extra;
    b.strict = v.strict;
    b.pool = twig_pool(v.twig_det);
    auto verdicts = verify(Catalog::builtin(), b, exec_of(c));
    std::size_t passed = 0, instances = 0;
    for (const auto& f : verdicts) {
        passed += f.pass() ? 1 : 0;
        instances += f.instances;
    }
    if (c.json) {
        json rows = json::array();
        for (const auto& f : verdicts)
            rows.push_back({{"family", f.id}, {"instances", f.instances}, {"failed", f.failed}, {"pass", f.pass()},
                            {"first_failure", f.first_failure}});
        print_json(c, {{"families", rows}, {"passed", passed}, {"total", verdicts.size()}, {"instances", instances}});
    } else {
        c.out << "family\tinstances\tfailed\tstatus\n";
        for (const auto& f : verdicts) {
            c.out << "(" << f.id << ")\t" << f.instances << "\t" << f.failed << "\t" << (f.pass() ? "PASS" : "FAIL");
            if (!f.first_failure.empty()) c.out << "\t" << f.first_failure;
            c.out << "\n";
        }
        c.out << passed << "/" << verdicts.size() << " PASS over " << instances << " instances\n";
    }
    return passed == verdicts.size() ? 0 : 1;
}

int catalog_field_condition(const Ctx& c, int id, const ParamFlags& flags) {
    const auto& f = Catalog::builtin().family(id);
    auto p = resolve_params(f, flags, false);
    auto s = field_condition(id, p);
    if (c.json) print_json(c, {{"family", id}, {"params", f.describe(p)}, {"situation", s.str()}});
    else c.out << s.str() << "\n";
    return 0;
}

int catalog_list(const Ctx& c) {
    const auto& cat = Catalog::builtin();
    json rows = json::array();
    for (const auto& f : cat.families()) {
        std::string params;
        for (const auto& p : f.params) params += (params.empty() ? "" : ",") + p;
        std::string target = f.target_kind == "P2" ? "P2" : "F";
        if (c.json) rows.push_back({{"family", f.id}, {"group", f.group}, {"params", f.params}, {"target", target}});
        else c.out << "(" << f.id << ")\t" << f.group << "\t" << (params.empty() ? "-" : params) << "\t" << target << "\n";
    }
    if (c.json) print_json(c, rows);
    return 0;
}

// ---- dp ----

int dp_contains(const Ctx& c, std::int64_t degree, const std::string& types, bool rational_point) {
    auto parsed = parse_du_val_types(types);
    auto v = contains_affine_plane_duval(degree, parsed);
    std::string answer = verdict_name(v);
    if (v == DuValVerdict::NeedsSmoothRationalPoint && rational_point) answer = "Contains";
    const bool yes = answer == "Contains";
    if (c.json) print_json(c, {{"degree", degree}, {"type", format_du_val_types(parsed)}, {"verdict", answer}});
    else c.out << answer << "\n";
    return yes ? 0 : 1;
}

int dp_table(const Ctx& c) {
    auto rows = du_val_table();
    if (c.json) {
        json j = json::array();
        for (const auto& r : rows) j.push_back({{"degree", r.degree}, {"type", r.type}, {"verdict", verdict_name(r.verdict)}});
        print_json(c, j);
        return 0;
    }
    c.out << "degree\ttype\tverdict\n";
    for (const auto& r : rows) c.out << r.degree << "\t" << r.type << "\t" << verdict_name(r.verdict) << "\n";
    return 0;
}

// ---- sweeps ----

int sweep_lemmas(const Ctx& c, std::uint64_t seed, std::size_t count) {
    auto r = lemma_sweep(seed, count, exec_of(c));
    if (c.json) {
        json checks = json::object();
        for (const auto& [k, t] : r.checks)
            checks[k] = {{"pass", t.pass}, {"not_applicable", t.not_applicable}, {"fail", t.fail}};
        print_json(c, {{"seed", seed},
                       {"graphs", r.graphs},
                       {"failed", r.failed},
                       {"normalized", r.normalized},
                       {"checks", checks},
                       {"failures", r.failures}});
    } else {
        c.out << "seed " << seed << ": " << r.graphs << " graphs, " << r.failed << " failed, " << r.normalized
              << " normalized\ncheck\tpass\tn/a\tfail\n";
        for (const auto& [k, t] : r.checks) c.out << k << "\t" << t.pass << "\t" << t.not_applicable << "\t" << t.fail << "\n";
        for (const auto& f : r.failures) c.out << f << "\n";
    }
    return r.failed == 0 ? 0 : 1;
}

int print_pair_sweep(const Ctx& c, const std::string& name, const PairSweepResult& r) {
    if (c.json) {
        print_json(c, {{"sweep", name},
                       {"pairs", r.pairs},
                       {"contractible", r.contractible},
                       {"discrepancies", r.discrepancies},
                       {"examples", r.examples}});
    } else {
        c.out << name << ": " << r.pairs << " pairs, " << r.contractible << " contract, " << r.discrepancies
              << " discrepancies\n";
        for (const auto& e : r.examples) c.out << "  " << e << "\n";
    }
    return r.discrepancies == 0 ? 0 : 1;
}

int sweep_inductance(const Ctx& c, std::int64_t max_det) {
    auto r = inductance_sweep(max_det, exec_of(c));
    if (c.json) {
        print_json(c, {{"twigs", r.twigs},
                       {"collisions", r.collisions},
                       {"inverse_failures", r.inverse_failures},
                       {"range_failures", r.range_failures}});
    } else {
        c.out << "inductance: " << r.twigs << " twigs, " << r.collisions << " collisions, " << r.inverse_failures
              << " inverse failures, " << r.range_failures << " out of range\n";
    }
    return r.collisions + r.inverse_failures + r.range_failures == 0 ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted dual graphs of boundaries of affine-plane compactifications", "plumbing"};
    app.require_subcommand(1);
    app.fallthrough();
    Ctx ctx{out};
    app.add_flag("--json", ctx.json, "machine-readable output");

    std::function<int()> action;
    // twig
    auto* twig = app.add_subcommand("twig", "twig arithmetic");
    twig->require_subcommand(1);
    std::string twig_text;
    for (const char* op : {"det", "inductance", "adjoint", "ma", "decompose"}) {
        auto* s = twig->add_subcommand(op, std::string("twig ") + op);
        s->add_option("twig", twig_text, "twig such as [2,4]")->required();
        s->callback([&, name = std::string(op)] { action = [&, name] { return twig_command(ctx, name, twig_text); }; });
    }

    // graph
    auto* graph = app.add_subcommand("graph", "operations on a weighted dual graph file");
    graph->require_subcommand(1);
    std::string file, vertex, block, at, with, new_id = "e";
    bool audit = false;
    auto graph_leaf = [&](const std::string& name, const std::string& help, std::function<int(const WeightedDualGraph&)> f) {
        auto* s = graph->add_subcommand(name, help);
        s->add_option("file", file, "graph file (.json for JSON)")->required();
        s->add_flag("--dot", ctx.dot, "Graphviz output for graphs");
        s->add_flag("--trace", ctx.trace, "print contraction steps");
        s->callback([&, f] { action = [&, f] { return f(load_graph_file(file)); }; });
        return s;
    };
    graph_leaf("check", "structural checks", [&](const WeightedDualGraph& g) { return graph_check(ctx, g); });
    auto* contract = graph_leaf("contract", "blow down a vertex or an orbit block",
                                [&](const WeightedDualGraph& g) { return graph_contract(ctx, g, vertex, block); });
    contract->add_option("--vertex", vertex, "vertex id");
    contract->add_option("--block", block, "orbit label");
    graph_leaf("normalize", "contract orbit blocks down to a minimal boundary",
               [&](const WeightedDualGraph& g) { return graph_normalize(ctx, g); });
    auto* classify = graph_leaf("classify", "decide whether the boundary is one of the catalog families",
                                [&](const WeightedDualGraph& g) { return graph_classify(ctx, g, audit); });
    classify->add_flag("--audit", audit, "append the structural audit");
    graph_leaf("singularities", "singular points after contracting the exceptional part",
               [&](const WeightedDualGraph& g) { return graph_singularities(ctx, g); });
    graph_leaf("audit", "structural checks on boundary shapes", [&](const WeightedDualGraph& g) { return graph_audit(ctx, g); });
    auto* blowup = graph_leaf("blow-up", "blow up a point of the boundary",
                              [&](const WeightedDualGraph& g) { return graph_blow_up(ctx, g, at, with, new_id); });
    blowup->add_option("--at", at, "vertex whose free point is blown up")->required();
    blowup->add_option("--with", with, "second vertex: blow up the intersection point instead");
    blowup->add_option("--id", new_id, "id of the new vertex")->capture_default_str();

    // catalog
    auto* catalog = app.add_subcommand("catalog", "the 52 boundary families");
    catalog->require_subcommand(1);
    int family_id = 0;
    ParamFlags params;
    bool strict = false;
    auto* gen = catalog->add_subcommand("gen", "instantiate a family");
    gen->add_option("id", family_id, "family number")->required();
    add_param_flags(gen, params);
    gen->add_flag("--strict", strict, "use the stricter parameter bounds");
    gen->add_flag("--dot", ctx.dot, "Graphviz output");
    gen->callback([&] { action = [&] { return catalog_gen(ctx, family_id, params, strict); }; });

    auto* match = catalog->add_subcommand("match", "find the family of a graph");
    match->add_option("file", file, "graph file")->required();
    match->callback([&] { action = [&] { return catalog_match(ctx, load_graph_file(file)); }; });

    VerifyFlags vf;
    auto* ver = catalog->add_subcommand("verify", "instantiate and check every family over a grid");
    ver->add_option("--max-t", vf.max_t, "largest t and t'")->capture_default_str();
    ver->add_option("--max-m", vf.max_m, "largest m")->capture_default_str();
    ver->add_option("--twig-det", vf.twig_det, "twig pool: admissible twigs up to this determinant")->capture_default_str();
    ver->add_option("--n-extra", vf.n_extra, "n ranges over its minimum and this many more")->capture_default_str();
    ver->add_flag("--strict", vf.strict, "use the stricter parameter bounds");
    ver->add_flag("--parallel", ctx.parallel, "spread instances over threads");
    ver->callback([&] { action = [&] { return catalog_verify(ctx, vf); }; });

    auto* fc = catalog->add_subcommand("field-condition", "situation under which a family occurs over the base field");
    fc->add_option("id", family_id, "family number")->required();
    add_param_flags(fc, params);
    fc->callback([&] { action = [&] { return catalog_field_condition(ctx, family_id, params); }; });

    catalog->add_subcommand("list", "list the families")->callback([&] { action = [&] { return catalog_list(ctx); }; });

    // dp
    auto* dp = app.add_subcommand("dp", "Du Val del Pezzo surfaces");
    dp->require_subcommand(1);
    std::int64_t degree = 0;
    std::string types;
    bool rational_point = false;
    auto* contains = dp->add_subcommand("contains-a2", "does the surface contain the affine plane");
    contains->add_option("--degree", degree, "degree 1..6 or 8")->required();
    contains->add_option("--type", types, "singularity type, e.g. A2+2A1 or A2,A1,A1")->required();
    contains->add_flag("--rational-point", rational_point, "the surface has a smooth rational point");
    contains->callback([&] { action = [&] { return dp_contains(ctx, degree, types, rational_point); }; });
    dp->add_subcommand("table", "the known (degree, type) pairs as TSV")->callback([&] { action = [&] { return dp_table(ctx); }; });

    // sweeps
    auto* sweep = app.add_subcommand("sweep", "property sweeps against exhaustive oracles");
    sweep->require_subcommand(1);
    std::uint64_t seed = 1;
    std::size_t count = 1000;
    std::int64_t max_det = 20;
    std::vector<std::int64_t> ms{2, 3};
    auto* lemmas = sweep->add_subcommand("lemmas", "audit randomly blown-up seed boundaries");
    lemmas->add_option("--seed", seed, "random seed")->capture_default_str();
    lemmas->add_option("--count", count, "number of graphs")->capture_default_str();
    lemmas->callback([&] { action = [&] { return sweep_lemmas(ctx, seed, count); }; });
    auto* fujita = sweep->add_subcommand("fujita", "[A,1,B] to a 0-curve against the adjoint");
    fujita->add_option("--twig-det", max_det, "pool bound")->capture_default_str();
    fujita->callback([&] {
        action = [&] { return print_pair_sweep(ctx, "fujita", fujita_sweep(twig_pool(max_det), exec_of(ctx))); };
    });
    auto* fprime = sweep->add_subcommand("fujita-prime", "[m,A,1,B] to [m,1] against the formula");
    fprime->add_option("--twig-det", max_det, "pool bound")->capture_default_str();
    fprime->add_option("--m", ms, "values of m")->delimiter(',')->capture_default_str();
    fprime->callback([&] {
        action = [&] {
            for (auto m : ms)
                if (m < 1) throw Error("BadParams", "--m values must be positive, got " + std::to_string(m));
            return print_pair_sweep(ctx, "fujita-prime", fujita_prime_sweep(twig_pool(max_det), ms, exec_of(ctx)));
        };
    });
    auto* ind = sweep->add_subcommand("inductance", "inductance is injective and invertible");
    ind->add_option("--max-det", max_det, "determinant bound")->capture_default_str();
    ind->callback([&] { action = [&] { return sweep_inductance(ctx, max_det); }; });
    for (auto* s : {lemmas, fujita, fprime, ind}) s->add_flag("--parallel", ctx.parallel, "use all threads");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    try {
        return action ? action() : 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace plumbing
