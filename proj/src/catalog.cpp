#include "plumbing/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "plumbing/canonical.hpp"
#include "plumbing/error.hpp"

namespace plumbing {

namespace {

std::vector<std::int64_t> sorted_weights(const WeightedDualGraph& g) {
    std::vector<std::int64_t> w;
    for (std::size_t v = 0; v < g.size(); ++v) w.push_back(g.weight(static_cast<int>(v)));
    std::sort(w.begin(), w.end());
    return w;
}

std::int64_t min_weight(const WeightedDualGraph& g) {
    std::int64_t lo = 0;
    for (std::size_t v = 0; v < g.size(); ++v) lo = std::min(lo, g.weight(static_cast<int>(v)));
    return lo;
}

// Every simple path through vertices of weight <= -2, read in both directions.
std::set<Twig> path_twigs(const WeightedDualGraph& g) {
    std::set<Twig> out;
    std::vector<char> on(g.size(), 0);
    Twig cur;
    std::function<void(int, int)> walk = [&](int v, int parent) {
        cur.push_back(-g.weight(v));
        out.insert(cur);
        for (int w : g.neighbors(v))
            if (w != parent && g.weight(w) <= -2) walk(w, v);
        cur.pop_back();
    };
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.weight(static_cast<int>(v)) <= -2) walk(static_cast<int>(v), -1);
    return out;
}

std::int64_t& slot(FamilyParams& p, const std::string& name) {
    if (name == "t") return p.t;
    if (name == "tp") return p.tp;
    if (name == "m") return p.m;
    return p.n;
}

std::vector<std::string> scalar_params(const FamilyTemplate& f) {
    std::vector<std::string> out;
    for (const char* p : {"t", "tp", "n", "np", "m"})
        if (f.uses(p)) out.emplace_back(p);
    return out;
}

bool bullets_in_one_block(const WeightedDualGraph& g) {
    auto bullets = minus_one_vertices(g);
    for (int v : bullets)
        if (g.orbit(v) != g.orbit(bullets.front())) return false;
    return true;
}

} // namespace

Catalog::Catalog(std::vector<FamilyTemplate> families) : families_(std::move(families)) {
    std::sort(families_.begin(), families_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
}

const Catalog& Catalog::builtin() {
    static const Catalog cat(parse_templates(builtin_templates()));
    return cat;
}

Catalog Catalog::from_text(std::string_view text) { return Catalog(parse_templates(text)); }

Catalog Catalog::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return from_text(ss.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.message());
    }
}

bool Catalog::has(int id) const {
    return std::any_of(families_.begin(), families_.end(), [&](const auto& f) { return f.id == id; });
}

const FamilyTemplate& Catalog::family(int id) const {
    for (const auto& f : families_)
        if (f.id == id) return f;
    throw Error("UnknownFamily", "no family (" + std::to_string(id) + ")");
}

FamilyInstance Catalog::instantiate(int id, const FamilyParams& p, bool strict) const {
    const auto& f = family(id);
    f.validate(p, strict);
    FamilyParams q = f.normalized(p);
    WeightedDualGraph g = f.build(q);
    assign_canonical_orbits(g);
    return {id, q, std::move(g)};
}

MncShape Catalog::mnc_target(int id, const FamilyParams& p) const {
    const auto& f = family(id);
    if (f.target_kind == "P2") return MncShape::plane_line();
    return MncShape::hirzebruch(f.target_m.eval(f.environment(p)));
}

std::vector<FamilyInstance> Catalog::enumerate(int id, const Bounds& b) const {
    const auto& f = family(id);
    std::vector<FamilyInstance> out;
    std::vector<std::optional<Twig>> as;
    if (f.uses("A")) as.assign(b.pool.begin(), b.pool.end());
    else as.push_back(std::nullopt);
    auto range = [&](const char* name, std::int64_t hi) {
        std::vector<std::int64_t> r;
        if (!f.uses(name)) return std::vector<std::int64_t>{0};
        for (std::int64_t v = f.minimum(name, b.strict); v <= hi; ++v) r.push_back(v);
        return r;
    };
    std::string nname = f.uses("np") ? "np" : "n";
    std::int64_t nmin = f.minimum(nname, b.strict);
    std::vector<std::int64_t> ns{0};
    if (f.uses(nname)) {
        ns.clear();
        for (std::int64_t v = nmin; v <= nmin + b.n_extra; ++v) ns.push_back(v);
    }
    for (auto t : range("t", b.max_t))
        for (auto tp : range("tp", b.max_tp))
            for (auto n : ns)
                for (auto m : range("m", b.max_m))
                    for (const auto& a : as) {
                        FamilyParams p{t, tp, n, m, a};
                        try {
                            out.push_back(instantiate(id, p, b.strict));
                        } catch (const Error& e) {
                            if (e.code() != "BadParams") throw;
                        }
                    }
    return out;
}

MatchResult Catalog::match(const WeightedDualGraph& g) const {
    MatchResult res;
    if (g.empty()) {
        res.reason = "empty graph";
        return res;
    }
    if (!is_forest(g)) {
        res.reason = "graph has a cycle";
        return res;
    }
    auto audit = orbit_audit(g);
    if (!audit.pass()) {
        res.reason = "orbit partition fails the audit: " + (audit.problems.empty() ? std::string("?") : audit.problems.front());
        return res;
    }
    if (minus_one_vertices(g).empty()) {
        res.reason = "no (-1)-vertices";
        return res;
    }
    if (!bullets_in_one_block(g)) {
        res.reason = "(-1)-vertices are not one orbit block";
        return res;
    }

    const std::size_t size = g.size();
    const auto weights = sorted_weights(g);
    const std::int64_t lo = min_weight(g);
    const std::string code = forest_code(g, weight_colors(g));
    const auto twigs = path_twigs(g);
    const std::int64_t guard = static_cast<std::int64_t>(size) - lo + 4;

    for (const auto& f : families_) {
        auto scalars = scalar_params(f);
        std::vector<std::optional<Twig>> as;
        if (f.uses("A")) as.assign(twigs.begin(), twigs.end());
        else as.push_back(std::nullopt);

        auto too_big = [&](const FamilyParams& p) {
            try {
                auto h = f.build(p);
                return h.size() > size || min_weight(h) < lo;
            } catch (const Error&) {
                return true;
            }
        };
        // Vertex count and the most negative weight never decrease as a
        // parameter grows, so each loop stops at the first oversized instance.
        std::function<void(std::size_t, FamilyParams&)> search = [&](std::size_t k, FamilyParams& p) {
            if (k == scalars.size()) {
                try {
                    f.validate(p, false);
                } catch (const Error&) {
                    return;
                }
                auto h = f.build(p);
                if (h.size() == size && sorted_weights(h) == weights && forest_code(h, weight_colors(h)) == code)
                    res.all.push_back({f.id, f.normalized(p)});
                return;
            }
            for (std::int64_t v = f.minimum(scalars[k], false); v <= guard; ++v) {
                slot(p, scalars[k]) = v;
                for (std::size_t j = k + 1; j < scalars.size(); ++j) slot(p, scalars[j]) = f.minimum(scalars[j], false);
                if (too_big(p)) break;
                search(k + 1, p);
            }
        };
        for (const auto& a : as) {
            if (a && !admissible(*a)) continue;
            FamilyParams p;
            p.a = a;
            for (auto& s : scalars) slot(p, s) = f.minimum(s, false);
            search(0, p);
        }
    }
    if (res.all.empty()) res.reason = "no family instance is isomorphic to the graph";
    else res.best = res.all.front();
    return res;
}

InstanceCheck check_instance(const Catalog& cat, const FamilyInstance& inst) {
    InstanceCheck out{inst, {}, {}};
    const auto& g = inst.graph;
    auto fail = [&](const std::string& why) {
        out.failure = why;
        return out;
    };
    if (!is_forest(g)) return fail("not a forest");
    auto audit = orbit_audit(g);
    if (!audit.pass()) return fail("orbit audit: " + (audit.problems.empty() ? std::string("?") : audit.problems.front()));
    if (!bullets_in_one_block(g)) return fail("(-1)-vertices split over several blocks");
    std::vector<int> exc;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.weight(static_cast<int>(v)) != -1) exc.push_back(static_cast<int>(v));
    if (!is_negative_definite(g.induced(exc))) return fail("exceptional part not negative definite");
    NormalizeResult res;
    try {
        res = normalize(g);
    } catch (const Error& e) {
        return fail(std::string("normalize: ") + e.what());
    }
    out.reached = res.shape;
    auto target = cat.mnc_target(inst.id, inst.params);
    if (!(res.shape == target)) return fail("reached " + res.shape.str() + ", expected " + target.str());
    auto morrow = morrow_audit(res.graph);
    if (!morrow.pass()) return fail("mnc audit: " + morrow.violations.front());
    return out;
}

std::vector<FamilyVerdict> verify(const Catalog& cat, const Bounds& b, Exec exec) {
    std::vector<FamilyInstance> jobs;
    for (const auto& f : cat.families())
        for (auto& inst : cat.enumerate(f.id, b)) jobs.push_back(std::move(inst));
    std::vector<std::string> failures(jobs.size());
    const long n = static_cast<long>(jobs.size());
    if (exec == Exec::Serial) {
        for (long i = 0; i < n; ++i) failures[static_cast<std::size_t>(i)] = check_instance(cat, jobs[static_cast<std::size_t>(i)]).failure;
    } else {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) failures[static_cast<std::size_t>(i)] = check_instance(cat, jobs[static_cast<std::size_t>(i)]).failure;
    }
    std::vector<FamilyVerdict> out;
    for (const auto& f : cat.families()) {
        FamilyVerdict v;
        v.id = f.id;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].id != f.id) continue;
            ++v.instances;
            if (!failures[i].empty()) {
                if (v.failed++ == 0) v.first_failure = f.describe(jobs[i].params) + ": " + failures[i];
            }
        }
        if (v.instances == 0) v.first_failure = "no instances within bounds";
        out.push_back(v);
    }
    return out;
}

std::vector<Twig> read_twig_pool(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open twig pool '" + path + "'");
    std::vector<Twig> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Twig t;
        try {
            t = parse_twig(line);
        } catch (const Error& e) {
            throw Error(e.code(), path + ":" + std::to_string(lineno) + ": " + e.message());
        }
        if (t.empty() || !admissible(t))
            throw Error("NotAdmissible", path + ":" + std::to_string(lineno) + ": twig " + format_twig(t) + " is not admissible");
        out.push_back(t);
    }
    return out;
}

std::vector<Twig> twig_pool(std::int64_t max_det) {
    if (const char* env = std::getenv("PLUMBING_TWIG_POOL"); env && *env) return read_twig_pool(env);
    return admissible_twigs(max_det);
}

std::string Situation::str() const {
    std::string s;
    switch (kind) {
    case Kind::S1: s = "S1(n2=" + std::to_string(n2) + ")"; break;
    case Kind::S2: s = "S2"; break;
    case Kind::S3: s = "S3(n1=" + std::to_string(n1) + ",n2=" + std::to_string(n2) + ")"; break;
    case Kind::S4: s = "S4(n1=" + std::to_string(n1) + ")"; break;
    }
    if (!also.empty()) s += " also " + also;
    return s;
}

Situation field_condition(int id, const FamilyParams& p) {
    const auto& f = Catalog::builtin().family(id);
    FamilyParams q = p;
    if (f.uses("A") && !q.a) q.a = Twig{2};
    f.validate(q, false);
    using K = Situation::Kind;
    auto s1 = [](std::int64_t n2) { return Situation{K::S1, 0, n2, {}}; };
    auto s3 = [](std::int64_t n1, std::int64_t n2) { return Situation{K::S3, n1, n2, {}}; };
    auto s4 = [](std::int64_t n1) { return Situation{K::S4, n1, 0, {}}; };
    switch (id) {
    case 1: case 2: case 3: return s4(p.n);
    case 4: return s1(p.n);
    case 5: return p.n >= 2 ? s1(p.n) : Situation{K::S2, 0, 0, {}};
    case 6: case 7: return p.n >= 2 ? s3(2, p.n) : s4(2);
    case 8: case 32: return Situation{K::S2, 0, 0, {}};
    case 20: case 45: return s3(2, 2);
    case 37: return s3(2, 3);
    case 48: return s3(3, 2);
    case 35: {
        Situation s = s1(2);
        s.also = s3(2, 2).str();
        return s;
    }
    case 36: return s4(5);
    case 14: case 30: case 31: return s4(4);
    case 13: case 26: case 27: case 28: case 29: case 49: case 50: case 51: case 52: return s4(3);
    default: return s4(2);
    }
}

} // namespace plumbing
