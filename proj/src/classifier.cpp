#include "plumbing/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "plumbing/error.hpp"
#include "plumbing/rational.hpp"

namespace plumbing {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool all_weight(const WeightedDualGraph& h, std::int64_t w) {
    for (std::size_t v = 0; v < h.size(); ++v)
        if (h.weight(static_cast<int>(v)) != w) return false;
    return true;
}

// Arm twig read outward from `branch` through its neighbour `first`.
Twig arm_from(const WeightedDualGraph& h, int branch, int first) {
    Twig t;
    int prev = branch, cur = first;
    while (true) {
        t.push_back(-h.weight(cur));
        int next = -1;
        for (int w : h.neighbors(cur))
            if (w != prev) next = w;
        if (next < 0 || h.degree(cur) > 2) break;
        prev = cur;
        cur = next;
    }
    return t;
}

void classify_component(const WeightedDualGraph& h, SingularityComponent& c) {
    using T = SingularityType;
    if (!is_negative_definite(h)) {
        c.type = T::Unknown;
        c.label = "not negative definite";
        return;
    }
    if (auto t = as_linear_chain(h)) {
        c.twig = *t;
        if (all_weight(h, -2)) {
            c.type = T::DuVal;
            c.label = "A" + std::to_string(h.size());
        } else {
            c.type = T::CyclicChain;
            c.label = "chain " + format_twig(*t);
        }
        return;
    }
    std::vector<int> branches;
    for (std::size_t v = 0; v < h.size(); ++v)
        if (h.degree(static_cast<int>(v)) >= 3) branches.push_back(static_cast<int>(v));

    if (branches.size() == 1 && h.degree(branches[0]) == 3) {
        int b = branches[0];
        std::vector<Twig> arms;
        for (int w : h.neighbors(b)) arms.push_back(arm_from(h, b, w));
        if (all_weight(h, -2)) {
            std::vector<std::size_t> len;
            for (auto& a : arms) len.push_back(a.size());
            std::sort(len.begin(), len.end());
            c.type = T::DuVal;
            if (len[0] == 1 && len[1] == 1) c.label = "D" + std::to_string(len[2] + 3);
            else if (len[0] == 1 && len[1] == 2 && len[2] >= 2 && len[2] <= 4) c.label = "E" + std::to_string(len[2] + 4);
            else c.type = T::Unknown, c.label = "all (-2) but not ADE";
            return;
        }
        Rational s(0);
        for (auto& a : arms) s = s + Rational(BigInt(1), det(a));
        std::string dets;
        for (auto& a : arms) dets += (dets.empty() ? "" : ",") + det(a).str();
        if (s > Rational(1)) c.type = T::NonCyclicQuotient, c.label = "star arms det (" + dets + ")";
        else if (s == Rational(1)) c.type = T::LcNotQuotient, c.label = "star arms det (" + dets + ")";
        else c.type = T::Unknown, c.label = "star with sum of 1/det < 1";
        return;
    }
    auto minus_two_leaf = [&](int w) { return h.degree(w) == 1 && h.weight(w) == -2; };
    if (branches.size() == 1 && h.degree(branches[0]) == 4) {
        auto nb = h.neighbors(branches[0]);
        if (std::all_of(nb.begin(), nb.end(), minus_two_leaf)) {
            c.type = T::LcNotQuotient;
            c.label = "four (-2)-leaves on one center";
            return;
        }
    }
    if (branches.size() == 2 && h.degree(branches[0]) == 3 && h.degree(branches[1]) == 3) {
        bool ok = true;
        for (int b : branches) {
            auto nb = h.neighbors(b);
            if (std::count_if(nb.begin(), nb.end(), minus_two_leaf) != 2) ok = false;
        }
        if (ok) {
            c.type = T::LcNotQuotient;
            c.label = "two forks of (-2)-leaves";
            return;
        }
    }
    c.type = T::Unknown;
    c.label = "unrecognized shape";
}

int ade_rank(const std::string& label) {
    switch (label[0]) {
    case 'E': return 0;
    case 'D': return 1;
    default: return 2;
    }
}

const std::set<std::string>& low_degree_list() {
    static const std::set<std::string> s{"4:D5", "4:D4", "4:A2+2A1", "4:A2", "3:E6", "3:D4", "2:E7", "2:E6", "2:A6", "1:E8"};
    return s;
}

bool is_seed(const MncShape& s) {
    return s.kind == MncShape::Kind::ProjectivePlaneLine || (s.kind == MncShape::Kind::HirzebruchPair && s.m != 1);
}

} // namespace

std::string type_name(SingularityType t) {
    switch (t) {
    case SingularityType::CyclicChain: return "CyclicChain";
    case SingularityType::DuVal: return "DuVal";
    case SingularityType::NonCyclicQuotient: return "NonCyclicQuotient";
    case SingularityType::LcNotQuotient: return "LcNotQuotient";
    case SingularityType::Unknown: return "Unknown";
    }
    return "?";
}

bool SingularityReport::all_du_val() const {
    return !components.empty() && std::all_of(components.begin(), components.end(),
                                               [](const auto& c) { return c.type == SingularityType::DuVal; });
}

std::string SingularityReport::du_val_type() const {
    if (!all_du_val()) return "";
    std::vector<std::string> labels;
    for (auto& c : components) labels.push_back(c.label);
    return format_du_val_types(labels);
}

SingularityReport analyze_singularities(const WeightedDualGraph& g) {
    if (!is_forest(g)) throw Error("BoundaryModelViolated", "boundary graph has a cycle");
    SingularityReport r;
    std::vector<int> rest;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.weight(static_cast<int>(v)) == -1) ++r.boundary_curves;
        else rest.push_back(static_cast<int>(v));
    }
    auto comps = connected_components(g, rest);
    std::vector<int> comp_of(g.size(), -1);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
    UnionFind uf(comps.size());
    for (const auto& block : g.blocks()) {
        int first = -1;
        for (int v : block) {
            int c = comp_of[static_cast<std::size_t>(v)];
            if (c < 0) continue;
            if (first < 0) first = c;
            else uf.unite(static_cast<std::size_t>(first), static_cast<std::size_t>(c));
        }
    }
    std::map<std::size_t, std::size_t> class_size;
    for (std::size_t i = 0; i < comps.size(); ++i) ++class_size[uf.find(i)];
    for (std::size_t i = 0; i < comps.size(); ++i) {
        SingularityComponent c;
        auto sorted = comps[i];
        std::sort(sorted.begin(), sorted.end(), [&](int a, int b) { return g.id(a) < g.id(b); });
        for (int v : sorted) c.vertices.push_back(g.id(v));
        classify_component(g.induced(comps[i]), c);
        c.orbit_size = class_size[uf.find(i)];
        if (c.orbit_size == 1) ++r.count_base;
        r.components.push_back(std::move(c));
    }
    r.count_closure = r.components.size();
    return r;
}

std::int64_t du_val_degree(const WeightedDualGraph& g) {
    auto r = analyze_singularities(g);
    if (!r.all_du_val()) throw Error("NotDuVal", "singular points are not all Du Val");
    return 10 - static_cast<std::int64_t>(g.size());
}

std::string verdict_name(DuValVerdict v) {
    switch (v) {
    case DuValVerdict::Contains: return "Contains";
    case DuValVerdict::NotContains: return "NotContains";
    case DuValVerdict::NeedsSmoothRationalPoint: return "NeedsSmoothRationalPoint";
    }
    return "?";
}

std::vector<std::string> parse_du_val_types(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&]() {
        std::string tok;
        for (char ch : cur)
            if (!std::isspace(static_cast<unsigned char>(ch))) tok += ch;
        cur.clear();
        if (tok.empty()) throw Error("BadType", "empty singularity type in '" + text + "'");
        std::size_t i = 0;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
        std::int64_t count = i ? std::stoll(tok.substr(0, i)) : 1;
        if (i >= tok.size() || count < 1) throw Error("BadType", "bad singularity type '" + tok + "'");
        char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[i])));
        std::string idx = tok.substr(i + 1);
        if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
            idx.size() > 3)
            throw Error("BadType", "bad singularity type '" + tok + "'");
        int k = std::stoi(idx);
        bool ok = (kind == 'A' && k >= 1) || (kind == 'D' && k >= 4) || (kind == 'E' && k >= 6 && k <= 8);
        if (!ok) throw Error("BadType", "no Du Val type '" + tok + "'");
        for (std::int64_t j = 0; j < count; ++j) out.push_back(std::string(1, kind) + std::to_string(k));
    };
    for (char ch : text) {
        if (ch == ',' || ch == '+') flush();
        else cur += ch;
    }
    flush();
    return out;
}

std::string format_du_val_types(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
        if (ade_rank(a) != ade_rank(b)) return ade_rank(a) < ade_rank(b);
        return std::stoi(a.substr(1)) > std::stoi(b.substr(1));
    });
    std::string out;
    for (std::size_t i = 0; i < labels.size();) {
        std::size_t j = i;
        while (j < labels.size() && labels[j] == labels[i]) ++j;
        if (!out.empty()) out += "+";
        if (j - i > 1) out += std::to_string(j - i);
        out += labels[i];
        i = j;
    }
    return out;
}

DuValVerdict contains_affine_plane_duval(std::int64_t d, const std::vector<std::string>& types) {
    if (d < 1 || d > 8 || d == 7) throw Error("BadDegree", "degree " + std::to_string(d) + " is not in 1..6 or 8");
    if (types.empty()) throw Error("BadType", "no singularity type given");
    std::string key = format_du_val_types(types);
    auto impossible = [&]() {
        return Error("ImpossiblePair", "(" + std::to_string(d) + "," + key + ") does not occur for degree " + std::to_string(d));
    };
    if (d == 8) {
        if (key != "A1") throw impossible();
        return DuValVerdict::NeedsSmoothRationalPoint;
    }
    if (d == 6) {
        if (key != "A2+A1" && key != "A2" && key != "A1") throw impossible();
        return DuValVerdict::Contains;
    }
    if (d == 5) {
        if (key != "A4") throw impossible();
        return DuValVerdict::Contains;
    }
    return low_degree_list().count(std::to_string(d) + ":" + key) ? DuValVerdict::Contains : DuValVerdict::NotContains;
}

bool fibration_criterion(std::int64_t d, const std::vector<std::string>& types, bool has_smooth_rational_point) {
    auto v = contains_affine_plane_duval(d, types);
    if (v == DuValVerdict::NeedsSmoothRationalPoint) return has_smooth_rational_point;
    return v == DuValVerdict::Contains;
}

std::vector<DuValRow> du_val_table() {
    std::vector<DuValRow> rows{{8, "A1", DuValVerdict::NeedsSmoothRationalPoint},
                               {6, "A2+A1", DuValVerdict::Contains},
                               {6, "A2", DuValVerdict::Contains},
                               {6, "A1", DuValVerdict::Contains},
                               {5, "A4", DuValVerdict::Contains}};
    for (std::int64_t d = 4; d >= 1; --d)
        for (const char* t : {"D5", "D4", "A2+2A1", "A2", "E8", "E7", "E6", "A6"})
            if (low_degree_list().count(std::to_string(d) + ":" + t)) rows.push_back({d, t, DuValVerdict::Contains});
    return rows;
}

std::string kind_name(BoundaryVerdict::Kind k) {
    switch (k) {
    case BoundaryVerdict::Kind::ContainsA2: return "ContainsA2";
    case BoundaryVerdict::Kind::NotMatched: return "NotMatched";
    case BoundaryVerdict::Kind::Rejected: return "Rejected";
    }
    return "?";
}

BoundaryVerdict classify_boundary(const WeightedDualGraph& g, const Catalog& cat) {
    BoundaryVerdict v;
    if (!is_forest(g)) {
        v.kind = BoundaryVerdict::Kind::Rejected;
        v.reason = "no-cycle: the boundary graph has a cycle";
        return v;
    }
    v.evidence.push_back("forest: yes");
    if (minus_one_vertices(g).empty()) {
        v.kind = BoundaryVerdict::Kind::Rejected;
        v.reason = is_mnc(g) && morrow_audit(g).pass()
                       ? "no (-1)-vertices: the graph is already a minimal normal compactification boundary"
                       : "no (-1)-vertices: no boundary curves to identify";
        return v;
    }
    auto sing = analyze_singularities(g);
    {
        std::ostringstream s;
        s << "singular points: " << sing.count_closure << " over the closure, " << sing.count_base << " over the base;";
        for (auto& c : sing.components) s << " " << type_name(c.type) << "[" << c.label << "]";
        v.evidence.push_back(s.str());
        v.evidence.push_back(std::string("count over the base in {1,2}: ") + (sing.base_count_ok() ? "yes" : "no"));
        v.evidence.push_back("count over the closure in {1," + std::to_string(sing.boundary_curves + 1) +
                             "}: " + (sing.closure_count_ok() ? "yes" : "no"));
    }
    v.singularities = sing;

    auto m = cat.match(g);
    v.all_matches = m.all;
    if (!m.best) {
        v.kind = BoundaryVerdict::Kind::NotMatched;
        v.reason = "catalog: " + m.reason;
        return v;
    }
    v.match = m.best;
    const auto& fam = cat.family(m.best->id);
    const std::string params = fam.describe(m.best->params);
    v.evidence.push_back("catalog: family (" + std::to_string(m.best->id) + ")" + (params == "-" ? "" : " " + params));
    v.target = cat.mnc_target(m.best->id, m.best->params);
    NormalizeResult nr;
    try {
        nr = normalize(g);
    } catch (const Error& e) {
        v.kind = BoundaryVerdict::Kind::NotMatched;
        v.reason = std::string("normalize: ") + e.what();
        return v;
    }
    v.steps = nr.steps;
    v.reached = nr.shape;
    v.evidence.push_back("normalize: " + std::to_string(nr.steps.size()) + " rounds to " + nr.shape.str());
    auto morrow = morrow_audit(nr.graph);
    v.evidence.push_back(std::string("mnc audit: ") + (morrow.pass() ? "pass" : morrow.violations.front()));
    if (!(nr.shape == *v.target)) {
        v.kind = BoundaryVerdict::Kind::NotMatched;
        v.reason = "normalization reached " + nr.shape.str() + " but the family expects " + v.target->str();
        return v;
    }
    v.kind = BoundaryVerdict::Kind::ContainsA2;
    v.reason = "family (" + std::to_string(m.best->id) + ") reaching " + nr.shape.str();
    return v;
}

std::string status_name(AuditEntry::Status s) {
    switch (s) {
    case AuditEntry::Status::Pass: return "pass";
    case AuditEntry::Status::NotApplicable: return "n/a";
    case AuditEntry::Status::Fail: return "FAIL";
    }
    return "?";
}

bool AuditReport::pass() const { return count(AuditEntry::Status::Fail) == 0; }

std::size_t AuditReport::count(AuditEntry::Status s) const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.status == s; }));
}

AuditReport structural_lemma_audit(const WeightedDualGraph& g) {
    using S = AuditEntry::Status;
    AuditReport rep;
    auto add = [&](const std::string& name, S s, const std::string& detail) { rep.entries.push_back({name, s, detail}); };
    auto verdict = [&](const std::string& name, bool ok, const std::string& detail) {
        add(name, ok ? S::Pass : S::Fail, detail);
    };

    const bool forest = is_forest(g) && !g.empty();
    std::optional<NormalizeResult> norm;
    if (forest) {
        try {
            norm = normalize(g);
        } catch (const Error&) {
        }
    }
    // Affine-plane boundary witness: some blow-down sequence reaches a seed.
    bool a2 = false;
    std::string a2_note = "not a forest";
    if (forest) {
        if (norm && is_seed(norm->shape)) {
            a2 = true;
        } else {
            try {
                a2 = contracts_to_seed(g, 1u << 16).has_value();
                a2_note = "no blow-down sequence reaches a plane line or a Hirzebruch pair";
            } catch (const Error&) {
                a2_note = "affine-plane boundary test exceeded its budget";
            }
        }
    }
    bool neg = forest;
    for (std::size_t v = 0; v < g.size() && neg; ++v) neg = g.weight(static_cast<int>(v)) <= -1;
    auto gate_note = [&]() { return !a2 ? a2_note : std::string("some weight is >= 0"); };

    auto chain = as_linear_chain(g);
    Twig t = chain ? *chain : Twig{};
    const std::int64_t r = static_cast<std::int64_t>(t.size());
    std::vector<std::int64_t> ones;
    for (std::int64_t i = 0; i < r; ++i)
        if (t[static_cast<std::size_t>(i)] == 1) ones.push_back(i + 1);
    const bool palindrome = chain && std::equal(t.begin(), t.end(), t.rbegin());
    const bool chain_gate = chain && neg && a2;
    auto ones_are = [&](std::set<std::int64_t> want) { return std::set<std::int64_t>(ones.begin(), ones.end()) == want && ones.size() == want.size(); };

    // Linear chain boundaries with all weights <= -1.
    {
        const std::string name = "chain_interior_minus_one";
        if (!chain) add(name, S::NotApplicable, "not a linear chain");
        else if (!chain_gate) add(name, S::NotApplicable, gate_note());
        else {
            bool interior = std::any_of(ones.begin(), ones.end(), [&](auto e) { return e >= 2 && e <= r - 1; });
            bool three = r != 3 || (t[0] == 1 && t[1] == 1) || (t[1] == 1 && t[2] == 1);
            verdict(name, r >= 3 && interior && three, "twig " + format_twig(t));
        }
    }
    {
        const std::string name = "chain_adjacent_pair_length";
        bool hyp = chain_gate && ones.size() == 2 && ones[1] == ones[0] + 1;
        if (!hyp) add(name, S::NotApplicable, chain_gate ? "(-1)-entries are not exactly one adjacent pair" : "hypotheses unmet");
        else verdict(name, r == 3, "twig " + format_twig(t));
    }
    {
        const std::string name = "chain_symmetric_quadruple";
        bool hyp = false;
        if (chain_gate && r >= 4 && palindrome)
            for (std::int64_t e = 1; 2 * e < r && !hyp; ++e) hyp = ones_are({e, e + 1, r - e, r + 1 - e});
        if (!hyp) add(name, S::NotApplicable, "hypotheses unmet");
        else verdict(name, t == Twig{1, 1, 1, 1}, "twig " + format_twig(t));
    }
    {
        const std::string name = "chain_symmetric_pair";
        std::int64_t e = 0;
        const std::int64_t rp = (r + 1) / 2;
        if (chain_gate && r % 2 == 1 && palindrome)
            for (std::int64_t k = 1; k <= rp && !e; ++k)
                if (ones_are(k == rp ? std::set<std::int64_t>{k} : std::set<std::int64_t>{k, r + 1 - k})) e = k;
        if (!e) add(name, S::NotApplicable, "hypotheses unmet");
        else {
            bool ok = e != rp;
            if (ok && e == rp - 1) ok = t == concat({L(1, rp - 2), Twig{r - 2}, R(1, rp - 2)});
            verdict(name, ok, "twig " + format_twig(t) + ", e=" + std::to_string(e));
        }
    }
    {
        const std::string name = "boundary_twig_decomposition";
        std::optional<std::vector<BoundaryTwigDecomposition::Kind>> want;
        using K = BoundaryTwigDecomposition::Kind;
        if (chain_gate) {
            if (ones.size() == 1) want = std::vector<K>{K::Case1};
            else if (ones.size() == 2 && palindrome && ones[0] + ones[1] == r + 1 && ones[0] != ones[1])
                want = r % 2 == 0 ? std::vector<K>{K::Case2} : std::vector<K>{K::Case3a, K::Case3b};
        }
        if (!want) add(name, S::NotApplicable, "hypotheses unmet");
        else {
            try {
                auto d = decompose_boundary(t);
                bool ok = std::find(want->begin(), want->end(), d.kind) != want->end() && expand(d) == t;
                verdict(name, ok, "twig " + format_twig(t) + " as " + kind_name(d.kind));
            } catch (const Error& e) {
                verdict(name, false, "twig " + format_twig(t) + ": " + e.what());
            }
        }
    }

    // Trees with all weights <= -1, classified by their (-1)-vertices.
    auto bullets = minus_one_vertices(g);
    const bool tree_gate = neg && a2;
    {
        const std::string name = "two_adjacent_minus_one";
        bool hyp = tree_gate && bullets.size() == 2 && g.adjacent(bullets[0], bullets[1]);
        if (!hyp) add(name, S::NotApplicable, "hypotheses unmet");
        else {
            bool ok = false;
            if (chain) {
                Twig k = std::min(t, Twig(t.rbegin(), t.rend()));
                ok = k.size() == 3 && k[0] == 1 && k[1] == 1 && k[2] >= 2;
            }
            verdict(name, ok, chain ? "twig " + format_twig(t) : std::string("not a linear chain"));
        }
    }
    {
        const std::string name = "paired_four_minus_one";
        bool hyp = false;
        if (tree_gate && bullets.size() == 4) {
            std::vector<int> p = bullets;
            std::sort(p.begin(), p.end());
            do {
                if (g.adjacent(p[0], p[1]) && g.adjacent(p[2], p[3]) && g.orbit(p[0]) == g.orbit(p[3])) hyp = true;
            } while (!hyp && std::next_permutation(p.begin(), p.end()));
        }
        if (!hyp) add(name, S::NotApplicable, "hypotheses unmet");
        else verdict(name, chain && t == Twig{1, 1, 1, 1}, chain ? "twig " + format_twig(t) : std::string("not a linear chain"));
    }
    {
        const std::string name = "minus_one_star_degree";
        std::vector<int> centers;
        if (tree_gate && bullets.size() >= 2)
            for (int e0 : bullets) {
                bool ok = true;
                for (int a : bullets) {
                    if (a == e0) continue;
                    if (!g.adjacent(e0, a)) ok = false;
                    for (int b : bullets)
                        if (b != e0 && b != a && g.adjacent(a, b)) ok = false;
                }
                if (ok) centers.push_back(e0);
            }
        if (centers.empty()) add(name, S::NotApplicable, "hypotheses unmet");
        else {
            bool ok = true;
            std::string detail;
            for (int c : centers) {
                ok = ok && g.degree(c) <= 2;
                detail += (detail.empty() ? "" : ", ") + g.id(c) + " has degree " + std::to_string(g.degree(c));
            }
            verdict(name, ok, detail);
        }
    }
    {
        const std::string name = "exceptional_arms_linear";
        std::vector<int> rest;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (g.weight(static_cast<int>(v)) != -1) rest.push_back(static_cast<int>(v));
        bool hyp = tree_gate && bullets.size() >= 2;
        for (std::size_t i = 0; hyp && i < bullets.size(); ++i) {
            hyp = g.orbit(bullets[i]) == g.orbit(bullets[0]) && g.degree(bullets[i]) <= 2;
            for (std::size_t j = 0; hyp && j < bullets.size(); ++j) hyp = !g.adjacent(bullets[i], bullets[j]);
        }
        for (int v : rest) hyp = hyp && g.weight(v) <= -2;
        hyp = hyp && is_negative_definite(g.induced(rest));
        if (!hyp) add(name, S::NotApplicable, "hypotheses unmet");
        else {
            auto comps = connected_components(g, rest);
            const std::size_t n = bullets.size();
            std::string problem;
            std::vector<int> central;
            auto touches = [&](const std::vector<int>& comp, int b) {
                return std::any_of(comp.begin(), comp.end(), [&](int v) { return g.adjacent(v, b); });
            };
            std::size_t central_index = comps.size();
            for (std::size_t i = 0; i < comps.size(); ++i)
                if (std::all_of(bullets.begin(), bullets.end(), [&](int b) { return touches(comps[i], b); })) central_index = i;
            if (comps.size() != 1 && comps.size() != n + 1) problem = std::to_string(comps.size()) + " exceptional components";
            else if (central_index == comps.size()) problem = "no component meets every (-1)-vertex";
            if (problem.empty() && comps.size() == n + 1) {
                for (std::size_t i = 0; i < comps.size() && problem.empty(); ++i) {
                    if (i == central_index) continue;
                    auto h = g.induced(comps[i]);
                    if (!as_linear_chain(h)) {
                        problem = "non-central component is not a chain";
                        break;
                    }
                    for (int b : bullets)
                        for (int v : comps[i])
                            if (g.adjacent(v, b) && h.degree(*h.find(g.id(v))) > 1) problem = "(-1)-vertex " + g.id(b) + " meets an interior vertex";
                }
            }
            if (problem.empty()) {
                auto h = g.induced(comps[central_index]);
                for (int v : comps[central_index])
                    if (h.degree(*h.find(g.id(v))) >= 3)
                        for (int b : bullets)
                            if (g.adjacent(v, b)) problem = "branch vertex " + g.id(v) + " meets (-1)-vertex " + g.id(b);
            }
            verdict(name, problem.empty(), problem.empty() ? std::to_string(comps.size()) + " exceptional components" : problem);
        }
    }
    {
        const std::string name = "mnc_shape";
        if (!a2 || !norm) add(name, S::NotApplicable, !a2 ? a2_note : "normalization does not apply");
        else {
            auto m = morrow_audit(norm->graph);
            verdict(name, m.pass(), m.pass() ? norm->shape.str() : m.violations.front());
        }
    }
    return rep;
}

} // namespace plumbing
