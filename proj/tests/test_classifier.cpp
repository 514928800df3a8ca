#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "plumbing/classifier.hpp"
#include "plumbing/sweeps.hpp"

using namespace plumbing;

namespace {

WeightedDualGraph family(int id, FamilyParams p = {}) { return Catalog::builtin().instantiate(id, p).graph; }

FamilyParams params(std::int64_t t, std::int64_t n, std::int64_t m = 0, std::optional<Twig> a = std::nullopt) {
    FamilyParams p;
    p.t = t;
    p.n = n;
    p.m = m;
    p.a = a;
    return p;
}

// Center -3 joined to four (-2)-curves, each carrying two (-1)-leaves; one
// orbit for the eight leaves and one for the four (-2)-curves.
WeightedDualGraph lc_counterexample() {
    WeightedDualGraph g;
    int c = g.add_vertex("c", -3);
    for (int i = 0; i < 4; ++i) {
        int a = g.add_vertex("a" + std::to_string(i), -2, "arm");
        g.add_edge(c, a);
        for (int j = 0; j < 2; ++j) {
            int b = g.add_vertex("b" + std::to_string(i) + std::to_string(j), -1, "leaf");
            g.add_edge(a, b);
        }
    }
    return g;
}

} // namespace

TEST_CASE("singular points of single families") {
    auto r24 = analyze_singularities(family(24));
    REQUIRE(r24.components.size() == 1);
    CHECK(r24.components[0].type == SingularityType::DuVal);
    CHECK(r24.du_val_type() == "E6");
    CHECK(r24.count_closure == 1);

    auto r1 = analyze_singularities(family(1, params(0, 3)));
    REQUIRE(r1.components.size() == 1);
    CHECK(r1.du_val_type() == "A1");

    // The center -(t+1)n and the [m]-curve are adjacent, so they form one point.
    auto r2 = analyze_singularities(family(2, params(0, 2, 2)));
    CHECK(r2.components.size() == 1);
    CHECK(r2.du_val_type() == "A2");

    auto r21 = analyze_singularities(family(21));
    CHECK(r21.count_closure == 3);
    CHECK(r21.count_base == 1);
    CHECK(r21.base_count_ok());

    auto chain = analyze_singularities(path_graph({3, 1, 2, 5}));
    REQUIRE(chain.components.size() == 2);
    CHECK(chain.components[0].type == SingularityType::CyclicChain);
    CHECK(chain.components[1].type == SingularityType::CyclicChain);

    auto cycle = parse_graph("vertex a -1\nvertex b -2\nvertex c -2\nedge a b\nedge b c\nedge c a\n");
    CHECK_ERROR_CODE(analyze_singularities(cycle), "BoundaryModelViolated");
}

TEST_CASE("ADE shapes") {
    auto star = [](std::vector<std::size_t> arms, std::int64_t center = -2) {
        WeightedDualGraph g;
        g.add_vertex("x", -1);
        int c = g.add_vertex("c", center);
        g.add_edge(0, c);
        int k = 0;
        for (auto len : arms) {
            int prev = c;
            for (std::size_t i = 0; i < len; ++i) {
                int v = g.add_vertex("a" + std::to_string(k++), -2);
                g.add_edge(prev, v);
                prev = v;
            }
        }
        return g;
    };
    auto label = [](const WeightedDualGraph& g) {
        auto r = analyze_singularities(g);
        REQUIRE(r.components.size() == 1);
        return r.components[0].label;
    };
    CHECK(label(star({1, 1, 1})) == "D4");
    CHECK(label(star({1, 1, 4})) == "D7");
    CHECK(label(star({1, 2, 2})) == "E6");
    CHECK(label(star({1, 2, 3})) == "E7");
    CHECK(label(star({1, 2, 4})) == "E8");
    // Affine E8 is not negative definite, so it gets no known type.
    auto affine = analyze_singularities(star({1, 2, 5}));
    CHECK(affine.components[0].type == SingularityType::Unknown);
    // Four (-2)-leaves on a (-2)-center is affine D4.
    auto d4 = analyze_singularities(star({1, 1, 1, 1}));
    CHECK(d4.components[0].type == SingularityType::Unknown);
    auto lc = analyze_singularities(star({1, 1, 1, 1}, -3));
    CHECK(lc.components[0].type == SingularityType::LcNotQuotient);
    auto quotient = analyze_singularities(star({1, 1, 3}, -3));
    CHECK(quotient.components[0].type == SingularityType::NonCyclicQuotient);
    auto borderline = analyze_singularities(star({2, 2, 2}));
    CHECK(borderline.components[0].type == SingularityType::Unknown);
}

TEST_CASE("no component that fails negative definiteness gets a known type") {
    for (std::size_t i = 0; i < 300; ++i) {
        auto g = generate_boundary(41, i).graph;
        auto r = analyze_singularities(g);
        for (const auto& c : r.components) {
            std::vector<int> vs;
            for (const auto& id : c.vertices) vs.push_back(*g.find(id));
            if (!oracle::negative_definite(g.induced(vs))) CHECK(c.type == SingularityType::Unknown);
        }
    }
}

TEST_CASE("degree of Du Val surfaces") {
    CHECK(du_val_degree(family(24)) == 2);
    CHECK(du_val_degree(family(18, params(0, 0, 2))) == 4);
    FamilyParams p8;
    p8.a = Twig{2};
    CHECK(du_val_degree(family(8, p8)) == 4);
    CHECK_ERROR_CODE(du_val_degree(family(21)), "NotDuVal");
}

TEST_CASE("which Du Val surfaces contain the affine plane") {
    auto types = [](const std::string& s) { return parse_du_val_types(s); };
    CHECK(contains_affine_plane_duval(3, types("E6")) == DuValVerdict::Contains);
    CHECK(contains_affine_plane_duval(1, types("E8")) == DuValVerdict::Contains);
    CHECK(contains_affine_plane_duval(1, types("E7")) == DuValVerdict::NotContains);
    CHECK(contains_affine_plane_duval(6, types("A2")) == DuValVerdict::Contains);
    CHECK(contains_affine_plane_duval(8, types("A1")) == DuValVerdict::NeedsSmoothRationalPoint);
    CHECK(contains_affine_plane_duval(4, types("A1,A1,A2")) == DuValVerdict::Contains);
    CHECK(contains_affine_plane_duval(4, types("A1")) == DuValVerdict::NotContains);
    CHECK_ERROR_CODE(contains_affine_plane_duval(7, types("A1")), "BadDegree");
    CHECK_ERROR_CODE(contains_affine_plane_duval(0, types("A1")), "BadDegree");
    CHECK_ERROR_CODE(contains_affine_plane_duval(9, types("A1")), "BadDegree");
    CHECK_ERROR_CODE(contains_affine_plane_duval(5, types("A1")), "ImpossiblePair");
    CHECK_ERROR_CODE(contains_affine_plane_duval(6, types("D4")), "ImpossiblePair");
    CHECK_ERROR_CODE(contains_affine_plane_duval(8, types("A2")), "ImpossiblePair");
    CHECK_ERROR_CODE(contains_affine_plane_duval(4, {}), "BadType");

    CHECK(fibration_criterion(2, types("E6"), false));
    CHECK_FALSE(fibration_criterion(8, types("A1"), false));
    CHECK(fibration_criterion(8, types("A1"), true));
    CHECK_FALSE(fibration_criterion(4, types("A1"), true));

    // Every degree <= 4 pair outside the list is a NotContains.
    const std::set<std::string> listed{"4:D5", "4:D4", "4:A2+2A1", "4:A2", "3:E6", "3:D4", "2:E7", "2:E6", "2:A6", "1:E8"};
    for (std::int64_t d = 1; d <= 4; ++d)
        for (const char* t : {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D8", "E6", "E7", "E8",
                              "A2+2A1", "2A1", "A3+A1", "2A4", "E6+A2"}) {
            auto v = contains_affine_plane_duval(d, types(t));
            CHECK((v == DuValVerdict::Contains) == (listed.count(std::to_string(d) + ":" + t) == 1));
        }

    auto table = du_val_table();
    CHECK(table.size() == 15);
    for (const auto& row : table) CHECK(contains_affine_plane_duval(row.degree, types(row.type)) == row.verdict);
}

TEST_CASE("Du Val type text") {
    CHECK(format_du_val_types(parse_du_val_types("A1+A2+A1")) == "A2+2A1");
    CHECK(format_du_val_types(parse_du_val_types("a1, e6")) == "E6+A1");
    CHECK(format_du_val_types(parse_du_val_types("D4+E7+A10")) == "E7+D4+A10");
    CHECK(parse_du_val_types("3A1").size() == 3);
    CHECK_ERROR_CODE(parse_du_val_types("E9"), "BadType");
    CHECK_ERROR_CODE(parse_du_val_types("D3"), "BadType");
    CHECK_ERROR_CODE(parse_du_val_types("A1++A2"), "BadType");
    CHECK_ERROR_CODE(parse_du_val_types("Q2"), "BadType");
    try {
        parse_du_val_types("A2+X7");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("X7") != std::string::npos);
    }
}

TEST_CASE("pinned Du Val families land on the listed (degree, type) pairs") {
    struct Pin {
        int id;
        FamilyParams p;
        std::int64_t degree;
        const char* type;
    };
    FamilyParams p4;
    p4.n = 2;
    std::vector<Pin> pins{{1, params(0, 3), 6, "A1"},        {2, params(0, 2, 2), 6, "A2"},
                          {4, p4, 4, "A2"},                  {5, params(0, 1, 0, Twig{2}), 2, "A6"},
                          {8, params(0, 0, 0, Twig{2}), 4, "A2+2A1"}, {18, params(0, 0, 2), 4, "D4"},
                          {24, {}, 2, "E6"},                 {26, {}, 3, "D4"}};
    for (const auto& pin : pins) {
        auto g = family(pin.id, pin.p);
        auto r = analyze_singularities(g);
        CHECK_MESSAGE(r.du_val_type() == pin.type, pin.id);
        CHECK_MESSAGE(du_val_degree(g) == pin.degree, pin.id);
        CHECK(contains_affine_plane_duval(pin.degree, parse_du_val_types(r.du_val_type())) == DuValVerdict::Contains);
        CHECK(classify_boundary(g).kind == BoundaryVerdict::Kind::ContainsA2);
    }
}

TEST_CASE("classify boundaries") {
    auto v21 = classify_boundary(family(21));
    CHECK(v21.kind == BoundaryVerdict::Kind::ContainsA2);
    REQUIRE(v21.match.has_value());
    CHECK(v21.match->id == 21);
    CHECK(v21.reached == MncShape::hirzebruch(2));
    CHECK(v21.steps.size() == 3);
    CHECK_FALSE(v21.evidence.empty());

    auto cycle = parse_graph("vertex a -1\nvertex b -2\nvertex c -2\nedge a b\nedge b c\nedge c a\n");
    auto vc = classify_boundary(cycle);
    CHECK(vc.kind == BoundaryVerdict::Kind::Rejected);
    CHECK(vc.reason.rfind("no-cycle", 0) == 0);

    auto vm = classify_boundary(path_graph({2, 3, 2}));
    CHECK(vm.kind == BoundaryVerdict::Kind::Rejected);
    WeightedDualGraph line;
    line.add_vertex("a", 1);
    CHECK(classify_boundary(line).kind == BoundaryVerdict::Kind::Rejected);

    CHECK(classify_boundary(path_graph({2, 1, 2})).kind == BoundaryVerdict::Kind::NotMatched);
}

TEST_CASE("a boundary with the singularity type of family (30) that is not in the catalog") {
    auto g = lc_counterexample();
    CHECK(orbit_audit(g).pass());
    auto v = classify_boundary(g);
    CHECK(v.kind == BoundaryVerdict::Kind::NotMatched);

    auto mine = analyze_singularities(g);
    auto theirs = analyze_singularities(family(30));
    REQUIRE(mine.components.size() == 1);
    REQUIRE(theirs.components.size() == 1);
    CHECK(mine.components[0].type == SingularityType::LcNotQuotient);
    CHECK(theirs.components[0].type == SingularityType::LcNotQuotient);
    CHECK(mine.components[0].label == theirs.components[0].label);
    CHECK(classify_boundary(family(30)).kind == BoundaryVerdict::Kind::ContainsA2);
}

TEST_CASE("every grid instance is recognized") {
    const auto& cat = Catalog::builtin();
    Bounds b;
    b.max_t = b.max_tp = 1;
    b.max_m = 3;
    b.pool = admissible_twigs(5);
    for (const auto& f : cat.families())
        for (const auto& inst : cat.enumerate(f.id, b)) {
            auto v = classify_boundary(inst.graph, cat);
            CHECK_MESSAGE(v.kind == BoundaryVerdict::Kind::ContainsA2, f.id << " " << v.reason);
            REQUIRE(v.singularities.has_value());
            const auto n = minus_one_vertices(inst.graph).size();
            const auto k = v.singularities->count_closure;
            CHECK_MESSAGE((k == 1 || k == n + 1), f.id);
            CHECK_MESSAGE(v.singularities->base_count_ok(), f.id);
            auto audit = structural_lemma_audit(inst.graph);
            CHECK_MESSAGE(audit.pass(), f.id);
        }
}

TEST_CASE("structural audit") {
    auto a9 = structural_lemma_audit(family(9));
    bool symmetric = false;
    for (const auto& e : a9.entries)
        if (e.check == "chain_symmetric_pair") symmetric = e.status == AuditEntry::Status::Pass;
    CHECK(symmetric);
    CHECK(a9.pass());

    auto plain = structural_lemma_audit(path_graph({1, 2, 1}));
    CHECK(plain.count(AuditEntry::Status::NotApplicable) == plain.entries.size());

    auto four = structural_lemma_audit(path_graph({1, 1, 1, 1}));
    CHECK(four.pass());
    CHECK(four.count(AuditEntry::Status::Pass) >= 2);

    auto pair = structural_lemma_audit(path_graph({1, 1, 4}));
    for (const auto& e : pair.entries)
        if (e.check == "two_adjacent_minus_one" || e.check == "chain_adjacent_pair_length")
            CHECK(e.status == AuditEntry::Status::Pass);
}

TEST_CASE("audit of generated boundaries") {
    auto r = lemma_sweep(99, 300);
    CHECK(r.graphs == 300);
    CHECK(r.failed == 0);
    CHECK(r.checks.size() == 10);
    for (const auto& f : r.failures) MESSAGE(f);
}
