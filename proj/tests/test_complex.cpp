#include "trop1/complex.hpp"
#include "trop1/enumerate.hpp"
#include "trop1/instance.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace trop1;

namespace {

RecessionType two_opposite_legs() {
    return RecessionType(1, {{1, {RatVec{1}, 1}}, {2, {RatVec{-1}, 1}}});
}

const ComplexCell* find_cell(const ConeComplex& cx, std::size_t dim, auto pred) {
    for (const auto& c : cx.cells) {
        if (c.cone().dim() == dim && pred(c)) return &c;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("canonical forms identify relabeled types") {
    const auto t = corpus_instance("fig5").type();
    const auto& g = t.graph();
    // Reverse the vertex order and reverse every edge.
    const std::size_t n = g.num_vertices();
    std::vector<CurveVertex> vs;
    for (std::size_t v = n; v-- > 0;) vs.push_back({"w" + std::to_string(v), g.vertices()[v].genus});
    std::vector<CurveEdge> es;
    std::vector<Contact> ec;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        es.push_back({g.edges()[e].id, n - 1 - g.edges()[e].head, n - 1 - g.edges()[e].tail});
        ec.push_back(Contact::from_vector(-t.edge_vector(e)));
    }
    std::vector<CurveLeg> ls;
    for (const auto& l : g.legs()) ls.push_back({l.id, n - 1 - l.base, l.marking});
    const CombinatorialType moved(CurveGraph(vs, es, ls), 1, ec, t.leg_contacts());
    CHECK(canonical_form(moved) == canonical_form(t));

    auto swapped = t.leg_contacts();
    std::swap(swapped[0], swapped[1]);
    CHECK(canonical_form(CombinatorialType(g, 1, t.edge_contacts(), swapped)) != canonical_form(t));
}

TEST_CASE("enumeration of small types") {
    CHECK(enumerate_types(two_opposite_legs(), 0).empty());
    // One vertex: genus 1 with both legs, or genus 0 with a contracted loop.
    const auto one = enumerate_types(two_opposite_legs(), 1);
    CHECK(one.size() == 2);
    for (const auto& t : one) {
        CHECK(is_stable(t));
        CHECK(genus(t.graph()) == 1);
        CHECK(recession_type(t) == two_opposite_legs());
    }
    std::set<std::string> forms;
    for (const auto& t : one) forms.insert(canonical_form(t));
    CHECK(forms.size() == one.size());
}

TEST_CASE("enumeration recovers the contracted-circuit type") {
    const auto t = corpus_instance("fig5").type();
    const auto types = enumerate_types(recession_type(t), 4);
    const auto target = canonical_form(t);
    CHECK(std::any_of(types.begin(), types.end(), [&](const CombinatorialType& s) { return canonical_form(s) == target; }));
    for (std::size_t i = 1; i < types.size(); ++i) CHECK(canonical_form(types[i - 1]) < canonical_form(types[i]));
}

TEST_CASE("face types contract one edge") {
    const auto t = corpus_instance("fig5").type();
    const auto faces = face_types(t);
    for (const auto& f : faces) {
        CHECK(f.graph().num_edges() + 1 == t.graph().num_edges());
        CHECK(recession_type(f) == recession_type(t));
        CHECK(is_stable(f));
    }
    // Contracting a1 or a2 gives a loop; up or down merge a vertex into the circuit.
    CHECK(faces.size() == 3);
}

TEST_CASE("a single type gives a single cell") {
    const auto single = two_opposite_legs().as_type(1);
    const auto cx = complex_of(single);
    REQUIRE(cx.cells.size() == 1);
    CHECK(cx.arrows.empty());
    CHECK(cx.stats.pure);
    const auto dot = to_dot(cx);
    CHECK_THAT(dot, Catch::Matchers::StartsWith("digraph complex {"));
    CHECK(std::count(dot.begin(), dot.end(), '[') == 1);
}

TEST_CASE("complex of the contracted circuit") {
    const auto t = corpus_instance("fig5").type();
    const auto cx = complex_of(t);
    CHECK(cx.stats.pure);
    CHECK(cx.stats.max_dim == 5);
    const auto& g = t.graph();
    const auto T = g.vertex_index("T"), D = g.vertex_index("D");
    const auto full = canonical_form(t);
    std::vector<const ComplexCell*> top;
    for (const auto& c : cx.cells) {
        if (canonical_form(c.type.type) == full) top.push_back(&c);
    }
    // Three alignments of the same type: T below D, D below T, and the wall.
    REQUIRE(top.size() == 3);
    CHECK(cx.stats.maximal_cells.size() == 2);
    const ComplexCell* wall = nullptr;
    for (const auto* c : top) {
        if (c->type.alignment.rank(T) == c->type.alignment.rank(D)) wall = c;
    }
    REQUIRE(wall != nullptr);
    CHECK(wall->cone().dim() == 4);
    const auto wall_index = static_cast<std::size_t>(wall - cx.cells.data());
    for (auto m : cx.stats.maximal_cells) {
        const auto faces = cx.faces_of(m);
        CHECK(std::find(faces.begin(), faces.end(), wall_index) != faces.end());
    }
}

TEST_CASE("face relation is transitive and every face has smaller dimension") {
    for (const char* name : {"fig3", "fig5"}) {
        const auto cx = complex_of(corpus_instance(name).type());
        std::set<std::pair<std::size_t, std::size_t>> arrows;
        for (const auto& a : cx.arrows) {
            arrows.emplace(a.face, a.cell);
            CHECK(cx.cells[a.face].cone().dim() < cx.cells[a.cell].cone().dim());
        }
        for (const auto& [a, b] : arrows) {
            for (auto c : cx.faces_of(a)) CHECK(arrows.count({c, b}));
        }
    }
}

TEST_CASE("well-spaced subcomplexes") {
    const auto fig5 = corpus_instance("fig5").type();
    const auto& g = fig5.graph();
    const auto T = g.vertex_index("T"), D = g.vertex_index("D");
    const auto ws5 = well_spaced_subcomplex(complex_of(fig5));
    CHECK(ws5.stats.pure);
    REQUIRE(ws5.stats.maximal_cells.size() == 1);
    const auto& top = ws5.cells[ws5.stats.maximal_cells[0]];
    CHECK(top.cone().dim() == 5);
    CHECK(top.type.alignment.rank(T) < top.type.alignment.rank(D));
    for (const auto& c : ws5.cells) CHECK(c.well_spaced);

    const auto fig4 = corpus_instance("fig4").type();
    const auto cx4 = complex_of(fig4);
    const auto ws4 = well_spaced_subcomplex(cx4);
    REQUIRE(ws4.stats.maximal_cells.size() == 1);
    const auto& wall = ws4.cells[ws4.stats.maximal_cells[0]];
    CHECK(wall.cone().dim() + 1 == cx4.stats.max_dim);
    const auto& h = fig4.graph();
    CHECK(wall.type.alignment.rank(h.vertex_index("P")) == wall.type.alignment.rank(h.vertex_index("Q")));
    CHECK(find_cell(ws4, cx4.stats.max_dim, [](const ComplexCell&) { return true; }) == nullptr);
}

TEST_CASE("mixed recession types are rejected") {
    auto a = radial_types(corpus_instance("fig5").type());
    const auto b = radial_types(two_opposite_legs().as_type(1));
    a.insert(a.end(), b.begin(), b.end());
    CHECK_THROWS_WITH(assemble_complex(a), Catch::Matchers::ContainsSubstring("mixed recession types"));
}

TEST_CASE("complex output is deterministic") {
    const auto t = corpus_instance("fig3").type();
    const auto a = complex_of(t), b = complex_of(t);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(to_dot(a) == to_dot(b));
    const auto doc = to_json(a);
    CHECK(doc["stats"]["cells"] == a.cells.size());
    CHECK(doc["cells"].size() == a.cells.size());
    CHECK(doc["arrows"].size() == a.arrows.size());
}
