#include "trop1/instance.hpp"
#include "trop1/moduli.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace trop1;

namespace {

// Four vertices: a tail edge into a triangle whose two arcs e1, e2 meet the tail vertex.
CombinatorialType four_vertex_curve() {
    CurveGraph g({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}},
                 {{"tail", 0, 1}, {"e1", 1, 2}, {"mid", 2, 3}, {"e2", 3, 1}}, {});
    return CombinatorialType(g, 0, std::vector<Contact>(4, Contact::contracted(0)), {});
}

RatVec length_difference(const ModuliCone& mc, std::size_t e, std::size_t f) {
    RatVec form(mc.cone.num_vars());
    form[mc.length_var(e)] = 1;
    form[mc.length_var(f)] = -1;
    return form;
}

// Points of the closed cone: positive combinations of interior points of the cells.
std::vector<RatVec> sample_points(const std::vector<RadialCell>& cells, std::mt19937_64& rng, int count) {
    std::vector<RatVec> generators;
    for (const auto& c : cells) {
        generators.push_back(c.cone.relative_interior_point());
        generators.push_back(c.cone.second_interior_point());
    }
    std::vector<RatVec> out = generators;
    for (int i = 0; i < count; ++i) {
        RatVec p(generators.front().dim());
        for (const auto& g : generators) p += g * Rational(testing::uniform_int(rng, 0, 3));
        if (!p.is_zero()) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("moduli of the four-vertex curve") {
    const auto t = four_vertex_curve();
    const auto mc = moduli_cone(t);
    CHECK(mc.cone.dim() == 4);
    const auto& g = t.graph();
    const auto equal_arcs = mc.cone.with_equalities({length_difference(mc, *g.find_edge("e1"), *g.find_edge("e2"))});
    CHECK(equal_arcs.dim() == 3);
    CHECK(mc.cone.labels()[mc.length_var(0)] == "l:tail");
}

TEST_CASE("expected dimension and overvalence") {
    const auto fig2 = corpus_instance("fig2").type();
    CHECK(overvalence(fig2) == 0);
    CHECK(expected_dim(fig2) == 9);
    const auto fig5 = corpus_instance("fig5").type();
    CHECK(overvalence(fig5) == 1);
    CHECK(expected_dim(fig5) == 4);
    CHECK(expected_dim(fig5, 3, 5) == 4);
    CHECK(expected_dim(RecessionType(2, {{1, {RatVec{1, 0}, 1}}, {2, {RatVec{-1, 0}, 1}}}).as_type(), 2, 2) == 1);
}

TEST_CASE("plane cubic is not superabundant") {
    const auto t = corpus_instance("fig2").type();
    const auto report = superabundance(t);
    CHECK_FALSE(report.span_test);
    REQUIRE(report.dimension_test.has_value());
    CHECK_FALSE(*report.dimension_test);
    CHECK(report.dim == 9);
    CHECK_FALSE(is_superabundant(t));
}

TEST_CASE("horizontal circuit is superabundant") {
    const auto t = corpus_instance("fig4").type();
    const auto report = superabundance(t);
    CHECK(report.span_test);
    CHECK(report.circuit_span.dim() == 1);
    CHECK(report.dim == 6);
    CHECK(report.expected == 5);
    CHECK(is_superabundant(t));
}

TEST_CASE("an unclosable cycle has an empty cone") {
    CurveGraph g({{"a", 0}, {"b", 0}}, {{"e", 0, 1}, {"f", 0, 1}},
                 {{"x1", 0, 1}, {"x2", 0, 2}, {"x3", 1, 3}, {"x4", 1, 4}});
    CombinatorialType t(g, 2, {{RatVec{1, 0}, 1}, {RatVec{0, 1}, 1}},
                        {{RatVec{-1, 0}, 1}, {RatVec{0, -1}, 1}, {RatVec{1, 0}, 1}, {RatVec{0, 1}, 1}});
    CHECK_THROWS_AS(moduli_cone(t), InfeasibleCone);
}

TEST_CASE("fan labels restrict the moduli cone") {
    auto fan = std::make_shared<Fan>(
        1, std::vector<RayCone>{RayCone(1, {}), RayCone(1, {RatVec{1}}), RayCone(1, {RatVec{-1}})});
    const auto base = corpus_instance("fig5").type();
    CombinatorialType at_origin(base.graph(), 1, base.edge_contacts(), base.leg_contacts(), fan, {0, 0, 0, 0});
    CHECK(moduli_cone(at_origin).cone.dim() == moduli_cone(base).cone.dim() - 1);
    CombinatorialType on_ray(base.graph(), 1, base.edge_contacts(), base.leg_contacts(), fan, {1, 1, 1, 1});
    CHECK(moduli_cone(on_ray).cone.dim() == moduli_cone(base).cone.dim());
    CombinatorialType split(base.graph(), 1, base.edge_contacts(), base.leg_contacts(), fan, {1, 1, 1, 2});
    CHECK_THROWS_AS(moduli_cone(split), InfeasibleCone);
    // Both rays span the whole line, so only full membership empties the cone.
    CHECK_THROWS_WITH(moduli_cone(split), Catch::Matchers::ContainsSubstring("constrain only spans"));
}

TEST_CASE("superabundance tests agree on random types") {
    std::mt19937_64 rng(11);
    int compared = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const auto m = testing::random_map(rng, {.max_dim = 3, .max_edges = 6});
        const auto report = superabundance(m.type());
        CHECK(static_cast<int>(report.dim) >= report.expected);
        if (report.dimension_test) {
            ++compared;
            CHECK(*report.dimension_test == report.span_test);
        }
    }
    CHECK(compared > 50);
}

TEST_CASE("radial subdivision cell counts") {
    // Two incomparable vertices above the circuit: two strict orders and the wall.
    CHECK(radial_subdivision(corpus_instance("fig5").type()).size() == 3);
    // A chain above the circuit is totally ordered.
    CurveGraph chain({{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}}, {{"e1", 0, 1}, {"e2", 0, 1}, {"f", 1, 2}, {"g", 2, 3}},
                     {{"x1", 2, 1}, {"x2", 2, 2}, {"x3", 3, 3}, {"x4", 3, 4}});
    CombinatorialType chain_type(chain, 1, std::vector<Contact>(4, Contact::contracted(1)),
                                 {{RatVec{1}, 1}, {RatVec{-1}, 1}, {RatVec{1}, 1}, {RatVec{-1}, 1}});
    const auto cells = radial_subdivision(chain_type);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].cone.dim() == moduli_cone(chain_type).cone.dim());
    // A genus-1 vertex alone.
    const auto single = RecessionType(1, {{1, {RatVec{1}, 1}}, {2, {RatVec{-1}, 1}}}).as_type(1);
    REQUIRE(radial_subdivision(single).size() == 1);
}

TEST_CASE("radial cells cover the moduli cone and meet in faces") {
    std::mt19937_64 rng(5);
    for (const char* name : {"fig3", "fig4", "fig5"}) {
        const auto t = corpus_instance(name).type();
        const auto whole = moduli_cone(t).cone;
        const auto cells = radial_subdivision(t);
        for (const auto& p : sample_points(cells, rng, 30)) {
            CHECK(whole.contains(p));
            const auto hits = std::count_if(cells.begin(), cells.end(),
                                            [&](const RadialCell& c) { return c.cone.contains_relative_interior(p); });
            CHECK(hits == 1);
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::size_t j = i + 1; j < cells.size(); ++j) {
                const auto meet = cells[i].cone.intersect(cells[j].cone);
                CHECK(meet.is_face_of(cells[i].cone));
                CHECK(meet.is_face_of(cells[j].cone));
            }
        }
    }
}

TEST_CASE("face arrows") {
    const auto t = corpus_instance("fig5").type();
    const auto& g = t.graph();
    const auto cells = radial_types(t);
    auto find_cell = [&](const std::vector<RadialType>& types, auto pred) {
        return *std::find_if(types.begin(), types.end(), pred);
    };
    const auto T = g.vertex_index("T"), D = g.vertex_index("D");
    const auto t_first = find_cell(cells, [&](const RadialType& r) { return r.alignment.rank(T) < r.alignment.rank(D); });
    const auto d_first = find_cell(cells, [&](const RadialType& r) { return r.alignment.rank(D) < r.alignment.rank(T); });
    const auto wall = find_cell(cells, [&](const RadialType& r) { return r.alignment.rank(D) == r.alignment.rank(T); });

    // The wall is a face of both strict cells, but a strict order cannot be reversed.
    REQUIRE(face_arrow(wall, t_first).has_value());
    CHECK(face_arrow(wall, d_first).has_value());
    CHECK_FALSE(face_arrow(d_first, t_first).has_value());
    CHECK_FALSE(face_arrow(t_first, wall).has_value());
    const auto image = arrow_image(*face_arrow(wall, t_first), wall, t_first);
    CHECK(image.dim() == 4);
    CHECK(image.is_face_of(radial_cone(t_first).cone));

    // Contracting the bounded edge to T.
    std::vector<CurveVertex> vs{{"A", 0}, {"B", 0}, {"D", 0}};
    std::vector<CurveEdge> es{{"a1", 0, 1}, {"a2", 0, 1}, {"down", 1, 2}};
    std::vector<CurveLeg> ls{{"x1", 0, 1}, {"x2", 0, 2}, {"x3", 0, 3}, {"x4", 2, 4}, {"x5", 2, 5}};
    CombinatorialType contracted(CurveGraph(vs, es, ls), 1, std::vector<Contact>(3, Contact::contracted(1)), t.leg_contacts());
    const auto coarse = radial_types(contracted);
    REQUIRE(coarse.size() == 1);
    const auto arrow = face_arrow(coarse[0], t_first);
    REQUIRE(arrow.has_value());
    REQUIRE(arrow->contracted_edges.size() == 1);
    CHECK(g.edges()[arrow->contracted_edges[0]].id == "up");
    CHECK(arrow_image(*arrow, coarse[0], t_first).is_face_of(radial_cone(t_first).cone));
    // T lies strictly above the circuit in the D-first cell too, but D precedes T there:
    // collapsing T onto the circuit would put it below D.
    CHECK_FALSE(face_arrow(coarse[0], d_first).has_value());
}

TEST_CASE("face arrows respect cone faces of the fan") {
    auto fan = std::make_shared<Fan>(
        1, std::vector<RayCone>{RayCone(1, {}), RayCone(1, {RatVec{1}}), RayCone(1, {RatVec{-1}})});
    const auto base = corpus_instance("fig5").type();
    CombinatorialType origin(base.graph(), 1, base.edge_contacts(), base.leg_contacts(), fan, {0, 0, 0, 0});
    CombinatorialType ray(base.graph(), 1, base.edge_contacts(), base.leg_contacts(), fan, {1, 1, 1, 1});
    CombinatorialType other_ray(base.graph(), 1, base.edge_contacts(), base.leg_contacts(), fan, {2, 2, 2, 2});
    const auto o = radial_types(origin), r = radial_types(ray), s = radial_types(other_ray);
    // The origin is a face of the ray, but one ray is not a face of the other.
    bool found = false;
    for (const auto& a : o) {
        for (const auto& b : r) found = found || face_arrow(a, b).has_value();
    }
    CHECK(found);
    for (const auto& a : s) {
        for (const auto& b : r) CHECK_FALSE(face_arrow(a, b).has_value());
    }
}
