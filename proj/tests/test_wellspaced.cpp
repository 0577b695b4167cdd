#include "trop1/instance.hpp"
#include "trop1/moduli.hpp"
#include "trop1/wellspaced.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

using namespace trop1;

namespace {

TropicalMap with_lengths(const char* name, int l1, int l2) {
    return corpus_instance(name).tropical_map({{"l1", Rational(l1)}, {"l2", Rational(l2)}});
}

// Brute-force verdict of a projection: minimal lambda among nonzero-slope flags
// of the contracted component, found by a direct search from the circuit.
bool oracle_line(const TropicalMap& m, const RatVec& chi) {
    const auto& g = m.graph();
    const auto& t = m.type();
    const auto c = circuit(g);
    for (auto e : c.edges) {
        if (dot(chi, t.edge_vector(e)) != 0) return true;
    }
    // Distances from the circuit by relaxation over contracted edges only.
    std::vector<std::optional<Rational>> dist(g.num_vertices());
    for (auto v : c.vertices) dist[v] = Rational(0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            if (dot(chi, t.edge_vector(e)) != 0) continue;
            const auto a = g.edges()[e].tail, b = g.edges()[e].head;
            for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                if (!dist[x]) continue;
                const Rational through = *dist[x] + (c.contains_edge(e) ? Rational(0) : m.lengths()[e]);
                if (!dist[y] || through < *dist[y]) {
                    dist[y] = through;
                    changed = true;
                }
            }
        }
    }
    std::optional<Rational> best;
    int count = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (!dist[v]) continue;
        for (const auto& f : g.flags_at(v)) {
            if (dot(chi, t.flag_vector(f)) == 0) continue;
            if (!best || *dist[v] < *best) {
                best = dist[v];
                count = 1;
            } else if (*dist[v] == *best) {
                ++count;
            }
        }
    }
    return !best || count >= 3;
}

}  // namespace

TEST_CASE("contracted circuit with a high-multiplicity top vertex") {
    const auto a = with_lengths("fig5", 1, 2);
    CHECK(is_well_spaced_line(a));
    CHECK_FALSE(satisfies_speyer(a));
    const auto b = with_lengths("fig5", 1, 1);
    CHECK(is_well_spaced_line(b));
    CHECK(satisfies_speyer(b));
    const auto line = well_spaced_line(b, RatVec{1});
    CHECK(line.minimal_flags == 5);
    CHECK(line.minimal_vertices == 2);
    const auto c = with_lengths("fig5", 2, 1);
    CHECK_FALSE(is_well_spaced_line(c));
    CHECK_FALSE(satisfies_speyer(c));
    CHECK(well_spaced_line(c, RatVec{1}).radius == Rational(1));
}

TEST_CASE("horizontal circuit is well-spaced exactly on the wall") {
    for (int l1 = 1; l1 <= 3; ++l1) {
        for (int l2 = 1; l2 <= 3; ++l2) {
            CHECK(is_well_spaced(with_lengths("fig4", l1, l2)) == (l1 == l2));
        }
    }
    const auto flats = character_flats(with_lengths("fig4", 1, 1));
    REQUIRE(flats.size() == 1);
    CHECK(flats[0].zero_set == span({RatVec{1, 0}}, 2));
    CHECK(flats[0].chi == RatVec{0, 1});
}

TEST_CASE("plane cubic is well-spaced vacuously") {
    const auto m = corpus_instance("fig2").tropical_map();
    CHECK(character_flats(m).empty());
    CHECK(is_well_spaced(m));
    CHECK(m_plus_two_check(m));
    CHECK(m_plus_two(m).vacuous);
}

TEST_CASE("one contracted dimension has the single flat zero") {
    const auto flats = character_flats(with_lengths("fig5", 1, 2));
    REQUIRE(flats.size() == 1);
    CHECK(flats[0].zero_set.dim() == 0);
    CHECK(flats[0].chi == RatVec{1});
}

TEST_CASE("two simple legs on each branch are never well-spaced") {
    for (auto [l1, l2] : {std::pair{1, 2}, std::pair{1, 1}, std::pair{2, 1}}) {
        const auto m = with_lengths("fig3", l1, l2);
        CHECK(is_well_spaced(m) == (l1 == l2));
        CHECK(contraction_radius(m) == Rational(std::min(l1, l2)));
    }
}

TEST_CASE("m+2 check on the contracted circuit") {
    const auto report = m_plus_two(with_lengths("fig5", 1, 2));
    CHECK_FALSE(report.vacuous);
    CHECK(report.circuit_span.dim() == 0);
    CHECK(report.extended_span.dim() == 1);
    CHECK(report.m == 1);
    CHECK(report.delta == Rational(1));
    CHECK(report.exiting_flags == 3);
    CHECK(report.holds);
    CHECK_FALSE(m_plus_two_check(with_lengths("fig3", 1, 2)));
}

TEST_CASE("constant projections count as well-spaced with a warning") {
    // All flags vertical: the horizontal character is constant on the whole curve.
    CurveGraph g({{"a", 0}, {"b", 0}}, {{"e", 0, 1}, {"f", 0, 1}},
                 {{"x1", 0, 1}, {"x2", 0, 2}, {"x3", 1, 3}, {"x4", 1, 4}});
    CombinatorialType t(g, 2, {Contact::contracted(2), Contact::contracted(2)},
                        {{RatVec{0, 1}, 1}, {RatVec{0, -1}, 1}, {RatVec{0, 1}, 1}, {RatVec{0, -1}, 1}});
    const auto m = TropicalMap::from_base(t, {1, 1}, 0, RatVec(2));
    const auto line = well_spaced_line(m, RatVec{1, 0});
    CHECK(line.constant);
    CHECK(line.well_spaced);
    const auto report = well_spacedness_report(m);
    CHECK(report.flats.size() == 2);
    CHECK(report.well_spaced);
    REQUIRE(report.warnings.size() == 1);
    CHECK_THAT(report.warnings[0], Catch::Matchers::ContainsSubstring("constant"));
}

TEST_CASE("flat reduction agrees with random characters") {
    std::mt19937_64 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const auto m = testing::random_map(rng, {.max_dim = 3, .max_edges = 6});
        const auto flats = character_flats(m);
        const auto lines = instance_lines(m);
        for (int k = 0; k < 10; ++k) {
            const auto chi = testing::random_vector(rng, m.dim(), 4, true);
            std::vector<RatVec> zero;
            for (const auto& w : lines) {
                if (dot(chi, w) == 0) zero.push_back(w);
            }
            const auto z = span(zero, m.dim());
            const auto verdict = well_spaced_line(m, chi);
            CHECK(verdict.well_spaced == oracle_line(m, chi));
            const FlatVerdict* match = nullptr;
            std::vector<FlatVerdict> fv = well_spacedness_report(m).flats;
            for (const auto& f : fv) {
                if (f.flat.zero_set == z) match = &f;
            }
            if (!match) {
                CHECK(verdict.well_spaced);
                continue;
            }
            ++checked;
            CHECK(match->line.well_spaced == verdict.well_spaced);
            CHECK(match->line.speyer == verdict.speyer);
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("implications on random maps") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        const auto m = testing::random_map(rng, {.max_dim = 3, .max_edges = 7});
        const auto report = well_spacedness_report(m);
        for (const auto& f : report.flats) {
            if (f.line.speyer) CHECK(f.line.well_spaced);
            for (std::size_t i = 0; i < f.flat.chi.dim(); ++i) CHECK(is_integer(f.flat.chi[i]));
        }
        if (report.well_spaced) CHECK(m_plus_two_check(m));
        if (!superabundance(m.type()).span_test) CHECK(report.well_spaced);
    }
}
