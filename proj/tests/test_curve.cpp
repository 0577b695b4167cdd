#include "trop1/curve.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

using namespace trop1;

namespace {

CurveGraph make_graph(std::vector<int> genera, std::vector<std::pair<int, int>> ends) {
    std::vector<CurveVertex> vs;
    for (std::size_t i = 0; i < genera.size(); ++i) vs.push_back({"v" + std::to_string(i), genera[i]});
    std::vector<CurveEdge> es;
    for (std::size_t i = 0; i < ends.size(); ++i) {
        es.push_back({"e" + std::to_string(i), static_cast<std::size_t>(ends[i].first),
                      static_cast<std::size_t>(ends[i].second)});
    }
    return CurveGraph(vs, es, {});
}

// Minimal genus-1 subgraph by brute force over edge subsets (vertex genus ignored).
std::set<std::size_t> brute_force_cycle(const CurveGraph& g) {
    const auto m = g.num_edges();
    std::set<std::size_t> best;
    bool have = false;
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
        std::set<std::size_t> verts, edges;
        for (std::size_t e = 0; e < m; ++e) {
            if (mask >> e & 1) {
                edges.insert(e);
                verts.insert(g.edges()[e].tail);
                verts.insert(g.edges()[e].head);
            }
        }
        // A subgraph of a unicyclic graph has genus 1 iff |E| - |V| + components >= 1;
        // among connected ones the smallest with |E| = |V| is the cycle.
        if (edges.size() != verts.size()) continue;
        if (!have || edges.size() < best.size()) {
            best = edges;
            have = true;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("genus examples") {
    CHECK(genus(make_graph({1}, {})) == 1);
    CHECK(genus(make_graph({0, 0}, {{0, 1}, {0, 1}})) == 1);
    // Four vertices a,b,c,d with edges a-b, b-c, c-d, d-b.
    CHECK(genus(make_graph({0, 0, 0, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 1}})) == 1);
    CHECK(genus(make_graph({2, 0}, {{0, 1}})) == 2);
    CHECK_THROWS_AS(genus(make_graph({0, 0}, {})), InvalidInput);
}

TEST_CASE("circuit detection") {
    auto tail = make_graph({1, 0}, {{0, 1}});
    auto c = circuit(tail);
    CHECK(c.vertices == std::vector<std::size_t>{0});
    CHECK(c.is_genus_one_vertex());

    auto loop = make_graph({0, 0, 0}, {{0, 0}, {0, 1}, {1, 2}});
    c = circuit(loop);
    CHECK(c.vertices == std::vector<std::size_t>{0});
    CHECK(c.edges == std::vector<std::size_t>{0});

    auto triangle = make_graph({0, 0, 0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
    c = circuit(triangle);
    CHECK(c.vertices == std::vector<std::size_t>{0, 1, 2});
    std::set<std::size_t> edges(c.edges.begin(), c.edges.end());
    CHECK(edges == brute_force_cycle(triangle));

    CHECK_THROWS_AS(circuit(make_graph({0, 0}, {{0, 1}})), InvalidInput);
}

TEST_CASE("random unicyclic graphs: circuit matches brute force") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int cycle_len = 1 + static_cast<int>(rng() % 4);
        const int extra = static_cast<int>(rng() % 5);
        std::vector<std::pair<int, int>> ends;
        for (int i = 0; i < cycle_len; ++i) ends.push_back({i, (i + 1) % cycle_len});
        int n = cycle_len;
        for (int i = 0; i < extra; ++i) {
            ends.push_back({static_cast<int>(rng() % n), n});
            ++n;
        }
        std::shuffle(ends.begin(), ends.end(), rng);
        auto g = make_graph(std::vector<int>(n, 0), ends);
        auto c = circuit(g);
        std::set<std::size_t> edges(c.edges.begin(), c.edges.end());
        CHECK(edges == brute_force_cycle(g));
        CHECK(static_cast<int>(c.vertices.size()) == cycle_len);
        // Dropping any circuit edge lowers the genus of the circuit subgraph.
        CHECK(static_cast<int>(c.edges.size()) - static_cast<int>(c.vertices.size()) + 1 == 1);
    }
}

TEST_CASE("lambda sums lengths along the path") {
    auto g = make_graph({0, 0, 0}, {{0, 0}, {0, 1}, {1, 2}});
    TropicalCurve curve(g, {Rational(1), Rational(2), Rational(3)});
    CHECK(lambda(curve, 0) == 0);
    CHECK(lambda(curve, 1) == 2);
    CHECK(lambda(curve, 2) == 5);

    TropicalCurve loop(make_graph({0, 0}, {{0, 0}, {0, 1}}), {Rational(4), Rational(7, 2)});
    CHECK(lambda(loop, 1) == Rational(7, 2));

    CHECK_THROWS_AS(TropicalCurve(g, {Rational(1), Rational(0), Rational(3)}), InvalidInput);
}

TEST_CASE("lambda is monotone along paths") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<int, int>> ends{{0, 1}, {1, 0}};
        int n = 2;
        for (int i = 0; i < 6; ++i) {
            ends.push_back({static_cast<int>(rng() % n), n});
            ++n;
        }
        auto g = make_graph(std::vector<int>(n, 0), ends);
        std::vector<Rational> lengths;
        for (std::size_t e = 0; e < g.num_edges(); ++e) lengths.emplace_back(1 + rng() % 5, 1 + rng() % 3);
        TropicalCurve curve(g, lengths);
        const auto radial = radial_structure(g);
        const auto lam = lambdas(curve);
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            CHECK(lam[v] == lambda(curve, v));
            for (std::size_t w = 0; w < g.num_vertices(); ++w) {
                if (radial.on_path_to(w, v)) CHECK(lam[w] <= lam[v]);
            }
        }
    }
}

namespace {

// Counts total preorders on n labelled elements refining a forest order, by brute force
// over rank functions.
std::size_t brute_force_alignments(const RadialStructure& radial) {
    const auto n = radial.parent.size();
    std::vector<int> ranks(n, 0);
    std::set<std::vector<int>> seen;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= n + 1;
    for (std::size_t code = 0; code < total; ++code) {
        auto c = code;
        for (std::size_t i = 0; i < n; ++i) {
            ranks[i] = static_cast<int>(c % (n + 1));
            c /= n + 1;
        }
        // Normalise to consecutive ranks starting at 0.
        std::set<int> used(ranks.begin(), ranks.end());
        if (!used.count(0)) continue;
        std::vector<int> norm(n);
        for (std::size_t i = 0; i < n; ++i) {
            norm[i] = static_cast<int>(std::distance(used.begin(), used.find(ranks[i])));
        }
        if (is_compatible(RadialAlignment(norm), radial)) seen.insert(norm);
    }
    return seen.size();
}

}  // namespace

TEST_CASE("alignment counts") {
    auto star = make_graph({1, 0, 0}, {{0, 1}, {0, 2}});
    CHECK(enumerate_alignments(star).size() == 3);
    auto path = make_graph({1, 0, 0}, {{0, 1}, {1, 2}});
    CHECK(enumerate_alignments(path).size() == 1);
    CHECK(enumerate_alignments(make_graph({1}, {})).size() == 1);

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::pair<int, int>> ends{{0, 0}};
        int n = 1;
        const int extra = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < extra; ++i) {
            ends.push_back({static_cast<int>(rng() % n), n});
            ++n;
        }
        auto g = make_graph(std::vector<int>(n, 0), ends);
        const auto all = enumerate_alignments(g);
        const auto radial = radial_structure(g);
        std::set<RadialAlignment> distinct(all.begin(), all.end());
        CHECK(distinct.size() == all.size());
        for (const auto& a : all) CHECK(is_compatible(a, radial));
        CHECK(all.size() == brute_force_alignments(radial));
    }
}
