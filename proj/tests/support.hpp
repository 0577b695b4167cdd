#pragma once

// Seeded generators shared by the property tests and the acceptance binary.

#include "trop1/descent.hpp"
#include "trop1/tropmap.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace trop1::testing {

struct RandomMapOptions {
    std::size_t max_dim = 3;
    std::size_t max_edges = 8;
    double contract_probability = 0.35;
    double genus_vertex_probability = 0.2;
    int coordinate_bound = 3;
};

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline RatVec random_vector(std::mt19937_64& rng, std::size_t r, int bound, bool nonzero) {
    while (true) {
        RatVec v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = uniform_int(rng, -bound, bound);
        if (!nonzero || !v.is_zero()) return v;
    }
}

/// A balanced genus-1 map with integer vertex positions: a cycle (or a genus-1
/// vertex) with trees attached, legs added to balance every vertex and to make
/// every genus-0 vertex at least trivalent. Contracted edges are common so that
/// the circuit is often contracted.
inline TropicalMap random_map(std::mt19937_64& rng, const RandomMapOptions& opt = {}) {
    const auto r = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(opt.max_dim)));
    const bool genus_vertex = coin(rng, opt.genus_vertex_probability);
    std::vector<RatVec> pos;
    std::vector<int> genus;
    std::vector<std::pair<std::size_t, std::size_t>> ends;
    auto step = [&](const RatVec& from) {
        return coin(rng, opt.contract_probability) ? from : from + random_vector(rng, r, opt.coordinate_bound, true);
    };
    if (genus_vertex) {
        pos.push_back(RatVec(r));
        genus.push_back(1);
    } else {
        const int k = uniform_int(rng, 1, static_cast<int>(std::min<std::size_t>(4, opt.max_edges)));
        pos.push_back(RatVec(r));
        genus.push_back(0);
        for (int i = 1; i < k; ++i) {
            pos.push_back(step(pos.back()));
            genus.push_back(0);
            ends.emplace_back(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i));
        }
        ends.emplace_back(static_cast<std::size_t>(k - 1), 0);
    }
    const int extra = uniform_int(rng, 0, static_cast<int>(opt.max_edges - ends.size()));
    for (int i = 0; i < extra; ++i) {
        const auto parent = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pos.size()) - 1));
        pos.push_back(step(pos[parent]));
        genus.push_back(0);
        ends.emplace_back(parent, pos.size() - 1);
    }

    const std::size_t n = pos.size();
    std::vector<Contact> edge_contacts;
    std::vector<Rational> lengths;
    std::vector<RatVec> outgoing(n, RatVec(r));
    for (auto [a, b] : ends) {
        const RatVec d = pos[b] - pos[a];
        if (d.is_zero()) {
            edge_contacts.push_back(Contact::contracted(r));
            lengths.emplace_back(uniform_int(rng, 1, 4), uniform_int(rng, 1, 2));
            continue;
        }
        const auto p = primitive(d);
        const int w = uniform_int(rng, 1, 2);
        edge_contacts.push_back({p.direction, w});
        lengths.push_back(p.scalar / w);
        outgoing[a] += p.direction * Rational(w);
        outgoing[b] -= p.direction * Rational(w);
    }

    std::vector<CurveLeg> legs;
    std::vector<Contact> leg_contacts;
    std::vector<std::size_t> valence(n, 0);
    for (auto [a, b] : ends) {
        ++valence[a];
        ++valence[b];
    }
    auto add_leg = [&](std::size_t v, const RatVec& vec) {
        const auto p = primitive(vec);
        legs.push_back({"x" + std::to_string(legs.size() + 1), v, static_cast<int>(legs.size() + 1)});
        leg_contacts.push_back({p.direction, static_cast<int>(numerator_of(p.scalar))});
        ++valence[v];
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (!outgoing[v].is_zero()) add_leg(v, -outgoing[v]);
        const std::size_t need = genus[v] == 1 ? (valence[v] == 0 ? 2 : 0) : 3;
        while (valence[v] < need || coin(rng, 0.15)) {
            const auto u = random_vector(rng, r, 2, true);
            add_leg(v, u);
            add_leg(v, -u);
        }
    }

    std::vector<CurveVertex> vertices;
    for (std::size_t v = 0; v < n; ++v) vertices.push_back({"v" + std::to_string(v), genus[v]});
    std::vector<CurveEdge> edges;
    for (std::size_t e = 0; e < ends.size(); ++e) edges.push_back({"e" + std::to_string(e), ends[e].first, ends[e].second});
    CombinatorialType type(CurveGraph(vertices, edges, legs), r, edge_contacts, leg_contacts);
    return TropicalMap(std::move(type), lengths, pos);
}

/// Nonzero slopes of a single branch summing to zero.
inline std::vector<int> random_slopes(std::mt19937_64& rng, std::size_t k, int bound = 4) {
    while (true) {
        std::vector<int> a;
        int sum = 0;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            int x = 0;
            while (x == 0) x = uniform_int(rng, -bound, bound);
            a.push_back(x);
            sum += x;
        }
        if (sum == 0) continue;
        a.push_back(-sum);
        return a;
    }
}

/// A map to Q^1 whose contracted cycle is joined by contracted edges of equal
/// length to hubs carrying exactly `slopes.size()` non-contracted legs at the
/// minimal distance, with one farther hub as distraction.
struct StarInstance {
    TropicalMap map;
    std::vector<int> slopes;
};

inline StarInstance star_instance(std::mt19937_64& rng, std::size_t k) {
    auto slopes = random_slopes(rng, k);
    // Split the legs among one or two hubs, each hub balanced by itself.
    std::vector<std::vector<int>> hubs{slopes};
    if (k >= 4 && coin(rng, 0.5)) {
        auto a = random_slopes(rng, 2), b = random_slopes(rng, k - 2);
        hubs = {a, b};
        slopes = a;
        slopes.insert(slopes.end(), b.begin(), b.end());
    }
    const Rational radius(uniform_int(rng, 1, 5), uniform_int(rng, 1, 3));
    std::vector<CurveVertex> vertices{{"A", 0}, {"B", 0}};
    std::vector<CurveEdge> edges{{"a1", 0, 1}, {"a2", 0, 1}};
    std::vector<Rational> lengths{Rational(uniform_int(rng, 1, 3)), Rational(uniform_int(rng, 1, 3))};
    std::vector<CurveLeg> legs;
    std::vector<Contact> leg_contacts;
    auto add_hub = [&](const std::vector<int>& a, const Rational& distance, std::size_t from) {
        vertices.push_back({"H" + std::to_string(vertices.size()), 0});
        edges.push_back({"s" + std::to_string(edges.size()), from, vertices.size() - 1});
        lengths.push_back(distance);
        for (int x : a) {
            legs.push_back({"x" + std::to_string(legs.size() + 1), vertices.size() - 1, static_cast<int>(legs.size() + 1)});
            leg_contacts.push_back({RatVec{Rational(x > 0 ? 1 : -1)}, std::abs(x)});
        }
    };
    for (std::size_t h = 0; h < hubs.size(); ++h) add_hub(hubs[h], radius, h % 2);
    add_hub(random_slopes(rng, 2), radius + 1, 1);
    std::vector<Contact> edge_contacts(edges.size(), Contact::contracted(1));
    CombinatorialType type(CurveGraph(vertices, edges, legs), 1, edge_contacts, leg_contacts);
    return {TropicalMap::from_base(std::move(type), lengths, 0, RatVec(1)), slopes};
}

}  // namespace trop1::testing
