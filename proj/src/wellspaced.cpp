#include "trop1/wellspaced.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace trop1 {
namespace {

struct Tally {
    std::optional<Rational> radius;
    std::size_t flags = 0;
    std::set<std::size_t> vertices;
};

template <typename Range>
Tally tally(const Range& entries) {
    Tally t;
    for (const auto& f : entries) {
        if (f.slope == 0) continue;
        if (!t.radius || f.lambda < *t.radius) {
            t.radius = f.lambda;
            t.flags = 0;
            t.vertices.clear();
        }
        if (f.lambda == *t.radius) {
            ++t.flags;
            t.vertices.insert(f.base);
        }
    }
    return t;
}

}  // namespace

LineVerdict well_spaced_line(const TropicalMap& map, const RatVec& chi) {
    const auto& type = map.type();
    const auto& g = type.graph();
    if (chi.dim() != map.dim()) throw InvalidInput("character has the wrong dimension");
    const auto radial = radial_structure(g);
    const auto lam = lambdas(map.curve(), radial);
    auto slope = [&](const RatVec& v) { return dot(chi, v); };

    LineVerdict verdict;
    // A genus-1 vertex never moves; its flags are counted at distance zero.
    for (auto e : radial.circuit.edges) {
        if (slope(type.edge_vector(e)) != 0) verdict.circuit_moves = true;
    }

    std::vector<bool> in_k(g.num_vertices(), false);
    std::queue<std::size_t> frontier;
    for (auto v : radial.circuit.vertices) {
        in_k[v] = true;
        frontier.push(v);
    }
    while (!frontier.empty() && !verdict.circuit_moves) {
        const auto v = frontier.front();
        frontier.pop();
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            if (slope(type.edge_vector(e)) != 0) continue;
            const auto& edge = g.edges()[e];
            for (auto [a, b] : {std::pair{edge.tail, edge.head}, std::pair{edge.head, edge.tail}}) {
                if (a == v && !in_k[b]) {
                    in_k[b] = true;
                    frontier.push(b);
                }
            }
        }
    }

    if (verdict.circuit_moves) {
        verdict.well_spaced = true;
        verdict.speyer = true;
        return verdict;
    }

    std::vector<FlagEntry> outside;
    const Rational circuit_image = slope(map.position(radial.circuit.vertices.front()));
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        const bool same_image = slope(map.position(v)) == circuit_image;
        if (!in_k[v] && !same_image) continue;
        for (const auto& f : g.flags_at(v)) {
            FlagEntry entry{f, g.flag_name(f), v, lam[v], slope(type.flag_vector(f))};
            (in_k[v] ? verdict.flags : outside).push_back(std::move(entry));
        }
    }

    const auto t = tally(verdict.flags);
    verdict.radius = t.radius;
    verdict.minimal_flags = t.flags;
    verdict.minimal_vertices = t.vertices.size();
    if (!t.radius) {
        verdict.constant = true;
        verdict.well_spaced = true;
        verdict.speyer = true;
    } else {
        verdict.well_spaced = t.flags >= 3;
        verdict.speyer = t.vertices.size() >= 2;
    }

    auto inclusive = verdict.flags;
    inclusive.insert(inclusive.end(), outside.begin(), outside.end());
    const auto ti = tally(inclusive);
    const bool inclusive_ws = !ti.radius || ti.flags >= 3;
    verdict.inclusive_verdict_differs = inclusive_ws != verdict.well_spaced;
    return verdict;
}

bool is_well_spaced_line(const TropicalMap& map) {
    if (map.dim() != 1) throw InvalidInput("is_well_spaced_line requires a map to Q^1");
    return well_spaced_line(map, RatVec::from_ints({1})).well_spaced;
}

bool satisfies_speyer(const TropicalMap& map, const RatVec& chi) {
    return well_spaced_line(map, chi).speyer;
}

bool satisfies_speyer(const TropicalMap& map) {
    if (map.dim() != 1) throw InvalidInput("satisfies_speyer requires a map to Q^1");
    return satisfies_speyer(map, RatVec::from_ints({1}));
}

std::vector<RatVec> instance_lines(const TropicalMap& map) {
    const auto& type = map.type();
    const auto& g = type.graph();
    std::set<RatVec> lines;
    auto add = [&](const RatVec& v) {
        if (v.is_zero()) return;
        RatVec d = primitive(v).direction;
        const auto lead = std::find_if(d.begin(), d.end(), [](const Rational& x) { return x != 0; });
        if (*lead < 0) d = -d;
        lines.insert(std::move(d));
    };
    for (std::size_t e = 0; e < g.num_edges(); ++e) add(type.edge_vector(e));
    for (std::size_t l = 0; l < g.num_legs(); ++l) add(type.leg(l).vector());
    const auto base = circuit(g).vertices.front();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) add(map.position(v) - map.position(base));
    return {lines.begin(), lines.end()};
}

std::vector<CharacterFlat> character_flats(const TropicalMap& map) {
    const auto& type = map.type();
    const std::size_t r = map.dim();
    const auto c = circuit(type.graph());
    std::vector<RatVec> circuit_dirs;
    for (auto e : c.edges) circuit_dirs.push_back(type.edge_vector(e));
    const auto lines = instance_lines(map);

    // Flats containing L are spans of L with some instance lines.
    std::set<Subspace> seen;
    std::queue<Subspace> frontier;
    const auto start = span(circuit_dirs, r);
    if (!start.is_full()) {
        seen.insert(start);
        frontier.push(start);
    }
    while (!frontier.empty()) {
        const auto w = frontier.front();
        frontier.pop();
        for (const auto& line : lines) {
            if (w.contains(line)) continue;
            auto next = w.with(line);
            if (next.is_full() || seen.count(next)) continue;
            seen.insert(next);
            frontier.push(std::move(next));
        }
    }

    std::vector<CharacterFlat> flats;
    for (const auto& w : seen) {
        const auto basis = w.annihilator().basis();
        std::vector<RatVec> outside;
        for (const auto& line : lines) {
            if (!w.contains(line)) outside.push_back(line);
        }
        for (Rational t = 1;; t += 1) {
            RatVec chi(r);
            Rational power = 1;
            for (const auto& b : basis) {
                chi += b * power;
                power *= t;
            }
            if (std::all_of(outside.begin(), outside.end(), [&](const RatVec& v) { return dot(chi, v) != 0; })) {
                flats.push_back({w, primitive(chi).direction});
                break;
            }
        }
    }
    return flats;
}

FlagReport well_spacedness_report(const TropicalMap& map) {
    FlagReport report;
    for (auto& flat : character_flats(map)) {
        auto line = well_spaced_line(map, flat.chi);
        if (!line.well_spaced) report.well_spaced = false;
        if (line.constant) {
            report.warnings.push_back("projection by " + flat.chi.to_string() + " is constant near the circuit");
        }
        if (line.inclusive_verdict_differs) {
            report.warnings.push_back("projection by " + flat.chi.to_string() +
                                      ": counting flags outside the contracted component would flip the verdict");
        }
        report.flats.push_back({std::move(flat), std::move(line)});
    }
    return report;
}

bool is_well_spaced(const TropicalMap& map) {
    return well_spacedness_report(map).well_spaced;
}

MPlusTwoReport m_plus_two(const TropicalMap& map) {
    const auto& type = map.type();
    const auto& g = type.graph();
    const std::size_t r = map.dim();
    const auto radial = radial_structure(g);
    const auto lam = lambdas(map.curve(), radial);
    MPlusTwoReport report;
    std::vector<RatVec> circuit_dirs;
    for (auto e : radial.circuit.edges) circuit_dirs.push_back(type.edge_vector(e));
    report.circuit_span = span(circuit_dirs, r);
    report.extended_span = report.circuit_span;

    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        for (const auto& f : g.flags_at(v)) {
            if (report.circuit_span.contains(type.flag_vector(f))) continue;
            if (!report.delta || lam[v] < *report.delta) report.delta = lam[v];
        }
    }
    if (!report.delta) return report;

    report.vacuous = false;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        if (lam[v] != *report.delta) continue;
        for (const auto& f : g.flags_at(v)) {
            const auto d = type.flag_vector(f);
            if (report.circuit_span.contains(d)) continue;
            ++report.exiting_flags;
            report.extended_span = report.extended_span.with(d);
        }
    }
    report.m = report.extended_span.dim() - report.circuit_span.dim();
    report.holds = report.exiting_flags >= report.m + 2;
    return report;
}

bool m_plus_two_check(const TropicalMap& map) {
    return m_plus_two(map).holds;
}

}  // namespace trop1
