#pragma once

#include "trop1/ratlin.hpp"
#include "trop1/tropmap.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trop1 {

struct FlagEntry {
    Flag flag;
    std::string name;
    std::size_t base = 0;
    Rational lambda;
    Rational slope;  ///< chi applied to the outgoing flag vector
};

/// The verdict of the real-valued projection chi o F.
struct LineVerdict {
    bool well_spaced = false;
    bool speyer = false;
    /// Some circuit edge has nonzero slope. A genus-1 vertex never moves.
    bool circuit_moves = false;
    /// No flag with nonzero slope near the circuit: chi o F is constant there.
    bool constant = false;
    /// Flags based in the contracted component of the circuit.
    std::vector<FlagEntry> flags;
    std::optional<Rational> radius;
    std::size_t minimal_flags = 0;
    std::size_t minimal_vertices = 0;
    /// Counting flags based outside the component but mapped to the circuit's
    /// image would change the verdict.
    bool inclusive_verdict_differs = false;
};

LineVerdict well_spaced_line(const TropicalMap& map, const RatVec& chi);

/// Target dimension 1; uses chi = identity.
bool is_well_spaced_line(const TropicalMap& map);
bool satisfies_speyer(const TropicalMap& map);
bool satisfies_speyer(const TropicalMap& map, const RatVec& chi);

/// A subspace W of Q^r spanned by instance vectors, with a character vanishing on
/// exactly the instance vectors in W.
struct CharacterFlat {
    Subspace zero_set;
    RatVec chi;
};

/// The nonzero edge, leg, and vertex-displacement vectors of the map, one
/// primitive representative per line.
std::vector<RatVec> instance_lines(const TropicalMap& map);

/// Every proper flat containing the circuit directions, in canonical order.
std::vector<CharacterFlat> character_flats(const TropicalMap& map);

struct FlatVerdict {
    CharacterFlat flat;
    LineVerdict line;
};

struct FlagReport {
    bool well_spaced = true;
    std::vector<FlatVerdict> flats;
    std::vector<std::string> warnings;
};

FlagReport well_spacedness_report(const TropicalMap& map);
bool is_well_spaced(const TropicalMap& map);

struct MPlusTwoReport {
    bool holds = true;
    bool vacuous = true;
    Subspace circuit_span;
    Subspace extended_span;
    std::optional<Rational> delta;
    std::size_t m = 0;
    std::size_t exiting_flags = 0;
};

MPlusTwoReport m_plus_two(const TropicalMap& map);
bool m_plus_two_check(const TropicalMap& map);

}  // namespace trop1
