#pragma once

#include "trop1/descent.hpp"
#include "trop1/fan.hpp"
#include "trop1/tropmap.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trop1 {

inline constexpr int kSchemaVersion = 1;

/// An edge length: a fixed rational or the name of an instance parameter.
using LengthSpec = std::variant<Rational, std::string>;

/// Vertex positions: all of them, or one vertex with the rest propagated.
struct PositionSpec {
    std::map<std::string, RatVec> full;
    std::optional<std::pair<std::string, RatVec>> base;
};

struct MapSpec {
    std::size_t dim = 0;
    std::vector<Contact> edges;
    std::vector<Contact> legs;
    std::map<std::string, std::size_t> cones;
    PositionSpec positions;
};

/// A validated instance file.
struct Instance {
    int schema_version = kSchemaVersion;
    std::string name;
    std::string source;
    std::map<std::string, Rational> parameters;
    CurveGraph graph;
    std::vector<LengthSpec> lengths;
    std::optional<MapSpec> map;
    std::shared_ptr<const Fan> fan;

    /// Parameter values with `overrides` applied; unknown names are rejected.
    std::map<std::string, Rational> resolve(const std::map<std::string, Rational>& overrides = {}) const;
    TropicalCurve curve(const std::map<std::string, Rational>& overrides = {}) const;
    CombinatorialType type() const;
    TropicalMap tropical_map(const std::map<std::string, Rational>& overrides = {}) const;
};

Instance parse_instance_json(const nlohmann::json& doc);
Instance parse_instance_text(std::string_view text);
Instance parse_instance(const std::string& path);
nlohmann::json to_json(const Instance& instance);

/// Parses "name=value" parameter assignments.
std::map<std::string, Rational> parse_overrides(const std::vector<std::string>& assignments);
/// Parses "c1,c2,...".
RatVec parse_vector(std::string_view text);

/// A recession file holds {"recession": {"dim", "legs": [{marking, u, w}]}} and
/// optionally a fan; an instance file with a map is accepted as well.
struct RecessionSpec {
    RecessionType recession;
    std::shared_ptr<const Fan> fan;
};
RecessionSpec parse_recession(const std::string& path);
RecessionSpec parse_recession_json(const nlohmann::json& doc);

DescentInstance parse_descent_json(const nlohmann::json& doc);
nlohmann::json to_json(const DescentInstance& instance);

nlohmann::json to_json(const RatVec& v);
nlohmann::json to_json(const Fan& fan);
nlohmann::json to_json(const CombinatorialType& type);
nlohmann::json to_json(const TropicalMap& map);
nlohmann::json to_json(const Subspace& s);

/// The bundled example corpus.
std::vector<std::string> corpus_names();
std::string_view corpus_text(std::string_view name);
Instance corpus_instance(std::string_view name);

}  // namespace trop1
