#include "trop1/instance.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace trop1 {

namespace corpus_data {
struct Entry {
    const char* name;
    const char* text;
};
extern const Entry kEntries[];
extern const std::size_t kCount;
}  // namespace corpus_data

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw InvalidInput(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<int>();
}

Rational get_rational(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const InvalidInput& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a rational (\"p/q\" string or integer)");
}

RatVec get_vector(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    RatVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = get_rational(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

Contact get_contact(const json& j, std::size_t dim, const std::string& where) {
    const int w = j.contains("w") ? get_int(j["w"], where + ".w") : 1;
    if (w < 0) fail(where + ".w", "expansion factor must be non-negative");
    RatVec u = j.contains("u") ? get_vector(j["u"], where + ".u") : RatVec(dim);
    if (u.dim() != dim) fail(where + ".u", "expected " + std::to_string(dim) + " coordinates");
    if (w == 0) {
        if (!u.is_zero()) fail(where, "contracted contact (w = 0) must not carry a direction");
        return Contact::contracted(dim);
    }
    if (u.is_zero() || !u.is_integral() || primitive(u).scalar != 1) {
        fail(where + ".u", "direction " + u.to_string() + " is not a primitive integer vector");
    }
    return {u, w};
}

json contact_json(const std::string& id, const Contact& c) {
    json out = {{"id", id}, {"w", c.w}};
    if (!c.is_contracted()) {
        json u = json::array();
        for (const auto& x : c.u) u.push_back(static_cast<long long>(numerator_of(x)));
        out["u"] = u;
    }
    return out;
}

std::shared_ptr<const Fan> parse_fan(const json& j, const std::string& where) {
    const auto dim = static_cast<std::size_t>(get_int(field(j, "dim", where), where + ".dim"));
    const bool complete = j.contains("complete") && j["complete"].is_boolean() && j["complete"].get<bool>();
    const auto& cones = field(j, "cones", where);
    if (!cones.is_array()) fail(where + ".cones", "expected an array");
    std::vector<RayCone> out;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        const auto at = where + ".cones[" + std::to_string(i) + "]";
        const auto& rays = field(cones[i], "rays", at);
        if (!rays.is_array()) fail(at + ".rays", "expected an array");
        std::vector<RatVec> vs;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            auto v = get_vector(rays[k], at + ".rays[" + std::to_string(k) + "]");
            if (v.dim() != dim) fail(at, "ray has the wrong dimension");
            vs.push_back(std::move(v));
        }
        out.emplace_back(dim, std::move(vs));
    }
    return std::make_shared<Fan>(dim, std::move(out), complete);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_json_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::map<std::string, Rational> Instance::resolve(const std::map<std::string, Rational>& overrides) const {
    auto values = parameters;
    for (const auto& [name, value] : overrides) {
        auto it = values.find(name);
        if (it == values.end()) throw InvalidInput("unknown parameter '" + name + "'");
        it->second = value;
    }
    return values;
}

TropicalCurve Instance::curve(const std::map<std::string, Rational>& overrides) const {
    const auto values = resolve(overrides);
    std::vector<Rational> ls;
    for (const auto& spec : lengths) {
        if (const auto* r = std::get_if<Rational>(&spec)) ls.push_back(*r);
        else ls.push_back(values.at(std::get<std::string>(spec)));
    }
    return TropicalCurve(graph, std::move(ls));
}

CombinatorialType Instance::type() const {
    if (!map) throw InvalidInput("instance '" + name + "' has no map section");
    std::vector<std::size_t> labels;
    if (fan) {
        for (const auto& v : graph.vertices()) {
            auto it = map->cones.find(v.id);
            if (it == map->cones.end()) throw InvalidInput("map.cones: no cone label for vertex '" + v.id + "'");
            labels.push_back(it->second);
        }
    }
    return CombinatorialType(graph, map->dim, map->edges, map->legs, fan, std::move(labels));
}

TropicalMap Instance::tropical_map(const std::map<std::string, Rational>& overrides) const {
    auto t = type();
    auto c = curve(overrides);
    if (map->positions.base) {
        const auto& [vertex, point] = *map->positions.base;
        return TropicalMap::from_base(std::move(t), c.lengths(), graph.vertex_index(vertex), point);
    }
    std::vector<RatVec> positions;
    for (const auto& v : graph.vertices()) {
        auto it = map->positions.full.find(v.id);
        if (it == map->positions.full.end()) throw InvalidInput("map.positions: missing vertex '" + v.id + "'");
        positions.push_back(it->second);
    }
    return TropicalMap(std::move(t), c.lengths(), std::move(positions));
}

Instance parse_instance_json(const json& doc) {
    Instance inst;
    if (!doc.is_object()) fail("instance", "expected a JSON object");
    inst.schema_version = get_int(field(doc, "schema_version", "instance"), "schema_version");
    if (inst.schema_version != kSchemaVersion) {
        fail("schema_version", "unsupported version " + std::to_string(inst.schema_version));
    }
    inst.name = get_string(field(doc, "name", "instance"), "name");
    if (doc.contains("source")) inst.source = get_string(doc["source"], "source");
    if (doc.contains("parameters")) {
        const auto& params = doc["parameters"];
        if (!params.is_object()) fail("parameters", "expected an object");
        for (const auto& [key, value] : params.items()) {
            if (!is_identifier(key)) fail("parameters", "invalid parameter name '" + key + "'");
            inst.parameters[key] = get_rational(value, "parameters." + key);
            if (inst.parameters[key] <= 0) fail("parameters." + key, "edge length must be positive");
        }
    }

    const auto& curve = field(doc, "curve", "instance");
    std::vector<CurveVertex> vertices;
    std::map<std::string, std::size_t> vindex;
    const auto& vs = field(curve, "vertices", "curve");
    if (!vs.is_array()) fail("curve.vertices", "expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto at = "curve.vertices[" + std::to_string(i) + "]";
        CurveVertex v{get_string(field(vs[i], "id", at), at + ".id"),
                      vs[i].contains("genus") ? get_int(vs[i]["genus"], at + ".genus") : 0};
        if (v.genus < 0) fail(at + ".genus", "genus must be non-negative");
        if (!vindex.emplace(v.id, i).second) fail(at + ".id", "duplicate vertex id '" + v.id + "'");
        vertices.push_back(std::move(v));
    }
    auto vertex_ref = [&](const json& j, const std::string& at) {
        const auto id = get_string(j, at);
        auto it = vindex.find(id);
        if (it == vindex.end()) fail(at, "unknown vertex '" + id + "'");
        return it->second;
    };
    std::vector<CurveEdge> edges;
    const json empty = json::array();
    const auto& es = curve.contains("edges") ? curve["edges"] : empty;
    if (!es.is_array()) fail("curve.edges", "expected an array");
    for (std::size_t i = 0; i < es.size(); ++i) {
        const auto at = "curve.edges[" + std::to_string(i) + "]";
        const auto& ends = field(es[i], "ends", at);
        if (!ends.is_array() || ends.size() != 2) fail(at + ".ends", "expected two vertex ids");
        edges.push_back({get_string(field(es[i], "id", at), at + ".id"), vertex_ref(ends[0], at + ".ends[0]"),
                         vertex_ref(ends[1], at + ".ends[1]")});
        const auto& len = field(es[i], "length", at);
        if (len.is_string() && is_identifier(len.get<std::string>())) {
            const auto pname = len.get<std::string>();
            if (!inst.parameters.count(pname)) fail(at + ".length", "unknown parameter '" + pname + "'");
            inst.lengths.emplace_back(pname);
        } else {
            auto value = get_rational(len, at + ".length");
            if (value <= 0) fail(at + ".length", "edge length must be positive");
            inst.lengths.emplace_back(value);
        }
    }
    std::vector<CurveLeg> legs;
    const auto& ls = curve.contains("legs") ? curve["legs"] : empty;
    if (!ls.is_array()) fail("curve.legs", "expected an array");
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const auto at = "curve.legs[" + std::to_string(i) + "]";
        legs.push_back({get_string(field(ls[i], "id", at), at + ".id"), vertex_ref(field(ls[i], "base", at), at + ".base"),
                        get_int(field(ls[i], "marking", at), at + ".marking")});
    }
    try {
        inst.graph = CurveGraph(std::move(vertices), std::move(edges), std::move(legs));
        if (!inst.graph.is_connected()) throw InvalidInput("curve graph is disconnected");
    } catch (const InvalidInput& e) {
        fail("curve", e.what());
    }

    if (doc.contains("fan")) inst.fan = parse_fan(doc["fan"], "fan");

    if (doc.contains("map")) {
        const auto& m = doc["map"];
        MapSpec spec;
        spec.dim = static_cast<std::size_t>(get_int(field(m, "dim", "map"), "map.dim"));
        if (inst.fan && inst.fan->ambient_dim() != spec.dim) fail("fan.dim", "does not match map.dim");
        auto contacts = [&](const char* key, const std::vector<std::string>& ids) {
            const auto where = std::string("map.") + key;
            const auto& arr = m.contains(key) ? m[key] : empty;
            if (!arr.is_array()) fail(where, "expected an array");
            std::map<std::string, Contact> by_id;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const auto at = where + "[" + std::to_string(i) + "]";
                const auto id = get_string(field(arr[i], "id", at), at + ".id");
                if (std::find(ids.begin(), ids.end(), id) == ids.end()) fail(at + ".id", "unknown id '" + id + "'");
                if (!by_id.emplace(id, get_contact(arr[i], spec.dim, at)).second) fail(at + ".id", "duplicate id '" + id + "'");
            }
            std::vector<Contact> out;
            for (const auto& id : ids) {
                auto it = by_id.find(id);
                if (it == by_id.end()) fail(where, "no contact data for '" + id + "'");
                out.push_back(it->second);
            }
            return out;
        };
        std::vector<std::string> edge_ids, leg_ids;
        for (const auto& e : inst.graph.edges()) edge_ids.push_back(e.id);
        for (const auto& l : inst.graph.legs()) leg_ids.push_back(l.id);
        spec.edges = contacts("edges", edge_ids);
        spec.legs = contacts("legs", leg_ids);
        if (m.contains("cones")) {
            if (!inst.fan) fail("map.cones", "cone labels require a fan section");
            if (!m["cones"].is_object()) fail("map.cones", "expected an object");
            for (const auto& [vid, idx] : m["cones"].items()) {
                if (!vindex.count(vid)) fail("map.cones", "unknown vertex '" + vid + "'");
                const int k = get_int(idx, "map.cones." + vid);
                if (k < 0 || static_cast<std::size_t>(k) >= inst.fan->size()) fail("map.cones." + vid, "cone index out of range");
                spec.cones[vid] = static_cast<std::size_t>(k);
            }
        }
        if (m.contains("positions")) {
            const auto& ps = m["positions"];
            if (!ps.is_object()) fail("map.positions", "expected an object");
            for (const auto& [vid, p] : ps.items()) {
                if (!vindex.count(vid)) fail("map.positions", "unknown vertex '" + vid + "'");
                spec.positions.full[vid] = get_vector(p, "map.positions." + vid);
            }
        } else {
            const auto& b = field(m, "base", "map");
            const auto vid = get_string(field(b, "vertex", "map.base"), "map.base.vertex");
            if (!vindex.count(vid)) fail("map.base.vertex", "unknown vertex '" + vid + "'");
            spec.positions.base = std::pair{vid, get_vector(field(b, "point", "map.base"), "map.base.point")};
        }
        inst.map = std::move(spec);
    }

    // Re-validate everything by building the objects with default parameters.
    try {
        (void)inst.curve();
        if (inst.map) (void)inst.tropical_map();
    } catch (const InvalidInput& e) {
        fail(inst.map ? "map" : "curve", e.what());
    }
    return inst;
}

Instance parse_instance_text(std::string_view text) {
    return parse_instance_json(parse_json_text(text));
}

Instance parse_instance(const std::string& path) {
    try {
        return parse_instance_text(read_file(path));
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

json to_json(const RatVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(format_rational(x));
    return out;
}

json to_json(const Subspace& s) {
    json out = json::array();
    for (const auto& b : s.basis()) out.push_back(to_json(b));
    return out;
}

json to_json(const Fan& fan) {
    json cones = json::array();
    for (const auto& c : fan.cones()) {
        json rays = json::array();
        for (const auto& r : c.rays()) rays.push_back(to_json(r));
        cones.push_back({{"rays", rays}});
    }
    return {{"dim", fan.ambient_dim()}, {"complete", fan.is_complete()}, {"cones", cones}};
}

json to_json(const Instance& inst) {
    json doc;
    doc["schema_version"] = inst.schema_version;
    doc["name"] = inst.name;
    if (!inst.source.empty()) doc["source"] = inst.source;
    if (!inst.parameters.empty()) {
        json params = json::object();
        for (const auto& [k, v] : inst.parameters) params[k] = format_rational(v);
        doc["parameters"] = params;
    }
    const auto& g = inst.graph;
    json vertices = json::array(), edges = json::array(), legs = json::array();
    for (const auto& v : g.vertices()) vertices.push_back({{"id", v.id}, {"genus", v.genus}});
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& edge = g.edges()[e];
        json len = std::holds_alternative<Rational>(inst.lengths[e]) ? json(format_rational(std::get<Rational>(inst.lengths[e])))
                                                                    : json(std::get<std::string>(inst.lengths[e]));
        edges.push_back({{"id", edge.id},
                         {"ends", {g.vertices()[edge.tail].id, g.vertices()[edge.head].id}},
                         {"length", len}});
    }
    for (const auto& l : g.legs()) legs.push_back({{"id", l.id}, {"base", g.vertices()[l.base].id}, {"marking", l.marking}});
    doc["curve"] = {{"vertices", vertices}, {"edges", edges}, {"legs", legs}};
    if (inst.map) {
        const auto& m = *inst.map;
        json me = json::array(), ml = json::array();
        for (std::size_t e = 0; e < g.num_edges(); ++e) me.push_back(contact_json(g.edges()[e].id, m.edges[e]));
        for (std::size_t l = 0; l < g.num_legs(); ++l) ml.push_back(contact_json(g.legs()[l].id, m.legs[l]));
        json mj = {{"dim", m.dim}, {"edges", me}, {"legs", ml}};
        if (!m.cones.empty()) {
            json cones = json::object();
            for (const auto& [k, v] : m.cones) cones[k] = v;
            mj["cones"] = cones;
        }
        if (m.positions.base) {
            mj["base"] = {{"vertex", m.positions.base->first}, {"point", to_json(m.positions.base->second)}};
        } else {
            json ps = json::object();
            for (const auto& [k, v] : m.positions.full) ps[k] = to_json(v);
            mj["positions"] = ps;
        }
        doc["map"] = mj;
    }
    if (inst.fan) doc["fan"] = to_json(*inst.fan);
    return doc;
}

json to_json(const CombinatorialType& type) {
    const auto& g = type.graph();
    json vertices = json::array(), edges = json::array(), legs = json::array();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        json vj = {{"id", g.vertices()[v].id}, {"genus", g.vertices()[v].genus}};
        if (type.has_fan()) vj["cone"] = type.cones()[v];
        vertices.push_back(vj);
    }
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        auto c = contact_json(g.edges()[e].id, type.edge(e));
        c["ends"] = {g.vertices()[g.edges()[e].tail].id, g.vertices()[g.edges()[e].head].id};
        edges.push_back(c);
    }
    for (std::size_t l = 0; l < g.num_legs(); ++l) {
        auto c = contact_json(g.legs()[l].id, type.leg(l));
        c["base"] = g.vertices()[g.legs()[l].base].id;
        c["marking"] = g.legs()[l].marking;
        legs.push_back(c);
    }
    return {{"dim", type.dim()}, {"vertices", vertices}, {"edges", edges}, {"legs", legs}};
}

json to_json(const TropicalMap& map) {
    json out = to_json(map.type());
    json lengths = json::object(), positions = json::object();
    const auto& g = map.graph();
    for (std::size_t e = 0; e < g.num_edges(); ++e) lengths[g.edges()[e].id] = format_rational(map.lengths()[e]);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) positions[g.vertices()[v].id] = to_json(map.position(v));
    out["lengths"] = lengths;
    out["positions"] = positions;
    return out;
}

std::map<std::string, Rational> parse_overrides(const std::vector<std::string>& assignments) {
    std::map<std::string, Rational> out;
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) throw InvalidInput("parameter override '" + a + "' is not of the form name=value");
        auto value = parse_rational(a.substr(eq + 1));
        if (value <= 0) throw InvalidInput("parameter '" + a.substr(0, eq) + "': edge length must be positive");
        out[a.substr(0, eq)] = value;
    }
    return out;
}

RatVec parse_vector(std::string_view text) {
    std::vector<Rational> entries;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        entries.push_back(parse_rational(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return RatVec(std::move(entries));
}

RecessionSpec parse_recession_json(const json& doc) {
    RecessionSpec spec;
    if (doc.contains("recession")) {
        const auto& rj = doc["recession"];
        const auto dim = static_cast<std::size_t>(get_int(field(rj, "dim", "recession"), "recession.dim"));
        const auto& ls = field(rj, "legs", "recession");
        if (!ls.is_array()) fail("recession.legs", "expected an array");
        std::vector<RecessionType::Leg> legs;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const auto at = "recession.legs[" + std::to_string(i) + "]";
            legs.push_back({get_int(field(ls[i], "marking", at), at + ".marking"), get_contact(ls[i], dim, at)});
        }
        try {
            spec.recession = RecessionType(dim, std::move(legs));
        } catch (const InvalidInput& e) {
            fail("recession", e.what());
        }
        if (doc.contains("fan")) spec.fan = parse_fan(doc["fan"], "fan");
        if (spec.fan && spec.fan->ambient_dim() != dim) fail("fan.dim", "does not match recession.dim");
        return spec;
    }
    const auto inst = parse_instance_json(doc);
    spec.recession = recession_type(inst.type());
    spec.fan = inst.fan;
    return spec;
}

RecessionSpec parse_recession(const std::string& path) {
    try {
        return parse_recession_json(parse_json_text(read_file(path)));
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

DescentInstance parse_descent_json(const json& doc) {
    DescentInstance inst;
    const auto& branches = field(doc, "branches", "descent");
    if (!branches.is_array()) fail("branches", "expected an array");
    for (std::size_t j = 0; j < branches.size(); ++j) {
        const auto at = "branches[" + std::to_string(j) + "]";
        const auto& slopes = field(branches[j], "slopes", at);
        if (!slopes.is_array()) fail(at + ".slopes", "expected an array");
        std::vector<int> a;
        for (std::size_t i = 0; i < slopes.size(); ++i) a.push_back(get_int(slopes[i], at + ".slopes"));
        inst.slopes.push_back(std::move(a));
        inst.points.push_back(get_vector(field(branches[j], "points", at), at + ".points").entries());
        inst.constants.push_back(get_rational(field(branches[j], "constant", at), at + ".constant"));
    }
    inst.validate();
    return inst;
}

json to_json(const DescentInstance& inst) {
    json branches = json::array();
    for (std::size_t j = 0; j < inst.num_branches(); ++j) {
        json points = json::array();
        for (const auto& x : inst.points[j]) points.push_back(format_rational(x));
        branches.push_back({{"slopes", inst.slopes[j]}, {"points", points}, {"constant", format_rational(inst.constants[j])}});
    }
    return {{"branches", branches}};
}

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < corpus_data::kCount; ++i) out.emplace_back(corpus_data::kEntries[i].name);
    std::sort(out.begin(), out.end());
    return out;
}

std::string_view corpus_text(std::string_view name) {
    for (std::size_t i = 0; i < corpus_data::kCount; ++i) {
        if (name == corpus_data::kEntries[i].name) return corpus_data::kEntries[i].text;
    }
    throw InvalidInput("unknown corpus instance '" + std::string(name) + "'");
}

Instance corpus_instance(std::string_view name) {
    try {
        return parse_instance_text(corpus_text(name));
    } catch (const InvalidInput& e) {
        throw InvalidInput("corpus/" + std::string(name) + ": " + e.what());
    }
}

}  // namespace trop1
