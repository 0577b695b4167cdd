#include "trop1/instance.hpp"
#include "trop1/wellspaced.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

using namespace trop1;
using Catch::Matchers::ContainsSubstring;

namespace {

nlohmann::json corpus_json(const char* name) {
    return nlohmann::json::parse(corpus_text(name));
}

std::string error_of(const nlohmann::json& doc) {
    try {
        parse_instance_json(doc);
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("the corpus lists its instances") {
    const auto names = corpus_names();
    CHECK(names == std::vector<std::string>{"fig2", "fig3", "fig4", "fig5"});
    CHECK(corpus_instance("fig5").name == "fig5");
    CHECK_THROWS_AS(corpus_text("missing"), InvalidInput);
    for (const auto& n : names) {
        CHECK_THAT(corpus_instance(n).source, ContainsSubstring("bundled example"));
    }
}

TEST_CASE("corpus instances round-trip through json") {
    for (const auto& n : corpus_names()) {
        const auto inst = corpus_instance(n);
        const auto doc = to_json(inst);
        const auto back = parse_instance_json(doc);
        CHECK(to_json(back) == doc);
        CHECK(to_json(back.tropical_map()) == to_json(inst.tropical_map()));
        CHECK(back.tropical_map().positions() == inst.tropical_map().positions());
    }
}

TEST_CASE("parameters and overrides") {
    const auto inst = corpus_instance("fig5");
    CHECK(inst.resolve().at("l2") == Rational(2));
    const auto values = inst.resolve(parse_overrides({"l2=3/2"}));
    CHECK(values.at("l2") == Rational(3, 2));
    CHECK_THROWS_AS(inst.resolve({{"l9", Rational(1)}}), InvalidInput);
    CHECK_THROWS_AS(parse_overrides({"l1"}), InvalidInput);
    CHECK_THROWS_WITH(parse_overrides({"l1=0"}), ContainsSubstring("edge length must be positive"));
    CHECK_THROWS_AS(parse_overrides({"l1=x"}), InvalidInput);
    CHECK(parse_vector("1,-2,3/4") == RatVec{Rational(1), Rational(-2), Rational(3, 4)});
    CHECK_THROWS_AS(parse_vector("1,,2"), InvalidInput);
}

TEST_CASE("edge lengths must be positive") {
    auto doc = corpus_json("fig5");
    doc["curve"]["edges"][0]["length"] = "0";
    const auto msg = error_of(doc);
    CHECK_THAT(msg, ContainsSubstring("curve.edges[0].length"));
    CHECK_THAT(msg, ContainsSubstring("edge length must be positive"));
    doc = corpus_json("fig5");
    doc["parameters"]["l1"] = "-1";
    CHECK_THAT(error_of(doc), ContainsSubstring("edge length must be positive"));
}

TEST_CASE("an unbalanced map names the vertex and the defect") {
    auto doc = corpus_json("fig5");
    for (auto& leg : doc["map"]["legs"]) {
        if (leg["id"] == "x5") leg["u"] = nlohmann::json::array({-1});
    }
    const auto msg = error_of(doc);
    CHECK_THAT(msg, ContainsSubstring("vertex 'D'"));
    CHECK_THAT(msg, ContainsSubstring("(-2)"));
}

TEST_CASE("structural errors") {
    CHECK_THROWS_WITH(parse_instance_text("{not json"), ContainsSubstring("malformed JSON"));
    auto doc = corpus_json("fig5");
    doc["schema_version"] = 2;
    CHECK_THAT(error_of(doc), ContainsSubstring("unsupported version 2"));
    doc = corpus_json("fig5");
    doc["curve"]["edges"][0]["ends"] = nlohmann::json::array({"A", "Z"});
    CHECK_THAT(error_of(doc), ContainsSubstring("unknown vertex 'Z'"));
    doc = corpus_json("fig5");
    doc["map"]["legs"][0]["u"] = nlohmann::json::array({-2});
    CHECK_THAT(error_of(doc), ContainsSubstring("not a primitive integer vector"));
    doc = corpus_json("fig5");
    doc["map"]["cones"] = nlohmann::json::object({{"A", 0}});
    CHECK_THAT(error_of(doc), ContainsSubstring("cone labels require a fan"));
    doc = corpus_json("fig4");
    doc["curve"]["edges"].erase(doc["curve"]["edges"].begin() + 4);
    doc["map"]["edges"].erase(doc["map"]["edges"].begin() + 4);
    CHECK_THAT(error_of(doc), ContainsSubstring("disconnected"));
    doc = corpus_json("fig5");
    doc["curve"]["legs"][1]["marking"] = 1;
    CHECK_THAT(error_of(doc), ContainsSubstring("marking 1 is used twice"));
    CHECK_THROWS_WITH(parse_instance("/nonexistent/x.json"), ContainsSubstring("cannot open"));
}

TEST_CASE("instance files are read from disk with the path in errors") {
    const std::string path = "trop1_test_instance.json";
    auto doc = corpus_json("fig4");
    {
        std::ofstream out(path);
        out << doc.dump(2);
    }
    CHECK(is_well_spaced(parse_instance(path).tropical_map()));
    doc["schema_version"] = 7;
    {
        std::ofstream out(path);
        out << doc.dump(2);
    }
    CHECK_THROWS_WITH(parse_instance(path), ContainsSubstring(path + ": schema_version"));
    std::remove(path.c_str());
}

TEST_CASE("recession files") {
    const auto from_instance = parse_recession_json(corpus_json("fig5"));
    CHECK(from_instance.recession == recession_type(corpus_instance("fig5").type()));
    const auto doc = nlohmann::json::parse(R"({"recession": {"dim": 1, "legs": [
        {"marking": 1, "u": [1]}, {"marking": 2, "u": [-1]}]}})");
    const auto spec = parse_recession_json(doc);
    CHECK(spec.recession.legs().size() == 2);
    CHECK(spec.fan == nullptr);
}
