#include <doctest.h>

#include "limid/generate.hpp"
#include "limid/io.hpp"

using namespace limid;

TEST_CASE("serialize/parse round-trips byte-exactly") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        GenParams p;
        p.seed = seed;
        p.n_chance = 4;
        p.n_decisions = 2;
        p.n_values = 2;
        p.soluble = (seed % 2) == 0;
        Limid m = generate_limid(p);
        std::string text = serialize_limid(m);
        Limid again = parse_limid_string(text);
        CHECK(serialize_limid(again) == text);
    }
}

TEST_CASE("parse errors carry a code") {
    try {
        parse_limid_string("not json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code == "syntax-error");
    }
    CHECK_THROWS_AS(parse_limid_string("{\"format\": \"other\"}"), ParseError);

    // Unknown node kind is a syntax error; a cyclic graph is semantic.
    const char* bad_kind = R"({
      "format": "limid-1",
      "variables": [{"id": 0, "name": "a", "cardinality": 2}],
      "nodes": [{"id": 0, "kind": "mystery", "parents": []}],
      "values": []
    })";
    try {
        parse_limid_string(bad_kind);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code == "syntax-error");
    }

    const char* cyclic = R"({
      "format": "limid-1",
      "variables": [{"id": 0, "name": "a", "cardinality": 2},
                    {"id": 1, "name": "b", "cardinality": 2}],
      "nodes": [
        {"id": 0, "kind": "chance", "parents": [1], "cpt": [0.5, 0.5, 0.5, 0.5]},
        {"id": 1, "kind": "chance", "parents": [0], "cpt": [0.5, 0.5, 0.5, 0.5]}
      ],
      "values": []
    })";
    try {
        parse_limid_string(cyclic);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.code == "semantic-error");
    }
}

TEST_CASE("generated models validate and are seed-deterministic") {
    GenParams p;
    p.seed = 99;
    p.soluble = true;
    Limid a = generate_limid(p);
    Limid b = generate_limid(p);
    CHECK(serialize_limid(a) == serialize_limid(b));
    CHECK(validate(a).empty());
}
