#include "common.hpp"

#include <cstdlib>

TEST_SUITE("triangulation") {

TEST_CASE("fig8 parses with two edge classes of valence six") {
    auto t = preset("fig8");
    CHECK(t.size() == 2);
    CHECK(t.knot_complement);
    CHECK(t.signs() == std::vector<int>{1, -1});
    REQUIRE(t.edge_classes.size() == 2);
    for (const auto& e : t.edge_classes) CHECK(e.multiplicity() == 6);
    REQUIRE(t.curve("l") != nullptr);
    CHECK(t.curve("l")->C == std::vector<long>{0, 2});
    CHECK(t.curve("nope") == nullptr);
}

TEST_CASE("edge class multiplicities sum to 6N on every preset") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        int total = 0;
        for (const auto& e : t.edge_classes) total += e.multiplicity();
        CHECK(total == 6 * t.size());
        CHECK(t.edge_classes.size() == static_cast<size_t>(t.size()));
    }
}

TEST_CASE("serialize round-trips") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto back = fk::parse_triangulation(fk::serialize(t));
        CHECK(fk::isomorphic_identity(t, back));
        CHECK(fk::serialize(back) == fk::serialize(t));
    }
}

TEST_CASE("unpaired face is an input error") {
    CHECK_THROWS_AS(fk::load_triangulation(data_path("unpaired_face.tri")), fk::InputError);
}

TEST_CASE("malformed lines report a position") {
    const std::string text = "triangulation x tets=1 kind=generic\ntet 0 sign=+2 glue 0->0.1 1->0.0 2->0.3 3->0.2\n";
    try {
        fk::parse_triangulation(text);
        FAIL("expected an InputError");
    } catch (const fk::InputError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(fk::parse_triangulation("triangulation x tets=2 kind=generic\n"), fk::InputError);
    CHECK_THROWS_AS(fk::parse_triangulation(""), fk::InputError);
}

TEST_CASE("preset registry") {
    auto names = fk::preset_names();
    for (const auto& n : all_presets()) CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK_THROWS_AS(fk::load_triangulation(fk::resolve_triangulation_path("definitely_not_a_preset")), fk::InputError);
}

TEST_CASE("FAMEDKIT_PRESET_DIR overrides the search path") {
    ::setenv("FAMEDKIT_PRESET_DIR", FAMEDKIT_TEST_DATA, 1);
    CHECK(fk::resolve_triangulation_path("singular_A").find("singular_A.tri") != std::string::npos);
    ::unsetenv("FAMEDKIT_PRESET_DIR");
    CHECK_THROWS_AS(fk::load_triangulation(fk::resolve_triangulation_path("singular_A")), fk::InputError);
}

}
