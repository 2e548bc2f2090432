#include "common.hpp"

#include "famedkit/acceptance.hpp"

TEST_SUITE("nz_gluing") {

TEST_CASE("every preset is FAMED with B^{-1}A equal to scriptG") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto c = fk::famed_check(t);
        CHECK_MESSAGE(c.famed, name);
        CHECK(c.BinvA == fk::kinematical(t).scriptG);
    }
}

TEST_CASE("B^{-1}A does not depend on the dropped edge") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto ref = fk::nz_system(t).BinvA;
        for (int e = 0; e < static_cast<int>(t.edge_classes.size()); ++e) {
            fk::NZOptions o;
            o.drop_edge = e;
            auto nz = fk::nz_system(t, o);
            CHECK(nz.dropped_edge == e);
            CHECK(nz.BinvA == ref);
        }
    }
}

TEST_CASE("edge rows of A, B sum with nu to the edge equation") {
    auto t = preset("twist_7");
    auto gm = fk::edge_incidence(t, "l");
    for (size_t e = 0; e < gm.edgeG.size(); ++e) {
        long total = 0;
        for (int k = 0; k < t.size(); ++k) total += gm.edgeG[e][k] + gm.edgeGp[e][k] + gm.edgeGpp[e][k];
        CHECK(total == t.edge_classes[e].multiplicity());
    }
}

TEST_CASE("twist labels cover every edge class once") {
    for (int n : {4, 5, 6, 7}) {
        auto labels = fk::twist_edge_labels(preset("twist_" + std::to_string(n)), n);
        std::set<std::string> seen(labels.begin(), labels.end());
        CHECK(seen.size() == labels.size());
        CHECK(seen.count("?") == 0);
        CHECK(seen.count("s") == 1);
    }
}

TEST_CASE("broken fixtures") {
    auto singular = fk::famed_check(fk::load_triangulation(data_path("singular_A.tri")));
    CHECK_FALSE(singular.famed);
    CHECK_FALSE(singular.detA_nonzero);
    auto infeasible = fk::famed_check(fk::load_triangulation(data_path("infeasible.tri")));
    CHECK_FALSE(infeasible.famed);
    CHECK_FALSE(infeasible.angle_space_nonempty);
}

TEST_CASE("conventions and options") {
    CHECK(fk::parse_convention("gpp-g") == fk::Convention::GppMinusG);
    CHECK(fk::to_string(fk::Convention::GppMinusGp) == "gpp-gp");
    CHECK_THROWS_AS(fk::parse_convention("gp"), fk::InputError);
    fk::NZOptions o;
    o.drop_edge = 7;
    CHECK_THROWS_AS(fk::nz_system(preset("fig8"), o), fk::InputError);
    o.drop_edge = -1;
    o.curve = "zz";
    CHECK_THROWS_AS(fk::nz_system(preset("fig8"), o), fk::InputError);
}

}
