#include "common.hpp"

#include <random>

TEST_SUITE("angle_structures") {

TEST_CASE("simplex on a small LP") {
    // max x + 2y s.t. x + y + s = 4, x + 3y + t = 6
    Eigen::VectorXd c(4);
    c << 1, 2, 0, 0;
    Eigen::MatrixXd A(2, 4);
    A << 1, 1, 1, 0, 1, 3, 0, 1;
    Eigen::VectorXd b(2);
    b << 4, 6;
    auto r = fk::lp_maximize(c, A, b);
    REQUIRE(r.status == fk::LPResult::Optimal);
    CHECK(r.value == doctest::Approx(5.0));
    CHECK(r.x(0) == doctest::Approx(3.0));
    CHECK(r.x(1) == doctest::Approx(1.0));
    Eigen::VectorXd bad(2);
    bad << -1, 6;
    CHECK(fk::lp_maximize(c, A, bad).status == fk::LPResult::Infeasible);
}

TEST_CASE("Lobachevsky function") {
    CHECK(fk::lobachevsky(kPi / 3) * 6 == doctest::Approx(kVol41).epsilon(1e-13));
    CHECK(std::abs(fk::lobachevsky(0.0)) < 1e-15);
    CHECK(std::abs(fk::lobachevsky(kPi / 2)) < 1e-15);
    CHECK(fk::lobachevsky(0.7 + kPi) == doctest::Approx(fk::lobachevsky(0.7)).epsilon(1e-13));
    CHECK(fk::lobachevsky(-0.4) == doctest::Approx(-fk::lobachevsky(0.4)).epsilon(1e-13));
}

TEST_CASE("witness angle structures satisfy the constraints") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto w = fk::feasibility(t);
        REQUIRE(w);
        CHECK(fk::max_constraint_violation(t, *w) < 1e-10);
        for (double a : w->angles) CHECK(a > 0);
    }
    CHECK_FALSE(fk::feasibility(fk::load_triangulation(data_path("infeasible.tri"))));
}

TEST_CASE("volume functional is concave along segments of the polytope") {
    auto t = preset("twist_5");
    auto w = *fk::feasibility(t);
    auto vr = fk::maximize_volume(t);
    REQUIRE(vr.converged);
    auto lc = fk::angle_constraints(t);
    auto K = fk::null_space(lc.C);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd dir = K * Eigen::VectorXd::NullaryExpr(K.cols(), [&] { return g(rng); });
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(w.angles.data(), w.angles.size());
        double step = 1e9;
        for (int i = 0; i < dir.size(); ++i) {
            if (dir(i) > 0) step = std::min(step, (kPi - x(i)) / dir(i));
            if (dir(i) < 0) step = std::min(step, -x(i) / dir(i));
        }
        step *= 0.4;
        auto at = [&](double s) {
            Eigen::VectorXd v = x + s * dir;
            return fk::volume_functional({std::vector<double>(v.data(), v.data() + v.size())});
        };
        CHECK(at(0) >= 0.5 * (at(-step) + at(step)) - 1e-12);
        CHECK(at(0) <= vr.value + 1e-9);
    }
}

TEST_CASE("maximum on fig8 is the regular structure") {
    auto vr = fk::maximize_volume(preset("fig8"));
    CHECK(vr.converged);
    CHECK(vr.value == doctest::Approx(kVol41).epsilon(1e-12));
    for (double a : vr.maximizer.angles) CHECK(a == doctest::Approx(kPi / 3).epsilon(1e-9));
}

TEST_CASE("slices are symmetric for the amphichiral fig8") {
    auto t = preset("fig8");
    fk::VolumeOptions o;
    o.slice_theta = 0.25;
    auto plus = fk::maximize_volume(t, o);
    o.slice_theta = -0.25;
    auto minus = fk::maximize_volume(t, o);
    CHECK(plus.value == doctest::Approx(minus.value).epsilon(1e-10));
    CHECK(fk::angular_holonomy(t, plus.maximizer, *t.curve("l")) == doctest::Approx(0.25).epsilon(1e-9));
}

}
