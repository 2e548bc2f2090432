#include "common.hpp"

#include <random>

TEST_SUITE("geometry") {

using fk::cplx;
const cplx I(0, 1);

TEST_CASE("fig8 complete structure") {
    auto t = preset("fig8");
    auto sol = fk::solve_gluing(t, 0.0);
    REQUIRE(sol.converged);
    CHECK(sol.geometric);
    CHECK(sol.residual < 1e-12);
    for (auto z : sol.z) CHECK(std::abs(z - std::polar(1.0, kPi / 3)) < 1e-12);
    CHECK(fk::hyperbolic_volume(sol) == doctest::Approx(kVol41).epsilon(1e-12));
}

TEST_CASE("exact start takes no Newton steps") {
    auto t = preset("fig8");
    auto nz = fk::nz_system(t);
    std::vector<cplx> z0(2, std::polar(1.0, kPi / 3));
    auto sol = fk::solve_gluing(nz, t.signs(), 0.0, z0);
    CHECK(sol.converged);
    CHECK(sol.iterations == 0);
}

TEST_CASE("branch data and holonomies at cone deformations") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto sol = fk::solve_gluing(t, cplx(0, 0.1));
        REQUIRE_MESSAGE(sol.converged, name);
        CHECK(sol.residual < 1e-12);
        for (int k = 0; k < t.size(); ++k) {
            CHECK(std::abs(sol.log_z[k] + sol.log_zp(k) + sol.log_zpp[k] - I * kPi) < 1e-12);
            CHECK(std::abs(std::exp(sol.log_zp(k)) - 1.0 / (1.0 - sol.z[k])) < 1e-10);
            double s = -t.signs()[k];
            CHECK(s * sol.y[k].imag() > 0);
            CHECK(s * sol.y[k].imag() < kPi);
        }
        auto hl = fk::complex_holonomy(*t.curve("l"), sol);
        CHECK(std::abs(hl - cplx(0, 0.1)) < 1e-10);
    }
}

TEST_CASE("volume decreases under cone deformation") {
    auto t = preset("fig8");
    auto v0 = fk::hyperbolic_volume(fk::solve_gluing(t, 0.0));
    auto v1 = fk::hyperbolic_volume(fk::solve_gluing(t, cplx(0, 0.1)));
    CHECK(v1 < v0);
    CHECK(v1 == doctest::Approx(2.0291616251829).epsilon(1e-12));
}

TEST_CASE("potential gradient matches finite differences") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-2, 2), im(0.1, kPi - 0.1);
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto km = fk::kinematical(t);
        auto nz = fk::nz_system(t);
        auto pd = fk::potential_data(km, nz, 0.05);
        const int n = t.size();
        for (int trial = 0; trial < 20; ++trial) {
            fk::CVec y(n);
            for (int k = 0; k < n; ++k) y(k) = cplx(re(rng), pd.s(k) * im(rng));
            auto ev = fk::potential_S(y, pd);
            CHECK((ev.hessian - ev.hessian.transpose()).cwiseAbs().maxCoeff() < 1e-10);
            const double h = 1e-6;
            for (int k = 0; k < n; ++k) {
                fk::CVec yp = y, ym = y;
                yp(k) += h;
                ym(k) -= h;
                cplx d = (fk::potential_S(yp, pd).value - fk::potential_S(ym, pd).value) / (2 * h);
                CHECK(std::abs(d - ev.gradient(k)) < 1e-7);
                cplx dd = (fk::potential_S(yp, pd).gradient(k) - fk::potential_S(ym, pd).gradient(k)) / (2 * h);
                CHECK(std::abs(dd - ev.hessian(k, k)) < 1e-6);
            }
        }
    }
}

TEST_CASE("critical point is the geometric solution") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto km = fk::kinematical(t);
        auto nz = fk::nz_system(t);
        auto cp = fk::find_critical_point(nz, km, 0.0);
        REQUIRE(cp.solution.converged);
        CHECK(cp.gradient_norm < 1e-10);
        CHECK(cp.eval.value.real() == doctest::Approx(-fk::hyperbolic_volume(cp.solution)).epsilon(1e-9));
    }
}

TEST_CASE("Re S is strictly concave around the critical point") {
    auto t = preset("fig8");
    auto km = fk::kinematical(t);
    auto nz = fk::nz_system(t);
    auto cp = fk::find_critical_point(nz, km, 0.0);
    auto pd = fk::potential_data(km, nz, 0.0);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        fk::CVec dir(2);
        // real directions keep the imaginary parts inside the strip
        dir << g(rng), g(rng);
        dir /= dir.norm();
        for (double s : {0.05, 0.3, 1.0}) {
            fk::CVec y = cp.y + s * dir;
            CHECK(fk::potential_S(y, pd).value.real() < cp.eval.value.real());
        }
    }
}

TEST_CASE("perturbed starts reach the same critical point") {
    auto t = preset("twist_5");
    auto km = fk::kinematical(t);
    auto nz = fk::nz_system(t);
    auto ref = fk::find_critical_point(nz, km, 0.0);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (int trial = 0; trial < 10; ++trial) {
        auto z0 = ref.solution.z;
        for (auto& z : z0) z += cplx(u(rng), u(rng));
        auto cp = fk::find_critical_point(nz, km, 0.0, z0);
        CHECK((cp.y - ref.y).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("strip violation is rejected") {
    auto t = preset("fig8");
    auto km = fk::kinematical(t);
    auto nz = fk::nz_system(t);
    fk::CVec y(2);
    y << cplx(0, 1.0), cplx(0, 1.0);
    CHECK_THROWS_AS(fk::potential_S(y, 0.0, nz, km), std::domain_error);
}

}
