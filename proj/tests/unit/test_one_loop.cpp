#include "common.hpp"

TEST_SUITE("one_loop") {

using fk::cplx;

TEST_CASE("integer systems") {
    fk::IntMatrix M{{2, 4}, {1, 3}};
    auto x = fk::solve_integer_system(M, {6, 4});
    CHECK(x == std::vector<long>{1, 1});
    CHECK_THROWS_AS(fk::solve_integer_system(fk::IntMatrix{{2, 4}}, {3}), fk::NoIntegerSolution);
    // columns span the kernel
    auto K = fk::integer_kernel(fk::IntMatrix{{1, 1, 1}});
    REQUIRE(K.size() == 3);
    CHECK(K[0].size() == 2);
    for (size_t j = 0; j < K[0].size(); ++j) CHECK(K[0][j] + K[1][j] + K[2][j] == 0);
}

TEST_CASE("strong flattenings on every preset") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto fl = fk::strong_flattening(t);
        CHECK(fk::is_valid_flattening(t, fl));
        for (long r : fk::flattening_residual(t, fl)) CHECK(r == 0);
        for (int k = 0; k < t.size(); ++k) CHECK(fl.f[k] + fl.fp[k] + fl.fpp[k] == 1);
        CHECK(fl.strong);
    }
}

TEST_CASE("fig8 torsion is 3") {
    auto t = preset("fig8");
    auto nz = fk::nz_system(t);
    auto sol = fk::solve_gluing(t, 0.0);
    auto v = fk::one_loop_tau(nz, sol, fk::strong_flattening(t));
    CHECK(std::abs(v.tau - 3.0) < 1e-12);
}

TEST_CASE("B = I fixture") {
    fk::NZSystem nz;
    nz.A = {{1, 0}, {0, 2}};
    nz.B = {{1, 0}, {0, 1}};
    fk::ShapeSolution sol;
    sol.z = {cplx(0.3, 0.7), cplx(-0.2, 1.1)};
    fk::Flattening fl{{0, 0}, {1, 1}, {0, 0}, false, {}};
    cplx expect = 0.5;
    for (int k = 0; k < 2; ++k) {
        cplx zpp = 1.0 - 1.0 / sol.z[k];
        expect *= double(nz.A[k][k]) * zpp + 1.0 / sol.z[k];
    }
    CHECK(std::abs(fk::one_loop_tau_raw(nz, sol, fl) - expect) < 1e-14);
    fl.fpp = {1, 0};
    fl.fp = {0, 1};
    CHECK(std::abs(fk::one_loop_tau_raw(nz, sol, fl) - expect * sol.z[0]) < 1e-14);
}

TEST_CASE("sign normalization") {
    CHECK(std::abs(fk::normalize_sign(cplx(-3, 0)) - 3.0) < 1e-15);
    auto w = fk::normalize_sign(cplx(1, -1));
    CHECK(std::arg(w) >= 0);
    CHECK(std::arg(w) < kPi);
}

TEST_CASE("torsion does not depend on the flattening or dropped edge") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto fl = fk::strong_flattening(t);
        auto nz = fk::nz_system(t);
        auto sol = fk::solve_gluing(t, cplx(0, 0.1));
        auto ref = fk::one_loop_tau(nz, sol, fl).tau;
        // shift along the kernel of the flattening system
        const int n = t.size();
        fk::IntMatrix M;
        auto gm = fk::edge_incidence(t, "");
        for (size_t e = 0; e < gm.edgeG.size(); ++e) {
            std::vector<long> row(2 * n);
            for (int k = 0; k < n; ++k) {
                row[k] = gm.edgeG[e][k] - gm.edgeGp[e][k];
                row[n + k] = gm.edgeGpp[e][k] - gm.edgeGp[e][k];
            }
            M.push_back(row);
        }
        for (const auto& name_c : {"l", "m"}) {
            auto c = t.curve(name_c);
            std::vector<long> row(2 * n);
            for (int k = 0; k < n; ++k) {
                row[k] = c->C[k] - c->Cp[k];
                row[n + k] = c->Cpp[k] - c->Cp[k];
            }
            M.push_back(row);
        }
        auto K = fk::integer_kernel(M);
        for (size_t j = 0; j < K[0].size(); ++j) {
            auto other = fl;
            for (int k = 0; k < n; ++k) {
                other.f[k] += K[k][j];
                other.fpp[k] += K[n + k][j];
                other.fp[k] = 1 - other.f[k] - other.fpp[k];
            }
            REQUIRE(fk::is_valid_flattening(t, other));
            auto tau = fk::one_loop_tau(nz, sol, other).tau;
            CHECK(std::abs(tau - ref) < 1e-9 * std::abs(ref));
        }
        for (int e = 0; e < n; ++e) {
            fk::NZOptions o;
            o.drop_edge = e;
            auto tau = fk::one_loop_tau(fk::nz_system(t, o), sol, fl).tau;
            CHECK(std::abs(tau - ref) < 1e-9 * std::abs(ref));
        }
    }
}

TEST_CASE("Hessian-torsion bridge on every preset") {
    for (const auto& name : all_presets()) {
        auto t = preset(name);
        auto km = fk::kinematical(t);
        auto nz = fk::nz_system(t);
        auto fl = fk::strong_flattening(t);
        for (double lam : {0.0, 0.1}) {
            auto cp = fk::find_critical_point(nz, km, lam);
            auto hb = fk::hessian_torsion_bridge(nz, km, cp, fl);
            CHECK(hb.modulus_rel_error < 1e-8);
            CHECK(hb.phase_mod_pi_error < 1e-8);
        }
    }
}

}
