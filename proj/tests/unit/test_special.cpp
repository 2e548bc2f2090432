#include "common.hpp"

#include <random>

TEST_SUITE("special_functions") {

using fk::cplx;

TEST_CASE("dilogarithm special values") {
    CHECK(std::abs(fk::dilog(1.0) - kPi * kPi / 6) < 1e-14);
    CHECK(std::abs(fk::dilog(-1.0) + kPi * kPi / 12) < 1e-14);
    CHECK(std::abs(fk::dilog(0.5) - (kPi * kPi / 12 - 0.5 * std::log(2.0) * std::log(2.0))) < 1e-14);
    CHECK(std::abs(fk::dilog(0.0)) < 1e-16);
}

TEST_CASE("dilogarithm reflection") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 200; ++i) {
        cplx z(u(rng), u(rng));
        if (std::abs(z) < 1e-3 || std::abs(1.0 - z) < 1e-3) continue;
        cplx lhs = fk::dilog(z) + fk::dilog(1.0 - z);
        cplx rhs = kPi * kPi / 6 - std::log(z) * std::log(1.0 - z);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("Bloch-Wigner") {
    CHECK(fk::bloch_wigner(std::polar(1.0, kPi / 3)) == doctest::Approx(kVol41 / 2).epsilon(1e-14));
    cplx z(0.3, 0.8);
    CHECK(fk::bloch_wigner(1.0 / (1.0 - z)) == doctest::Approx(fk::bloch_wigner(z)).epsilon(1e-13));
    CHECK(fk::bloch_wigner(1.0 / z) == doctest::Approx(-fk::bloch_wigner(z)).epsilon(1e-13));
}

TEST_CASE("Clausen and Lobachevsky agree") {
    for (double x : {0.1, 0.5, 1.0, 1.4, 2.5})
        CHECK(fk::lobachevsky(x) == doctest::Approx(0.5 * fk::clausen2(2 * x)).epsilon(1e-13));
}

TEST_CASE("Phi_b at zero and b -> 1/b symmetry") {
    for (double b : {0.5, 0.8, 1.0}) {
        cplx expect = std::exp(cplx(0, kPi) * (b * b + 1 / (b * b)) / 24.0);
        CHECK(std::abs(fk::phi_b(0.0, b) - expect) < 1e-12);
        cplx z(0.4, 0.2);
        CHECK(std::abs(fk::phi_b(z, b) - fk::phi_b(z, 1 / b)) < 1e-11);
    }
}

TEST_CASE("Phi_b functional equation") {
    // Phi_b(z - i b / 2) = (1 + e^{2 pi b z}) Phi_b(z + i b / 2)
    for (double b : {0.6, 0.9}) {
        for (cplx z : {cplx(0.3, 0.0), cplx(-0.7, 0.1), cplx(1.2, -0.05)}) {
            cplx lhs = fk::phi_b(z - cplx(0, b / 2), b);
            cplx rhs = (1.0 + std::exp(2 * kPi * b * z)) * fk::phi_b(z + cplx(0, b / 2), b);
            CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(lhs));
        }
    }
}

TEST_CASE("Phi_b far field") {
    const double b = 0.7;
    CHECK(std::abs(fk::phi_b(-30.0, b) - 1.0) < 1e-12);
    cplx z(30.0, 0.1);
    cplx asym = std::exp(cplx(0, kPi) * z * z + cplx(0, kPi) * (b * b + 1 / (b * b)) / 12.0);
    CHECK(std::abs(fk::phi_b(z, b) / asym - 1.0) < 1e-12);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const auto& g = fk::gauss_rule(20);
    double s = 0, s38 = 0;
    for (size_t i = 0; i < g.x.size(); ++i) {
        s += g.w[i];
        s38 += g.w[i] * std::pow(g.x[i], 38);
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s38 == doctest::Approx(2.0 / 39).epsilon(1e-12));
}

TEST_CASE("semiclassical residual shrinks like b^2") {
    cplx z(0.2, 0.3);
    double r1 = fk::phi_b_semiclassical_residual(z, 0.2), r2 = fk::phi_b_semiclassical_residual(z, 0.1);
    CHECK(std::log(r1 / r2) / std::log(2.0) == doctest::Approx(2.0).epsilon(0.1));
}

}
