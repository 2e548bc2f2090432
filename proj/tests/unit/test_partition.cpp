#include "common.hpp"

TEST_SUITE("partition_jones") {

using fk::cplx;

fk::AngleStructure regular() {
    return {std::vector<double>(6, kPi / 3)};
}

TEST_CASE("contour stays inside the analyticity band") {
    auto t = preset("fig8");
    for (double b : {1.0, 0.6, 0.4}) {
        auto ps = fk::partition_setup(t, regular(), b);
        auto c = fk::make_contour(ps, b);
        for (size_t k = 0; k < c.shift.size(); ++k) {
            CHECK(std::abs(c.shift[k]) < kPi * (1 + b * b));
            CHECK(c.half_length[k] > 0);
        }
    }
}

TEST_CASE("unscaled and scaled contours give the same modulus") {
    auto t = preset("fig8");
    fk::ContourOptions plain;
    plain.scaling = fk::ContourScaling::Unscaled;
    const double b = 0.8;
    double a = fk::partition_modulus(t, regular(), b);
    double p = fk::partition_modulus(t, regular(), b, plain);
    CHECK(std::abs(a - p) < 1e-8 * a);
}

TEST_CASE("node refinement converges") {
    auto t = preset("fig8");
    fk::ContourOptions fine;
    fine.nodes = 400;
    double coarse = fk::partition_modulus(t, regular(), 1.0);
    double f = fk::partition_modulus(t, regular(), 1.0, fine);
    CHECK(std::abs(coarse - f) < 1e-8 * f);
    CHECK(f == doctest::Approx(0.27639320225002).epsilon(1e-10));
}

TEST_CASE("quadrature refuses large triangulations") {
    auto t = preset("twist_5");
    auto vr = fk::maximize_volume(t);
    CHECK_THROWS_AS(fk::partition_modulus(t, vr.maximizer, 0.8), fk::QuadratureError);
}

TEST_CASE("prediction carries volume and torsion") {
    auto p = fk::predicted_modulus(preset("fig8"), regular(), 0.6);
    CHECK(p.volume == doctest::Approx(kVol41).epsilon(1e-12));
    CHECK(std::abs(p.tau - 3.0) < 1e-10);
    CHECK(p.prefactor == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("Jones function of fig8 is real and even on the real line") {
    auto t = preset("fig8");
    const double b = 0.8;
    auto js = fk::jones_setup(t, regular(), b);
    fk::ContourOptions o;
    o.nodes = 400;
    auto c = fk::jones_contour(js, b, o);
    fk::JonesIntegrator J(js, b, c);
    for (double x : {0.0, 0.5, 1.3}) {
        cplx v = J(x), w = J(-x);
        CHECK(std::abs(v.imag()) < 1e-9 * std::abs(v));
        CHECK(std::abs(v - w) < 1e-9 * std::abs(v));
        CHECK(std::abs(v - fk::jones_function(js, x, b, c)) < 1e-14 * std::abs(v));
    }
    // the phase is constant, so its derivative vanishes
    const double h = 1e-4;
    double dphase = (std::arg(J(0.7 + h)) - std::arg(J(0.7 - h))) / (2 * h);
    CHECK(std::abs(dphase) < 1e-6);
}

TEST_CASE("synthetic asymptotic fit") {
    const double vol = 1.7, c2 = -0.2, pre = 0.8;
    std::vector<fk::AsymptoticSample> s;
    for (double b : {1.0, 0.8, 0.6, 0.5, 0.45, 0.4}) {
        double h = b * b;
        double lg = (-vol + 2 * kPi * h * std::log(pre) + c2 * h * h) / (2 * kPi * h);
        s.push_back({b, std::exp(lg)});
    }
    auto r = fk::fit_asymptotics(s, vol, pre);
    CHECK(r.fitted_rate == doctest::Approx(-vol).epsilon(1e-8));
    CHECK(r.fitted_prefactor == doctest::Approx(pre).epsilon(1e-6));
    CHECK(r.partial_rates.size() == s.size());
}

TEST_CASE("fit rejects bad sample sets") {
    CHECK_THROWS_AS(fk::fit_asymptotics({{1.0, 0.5}, {0.8, 0.4}}, 1.0), std::invalid_argument);
    CHECK_THROWS(fk::fit_asymptotics({{1.0, 0.5}, {0.8, 0.6}, {0.6, 0.4}, {0.5, 0.3}}, 1.0));
}

TEST_CASE("Richardson extrapolation recovers a polynomial") {
    std::vector<double> t{1, 0.64, 0.36, 0.25}, y;
    for (double x : t) y.push_back(2 - 3 * x + x * x);
    CHECK(fk::extrapolate_to_zero(t, y, 2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("operator polynomials on the geometric branch") {
    auto t = preset("fig8");
    auto pts = fk::default_branch_samples(8);
    auto geometric = fk::load_polynomial(std::string(FAMEDKIT_PRESET_SOURCE) + "/fig8.apoly");
    CHECK(fk::aj_evaluate(geometric, t, pts).max_abs < 1e-10);

    auto unit = fk::parse_polynomial("1 0 0\n");
    auto r = fk::aj_evaluate(unit, t, pts);
    CHECK(r.max_abs == doctest::Approx(1.0));

    // (L - 1) times the geometric factor still vanishes
    fk::OperatorPolynomial times;
    for (const auto& term : geometric.terms) {
        times.terms.push_back({term.coef, term.mpow, term.lpow + 1});
        times.terms.push_back({-term.coef, term.mpow, term.lpow});
    }
    CHECK(fk::aj_evaluate(times, t, pts).max_abs < 1e-9);

    CHECK_THROWS_AS(fk::parse_polynomial("1 8\n"), fk::InputError);
    CHECK_THROWS_AS(fk::parse_polynomial("x 1 1\n"), fk::InputError);
    auto cpx = fk::parse_polynomial("# comment\n2,1 1 0\n");
    CHECK(std::abs(cpx(3.0, 5.0) - cplx(6, 3)) < 1e-15);
}

}
