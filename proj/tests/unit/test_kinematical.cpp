#include "common.hpp"

TEST_SUITE("kinematical") {

TEST_CASE("Q is symmetric and scriptG follows from Q on every preset") {
    for (const auto& name : all_presets()) {
        auto km = fk::kinematical(preset(name));
        CHECK(km.detA != 0);
        CHECK(fk::is_symmetric(km.Q));
        const size_t n = km.Q.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                fk::Rational g = -2 * km.signs[i] * km.signs[j] * km.Q[i][j];
                if (i == j && km.signs[i] > 0) g += 1;
                CHECK(km.scriptG[i][j] == g);
            }
    }
}

TEST_CASE("R, A, B shapes") {
    auto km = fk::kinematical(preset("twist_6"));
    const size_t n = 5;
    CHECK(km.R.size() == n);
    CHECK(km.R[0].size() == 2 * n);
    CHECK(km.A.size() == 2 * n);
    CHECK(km.B[0].size() == n);
    for (size_t j = 0; j < n; ++j) {
        long row = 0;
        for (long v : km.R[j]) row += std::abs(v);
        CHECK(row == 1);
    }
}

TEST_CASE("singular A is detected") {
    auto t = fk::load_triangulation(data_path("singular_A.tri"));
    auto km = fk::kinematical(t);
    CHECK(km.detA == 0);
    CHECK(km.Q.empty());
    CHECK_THROWS_AS(fk::compute_Q(km), fk::SingularMatrix);
}

TEST_CASE("exact rational helpers") {
    fk::RatMatrix m{{2, 1}, {fk::Rational(1, 2), 3}};
    CHECK(fk::determinant(m) == fk::Rational(11, 2));
    CHECK(fk::equal(fk::multiply(m, fk::inverse(m)), fk::identity(2)));
    CHECK(fk::to_string(fk::Rational(-3, 6)) == "-1/2");
    CHECK_THROWS(fk::inverse(fk::RatMatrix{{1, 2}, {2, 4}}));
    CHECK_THROWS(fk::determinant(fk::RatMatrix{{1, 2}}));
}

}
