#include "effdiff/rotation.hpp"

#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>

using namespace effdiff;

TEST_CASE("rotation matrices at pinned angles") {
    const Matrix id3 = rotation_matrix(Rotation3{0, 0, 0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(id3(i, j) == doctest::Approx(i == j ? 1 : 0).epsilon(1e-15));

    const Matrix quarter = rotation_matrix(Rotation2{M_PI / 2});
    CHECK(quarter(0, 0) == doctest::Approx(0).epsilon(1e-15));
    CHECK(quarter(0, 1) == doctest::Approx(1));
    CHECK(quarter(1, 0) == doctest::Approx(-1));
    CHECK(quarter(1, 1) == doctest::Approx(0).epsilon(1e-15));

    // Hand product R1(pi/2) * R3(pi/2): alpha and beta quarter turns, gamma 0.
    const Matrix t = rotation_matrix(Rotation3{M_PI / 2, M_PI / 2, 0});
    const double expected[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(t(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-15));
}

TEST_CASE("rotation matrices are orthogonal with unit determinant") {
    RandomStream rng(11);
    for (int it = 0; it < 200; ++it) {
        const Matrix t2 = rotation_matrix(sample_rotation_2d(rng));
        CHECK(orthogonality_defect(t2) <= 1e-12);
        CHECK(determinant(t2) == doctest::Approx(1).epsilon(1e-12));

        const Matrix t3 = rotation_matrix(sample_rotation_3d(rng));
        CHECK(orthogonality_defect(t3) <= 1e-12);
        CHECK(determinant(t3) == doctest::Approx(1).epsilon(1e-12));
    }
}

TEST_CASE("angle range validation") {
    const Rotation2 negative{-0.1};
    const Rotation2 full_turn{2 * M_PI};
    const Rotation3 beta_out_of_range{0, 3.5, 0};
    const Rotation3 beta_at_pi{0, M_PI, 0};
    CHECK_THROWS_AS(rotation_matrix(negative), std::invalid_argument);
    CHECK_THROWS_AS(rotation_matrix(full_turn), std::invalid_argument);
    CHECK_THROWS_AS(rotation_matrix(beta_out_of_range), std::invalid_argument);
    CHECK_NOTHROW(rotation_matrix(beta_at_pi));
}

TEST_CASE("beta inverse CDF endpoints") {
    // u = 0.5 -> beta = pi/2; u = 0 -> beta = 0
    CHECK(std::acos(1.0 - 2.0 * 0.5) == doctest::Approx(M_PI / 2));
    CHECK(std::acos(1.0 - 2.0 * 0.0) == doctest::Approx(0.0));
}

TEST_CASE("Haar uniformity moments") {
    const int n = 100000;

    SUBCASE("2D: mean of cos(phi) vanishes") {
        RandomStream rng(314159);
        double mean_cos = 0;
        for (int i = 0; i < n; ++i) mean_cos += std::cos(sample_rotation_2d(rng).phi);
        mean_cos /= n;
        CHECK(std::abs(mean_cos) <= 0.01);
    }

    SUBCASE("2D: second moment of a rotated unit vector is I/2") {
        RandomStream rng(7);
        const double v[2] = {1, 0};
        double m[2][2] = {};
        for (int i = 0; i < n; ++i) {
            const Matrix t = rotation_matrix(sample_rotation_2d(rng));
            double tv[2] = {};
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) tv[r] += t(r, c) * v[c];
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) m[r][c] += tv[r] * tv[c];
        }
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                CHECK(std::abs(m[r][c] / n - (r == c ? 0.5 : 0.0)) <= 0.01);
    }

    SUBCASE("3D: second moment of a rotated unit vector is I/3") {
        RandomStream rng(42);
        const double v[3] = {0, 0, 1};
        double m[3][3] = {};
        double mean[3] = {};
        for (int i = 0; i < n; ++i) {
            const Matrix t = rotation_matrix(sample_rotation_3d(rng));
            double tv[3] = {};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) tv[r] += t(r, c) * v[c];
            for (int r = 0; r < 3; ++r) {
                mean[r] += tv[r];
                for (int c = 0; c < 3; ++c) m[r][c] += tv[r] * tv[c];
            }
        }
        for (int r = 0; r < 3; ++r) {
            CHECK(std::abs(mean[r] / n) <= 0.01);
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(m[r][c] / n - (r == c ? 1.0 / 3.0 : 0.0)) <= 0.01);
        }
    }
}
