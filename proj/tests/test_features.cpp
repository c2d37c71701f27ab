#include <doctest.h>

#include <array>
#include <cmath>

#include "test_util.hpp"
#include "wavefuse/features.hpp"

using namespace wavefuse;

namespace {

// Independent Hu oracle: raw geometric moments first, then central moments
// through the binomial identities, then the invariants. The production code
// accumulates central moments directly, so agreement is a real cross-check.
std::array<double, 7> hu_oracle(const Matrix& band) {
    const double vmin = *std::min_element(band.data.begin(), band.data.end());
    double m[4][4] = {};
    for (int y = 0; y < band.rows; ++y)
        for (int x = 0; x < band.cols; ++x) {
            const double f = band.at(y, x) - vmin;
            double xp = 1.0;
            for (int p = 0; p <= 3; ++p) {
                double yq = 1.0;
                for (int q = 0; q <= 3 - p; ++q) {
                    m[p][q] += xp * yq * f;
                    yq *= y;
                }
                xp *= x;
            }
        }
    if (m[0][0] == 0.0) return {};
    const double xb = m[1][0] / m[0][0], yb = m[0][1] / m[0][0];

    const double mu20 = m[2][0] - xb * m[1][0];
    const double mu02 = m[0][2] - yb * m[0][1];
    const double mu11 = m[1][1] - xb * m[0][1];
    const double mu30 = m[3][0] - 3.0 * xb * m[2][0] + 2.0 * xb * xb * m[1][0];
    const double mu21 = m[2][1] - 2.0 * xb * m[1][1] - yb * m[2][0] + 2.0 * xb * xb * m[0][1];
    const double mu12 = m[1][2] - 2.0 * yb * m[1][1] - xb * m[0][2] + 2.0 * yb * yb * m[1][0];
    const double mu03 = m[0][3] - 3.0 * yb * m[0][2] + 2.0 * yb * yb * m[0][1];

    const double s2 = m[0][0] * m[0][0];
    const double s3 = std::pow(m[0][0], 2.5);
    const double n20 = mu20 / s2, n02 = mu02 / s2, n11 = mu11 / s2;
    const double n30 = mu30 / s3, n21 = mu21 / s3, n12 = mu12 / s3, n03 = mu03 / s3;
    const double a = n30 + n12, b = n21 + n03, c = n30 - 3.0 * n12, d = 3.0 * n21 - n03;

    return {n20 + n02,
            (n20 - n02) * (n20 - n02) + 4.0 * n11 * n11,
            c * c + d * d,
            a * a + b * b,
            c * a * (a * a - 3.0 * b * b) + d * b * (3.0 * a * a - b * b),
            (n20 - n02) * (a * a - b * b) + 4.0 * n11 * a * b,
            d * a * (a * a - 3.0 * b * b) - c * b * (3.0 * a * a - b * b)};
}

Matrix hu_fixture() {
    Matrix m(5, 4);
    const double rows[5][4] = {{1.5, -2.0, 3.0, 0.5},
                               {-1.0, 4.0, -0.5, 2.5},
                               {0.0, 1.0, -3.0, 1.0},
                               {2.0, -1.5, 0.5, -2.0},
                               {3.5, 0.0, 1.0, 0.5}};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 4; ++c) m.at(r, c) = rows[r][c];
    return m;
}

} // namespace

TEST_CASE("band statistics on a hand-computable band") {
    Matrix band(2, 2);
    band.at(0, 0) = 0.0;
    band.at(0, 1) = 0.0;
    band.at(1, 0) = 0.0;
    band.at(1, 1) = 4.0;
    const auto s = band_statistics(band);
    CHECK(s[0] == 0.0);                                       // median of 0,0,0,4
    CHECK(s[1] == doctest::Approx(1.7320508075688772));       // population stddev
    CHECK(s[2] == doctest::Approx(3.0));                      // population variance
}

TEST_CASE("median averages the middle pair on even counts") {
    Matrix even(1, 4);
    even.data = {4.0, 1.0, 3.0, 2.0};
    CHECK(band_statistics(even)[0] == doctest::Approx(2.5));

    Matrix odd(1, 3);
    odd.data = {9.0, -1.0, 2.0};
    CHECK(band_statistics(odd)[0] == 2.0);
}

TEST_CASE("hu invariants match values frozen from an external implementation") {
    const auto s = band_statistics(hu_fixture());
    CHECK(std::abs(s[3] - 0.049646420478834129) < 1e-14);
    CHECK(std::abs(s[4] - 0.000201300951182144) < 1e-14);
    CHECK(std::abs(s[5] - 2.5450753673837331e-07) < 1e-14);
    CHECK(std::abs(s[6] - 4.4851438600532684e-07) < 1e-14);
    CHECK(std::abs(s[7] - (-4.0381779551644179e-14)) < 1e-15);
    CHECK(std::abs(s[8] - 3.2218967319035725e-09) < 1e-14);
    CHECK(std::abs(s[9] - 1.4605606086586379e-13) < 1e-15);
}

TEST_CASE("production moments agree with the raw-moment oracle") {
    for (int seed : {2, 3, 4, 5}) {
        const Matrix band = testutil::random_plane(9, 13, seed, -40.0, 60.0);
        const auto s = band_statistics(band);
        const auto h = hu_oracle(band);
        for (int i = 0; i < 7; ++i)
            CHECK(std::abs(s[3 + i] - h[i]) < 1e-12 * std::max(1.0, std::abs(h[i])));
    }
}

TEST_CASE("constant bands carry no moment mass") {
    const Matrix band(6, 6, 3.25);
    const auto s = band_statistics(band);
    CHECK(s[0] == 3.25);
    CHECK(s[1] == 0.0);
    CHECK(s[2] == 0.0);
    for (int i = 3; i < 10; ++i) CHECK(s[i] == 0.0);
}

TEST_CASE("transposing a band flips only the seventh invariant") {
    const Matrix band = testutil::random_plane(8, 11, 77, 0.0, 50.0);
    Matrix t(band.cols, band.rows);
    for (int r = 0; r < band.rows; ++r)
        for (int c = 0; c < band.cols; ++c) t.at(c, r) = band.at(r, c);

    const auto s = band_statistics(band);
    const auto st = band_statistics(t);
    // relative with a tiny absolute floor, since the invariants span many
    // orders of magnitude
    for (int i = 3; i < 9; ++i)
        CHECK(std::abs(st[i] - s[i]) < 1e-9 * std::abs(s[i]) + 1e-18);
    CHECK(std::abs(st[9] + s[9]) < 1e-6 * std::abs(s[9]) + 1e-18);
    CHECK(s[9] != 0.0);
}

TEST_CASE("hu invariants ignore where the pattern sits") {
    Matrix a(12, 12, 0.0), b(12, 12, 0.0);
    const double blob[3][3] = {{1, 2, 1}, {2, 9, 2}, {1, 2, 4}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            a.at(r + 1, c + 2) = blob[r][c];
            b.at(r + 6, c + 7) = blob[r][c];
        }
    const auto sa = band_statistics(a);
    const auto sb = band_statistics(b);
    for (int i = 3; i < 10; ++i)
        CHECK(std::abs(sa[i] - sb[i]) < 1e-9 * std::abs(sa[i]) + 1e-15);
}

TEST_CASE("empty bands are rejected") {
    CHECK_THROWS_AS(band_statistics(Matrix()), EmptyBand);
}

TEST_CASE("feature vector concatenates the level-2 bands in order") {
    const Matrix plane = testutil::textured_plane(32, 32, 12);
    const Decomposition d = dwt_forward(plane);
    const FeatureVector fv = extract_features(d);
    REQUIRE(FeatureVector::size == 40);

    const BandKind order[4] = {BandKind::LL, BandKind::LH, BandKind::HL, BandKind::HH};
    for (int b = 0; b < 4; ++b) {
        const auto s = band_statistics(d.band(order[b], 2));
        for (int i = 0; i < 10; ++i) CHECK(fv.values[10 * b + i] == s[i]);
    }
}

TEST_CASE("features of a constant image reduce to the approximation level") {
    Matrix plane(8, 8, 1.0);
    const FeatureVector fv = extract_features(dwt_forward(plane));
    CHECK(fv.values[0] == doctest::Approx(4.0).epsilon(1e-12)); // LL2 median
    for (int i = 1; i < 40; ++i) CHECK(std::abs(fv.values[i]) < 1e-12);
}
