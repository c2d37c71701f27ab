#include "wavefuse/features.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wavefuse {
namespace {

// Hu's seven invariants over the band shifted so its minimum is zero, which
// can serve as a nonnegative density. An exactly constant band has no mass
// after the shift (m00 == 0); its invariants are defined as zero rather than
// dividing by zero. x runs along columns, y along rows.
std::array<double, 7> hu_moments(const Matrix& band) {
    const double vmin = *std::min_element(band.data.begin(), band.data.end());

    double m00 = 0.0, m10 = 0.0, m01 = 0.0;
    for (int y = 0; y < band.rows; ++y)
        for (int x = 0; x < band.cols; ++x) {
            const double f = band.at(y, x) - vmin;
            m00 += f;
            m10 += x * f;
            m01 += y * f;
        }
    if (m00 == 0.0) return {};

    const double xb = m10 / m00, yb = m01 / m00;
    double mu20 = 0.0, mu02 = 0.0, mu11 = 0.0;
    double mu30 = 0.0, mu21 = 0.0, mu12 = 0.0, mu03 = 0.0;
    for (int y = 0; y < band.rows; ++y)
        for (int x = 0; x < band.cols; ++x) {
            const double f = band.at(y, x) - vmin;
            const double dx = x - xb, dy = y - yb;
            mu20 += dx * dx * f;
            mu02 += dy * dy * f;
            mu11 += dx * dy * f;
            mu30 += dx * dx * dx * f;
            mu21 += dx * dx * dy * f;
            mu12 += dx * dy * dy * f;
            mu03 += dy * dy * dy * f;
        }

    const double s2 = std::pow(m00, 2.0); // 1 + (p+q)/2 with p+q == 2
    const double s3 = std::pow(m00, 2.5);
    const double n20 = mu20 / s2, n02 = mu02 / s2, n11 = mu11 / s2;
    const double n30 = mu30 / s3, n21 = mu21 / s3, n12 = mu12 / s3, n03 = mu03 / s3;

    const double a = n30 + n12; // x-heavy third-order sum
    const double b = n21 + n03; // y-heavy third-order sum
    const double c = n30 - 3.0 * n12;
    const double d = 3.0 * n21 - n03;

    std::array<double, 7> h{};
    h[0] = n20 + n02;
    h[1] = (n20 - n02) * (n20 - n02) + 4.0 * n11 * n11;
    h[2] = c * c + d * d;
    h[3] = a * a + b * b;
    h[4] = c * a * (a * a - 3.0 * b * b) + d * b * (3.0 * a * a - b * b);
    h[5] = (n20 - n02) * (a * a - b * b) + 4.0 * n11 * a * b;
    h[6] = d * a * (a * a - 3.0 * b * b) - c * b * (3.0 * a * a - b * b);
    return h;
}

} // namespace

std::array<double, 10> band_statistics(const Matrix& band) {
    if (band.size() == 0) throw EmptyBand("band_statistics: band has no coefficients");

    std::vector<double> sorted(band.data);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median =
        n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    double mean = 0.0;
    for (double v : band.data) mean += v;
    mean /= static_cast<double>(n);
    double variance = 0.0; // population normalization
    for (double v : band.data) variance += (v - mean) * (v - mean);
    variance /= static_cast<double>(n);

    std::array<double, 10> out{};
    out[0] = median;
    out[1] = std::sqrt(variance);
    out[2] = variance;
    const auto hu = hu_moments(band);
    std::copy(hu.begin(), hu.end(), out.begin() + 3);
    return out;
}

std::array<double, 10> band_statistics(const Subband& band) {
    return band_statistics(band.coeffs);
}

FeatureVector extract_features(const Decomposition& d) {
    FeatureVector fv;
    const BandKind order[4] = {BandKind::LL, BandKind::LH, BandKind::HL, BandKind::HH};
    for (int i = 0; i < 4; ++i) {
        const auto stats = band_statistics(d.band(order[i], 2));
        std::copy(stats.begin(), stats.end(), fv.values.begin() + 10 * i);
    }
    return fv;
}

} // namespace wavefuse
