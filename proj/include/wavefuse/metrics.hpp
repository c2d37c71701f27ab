#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wavefuse/image.hpp"

namespace wavefuse {

// 256-bin intensity histogram. Metrics quantize samples first (clamp to
// [0,255], round half away from zero), so bin i counts intensity i exactly.
struct Histogram {
    std::array<std::uint64_t, 256> counts{};
    std::uint64_t total = 0;

    void add(int intensity) { ++counts[intensity]; ++total; }
    double p(int intensity) const {
        return total ? static_cast<double>(counts[intensity]) / static_cast<double>(total) : 0.0;
    }
};

std::vector<std::uint8_t> quantize_plane(const ImageBuffer& img, int channel = 0);
Histogram histogram_of(const ImageBuffer& single_channel);

// All metric functions take single-channel images of identical shape unless
// stated otherwise; ShapeMismatch / NotGrayscale otherwise. Multi-channel
// reports are produced by full_report, which averages per-channel values.

// Shannon entropy of the 256-bin histogram, in bits.
double entropy(const ImageBuffer& img);

// I(F;V) + I(F;T) from 256x256 joint histograms, in bits.
double mutual_information(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f);

// Mean of the two root-mean-square errors between f and each source.
double rmse(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f);

// 10*log10(255^2 / mse) where mse averages the squared errors against both
// sources; +infinity when the fused image equals both exactly.
double psnr(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f);

// Mean of the universal quality index Q(v,f) and Q(t,f) (sample statistics,
// N-1 normalization). Throws DegenerateInput when any involved image is
// constant, since Q divides by the variances.
double quality_index(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f);

// sqrt(RF^2 + CF^2) of horizontal/vertical first differences, each averaged
// over all M*N pixels. Requires at least 2x2.
double spatial_frequency(const ImageBuffer& f);

struct MetricReport {
    double ie = 0.0;
    double mi = 0.0;
    double rmse = 0.0;
    double psnr = 0.0; // +inf when images agree exactly
    double qi = 0.0;   // unset when qi_degenerate
    double sf = 0.0;
    bool qi_degenerate = false;
};

// Runs all six metrics on a registered triple, averaging channels for RGB.
// A DegenerateInput from the quality index is reported via qi_degenerate
// instead of escaping.
MetricReport full_report(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f);

// Fixed field order ie, mi, rmse, psnr, qi, sf. Infinite PSNR serializes as
// the JSON string "inf" / bare inf in CSV; a degenerate QI as "degenerate".
std::string report_to_json(const MetricReport& r);
std::string report_to_csv(const MetricReport& r); // header line + value line

} // namespace wavefuse
