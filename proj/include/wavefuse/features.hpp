#pragma once

#include <array>
#include <span>

#include "wavefuse/wavelet.hpp"

namespace wavefuse {

// Ten descriptors of one subband, in order: median, standard deviation,
// variance (population), Hu invariant moments 1..7. Moments are taken over
// the band shifted so its minimum is zero; a band that is exactly constant
// has no mass and all seven moments are defined as zero.
std::array<double, 10> band_statistics(const Matrix& band);
std::array<double, 10> band_statistics(const Subband& band);

// Concatenated statistics of the four level-2 bands (LL2, LH2, HL2, HH2).
struct FeatureVector {
    static constexpr int size = 40;
    std::array<double, size> values{};

    std::span<const double> view() const { return {values.data(), values.size()}; }
};

FeatureVector extract_features(const Decomposition& d);

} // namespace wavefuse
