#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavefuse/imgio.hpp"
#include "wavefuse/optimizer.hpp"
#include "wavefuse/wavelet.hpp"

namespace wavefuse {

enum class FusionRule { max_magnitude, ga_weighted };

// The four pipelines: dwt, udwt (max-magnitude rule) and dwt-ga, udwt-ga
// (weights estimated per channel by optimize_weights).
struct FusionMethod {
    TransformKind transform = TransformKind::decimated;
    FusionRule rule = FusionRule::max_magnitude;
};

std::optional<FusionMethod> parse_method(std::string_view name);
std::string method_name(const FusionMethod& m);
std::vector<std::string> method_names(); // all four, canonical order

// Band-wise combination of two matching decompositions. The max rule keeps
// the larger-magnitude detail coefficient (first input on ties) and averages
// the approximation band; the weighted rule blends every band as
// wv*a + wt*b. Throws TransformMismatch / ShapeMismatch.
Decomposition fuse_bands_max(const Decomposition& a, const Decomposition& b);
Decomposition fuse_bands_weighted(const Decomposition& a, const Decomposition& b, WeightPair w);

struct FusionResult {
    ImageBuffer fused;
    // Present for GA methods: headline pair (mean of per-channel wv) plus
    // the per-channel pairs and optimizer traces in channel order.
    std::optional<WeightPair> weights;
    std::vector<WeightPair> per_channel_weights;
    std::vector<GaTrace> traces;
};

// Fuses a registered pair channel by channel: decompose both planes, combine
// bands per the method's rule, invert, then clamp samples to [0,255] once at
// the end. Inputs must agree in shape and channel count (ShapeMismatch).
FusionResult fuse(const ImageBuffer& a, const ImageBuffer& b, const FusionMethod& method,
                  const GaConfig& cfg = {});

} // namespace wavefuse
