#include "wavefuse/fusion.hpp"

#include <algorithm>
#include <cmath>

namespace wavefuse {
namespace {

constexpr long kParGrain = 32 * 1024;

void check_compatible(const Decomposition& a, const Decomposition& b) {
    if (a.transform != b.transform)
        throw TransformMismatch("cannot fuse decompositions from different transforms");
    if (a.bands.size() != b.bands.size())
        throw ShapeMismatch("decompositions carry different band counts");
    for (std::size_t i = 0; i < a.bands.size(); ++i) {
        const auto& ba = a.bands[i];
        const auto& bb = b.bands[i];
        if (ba.kind != bb.kind || ba.level != bb.level || !ba.coeffs.same_shape(bb.coeffs))
            throw ShapeMismatch(std::string("band ") + band_name(ba.kind) +
                                std::to_string(ba.level) + " differs between inputs");
    }
    if (a.source_width != b.source_width || a.source_height != b.source_height)
        throw ShapeMismatch("decompositions have different source dimensions");
}

} // namespace

std::optional<FusionMethod> parse_method(std::string_view name) {
    if (name == "dwt") return FusionMethod{TransformKind::decimated, FusionRule::max_magnitude};
    if (name == "udwt")
        return FusionMethod{TransformKind::undecimated, FusionRule::max_magnitude};
    if (name == "dwt-ga") return FusionMethod{TransformKind::decimated, FusionRule::ga_weighted};
    if (name == "udwt-ga")
        return FusionMethod{TransformKind::undecimated, FusionRule::ga_weighted};
    return std::nullopt;
}

std::string method_name(const FusionMethod& m) {
    std::string name = m.transform == TransformKind::decimated ? "dwt" : "udwt";
    if (m.rule == FusionRule::ga_weighted) name += "-ga";
    return name;
}

std::vector<std::string> method_names() { return {"dwt", "udwt", "dwt-ga", "udwt-ga"}; }

Decomposition fuse_bands_max(const Decomposition& a, const Decomposition& b) {
    check_compatible(a, b);
    Decomposition out = a;
    for (std::size_t i = 0; i < out.bands.size(); ++i) {
        const double* pa = a.bands[i].coeffs.data.data();
        const double* pb = b.bands[i].coeffs.data.data();
        double* po = out.bands[i].coeffs.data.data();
        const long n = static_cast<long>(out.bands[i].coeffs.size());
        if (out.bands[i].kind == BandKind::LL) {
            // approximation carries brightness; average instead of picking
#pragma omp parallel for schedule(static) if (n >= kParGrain)
            for (long j = 0; j < n; ++j) po[j] = 0.5 * (pa[j] + pb[j]);
        } else {
#pragma omp parallel for schedule(static) if (n >= kParGrain)
            for (long j = 0; j < n; ++j) po[j] = std::abs(pa[j]) >= std::abs(pb[j]) ? pa[j] : pb[j];
        }
    }
    return out;
}

Decomposition fuse_bands_weighted(const Decomposition& a, const Decomposition& b, WeightPair w) {
    check_compatible(a, b);
    Decomposition out = a;
    for (std::size_t i = 0; i < out.bands.size(); ++i) {
        const double* pa = a.bands[i].coeffs.data.data();
        const double* pb = b.bands[i].coeffs.data.data();
        double* po = out.bands[i].coeffs.data.data();
        const long n = static_cast<long>(out.bands[i].coeffs.size());
#pragma omp parallel for schedule(static) if (n >= kParGrain)
        for (long j = 0; j < n; ++j) po[j] = w.wv * pa[j] + w.wt * pb[j];
    }
    return out;
}

FusionResult fuse(const ImageBuffer& a, const ImageBuffer& b, const FusionMethod& method,
                  const GaConfig& cfg) {
    if (!a.same_shape(b))
        throw ShapeMismatch("fuse: inputs must be registered to the same shape first");

    const bool undecimated = method.transform == TransformKind::undecimated;
    FusionResult result;
    std::vector<ImageBuffer> fused_planes;
    fused_planes.reserve(a.channels);

    for (int c = 0; c < a.channels; ++c) {
        const Matrix pa = plane_of(a, c);
        const Matrix pb = plane_of(b, c);
        const Decomposition da = undecimated ? udwt_forward(pa) : dwt_forward(pa);
        const Decomposition db = undecimated ? udwt_forward(pb) : dwt_forward(pb);

        Decomposition df;
        if (method.rule == FusionRule::max_magnitude) {
            df = fuse_bands_max(da, db);
        } else {
            const FeatureVector f1 = extract_features(da);
            const FeatureVector f2 = extract_features(db);
            OptimizeResult opt = optimize_weights(f1, f2, cfg);
            df = fuse_bands_weighted(da, db, opt.weights);
            result.per_channel_weights.push_back(opt.weights);
            result.traces.push_back(std::move(opt.trace));
        }
        Matrix plane = undecimated ? udwt_inverse(df) : dwt_inverse(df);
        fused_planes.push_back(image_from_plane(plane));
    }

    result.fused = merge_channels(fused_planes);
    // single clamp at the very end; samples are not rounded here
    for (double& s : result.fused.samples) s = std::clamp(s, 0.0, 255.0);

    if (method.rule == FusionRule::ga_weighted) {
        double mean_wv = 0.0;
        for (const auto& w : result.per_channel_weights) mean_wv += w.wv;
        mean_wv /= static_cast<double>(result.per_channel_weights.size());
        result.weights = WeightPair{mean_wv, 1.0 - mean_wv};
    }
    return result;
}

} // namespace wavefuse
