#include "wavefuse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wavefuse {
namespace {

constexpr long kParGrain = 64 * 1024;

// Per-thread partial sums combined in thread order; totals are reproducible
// run to run because static scheduling fixes each thread's index range.
template <class Term>
double indexed_sum(long n, Term term) {
#ifdef _OPENMP
    if (n >= kParGrain) {
        std::vector<double> partial(omp_get_max_threads(), 0.0);
#pragma omp parallel
        {
            double local = 0.0;
#pragma omp for schedule(static) nowait
            for (long i = 0; i < n; ++i) local += term(i);
            partial[omp_get_thread_num()] = local;
        }
        double total = 0.0;
        for (double p : partial) total += p;
        return total;
    }
#endif
    double total = 0.0;
    for (long i = 0; i < n; ++i) total += term(i);
    return total;
}

void require_single(const ImageBuffer& img, const char* who) {
    if (img.channels != 1)
        throw NotGrayscale(std::string(who) + ": expected a single-channel image");
}

void require_triple(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f,
                    const char* who) {
    require_single(v, who);
    require_single(t, who);
    require_single(f, who);
    if (!v.same_shape(f) || !t.same_shape(f))
        throw ShapeMismatch(std::string(who) + ": images must share dimensions");
}

// I(A;B) in bits from the 256x256 joint histogram of two quantized planes.
double joint_information(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    std::vector<std::uint64_t> joint(256 * 256, 0);
    std::array<std::uint64_t, 256> ma{}, mb{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++joint[static_cast<std::size_t>(a[i]) * 256 + b[i]];
        ++ma[a[i]];
        ++mb[b[i]];
    }
    const double n = static_cast<double>(a.size());
    double info = 0.0;
    for (int i = 0; i < 256; ++i) {
        if (!ma[i]) continue;
        for (int j = 0; j < 256; ++j) {
            const std::uint64_t c = joint[static_cast<std::size_t>(i) * 256 + j];
            if (!c) continue;
            const double pij = c / n;
            const double pi = ma[i] / n;
            const double pj = mb[j] / n;
            info += pij * std::log2(pij / (pi * pj));
        }
    }
    return info;
}

// Universal quality index of one (source, fused) pair. Sample statistics
// with N-1 normalization; constant inputs make the variance terms vanish.
double wang_bovik_q(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
    const long n = static_cast<long>(x.size());
    if (n < 2) throw DegenerateInput("quality index needs at least 2 pixels");
    const double nx = static_cast<double>(n);
    const double xm = indexed_sum(n, [&](long i) { return double(x[i]); }) / nx;
    const double ym = indexed_sum(n, [&](long i) { return double(y[i]); }) / nx;
    const double sxx = indexed_sum(n, [&](long i) { return (x[i] - xm) * (x[i] - xm); }) / (nx - 1);
    const double syy = indexed_sum(n, [&](long i) { return (y[i] - ym) * (y[i] - ym); }) / (nx - 1);
    const double sxy = indexed_sum(n, [&](long i) { return (x[i] - xm) * (y[i] - ym); }) / (nx - 1);
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateInput("quality index undefined for constant images");
    const double lum = xm * xm + ym * ym;
    if (lum == 0.0) throw DegenerateInput("quality index undefined for all-zero images");
    const double sx = std::sqrt(sxx), sy = std::sqrt(syy);
    return (sxy / (sx * sy)) * (2.0 * xm * ym / lum) * (2.0 * sx * sy / (sxx + syy));
}

double mean_sq_error(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    const long n = static_cast<long>(a.size());
    const double s = indexed_sum(n, [&](long i) {
        const double d = double(a[i]) - double(b[i]);
        return d * d;
    });
    return s / static_cast<double>(n);
}

std::string fmt_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::vector<std::uint8_t> quantize_plane(const ImageBuffer& img, int channel) {
    std::vector<std::uint8_t> out(img.plane_size());
    const double* src = img.samples.data() + channel * img.plane_size();
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(std::lround(std::clamp(src[i], 0.0, 255.0)));
    return out;
}

Histogram histogram_of(const ImageBuffer& single_channel) {
    require_single(single_channel, "histogram_of");
    Histogram h;
    for (std::uint8_t v : quantize_plane(single_channel)) h.add(v);
    return h;
}

double entropy(const ImageBuffer& img) {
    const Histogram h = histogram_of(img);
    double e = 0.0;
    for (int i = 0; i < 256; ++i) {
        const double p = h.p(i);
        if (p > 0.0) e -= p * std::log2(p);
    }
    return e;
}

double mutual_information(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f) {
    require_triple(v, t, f, "mutual_information");
    const auto qf = quantize_plane(f);
    return joint_information(qf, quantize_plane(v)) + joint_information(qf, quantize_plane(t));
}

double rmse(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f) {
    require_triple(v, t, f, "rmse");
    const auto qf = quantize_plane(f);
    return 0.5 * (std::sqrt(mean_sq_error(qf, quantize_plane(v))) +
                  std::sqrt(mean_sq_error(qf, quantize_plane(t))));
}

double psnr(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f) {
    require_triple(v, t, f, "psnr");
    const auto qf = quantize_plane(f);
    const double mse =
        0.5 * (mean_sq_error(qf, quantize_plane(v)) + mean_sq_error(qf, quantize_plane(t)));
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double quality_index(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f) {
    require_triple(v, t, f, "quality_index");
    const auto qf = quantize_plane(f);
    return 0.5 * (wang_bovik_q(quantize_plane(v), qf) + wang_bovik_q(quantize_plane(t), qf));
}

double spatial_frequency(const ImageBuffer& f) {
    require_single(f, "spatial_frequency");
    if (f.width < 2 || f.height < 2)
        throw ImageTooSmall("spatial_frequency needs at least 2x2 pixels");
    const auto q = quantize_plane(f);
    const int w = f.width, h = f.height;
    const double mn = static_cast<double>(w) * h;

    const double row_sq = indexed_sum(static_cast<long>(h) * (w - 1), [&](long i) {
        const int y = static_cast<int>(i / (w - 1));
        const int x = static_cast<int>(i % (w - 1)) + 1;
        const double d = double(q[std::size_t(y) * w + x]) - double(q[std::size_t(y) * w + x - 1]);
        return d * d;
    });
    const double col_sq = indexed_sum(static_cast<long>(h - 1) * w, [&](long i) {
        const int y = static_cast<int>(i / w) + 1;
        const int x = static_cast<int>(i % w);
        const double d = double(q[std::size_t(y) * w + x]) - double(q[std::size_t(y - 1) * w + x]);
        return d * d;
    });
    return std::sqrt(row_sq / mn + col_sq / mn);
}

MetricReport full_report(const ImageBuffer& v, const ImageBuffer& t, const ImageBuffer& f) {
    if (!v.same_shape(f) || !t.same_shape(f))
        throw ShapeMismatch("full_report: images must be registered to the same shape");
    const auto pv = split_channels(v);
    const auto pt = split_channels(t);
    const auto pf = split_channels(f);
    const int ch = f.channels;

    MetricReport r;
    double qi_sum = 0.0;
    for (int c = 0; c < ch; ++c) {
        r.ie += entropy(pf[c]);
        r.mi += mutual_information(pv[c], pt[c], pf[c]);
        r.rmse += rmse(pv[c], pt[c], pf[c]);
        r.psnr += psnr(pv[c], pt[c], pf[c]);
        r.sf += spatial_frequency(pf[c]);
        if (!r.qi_degenerate) {
            try {
                qi_sum += quality_index(pv[c], pt[c], pf[c]);
            } catch (const DegenerateInput&) {
                r.qi_degenerate = true;
            }
        }
    }
    const double nch = static_cast<double>(ch);
    r.ie /= nch;
    r.mi /= nch;
    r.rmse /= nch;
    r.psnr /= nch; // stays +inf when any channel matched exactly
    r.sf /= nch;
    r.qi = r.qi_degenerate ? 0.0 : qi_sum / nch;
    return r;
}

std::string report_to_json(const MetricReport& r) {
    nlohmann::ordered_json j;
    j["ie"] = r.ie;
    j["mi"] = r.mi;
    j["rmse"] = r.rmse;
    if (std::isinf(r.psnr))
        j["psnr"] = "inf";
    else
        j["psnr"] = r.psnr;
    if (r.qi_degenerate)
        j["qi"] = "degenerate";
    else
        j["qi"] = r.qi;
    j["sf"] = r.sf;
    return j.dump();
}

std::string report_to_csv(const MetricReport& r) {
    std::string line = fmt_fixed(r.ie) + "," + fmt_fixed(r.mi) + "," + fmt_fixed(r.rmse) + ",";
    line += std::isinf(r.psnr) ? "inf" : fmt_fixed(r.psnr);
    line += ",";
    line += r.qi_degenerate ? "degenerate" : fmt_fixed(r.qi);
    line += "," + fmt_fixed(r.sf);
    return "ie,mi,rmse,psnr,qi,sf\n" + line + "\n";
}

} // namespace wavefuse
