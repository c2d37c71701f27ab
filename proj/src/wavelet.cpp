#include "wavefuse/wavelet.hpp"

#include <algorithm>
#include <cstddef>

namespace wavefuse {
namespace {

// Orthonormal Haar pair: h = (1/sqrt2, 1/sqrt2), g = (1/sqrt2, -1/sqrt2).
// Analysis of a pair (p, q):   a = (p + q)/sqrt2,  d = (p - q)/sqrt2
// Synthesis:                   p = (a + d)/sqrt2,  q = (a - d)/sqrt2
// The pair preserves p^2 + q^2 = a^2 + d^2, so total energy is conserved
// through every level of the decimated transform.
constexpr double kInvSqrt2 = 0.70710678118654752440;

constexpr long kParGrain = 32 * 1024;

const double* row_ptr(const Matrix& m, int r) {
    return m.data.data() + static_cast<std::size_t>(r) * m.cols;
}
double* row_ptr(Matrix& m, int r) {
    return m.data.data() + static_cast<std::size_t>(r) * m.cols;
}

// --- decimated kernels: pairs start at even offsets, an odd extent
// --- replicates its last sample so nothing is dropped

void analyze_rows(const Matrix& in, Matrix& lo, Matrix& hi) {
    const int h = in.rows, w = in.cols, wa = (w + 1) / 2;
    lo = Matrix(h, wa);
    hi = Matrix(h, wa);
#pragma omp parallel for schedule(static) if (in.size() >= kParGrain)
    for (int r = 0; r < h; ++r) {
        const double* x = row_ptr(in, r);
        double* a = row_ptr(lo, r);
        double* d = row_ptr(hi, r);
        for (int k = 0; k < wa; ++k) {
            const double p = x[2 * k];
            const double q = x[std::min(2 * k + 1, w - 1)];
            a[k] = (p + q) * kInvSqrt2;
            d[k] = (p - q) * kInvSqrt2;
        }
    }
}

void analyze_cols(const Matrix& in, Matrix& lo, Matrix& hi) {
    const int h = in.rows, w = in.cols, ha = (h + 1) / 2;
    lo = Matrix(ha, w);
    hi = Matrix(ha, w);
#pragma omp parallel for schedule(static) if (in.size() >= kParGrain)
    for (int k = 0; k < ha; ++k) {
        const double* p = row_ptr(in, 2 * k);
        const double* q = row_ptr(in, std::min(2 * k + 1, h - 1));
        double* a = row_ptr(lo, k);
        double* d = row_ptr(hi, k);
        for (int c = 0; c < w; ++c) {
            a[c] = (p[c] + q[c]) * kInvSqrt2;
            d[c] = (p[c] - q[c]) * kInvSqrt2;
        }
    }
}

Matrix synthesize_rows(const Matrix& lo, const Matrix& hi, int w) {
    const int h = lo.rows, wa = lo.cols;
    Matrix out(h, w);
#pragma omp parallel for schedule(static) if (out.size() >= kParGrain)
    for (int r = 0; r < h; ++r) {
        const double* a = row_ptr(lo, r);
        const double* d = row_ptr(hi, r);
        double* x = row_ptr(out, r);
        for (int k = 0; k < wa; ++k) {
            x[2 * k] = (a[k] + d[k]) * kInvSqrt2;
            if (2 * k + 1 < w) x[2 * k + 1] = (a[k] - d[k]) * kInvSqrt2;
        }
    }
    return out;
}

Matrix synthesize_cols(const Matrix& lo, const Matrix& hi, int h) {
    const int ha = lo.rows, w = lo.cols;
    Matrix out(h, w);
#pragma omp parallel for schedule(static) if (out.size() >= kParGrain)
    for (int k = 0; k < ha; ++k) {
        const double* a = row_ptr(lo, k);
        const double* d = row_ptr(hi, k);
        double* p = row_ptr(out, 2 * k);
        double* q = 2 * k + 1 < h ? row_ptr(out, 2 * k + 1) : nullptr;
        for (int c = 0; c < w; ++c) {
            p[c] = (a[c] + d[c]) * kInvSqrt2;
            if (q) q[c] = (a[c] - d[c]) * kInvSqrt2;
        }
    }
    return out;
}

// --- undecimated kernels: filter dilated by step, periodic indexing, every
// --- band keeps the source extent

void ud_analyze_rows(const Matrix& in, int step, Matrix& lo, Matrix& hi) {
    const int h = in.rows, w = in.cols;
    lo = Matrix(h, w);
    hi = Matrix(h, w);
#pragma omp parallel for schedule(static) if (in.size() >= kParGrain)
    for (int r = 0; r < h; ++r) {
        const double* x = row_ptr(in, r);
        double* a = row_ptr(lo, r);
        double* d = row_ptr(hi, r);
        for (int c = 0; c < w; ++c) {
            const double p = x[c];
            const double q = x[(c + step) % w];
            a[c] = (p + q) * kInvSqrt2;
            d[c] = (p - q) * kInvSqrt2;
        }
    }
}

void ud_analyze_cols(const Matrix& in, int step, Matrix& lo, Matrix& hi) {
    const int h = in.rows, w = in.cols;
    lo = Matrix(h, w);
    hi = Matrix(h, w);
#pragma omp parallel for schedule(static) if (in.size() >= kParGrain)
    for (int r = 0; r < h; ++r) {
        const double* p = row_ptr(in, r);
        const double* q = row_ptr(in, (r + step) % h);
        double* a = row_ptr(lo, r);
        double* d = row_ptr(hi, r);
        for (int c = 0; c < w; ++c) {
            a[c] = (p[c] + q[c]) * kInvSqrt2;
            d[c] = (p[c] - q[c]) * kInvSqrt2;
        }
    }
}

// Each sample is covered by the pair starting at n and the pair starting at
// n-step; averaging the two reconstructions keeps the inverse shift-covariant.
Matrix ud_synthesize_rows(const Matrix& lo, const Matrix& hi, int step) {
    const int h = lo.rows, w = lo.cols;
    Matrix out(h, w);
#pragma omp parallel for schedule(static) if (out.size() >= kParGrain)
    for (int r = 0; r < h; ++r) {
        const double* a = row_ptr(lo, r);
        const double* d = row_ptr(hi, r);
        double* x = row_ptr(out, r);
        for (int c = 0; c < w; ++c) {
            const int cm = (c - step + w) % w;
            x[c] = 0.5 * ((a[c] + d[c]) + (a[cm] - d[cm])) * kInvSqrt2;
        }
    }
    return out;
}

Matrix ud_synthesize_cols(const Matrix& lo, const Matrix& hi, int step) {
    const int h = lo.rows, w = lo.cols;
    Matrix out(h, w);
#pragma omp parallel for schedule(static) if (out.size() >= kParGrain)
    for (int r = 0; r < h; ++r) {
        const int rm = (r - step + h) % h;
        const double* a0 = row_ptr(lo, r);
        const double* d0 = row_ptr(hi, r);
        const double* a1 = row_ptr(lo, rm);
        const double* d1 = row_ptr(hi, rm);
        double* x = row_ptr(out, r);
        for (int c = 0; c < w; ++c)
            x[c] = 0.5 * ((a0[c] + d0[c]) + (a1[c] - d1[c])) * kInvSqrt2;
    }
    return out;
}

struct Quartet {
    Matrix ll, lh, hl, hh;
};

Quartet dwt_level(const Matrix& m) {
    Matrix lx, hx;
    analyze_rows(m, lx, hx);
    Quartet q;
    analyze_cols(lx, q.ll, q.lh);
    analyze_cols(hx, q.hl, q.hh);
    return q;
}

Matrix dwt_level_inverse(const Quartet& q, int h, int w) {
    Matrix lx = synthesize_cols(q.ll, q.lh, h);
    Matrix hx = synthesize_cols(q.hl, q.hh, h);
    return synthesize_rows(lx, hx, w);
}

Quartet udwt_level(const Matrix& m, int step) {
    Matrix lx, hx;
    ud_analyze_rows(m, step, lx, hx);
    Quartet q;
    ud_analyze_cols(lx, step, q.ll, q.lh);
    ud_analyze_cols(hx, step, q.hl, q.hh);
    return q;
}

Matrix udwt_level_inverse(const Quartet& q, int step) {
    Matrix lx = ud_synthesize_cols(q.ll, q.lh, step);
    Matrix hx = ud_synthesize_cols(q.hl, q.hh, step);
    return ud_synthesize_rows(lx, hx, step);
}

void check_plane(const Matrix& plane) {
    if (plane.rows < 4 || plane.cols < 4)
        throw ImageTooSmall("transform input is " + std::to_string(plane.cols) + "x" +
                            std::to_string(plane.rows) + ", minimum is 4x4");
}

Decomposition assemble(TransformKind kind, const Matrix& plane, const Quartet& l1,
                       const Quartet& l2) {
    Decomposition d;
    d.transform = kind;
    d.levels = 2;
    d.source_width = plane.cols;
    d.source_height = plane.rows;
    d.bands = {{BandKind::LL, 2, l2.ll}, {BandKind::LH, 2, l2.lh}, {BandKind::HL, 2, l2.hl},
               {BandKind::HH, 2, l2.hh}, {BandKind::LH, 1, l1.lh}, {BandKind::HL, 1, l1.hl},
               {BandKind::HH, 1, l1.hh}};
    return d;
}

void expect_shape(const Subband& b, int rows, int cols) {
    if (b.coeffs.rows != rows || b.coeffs.cols != cols)
        throw ShapeMismatch(std::string("band ") + band_name(b.kind) +
                            std::to_string(b.level) + " is " + std::to_string(b.coeffs.cols) +
                            "x" + std::to_string(b.coeffs.rows) + ", expected " +
                            std::to_string(cols) + "x" + std::to_string(rows));
}

void validate(const Decomposition& d, TransformKind expected) {
    if (d.transform != expected)
        throw WrongTransformKind("decomposition was produced by the other transform");
    if (d.levels != 2 || d.bands.size() != 7)
        throw ShapeMismatch("decomposition must hold the 7 bands of a 2-level transform");
    if (d.source_width < 4 || d.source_height < 4)
        throw ShapeMismatch("decomposition has invalid source dimensions");

    const int h1 = (d.source_height + 1) / 2, w1 = (d.source_width + 1) / 2;
    const int h2 = (h1 + 1) / 2, w2 = (w1 + 1) / 2;
    for (const auto& b : d.bands) {
        if (expected == TransformKind::undecimated)
            expect_shape(b, d.source_height, d.source_width);
        else
            expect_shape(b, b.level == 2 ? h2 : h1, b.level == 2 ? w2 : w1);
    }
}

Quartet level_quartet(const Decomposition& d, int level, const Matrix& ll) {
    Quartet q;
    q.ll = ll;
    q.lh = d.band(BandKind::LH, level).coeffs;
    q.hl = d.band(BandKind::HL, level).coeffs;
    q.hh = d.band(BandKind::HH, level).coeffs;
    return q;
}

} // namespace

const char* band_name(BandKind kind) {
    switch (kind) {
    case BandKind::LL: return "LL";
    case BandKind::LH: return "LH";
    case BandKind::HL: return "HL";
    case BandKind::HH: return "HH";
    }
    return "??";
}

const Subband& Decomposition::band(BandKind kind, int level) const {
    for (const auto& b : bands)
        if (b.kind == kind && b.level == level) return b;
    throw ShapeMismatch(std::string("decomposition has no band ") + band_name(kind) +
                        std::to_string(level));
}

Subband& Decomposition::band(BandKind kind, int level) {
    return const_cast<Subband&>(static_cast<const Decomposition*>(this)->band(kind, level));
}

Decomposition dwt_forward(const Matrix& plane) {
    check_plane(plane);
    Quartet l1 = dwt_level(plane);
    Quartet l2 = dwt_level(l1.ll);
    return assemble(TransformKind::decimated, plane, l1, l2);
}

Matrix dwt_inverse(const Decomposition& d) {
    validate(d, TransformKind::decimated);
    const int h1 = (d.source_height + 1) / 2, w1 = (d.source_width + 1) / 2;
    Quartet l2 = level_quartet(d, 2, d.band(BandKind::LL, 2).coeffs);
    Matrix ll1 = dwt_level_inverse(l2, h1, w1);
    Quartet l1 = level_quartet(d, 1, ll1);
    return dwt_level_inverse(l1, d.source_height, d.source_width);
}

Decomposition udwt_forward(const Matrix& plane) {
    check_plane(plane);
    Quartet l1 = udwt_level(plane, 1);
    Quartet l2 = udwt_level(l1.ll, 2);
    return assemble(TransformKind::undecimated, plane, l1, l2);
}

Matrix udwt_inverse(const Decomposition& d) {
    validate(d, TransformKind::undecimated);
    Quartet l2 = level_quartet(d, 2, d.band(BandKind::LL, 2).coeffs);
    Matrix ll1 = udwt_level_inverse(l2, 2);
    Quartet l1 = level_quartet(d, 1, ll1);
    return udwt_level_inverse(l1, 1);
}

namespace {

Matrix single_plane(const ImageBuffer& img) {
    if (img.channels != 1)
        throw NotGrayscale("transform input must be single-channel, got " +
                           std::to_string(img.channels) + " channels");
    return plane_of(img, 0);
}

} // namespace

Decomposition dwt_forward(const ImageBuffer& img) { return dwt_forward(single_plane(img)); }

ImageBuffer dwt_inverse_image(const Decomposition& d) { return image_from_plane(dwt_inverse(d)); }

Decomposition udwt_forward(const ImageBuffer& img) { return udwt_forward(single_plane(img)); }

ImageBuffer udwt_inverse_image(const Decomposition& d) {
    return image_from_plane(udwt_inverse(d));
}

} // namespace wavefuse
