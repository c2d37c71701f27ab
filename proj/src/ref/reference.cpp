#include "wavefuse/reference.hpp"

#include <cmath>
#include <utility>

// Reference transforms for cross-checking. Deliberately written the other
// way round from the production kernels: columns are filtered before rows,
// loops are plain and serial, and the undecimated pair is an explicit
// dilated convolution. Results agree with the fast path to rounding error.

namespace wavefuse::ref {
namespace {

const double rs2 = 1.0 / std::sqrt(2.0);

int pmod(int i, int n) { return ((i % n) + n) % n; }

std::pair<Matrix, Matrix> split_cols(const Matrix& m) {
    const int ha = (m.rows + 1) / 2;
    Matrix lo(ha, m.cols), hi(ha, m.cols);
    for (int k = 0; k < ha; ++k)
        for (int c = 0; c < m.cols; ++c) {
            const double top = m.at(2 * k, c);
            const double bot = m.at(2 * k + 1 < m.rows ? 2 * k + 1 : m.rows - 1, c);
            lo.at(k, c) = (top + bot) * rs2;
            hi.at(k, c) = (top - bot) * rs2;
        }
    return {lo, hi};
}

std::pair<Matrix, Matrix> split_rows(const Matrix& m) {
    const int wa = (m.cols + 1) / 2;
    Matrix lo(m.rows, wa), hi(m.rows, wa);
    for (int r = 0; r < m.rows; ++r)
        for (int k = 0; k < wa; ++k) {
            const double left = m.at(r, 2 * k);
            const double right = m.at(r, 2 * k + 1 < m.cols ? 2 * k + 1 : m.cols - 1);
            lo.at(r, k) = (left + right) * rs2;
            hi.at(r, k) = (left - right) * rs2;
        }
    return {lo, hi};
}

Matrix join_cols(const Matrix& lo, const Matrix& hi, int rows) {
    Matrix out(rows, lo.cols);
    for (int k = 0; k < lo.rows; ++k)
        for (int c = 0; c < lo.cols; ++c) {
            out.at(2 * k, c) = (lo.at(k, c) + hi.at(k, c)) * rs2;
            if (2 * k + 1 < rows) out.at(2 * k + 1, c) = (lo.at(k, c) - hi.at(k, c)) * rs2;
        }
    return out;
}

Matrix join_rows(const Matrix& lo, const Matrix& hi, int cols) {
    Matrix out(lo.rows, cols);
    for (int r = 0; r < lo.rows; ++r)
        for (int k = 0; k < lo.cols; ++k) {
            out.at(r, 2 * k) = (lo.at(r, k) + hi.at(r, k)) * rs2;
            if (2 * k + 1 < cols) out.at(r, 2 * k + 1) = (lo.at(r, k) - hi.at(r, k)) * rs2;
        }
    return out;
}

// Dilated two-tap convolution along one axis, periodic. taps[0] hits the
// sample itself, taps[1] the one `step` further on.
Matrix conv_cols(const Matrix& m, int step, double tap0, double tap1) {
    Matrix out(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            out.at(r, c) = tap0 * m.at(r, c) + tap1 * m.at(pmod(r + step, m.rows), c);
    return out;
}

Matrix conv_rows(const Matrix& m, int step, double tap0, double tap1) {
    Matrix out(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            out.at(r, c) = tap0 * m.at(r, c) + tap1 * m.at(r, pmod(c + step, m.cols));
    return out;
}

Matrix dual_cols(const Matrix& lo, const Matrix& hi, int step) {
    Matrix out(lo.rows, lo.cols);
    for (int r = 0; r < lo.rows; ++r) {
        const int rm = pmod(r - step, lo.rows);
        for (int c = 0; c < lo.cols; ++c)
            out.at(r, c) =
                0.5 * rs2 * ((lo.at(r, c) + hi.at(r, c)) + (lo.at(rm, c) - hi.at(rm, c)));
    }
    return out;
}

Matrix dual_rows(const Matrix& lo, const Matrix& hi, int step) {
    Matrix out(lo.rows, lo.cols);
    for (int r = 0; r < lo.rows; ++r)
        for (int c = 0; c < lo.cols; ++c) {
            const int cm = pmod(c - step, lo.cols);
            out.at(r, c) =
                0.5 * rs2 * ((lo.at(r, c) + hi.at(r, c)) + (lo.at(r, cm) - hi.at(r, cm)));
        }
    return out;
}

Decomposition pack(TransformKind kind, int w, int h, Matrix ll2, Matrix lh2, Matrix hl2,
                   Matrix hh2, Matrix lh1, Matrix hl1, Matrix hh1) {
    Decomposition d;
    d.transform = kind;
    d.levels = 2;
    d.source_width = w;
    d.source_height = h;
    d.bands = {{BandKind::LL, 2, std::move(ll2)}, {BandKind::LH, 2, std::move(lh2)},
               {BandKind::HL, 2, std::move(hl2)}, {BandKind::HH, 2, std::move(hh2)},
               {BandKind::LH, 1, std::move(lh1)}, {BandKind::HL, 1, std::move(hl1)},
               {BandKind::HH, 1, std::move(hh1)}};
    return d;
}

} // namespace

Decomposition dwt_forward(const Matrix& plane) {
    auto [loy, hiy] = split_cols(plane);
    auto [ll1, hl1] = split_rows(loy);
    auto [lh1, hh1] = split_rows(hiy);
    auto [loy2, hiy2] = split_cols(ll1);
    auto [ll2, hl2] = split_rows(loy2);
    auto [lh2, hh2] = split_rows(hiy2);
    return pack(TransformKind::decimated, plane.cols, plane.rows, std::move(ll2), std::move(lh2),
                std::move(hl2), std::move(hh2), std::move(lh1), std::move(hl1), std::move(hh1));
}

Matrix dwt_inverse(const Decomposition& d) {
    if (d.transform != TransformKind::decimated)
        throw WrongTransformKind("reference dwt_inverse given an undecimated decomposition");
    const int h1 = (d.source_height + 1) / 2, w1 = (d.source_width + 1) / 2;
    const auto& ll2 = d.band(BandKind::LL, 2).coeffs;
    Matrix loy2 = join_rows(ll2, d.band(BandKind::HL, 2).coeffs, w1);
    Matrix hiy2 = join_rows(d.band(BandKind::LH, 2).coeffs, d.band(BandKind::HH, 2).coeffs, w1);
    Matrix ll1 = join_cols(loy2, hiy2, h1);
    Matrix loy = join_rows(ll1, d.band(BandKind::HL, 1).coeffs, d.source_width);
    Matrix hiy = join_rows(d.band(BandKind::LH, 1).coeffs, d.band(BandKind::HH, 1).coeffs,
                           d.source_width);
    return join_cols(loy, hiy, d.source_height);
}

Decomposition udwt_forward(const Matrix& plane) {
    Matrix loy = conv_cols(plane, 1, rs2, rs2);
    Matrix hiy = conv_cols(plane, 1, rs2, -rs2);
    Matrix ll1 = conv_rows(loy, 1, rs2, rs2);
    Matrix hl1 = conv_rows(loy, 1, rs2, -rs2);
    Matrix lh1 = conv_rows(hiy, 1, rs2, rs2);
    Matrix hh1 = conv_rows(hiy, 1, rs2, -rs2);
    Matrix loy2 = conv_cols(ll1, 2, rs2, rs2);
    Matrix hiy2 = conv_cols(ll1, 2, rs2, -rs2);
    Matrix ll2 = conv_rows(loy2, 2, rs2, rs2);
    Matrix hl2 = conv_rows(loy2, 2, rs2, -rs2);
    Matrix lh2 = conv_rows(hiy2, 2, rs2, rs2);
    Matrix hh2 = conv_rows(hiy2, 2, rs2, -rs2);
    return pack(TransformKind::undecimated, plane.cols, plane.rows, std::move(ll2),
                std::move(lh2), std::move(hl2), std::move(hh2), std::move(lh1), std::move(hl1),
                std::move(hh1));
}

Matrix udwt_inverse(const Decomposition& d) {
    if (d.transform != TransformKind::undecimated)
        throw WrongTransformKind("reference udwt_inverse given a decimated decomposition");
    Matrix loy2 = dual_rows(d.band(BandKind::LL, 2).coeffs, d.band(BandKind::HL, 2).coeffs, 2);
    Matrix hiy2 = dual_rows(d.band(BandKind::LH, 2).coeffs, d.band(BandKind::HH, 2).coeffs, 2);
    Matrix ll1 = dual_cols(loy2, hiy2, 2);
    Matrix loy = dual_rows(ll1, d.band(BandKind::HL, 1).coeffs, 1);
    Matrix hiy = dual_rows(d.band(BandKind::LH, 1).coeffs, d.band(BandKind::HH, 1).coeffs, 1);
    return dual_cols(loy, hiy, 1);
}

} // namespace wavefuse::ref
