#pragma once

#include <string>
#include <vector>

#include "wavefuse/image.hpp"

namespace wavefuse {

enum class TransformKind { decimated, undecimated };

enum class BandKind { LL, LH, HL, HH };

// HL carries detail along x (vertical edges), LH detail along y.
struct Subband {
    BandKind kind = BandKind::LL;
    int level = 0;
    Matrix coeffs;
};

// Two-level Haar decomposition of a single plane. Band order is fixed:
// LL2, LH2, HL2, HH2, LH1, HL1, HH1.
struct Decomposition {
    TransformKind transform = TransformKind::decimated;
    int levels = 2;
    int source_width = 0;
    int source_height = 0;
    std::vector<Subband> bands;

    const Subband& band(BandKind kind, int level) const;
    Subband& band(BandKind kind, int level);
};

const char* band_name(BandKind kind);

// Decimated transform: orthonormal Haar pair applied to rows then columns,
// samples paired at even offsets, odd extents extended by replicating the
// last sample. A level-l band of an HxW plane is ceil(H/2^l) x ceil(W/2^l).
Decomposition dwt_forward(const Matrix& plane);
Matrix dwt_inverse(const Decomposition& d);

// Undecimated transform: same filter pair, dilated by 2^(level-1), periodic
// boundary. Every band keeps the source extent; the inverse averages the two
// redundant reconstructions per sample, which makes the pipeline commute
// with circular shifts exactly.
Decomposition udwt_forward(const Matrix& plane);
Matrix udwt_inverse(const Decomposition& d);

// Single-channel ImageBuffer convenience wrappers. Throw NotGrayscale for
// multi-channel input and ImageTooSmall below 4x4; the inverses return
// unclamped samples so reconstruction can be checked bit-for-bit.
Decomposition dwt_forward(const ImageBuffer& img);
ImageBuffer dwt_inverse_image(const Decomposition& d);
Decomposition udwt_forward(const ImageBuffer& img);
ImageBuffer udwt_inverse_image(const Decomposition& d);

} // namespace wavefuse
