#pragma once

#include <string>
#include <utility>

#include "wavefuse/image.hpp"

namespace wavefuse {

// Loads an 8-bit grayscale or RGB image. Format is detected from the file's
// magic bytes: PNG (8-bit gray or RGB; alpha, 16-bit and palette files are
// rejected) or binary PGM (P5, maxval <= 255). Throws FileNotFound,
// UnsupportedFormat or ImageTooSmall (dimensions below 4x4).
ImageBuffer load_image(const std::string& path);

// Saves as PNG or PGM depending on the file extension (.png / .pgm,
// case-insensitive). Samples are clamped to [0,255] and rounded half away
// from zero. PGM accepts single-channel images only. Throws
// UnsupportedFormat or IoError.
void save_image(const ImageBuffer& img, const std::string& path);

// Bilinear resampling to (width, height), sampling at half-pixel centers
// with edge clamping.
ImageBuffer resize_bilinear(const ImageBuffer& img, int width, int height);

// Makes a pair comparable: a single-channel image paired with an RGB one is
// replicated to three channels, and b is resampled to a's dimensions when
// they differ. Images that already agree are returned unchanged.
std::pair<ImageBuffer, ImageBuffer> register_pair(const ImageBuffer& a, const ImageBuffer& b);

} // namespace wavefuse
