#pragma once

#include <cstddef>
#include <vector>

#include "wavefuse/errors.hpp"

namespace wavefuse {

// Row-major matrix of doubles. Used for image planes and wavelet subbands;
// values are unconstrained (subband coefficients go negative).
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::size_t size() const { return data.size(); }
    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

// Planar raster image: plane p occupies samples[p*w*h .. (p+1)*w*h).
// Loaders guarantee 1 or 3 channels, samples in [0,255] and w,h >= 4;
// intermediate pipeline results may leave [0,255] until the final clamp.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<double> samples;

    ImageBuffer() = default;
    ImageBuffer(int w, int h, int c, double fill = 0.0)
        : width(w), height(h), channels(c),
          samples(static_cast<std::size_t>(w) * h * c, fill) {}

    std::size_t plane_size() const { return static_cast<std::size_t>(width) * height; }

    double& at(int x, int y, int c = 0) {
        return samples[c * plane_size() + static_cast<std::size_t>(y) * width + x];
    }
    double at(int x, int y, int c = 0) const {
        return samples[c * plane_size() + static_cast<std::size_t>(y) * width + x];
    }

    bool same_shape(const ImageBuffer& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

// Copies plane c of img into a Matrix (rows = height).
Matrix plane_of(const ImageBuffer& img, int c = 0);

// Wraps a matrix as a single-channel image. No clamping.
ImageBuffer image_from_plane(const Matrix& m);

// Splits into one single-channel image per plane.
std::vector<ImageBuffer> split_channels(const ImageBuffer& img);

// Inverse of split_channels. Accepts 1 or 3 planes of identical shape.
ImageBuffer merge_channels(const std::vector<ImageBuffer>& planes);

} // namespace wavefuse
