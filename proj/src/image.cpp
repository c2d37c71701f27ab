#include "wavefuse/image.hpp"

namespace wavefuse {

Matrix plane_of(const ImageBuffer& img, int c) {
    Matrix m(img.height, img.width);
    const double* src = img.samples.data() + c * img.plane_size();
    std::copy(src, src + img.plane_size(), m.data.begin());
    return m;
}

ImageBuffer image_from_plane(const Matrix& m) {
    ImageBuffer img(m.cols, m.rows, 1);
    img.samples = m.data;
    return img;
}

std::vector<ImageBuffer> split_channels(const ImageBuffer& img) {
    std::vector<ImageBuffer> planes;
    planes.reserve(img.channels);
    for (int c = 0; c < img.channels; ++c) {
        ImageBuffer p(img.width, img.height, 1);
        const double* src = img.samples.data() + c * img.plane_size();
        std::copy(src, src + img.plane_size(), p.samples.begin());
        planes.push_back(std::move(p));
    }
    return planes;
}

ImageBuffer merge_channels(const std::vector<ImageBuffer>& planes) {
    if (planes.size() != 1 && planes.size() != 3)
        throw ShapeMismatch("merge_channels: expected 1 or 3 planes, got " +
                            std::to_string(planes.size()));
    for (const auto& p : planes) {
        if (p.channels != 1)
            throw ShapeMismatch("merge_channels: planes must be single-channel");
        if (p.width != planes[0].width || p.height != planes[0].height)
            throw ShapeMismatch("merge_channels: plane dimensions differ");
    }
    ImageBuffer img(planes[0].width, planes[0].height, static_cast<int>(planes.size()));
    for (std::size_t c = 0; c < planes.size(); ++c)
        std::copy(planes[c].samples.begin(), planes[c].samples.end(),
                  img.samples.begin() + c * img.plane_size());
    return img;
}

} // namespace wavefuse
