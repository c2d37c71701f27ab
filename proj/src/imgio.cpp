#include "wavefuse/imgio.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

namespace wavefuse {
namespace {

constexpr int kMinDim = 4;
constexpr long kParGrain = 32 * 1024;

int quantize(double v) {
    return static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0)));
}

std::string lower_ext(const std::string& path) {
    auto pos = path.find_last_of('.');
    if (pos == std::string::npos) return {};
    std::string ext = path.substr(pos);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

void check_dims(int w, int h, const std::string& path) {
    if (w < kMinDim || h < kMinDim)
        throw ImageTooSmall(path + ": " + std::to_string(w) + "x" + std::to_string(h) +
                            " is below the " + std::to_string(kMinDim) + "x" +
                            std::to_string(kMinDim) + " minimum");
}

// Reads one whitespace-delimited header token, skipping '#' comments.
bool pgm_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c) && c != '#') {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (c != EOF) in.unget();
    return !tok.empty();
}

long pgm_number(std::istream& in, const std::string& path, const char* what) {
    std::string tok;
    if (!pgm_token(in, tok) || tok.find_first_not_of("0123456789") != std::string::npos)
        throw UnsupportedFormat(path + ": malformed PGM header (" + what + ")");
    return std::stol(tok);
}

ImageBuffer load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    std::string magic;
    pgm_token(in, magic); // already sniffed as "P5"
    long w = pgm_number(in, path, "width");
    long h = pgm_number(in, path, "height");
    long maxval = pgm_number(in, path, "maxval");
    if (maxval < 1 || maxval > 255)
        throw UnsupportedFormat(path + ": PGM maxval " + std::to_string(maxval) +
                                " (only 8-bit supported)");
    in.get(); // single whitespace byte before the raster
    check_dims(static_cast<int>(w), static_cast<int>(h), path);

    std::vector<char> raw(static_cast<std::size_t>(w) * h);
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
        throw IoError(path + ": truncated PGM raster");

    ImageBuffer img(static_cast<int>(w), static_cast<int>(h), 1);
    for (std::size_t i = 0; i < raw.size(); ++i)
        img.samples[i] = static_cast<double>(static_cast<unsigned char>(raw[i]));
    return img;
}

ImageBuffer load_png(const std::string& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        std::string msg = image.message;
        png_image_free(&image);
        throw UnsupportedFormat(path + ": " + msg);
    }
    const png_uint_32 fmt = image.format;
    auto reject = [&](const char* why) {
        png_image_free(&image);
        throw UnsupportedFormat(path + ": " + why);
    };
    if (fmt & PNG_FORMAT_FLAG_ALPHA) reject("PNG alpha channel not supported");
    if (fmt & PNG_FORMAT_FLAG_LINEAR) reject("16-bit PNG not supported");
    if (fmt & PNG_FORMAT_FLAG_COLORMAP) reject("palette PNG not supported");

    const bool color = fmt & PNG_FORMAT_FLAG_COLOR;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const int channels = color ? 3 : 1;

    std::vector<png_byte> raw(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw IoError(path + ": " + msg);
    }
    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    check_dims(w, h, path);

    ImageBuffer img(w, h, channels);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < channels; ++c)
                img.at(x, y, c) =
                    static_cast<double>(raw[(static_cast<std::size_t>(y) * w + x) * channels + c]);
    return img;
}

void save_pgm(const ImageBuffer& img, const std::string& path) {
    if (img.channels != 1)
        throw UnsupportedFormat(path + ": PGM stores single-channel images only");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<char> raw(img.plane_size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        raw[i] = static_cast<char>(quantize(img.samples[i]));
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError(path + ": write failed");
}

void save_png(const ImageBuffer& img, const std::string& path) {
    const int ch = img.channels;
    std::vector<png_byte> raw(img.plane_size() * ch);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < ch; ++c)
                raw[(static_cast<std::size_t>(y) * img.width + x) * ch + c] =
                    static_cast<png_byte>(quantize(img.at(x, y, c)));

    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width);
    image.height = static_cast<png_uint_32>(img.height);
    image.format = ch == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.c_str(), 0, raw.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        throw IoError(path + ": " + msg);
    }
}

ImageBuffer replicate_gray(const ImageBuffer& gray) {
    ImageBuffer out(gray.width, gray.height, 3);
    for (int c = 0; c < 3; ++c)
        std::copy(gray.samples.begin(), gray.samples.begin() + gray.plane_size(),
                  out.samples.begin() + c * gray.plane_size());
    return out;
}

} // namespace

ImageBuffer load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) {
        if (!std::filesystem::exists(path)) throw FileNotFound(path + ": no such file");
        throw IoError(path + ": cannot open");
    }
    unsigned char sig[4] = {0, 0, 0, 0};
    probe.read(reinterpret_cast<char*>(sig), 4);
    probe.close();

    if (sig[0] == 0x89 && sig[1] == 'P' && sig[2] == 'N' && sig[3] == 'G') return load_png(path);
    if (sig[0] == 'P' && sig[1] == '5') return load_pgm(path);
    if (sig[0] == 'P' && sig[1] == '2')
        throw UnsupportedFormat(path + ": ASCII PGM not supported (use binary P5)");
    throw UnsupportedFormat(path + ": unrecognized image format");
}

void save_image(const ImageBuffer& img, const std::string& path) {
    if (img.channels != 1 && img.channels != 3)
        throw UnsupportedFormat(path + ": images must have 1 or 3 channels");
    if (img.width < 1 || img.height < 1) throw IoError(path + ": empty image");
    const std::string ext = lower_ext(path);
    if (ext == ".png")
        save_png(img, path);
    else if (ext == ".pgm")
        save_pgm(img, path);
    else
        throw UnsupportedFormat(path + ": unknown extension '" + ext + "' (use .png or .pgm)");
}

ImageBuffer resize_bilinear(const ImageBuffer& img, int width, int height) {
    if (width < 1 || height < 1)
        throw ShapeMismatch("resize_bilinear: target dimensions must be positive");
    if (width == img.width && height == img.height) return img;

    ImageBuffer out(width, height, img.channels);
    const double sx = static_cast<double>(img.width) / width;
    const double sy = static_cast<double>(img.height) / height;
    for (int c = 0; c < img.channels; ++c) {
#pragma omp parallel for schedule(static) \
    if (static_cast<long>(width) * height >= kParGrain)
        for (int y = 0; y < height; ++y) {
            const double fy = (y + 0.5) * sy - 0.5;
            const int y0 = static_cast<int>(std::floor(fy));
            const double ay = fy - y0;
            const int yt = std::clamp(y0, 0, img.height - 1);
            const int yb = std::clamp(y0 + 1, 0, img.height - 1);
            for (int x = 0; x < width; ++x) {
                const double fx = (x + 0.5) * sx - 0.5;
                const int x0 = static_cast<int>(std::floor(fx));
                const double ax = fx - x0;
                const int xl = std::clamp(x0, 0, img.width - 1);
                const int xr = std::clamp(x0 + 1, 0, img.width - 1);
                const double top = std::lerp(img.at(xl, yt, c), img.at(xr, yt, c), ax);
                const double bot = std::lerp(img.at(xl, yb, c), img.at(xr, yb, c), ax);
                out.at(x, y, c) = std::lerp(top, bot, ay);
            }
        }
    }
    return out;
}

std::pair<ImageBuffer, ImageBuffer> register_pair(const ImageBuffer& a, const ImageBuffer& b) {
    ImageBuffer ra = a;
    ImageBuffer rb = b;
    if (ra.channels != rb.channels) {
        if (ra.channels == 1)
            ra = replicate_gray(ra);
        else if (rb.channels == 1)
            rb = replicate_gray(rb);
        else
            throw ShapeMismatch("register_pair: incompatible channel counts");
    }
    if (rb.width != ra.width || rb.height != ra.height)
        rb = resize_bilinear(rb, ra.width, ra.height);
    return {std::move(ra), std::move(rb)};
}

} // namespace wavefuse
