#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyperconv/algebra.hpp"
#include "hyperconv/errors.hpp"

namespace hyperconv {

/// Hypercomplex-valued image. Pixels are stored row-major as
/// (row, col, channel) so serialized tensors are bit-reproducible.
struct HImage {
    int height = 0, width = 0, channels = 0;
    std::vector<HNum> data;

    static HImage zeros(int h, int w, int c) {
        HImage img;
        img.height = h;
        img.width = w;
        img.channels = c;
        img.data.assign(static_cast<size_t>(h) * w * c, HNum{});
        return img;
    }

    size_t index(int r, int c, int ch) const {
        return (static_cast<size_t>(r) * width + c) * channels + ch;
    }
    HNum& at(int r, int c, int ch) { return data[index(r, c, ch)]; }
    const HNum& at(int r, int c, int ch) const { return data[index(r, c, ch)]; }
};

/// Real-valued image with the same (row, col, channel) storage.
struct RImage {
    int height = 0, width = 0, channels = 0;
    std::vector<double> data;

    static RImage zeros(int h, int w, int c) {
        RImage img;
        img.height = h;
        img.width = w;
        img.channels = c;
        img.data.assign(static_cast<size_t>(h) * w * c, 0.0);
        return img;
    }

    size_t index(int r, int c, int ch) const {
        return (static_cast<size_t>(r) * width + c) * channels + ch;
    }
    double& at(int r, int c, int ch) { return data[index(r, c, ch)]; }
    double at(int r, int c, int ch) const { return data[index(r, c, ch)]; }
};

/// Packs a C-channel hypercomplex image into 4C real channels, block by
/// component: channels [0,C) hold the real parts, [C,2C) the i parts,
/// [2C,3C) the j parts and [3C,4C) the k parts.
RImage pack_real(const HImage& img);

/// Exact inverse of pack_real. The channel count must be divisible by 4.
HImage unpack_real(const RImage& rimg);

/// Applies a real function independently to each of the four components of
/// every pixel value.
template <class F>
HImage split_apply(F f, const HImage& img) {
    HImage out = img;
    for (auto& h : out.data)
        for (int d = 0; d < 4; ++d) h[d] = f(h[d]);
    return out;
}

// Debug dump format: four little-endian int64 header fields
// (height, width, channels, components) followed by the values as
// little-endian float64 in storage order. components is 1 for a real
// image and 4 for a hypercomplex one.
void save_rimage(const std::string& path, const RImage& img);
RImage load_rimage(const std::string& path);
void save_himage(const std::string& path, const HImage& img);
HImage load_himage(const std::string& path);

}  // namespace hyperconv
