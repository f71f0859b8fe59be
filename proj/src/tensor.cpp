#include "hyperconv/tensor.hpp"

#include <cstdint>
#include <fstream>

namespace hyperconv {

RImage pack_real(const HImage& img) {
    const int c = img.channels;
    RImage out = RImage::zeros(img.height, img.width, 4 * c);
    for (int r = 0; r < img.height; ++r)
        for (int col = 0; col < img.width; ++col)
            for (int ch = 0; ch < c; ++ch) {
                const HNum& h = img.at(r, col, ch);
                for (int d = 0; d < 4; ++d) out.at(r, col, d * c + ch) = h[d];
            }
    return out;
}

HImage unpack_real(const RImage& rimg) {
    if (rimg.channels % 4 != 0)
        throw DimensionError("unpack_real: channel count " +
                             std::to_string(rimg.channels) +
                             " is not divisible by 4");
    const int c = rimg.channels / 4;
    HImage out = HImage::zeros(rimg.height, rimg.width, c);
    for (int r = 0; r < rimg.height; ++r)
        for (int col = 0; col < rimg.width; ++col)
            for (int ch = 0; ch < c; ++ch) {
                HNum h;
                for (int d = 0; d < 4; ++d) h[d] = rimg.at(r, col, d * c + ch);
                out.at(r, col, ch) = h;
            }
    return out;
}

namespace {

void write_header(std::ofstream& f, int64_t h, int64_t w, int64_t c,
                  int64_t comps) {
    const int64_t header[4] = {h, w, c, comps};
    f.write(reinterpret_cast<const char*>(header), sizeof(header));
}

struct DumpHeader {
    int64_t h, w, c, comps;
};

DumpHeader read_header(std::ifstream& f, const std::string& path) {
    DumpHeader hd{};
    f.read(reinterpret_cast<char*>(&hd), sizeof(hd));
    if (!f) throw IoError("tensor dump: truncated header in " + path);
    if (hd.h <= 0 || hd.w <= 0 || hd.c <= 0 || (hd.comps != 1 && hd.comps != 4))
        throw IoError("tensor dump: bad header in " + path);
    return hd;
}

}  // namespace

void save_rimage(const std::string& path, const RImage& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("tensor dump: cannot open " + path);
    write_header(f, img.height, img.width, img.channels, 1);
    f.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size() * sizeof(double)));
    if (!f) throw IoError("tensor dump: write failed for " + path);
}

RImage load_rimage(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("tensor dump: cannot open " + path);
    const DumpHeader hd = read_header(f, path);
    if (hd.comps != 1) throw IoError("tensor dump: expected components=1 in " + path);
    RImage img = RImage::zeros(static_cast<int>(hd.h), static_cast<int>(hd.w),
                               static_cast<int>(hd.c));
    f.read(reinterpret_cast<char*>(img.data.data()),
           static_cast<std::streamsize>(img.data.size() * sizeof(double)));
    if (!f) throw IoError("tensor dump: truncated data in " + path);
    return img;
}

void save_himage(const std::string& path, const HImage& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("tensor dump: cannot open " + path);
    write_header(f, img.height, img.width, img.channels, 4);
    f.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size() * sizeof(HNum)));
    if (!f) throw IoError("tensor dump: write failed for " + path);
}

HImage load_himage(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("tensor dump: cannot open " + path);
    const DumpHeader hd = read_header(f, path);
    if (hd.comps != 4) throw IoError("tensor dump: expected components=4 in " + path);
    HImage img = HImage::zeros(static_cast<int>(hd.h), static_cast<int>(hd.w),
                               static_cast<int>(hd.c));
    f.read(reinterpret_cast<char*>(img.data.data()),
           static_cast<std::streamsize>(img.data.size() * sizeof(HNum)));
    if (!f) throw IoError("tensor dump: truncated data in " + path);
    return img;
}

}  // namespace hyperconv
