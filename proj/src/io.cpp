#include "dynct/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <png.h>

#include <json.hpp>

namespace dynct {

namespace {

static_assert(sizeof(double) == 8, "binary64 payload requires 8-byte double");

void write_payload(std::ofstream& out, const std::vector<double>& values) {
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size() * sizeof(double)));
    } else {
        for (double v : values) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, 8);
            char buf[8];
            for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>(bits >> (8 * b));
            out.write(buf, 8);
        }
    }
}

std::vector<double> read_payload(std::ifstream& in, size_t expected, const std::string& path) {
    std::vector<double> values(expected);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(expected * sizeof(double)));
    const auto got = static_cast<size_t>(in.gcount());
    if (got != expected * sizeof(double))
        throw IoError(path + ": truncated payload, expected " + std::to_string(expected * 8) +
                      " bytes, got " + std::to_string(got));
    if (in.peek() != std::ifstream::traits_type::eof())
        throw IoError(path + ": trailing bytes after payload of " + std::to_string(expected * 8) +
                      " bytes");
    if constexpr (std::endian::native != std::endian::little) {
        for (double& v : values) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, 8);
            bits = __builtin_bswap64(bits);
            std::memcpy(&v, &bits, 8);
        }
    }
    return values;
}

nlohmann::json read_header(std::ifstream& in, const std::string& path, const std::string& kind) {
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": missing header line");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": malformed header: " + e.what());
    }
    if (!header.contains("kind") || !header["kind"].is_string())
        throw IoError(path + ": header has no \"kind\" field");
    if (header["kind"] != kind)
        throw IoError(path + ": kind mismatch, expected \"" + kind + "\", got \"" +
                      header["kind"].get<std::string>() + "\"");
    return header;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open for reading");
    return in;
}

}  // namespace

void write_image(const std::string& path, const Image& image) {
    auto out = open_out(path);
    nlohmann::json header = {{"kind", "image"}, {"n", image.grid.n_pix}};
    out << header.dump() << '\n';
    write_payload(out, image.values);
    if (!out) throw IoError(path + ": write failed");
}

Image read_image(const std::string& path) {
    auto in = open_in(path);
    const auto header = read_header(in, path, "image");
    if (!header.contains("n") || !header["n"].is_number_integer() || header["n"].get<int>() <= 0)
        throw IoError(path + ": invalid image header size");
    const int n = header["n"].get<int>();
    Image img{ImageGrid{n}, read_payload(in, static_cast<size_t>(n) * n, path)};
    return img;
}

void write_sinogram(const std::string& path, const Sinogram& sino) {
    auto out = open_out(path);
    nlohmann::json header = {{"kind", "sinogram"}, {"p", sino.geom.p}, {"q", sino.geom.q}};
    out << header.dump() << '\n';
    write_payload(out, sino.values);
    if (!out) throw IoError(path + ": write failed");
}

Sinogram read_sinogram(const std::string& path) {
    auto in = open_in(path);
    const auto header = read_header(in, path, "sinogram");
    for (const char* key : {"p", "q"})
        if (!header.contains(key) || !header[key].is_number_integer() || header[key].get<int>() <= 0)
            throw IoError(path + ": invalid sinogram header sizes");
    const ScanGeometry geom{header["p"].get<int>(), header["q"].get<int>()};
    Sinogram sino{geom, read_payload(in, static_cast<size_t>(geom.p) * geom.n_offsets(), path)};
    return sino;
}

std::vector<std::uint8_t> normalize_to_gray8(const Image& image) {
    const auto [lo_it, hi_it] = std::minmax_element(image.values.begin(), image.values.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<std::uint8_t> bytes(image.values.size(), 0);
    if (hi > lo) {
        const double scale = 255.0 / (hi - lo);
        for (size_t m = 0; m < bytes.size(); ++m)
            bytes[m] = static_cast<std::uint8_t>(std::lround((image.values[m] - lo) * scale));
    }
    return bytes;
}

void export_png(const Image& image, const std::string& path) {
    const int n = image.grid.n_pix;
    const std::vector<std::uint8_t> bytes = normalize_to_gray8(image);

    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError(path + ": cannot open for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(fp);
        throw IoError(path + ": png write failed");
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, n, n, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int i = 0; i < n; ++i)
        png_write_row(png, const_cast<png_bytep>(&bytes[static_cast<size_t>(i) * n]));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

}  // namespace dynct
