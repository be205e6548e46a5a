// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

namespace hueforge::io {

namespace {

class Cursor
{
public:
    explicit Cursor(std::span<const std::uint8_t> data) : data_(data) {}

    bool at_end() const { return pos_ >= data_.size(); }
    std::size_t remaining() const { return data_.size() - pos_; }

    std::uint8_t next()
    {
        if (at_end()) {
            throw FormatError("unexpected end of data");
        }
        return data_[pos_++];
    }

    std::span<const std::uint8_t> take(std::size_t n)
    {
        if (remaining() < n) {
            throw FormatError("unexpected end of data");
        }
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    /// Line up to (not including) '\n'; strips a trailing '\r'.
    std::optional<std::string> line()
    {
        if (at_end()) {
            return std::nullopt;
        }
        std::string out;
        while (!at_end()) {
            char c = static_cast<char>(data_[pos_++]);
            if (c == '\n') {
                break;
            }
            out.push_back(c);
        }
        if (!out.empty() && out.back() == '\r') {
            out.pop_back();
        }
        return out;
    }

    void skip_whitespace_and_comments()
    {
        while (!at_end()) {
            const char c = static_cast<char>(data_[pos_]);
            if (c == '#') {
                while (!at_end() && data_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string token()
    {
        skip_whitespace_and_comments();
        std::string out;
        while (!at_end() && !std::isspace(data_[pos_]) && data_[pos_] != '#') {
            out.push_back(static_cast<char>(data_[pos_++]));
        }
        if (out.empty()) {
            throw FormatError("missing header field");
        }
        return out;
    }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

std::size_t parse_size(const std::string& s, const char* what)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw FormatError(std::string("invalid ") + what + ": '" + s + "'");
    }
    return v;
}

bool starts_with(std::span<const std::uint8_t> data, std::string_view prefix)
{
    return data.size() >= prefix.size() &&
           std::equal(prefix.begin(), prefix.end(), data.begin(),
                      [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; });
}

// ---------------------------------------------------------------------------
// Radiance RGBE
// ---------------------------------------------------------------------------

void read_flat_scanline(Cursor& cur, std::span<RgbePixel> out, std::optional<RgbePixel> first)
{
    std::size_t x = 0;
    int shift = 0;
    auto emit = [&](const RgbePixel& p) {
        // Old-style run: (1,1,1,n) repeats the previous pixel n << shift times.
        if (p.r == 1 && p.g == 1 && p.b == 1) {
            if (x == 0) {
                throw FormatError("RGBE run-length repeat at scanline start");
            }
            const std::size_t count = static_cast<std::size_t>(p.e) << shift;
            if (x + count > out.size()) {
                throw FormatError("RGBE run overflows scanline");
            }
            std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(x), count, out[x - 1]);
            x += count;
            shift += 8;
        } else {
            out[x++] = p;
            shift = 0;
        }
    };
    if (first) {
        emit(*first);
    }
    while (x < out.size()) {
        auto b = cur.take(4);
        emit({b[0], b[1], b[2], b[3]});
    }
}

void read_rle_scanline(Cursor& cur, std::span<RgbePixel> out)
{
    const std::size_t width = out.size();
    std::vector<std::uint8_t> channel(width);
    for (int c = 0; c < 4; ++c) {
        std::size_t x = 0;
        while (x < width) {
            std::uint8_t count = cur.next();
            if (count > 128) {
                const std::size_t run = count - 128u;
                if (x + run > width) {
                    throw FormatError("RGBE run overflows scanline");
                }
                const std::uint8_t value = cur.next();
                std::fill_n(channel.begin() + static_cast<std::ptrdiff_t>(x), run, value);
                x += run;
            } else {
                if (count == 0 || x + count > width) {
                    throw FormatError("bad RGBE literal run");
                }
                auto lit = cur.take(count);
                std::copy(lit.begin(), lit.end(), channel.begin() + static_cast<std::ptrdiff_t>(x));
                x += count;
            }
        }
        for (std::size_t i = 0; i < width; ++i) {
            switch (c) {
            case 0: out[i].r = channel[i]; break;
            case 1: out[i].g = channel[i]; break;
            case 2: out[i].b = channel[i]; break;
            default: out[i].e = channel[i]; break;
            }
        }
    }
}

void read_scanline(Cursor& cur, std::span<RgbePixel> out)
{
    const std::size_t width = out.size();
    if (width < 8 || width > 0x7fff) {
        read_flat_scanline(cur, out, std::nullopt);
        return;
    }
    auto head = cur.take(4);
    if (head[0] != 2 || head[1] != 2 || (head[2] & 0x80) != 0) {
        read_flat_scanline(cur, out, RgbePixel{head[0], head[1], head[2], head[3]});
        return;
    }
    const std::size_t encoded_width = (static_cast<std::size_t>(head[2]) << 8) | head[3];
    if (encoded_width != width) {
        throw FormatError("RGBE scanline width mismatch");
    }
    read_rle_scanline(cur, out);
}

// ---------------------------------------------------------------------------
// PNG callbacks
// ---------------------------------------------------------------------------

struct PngReadState
{
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;
};

void png_read_cb(png_structp png, png_bytep out, png_size_t n)
{
    auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (st->data.size() - st->pos < n) {
        png_error(png, "truncated PNG");
    }
    std::memcpy(out, st->data.data() + st->pos, n);
    st->pos += n;
}

void png_write_cb(png_structp png, png_bytep in, png_size_t n)
{
    auto* out = static_cast<Bytes*>(png_get_io_ptr(png));
    out->insert(out->end(), in, in + n);
}

void png_flush_cb(png_structp) {}

[[noreturn]] void png_error_cb(png_structp, png_const_charp msg) { throw FormatError(std::string("PNG: ") + msg); }

void png_warning_cb(png_structp, png_const_charp) {}

Bytes encode_png(const LdrImage& img)
{
    Bytes out;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_cb, png_warning_cb);
    if (png == nullptr) {
        throw IoError("png_create_write_struct failed");
    }
    png_infop info = png_create_info_struct(png);
    struct Guard
    {
        png_structp* p;
        png_infop* i;
        ~Guard() { png_destroy_write_struct(p, i); }
    } guard{&png, &info};

    png_set_write_fn(png, &out, png_write_cb, png_flush_cb);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<std::uint8_t> row(img.width() * 3);
    for (std::size_t y = 0; y < img.height(); ++y) {
        const auto src = img.row(y);
        for (std::size_t x = 0; x < img.width(); ++x) {
            row[3 * x] = src[x].r;
            row[3 * x + 1] = src[x].g;
            row[3 * x + 2] = src[x].b;
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    return out;
}

Bytes encode_ppm(const LdrImage& img)
{
    const std::string header = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.reserve(out.size() + img.size() * 3);
    for (const auto& p : img.pixels()) {
        out.push_back(p.r);
        out.push_back(p.g);
        out.push_back(p.b);
    }
    return out;
}

} // namespace

Rgb decode_rgbe(const RgbePixel& p)
{
    if (p.e == 0) {
        return {};
    }
    const double f = std::ldexp(1.0, static_cast<int>(p.e) - 136);
    return {p.r * f, p.g * f, p.b * f};
}

HdrImage read_radiance_hdr(std::span<const std::uint8_t> data)
{
    if (!starts_with(data, "#?")) {
        throw FormatError("missing Radiance '#?' signature");
    }
    Cursor cur(data);
    auto magic = cur.line();
    if (!magic || (magic->rfind("#?RADIANCE", 0) != 0 && magic->rfind("#?RGBE", 0) != 0)) {
        throw FormatError("unrecognized Radiance signature");
    }
    for (;;) {
        auto l = cur.line();
        if (!l) {
            throw FormatError("Radiance header not terminated");
        }
        if (l->empty()) {
            break;
        }
        if (l->rfind("FORMAT=", 0) == 0 && *l != "FORMAT=32-bit_rle_rgbe") {
            throw UnsupportedFormatError("unsupported Radiance pixel format: " + *l);
        }
    }
    auto res = cur.line();
    if (!res) {
        throw FormatError("missing Radiance resolution line");
    }
    char ysign[3] = {};
    char xsign[3] = {};
    unsigned long h = 0;
    unsigned long w = 0;
    if (std::sscanf(res->c_str(), "%2s %lu %2s %lu", ysign, &h, xsign, &w) != 4) {
        throw FormatError("malformed Radiance resolution line: " + *res);
    }
    if (std::string_view(ysign) != "-Y" || std::string_view(xsign) != "+X") {
        throw FormatError("unsupported Radiance orientation: " + *res);
    }
    if (w == 0 || h == 0) {
        throw FormatError("empty Radiance image");
    }

    std::vector<RgbePixel> scan(w);
    std::vector<Rgb> pixels;
    pixels.reserve(w * h);
    for (std::size_t y = 0; y < h; ++y) {
        read_scanline(cur, scan);
        for (const auto& p : scan) {
            pixels.push_back(decode_rgbe(p));
        }
    }
    return HdrImage(w, h, std::move(pixels));
}

HdrImage read_pfm(std::span<const std::uint8_t> data)
{
    Cursor cur(data);
    const std::string magic = cur.token();
    if (magic == "Pf") {
        throw UnsupportedFormatError("grayscale PFM ('Pf') is not supported");
    }
    if (magic != "PF") {
        throw FormatError("missing PFM 'PF' signature");
    }
    const std::size_t w = parse_size(cur.token(), "PFM width");
    const std::size_t h = parse_size(cur.token(), "PFM height");
    const std::string scale_text = cur.token();
    double scale = 0.0;
    {
        // from_chars rejects a leading '+'.
        const char* first = scale_text.data();
        const char* last = first + scale_text.size();
        if (first != last && *first == '+') {
            ++first;
        }
        auto [ptr, ec] = std::from_chars(first, last, scale);
        if (ec != std::errc{} || ptr != last || scale == 0.0 || !std::isfinite(scale)) {
            throw FormatError("invalid PFM scale: " + scale_text);
        }
    }
    if (w == 0 || h == 0) {
        throw FormatError("empty PFM image");
    }
    // Exactly one whitespace byte separates the header from the payload.
    if (cur.at_end() || !std::isspace(cur.next())) {
        throw FormatError("PFM header not terminated");
    }

    const bool little = scale < 0.0;
    const bool host_little = std::endian::native == std::endian::little;
    auto payload = cur.take(w * h * 3 * sizeof(float));
    std::vector<Rgb> pixels(w * h);
    auto read_float = [&](std::size_t idx) {
        std::uint8_t b[4];
        std::memcpy(b, payload.data() + idx * 4, 4);
        if (little != host_little) {
            std::swap(b[0], b[3]);
            std::swap(b[1], b[2]);
        }
        float f;
        std::memcpy(&f, b, 4);
        return static_cast<double>(f);
    };
    for (std::size_t file_row = 0; file_row < h; ++file_row) {
        const std::size_t y = h - 1 - file_row;
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t base = (file_row * w + x) * 3;
            pixels[y * w + x] = {read_float(base), read_float(base + 1), read_float(base + 2)};
        }
    }
    return HdrImage(w, h, std::move(pixels));
}

Bytes write_ldr(const LdrImage& img, LdrFormat format)
{
    if (img.width() == 0 || img.height() == 0) {
        throw ValidationError("cannot encode an empty image");
    }
    return format == LdrFormat::ppm ? encode_ppm(img) : encode_png(img);
}

LdrImage read_ppm(std::span<const std::uint8_t> data)
{
    Cursor cur(data);
    if (cur.token() != "P6") {
        throw UnsupportedFormatError("only binary PPM (P6) is supported");
    }
    const std::size_t w = parse_size(cur.token(), "PPM width");
    const std::size_t h = parse_size(cur.token(), "PPM height");
    const std::size_t maxval = parse_size(cur.token(), "PPM maxval");
    if (maxval != 255) {
        throw UnsupportedFormatError("PPM maxval must be 255");
    }
    if (cur.at_end() || !std::isspace(cur.next())) {
        throw FormatError("PPM header not terminated");
    }
    auto raw = cur.take(w * h * 3);
    std::vector<Rgb8> pixels(w * h);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        pixels[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
    }
    return LdrImage(w, h, std::move(pixels));
}

LdrImage read_png(std::span<const std::uint8_t> data)
{
    if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0) {
        throw FormatError("missing PNG signature");
    }
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_cb, png_warning_cb);
    if (png == nullptr) {
        throw IoError("png_create_read_struct failed");
    }
    png_infop info = png_create_info_struct(png);
    struct Guard
    {
        png_structp* p;
        png_infop* i;
        ~Guard() { png_destroy_read_struct(p, i, nullptr); }
    } guard{&png, &info};

    PngReadState state{data, 0};
    png_set_read_fn(png, &state, png_read_cb);
    png_read_info(png, info);

    const auto color = png_get_color_type(png, info);
    const auto depth = png_get_bit_depth(png, info);
    if (depth == 16) {
        png_set_strip_16(png);
    }
    if (color == PNG_COLOR_TYPE_PALETTE) {
        png_set_palette_to_rgb(png);
    }
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
        if (depth < 8) {
            png_set_expand_gray_1_2_4_to_8(png);
        }
        png_set_gray_to_rgb(png);
    }
    if (color & PNG_COLOR_MASK_ALPHA) {
        png_set_strip_alpha(png);
    }
    png_read_update_info(png, info);

    const std::size_t w = png_get_image_width(png, info);
    const std::size_t h = png_get_image_height(png, info);
    if (png_get_rowbytes(png, info) != w * 3) {
        throw UnsupportedFormatError("unexpected PNG row layout");
    }
    std::vector<std::uint8_t> raw(w * h * 3);
    std::vector<png_bytep> rows(h);
    for (std::size_t y = 0; y < h; ++y) {
        rows[y] = raw.data() + y * w * 3;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);

    std::vector<Rgb8> pixels(w * h);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        pixels[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
    }
    return LdrImage(w, h, std::move(pixels));
}

LdrImage read_ldr(std::span<const std::uint8_t> data)
{
    if (data.size() >= 8 && png_sig_cmp(data.data(), 0, 8) == 0) {
        return read_png(data);
    }
    if (starts_with(data, "P6")) {
        return read_ppm(data);
    }
    throw UnsupportedFormatError("LDR input must be PNG or binary PPM");
}

HdrImage read_hdr(std::span<const std::uint8_t> data)
{
    if (starts_with(data, "#?")) {
        return read_radiance_hdr(data);
    }
    if (starts_with(data, "PF") || starts_with(data, "Pf")) {
        return read_pfm(data);
    }
    throw UnsupportedFormatError("HDR input must be Radiance RGBE or PFM");
}

Bytes read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed: " + path.string());
    }
    return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot create " + path.string());
    }
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

HdrImage load_hdr(const std::filesystem::path& path) { return read_hdr(read_file(path)); }

LdrImage load_ldr(const std::filesystem::path& path) { return read_ldr(read_file(path)); }

void save_ldr(const std::filesystem::path& path, const LdrImage& img)
{
    const auto format = path.extension() == ".ppm" ? LdrFormat::ppm : LdrFormat::png;
    write_file(path, write_ldr(img, format));
}

} // namespace hueforge::io
