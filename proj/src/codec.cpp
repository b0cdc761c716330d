#include "histo/codec.hpp"

#include <png.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace histo {

namespace {

// ---------------------------------------------------------------------------
// PNG via libpng
// ---------------------------------------------------------------------------

struct MemReader {
    const unsigned char* p;
    std::size_t n;
    std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t count) {
    auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
    if (r->pos + count > r->n) png_error(png, "truncated stream");
    std::memcpy(out, r->p + r->pos, count);
    r->pos += count;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t count) {
    auto* v = static_cast<std::vector<std::byte>*>(png_get_io_ptr(png));
    const auto* b = reinterpret_cast<const std::byte*>(data);
    v->insert(v->end(), b, b + count);
}

void png_noop_flush(png_structp) {}

void png_throw_error(png_structp png, png_const_charp msg) {
    (void)png;
    throw std::runtime_error(std::string("png: ") + msg);
}

void png_quiet_warning(png_structp, png_const_charp) {}

RgbImage decode_png(std::span<const std::byte> bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_throw_error,
                                             png_quiet_warning);
    if (!png) throw std::runtime_error("png: failed to allocate read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png: failed to allocate info struct");
    }

    RgbImage img;
    try {
        MemReader reader{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), 0};
        png_set_read_fn(png, &reader, png_mem_read);
        png_read_info(png, info);

        const png_uint_32 w = png_get_image_width(png, info);
        const png_uint_32 h = png_get_image_height(png, info);
        const int depth = png_get_bit_depth(png, info);
        const int color = png_get_color_type(png, info);
        if (depth == 16) throw std::runtime_error("png: non-8-bit depth (16)");

        if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
        if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
        if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(png);
        png_set_strip_alpha(png);
        png_read_update_info(png, info);

        if (png_get_rowbytes(png, info) != static_cast<std::size_t>(w) * 3)
            throw std::runtime_error("png: unexpected row layout after transforms");

        img = make_rgb(static_cast<Index>(h), static_cast<Index>(w));
        std::vector<png_bytep> rows(h);
        for (png_uint_32 y = 0; y < h; ++y)
            rows[y] = reinterpret_cast<png_bytep>(img.data.data() + static_cast<std::size_t>(y) * w * 3);
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

// ---------------------------------------------------------------------------
// TIFF (baseline 8-bit, uncompressed or LZW)
// ---------------------------------------------------------------------------

struct TiffStream {
    const unsigned char* p;
    std::size_t n;
    bool big_endian;

    std::uint16_t u16(std::size_t off) const {
        if (off + 2 > n) throw std::runtime_error("tiff: truncated stream");
        return big_endian ? static_cast<std::uint16_t>((p[off] << 8) | p[off + 1])
                          : static_cast<std::uint16_t>(p[off] | (p[off + 1] << 8));
    }
    std::uint32_t u32(std::size_t off) const {
        if (off + 4 > n) throw std::runtime_error("tiff: truncated stream");
        return big_endian ? (static_cast<std::uint32_t>(p[off]) << 24) |
                                (static_cast<std::uint32_t>(p[off + 1]) << 16) |
                                (static_cast<std::uint32_t>(p[off + 2]) << 8) | p[off + 3]
                          : static_cast<std::uint32_t>(p[off]) |
                                (static_cast<std::uint32_t>(p[off + 1]) << 8) |
                                (static_cast<std::uint32_t>(p[off + 2]) << 16) |
                                (static_cast<std::uint32_t>(p[off + 3]) << 24);
    }
};

struct TiffEntry {
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::size_t value_off = 0;  // offset of the inline value field
    bool present = false;
};

constexpr std::uint16_t kTypeShort = 3;
constexpr std::uint16_t kTypeLong = 4;

std::uint32_t entry_scalar(const TiffStream& s, const TiffEntry& e, std::uint32_t index) {
    const std::size_t elem = e.type == kTypeShort ? 2 : 4;
    std::size_t base = e.value_off;
    if (static_cast<std::size_t>(e.count) * elem > 4) base = s.u32(e.value_off);
    const std::size_t off = base + index * elem;
    return e.type == kTypeShort ? s.u16(off) : s.u32(off);
}

// TIFF-variant LZW: 9..12 bit codes, MSB-first, early code-width change.
std::vector<unsigned char> lzw_decode(const unsigned char* src, std::size_t n,
                                      std::size_t expected) {
    constexpr int kClear = 256;
    constexpr int kEoi = 257;
    std::vector<std::vector<unsigned char>> table;
    table.reserve(4096);
    auto reset_table = [&table] {
        table.clear();
        for (int i = 0; i < 256; ++i) table.push_back({static_cast<unsigned char>(i)});
        table.push_back({});  // clear
        table.push_back({});  // eoi
    };
    reset_table();

    std::vector<unsigned char> out;
    out.reserve(expected);
    int width = 9;
    std::size_t bitpos = 0;
    int prev = -1;
    auto read_code = [&]() -> int {
        if ((bitpos + width + 7) / 8 > n) return kEoi;  // ran off the end
        std::uint32_t v = 0;
        for (int i = 0; i < width; ++i) {
            const std::size_t byte = (bitpos + i) >> 3;
            const int bit = 7 - static_cast<int>((bitpos + i) & 7);
            v = (v << 1) | ((src[byte] >> bit) & 1u);
        }
        bitpos += width;
        return static_cast<int>(v);
    };

    while (true) {
        int code = read_code();
        if (code == kEoi) break;
        if (code == kClear) {
            reset_table();
            width = 9;
            prev = -1;
            continue;
        }
        std::vector<unsigned char> entry;
        if (code < static_cast<int>(table.size())) {
            entry = table[code];
            if (entry.empty()) throw std::runtime_error("tiff: corrupt LZW stream");
        } else if (code == static_cast<int>(table.size()) && prev >= 0) {
            entry = table[prev];
            entry.push_back(table[prev][0]);
        } else {
            throw std::runtime_error("tiff: corrupt LZW stream");
        }
        out.insert(out.end(), entry.begin(), entry.end());
        if (prev >= 0) {
            std::vector<unsigned char> added = table[prev];
            added.push_back(entry[0]);
            table.push_back(std::move(added));
        }
        prev = code;
        // early change: bump the width one code before the table fills the range
        if (table.size() + 1 >= (1u << width) && width < 12) ++width;
        if (out.size() >= expected) break;
    }
    if (out.size() < expected) throw std::runtime_error("tiff: truncated stream");
    out.resize(expected);
    return out;
}

RgbImage decode_tiff(std::span<const std::byte> bytes) {
    TiffStream s{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), false};
    if (s.n < 8) throw std::runtime_error("tiff: truncated stream");
    if (s.p[0] == 'I' && s.p[1] == 'I')
        s.big_endian = false;
    else if (s.p[0] == 'M' && s.p[1] == 'M')
        s.big_endian = true;
    else
        throw std::runtime_error("tiff: bad byte-order mark");
    if (s.u16(2) != 42) throw std::runtime_error("tiff: bad magic");

    const std::size_t ifd = s.u32(4);
    const std::uint16_t n_entries = s.u16(ifd);

    TiffEntry width_e, height_e, bits_e, comp_e, photo_e, offsets_e, spp_e, rps_e, counts_e,
        planar_e, predictor_e;
    for (std::uint16_t i = 0; i < n_entries; ++i) {
        const std::size_t off = ifd + 2 + static_cast<std::size_t>(i) * 12;
        const std::uint16_t tag = s.u16(off);
        TiffEntry e{s.u16(off + 2), s.u32(off + 4), off + 8, true};
        switch (tag) {
            case 256: width_e = e; break;
            case 257: height_e = e; break;
            case 258: bits_e = e; break;
            case 259: comp_e = e; break;
            case 262: photo_e = e; break;
            case 273: offsets_e = e; break;
            case 277: spp_e = e; break;
            case 278: rps_e = e; break;
            case 279: counts_e = e; break;
            case 284: planar_e = e; break;
            case 317: predictor_e = e; break;
            default: break;
        }
    }
    if (!width_e.present || !height_e.present || !offsets_e.present)
        throw std::runtime_error("tiff: missing required tags");

    const std::uint32_t width = entry_scalar(s, width_e, 0);
    const std::uint32_t height = entry_scalar(s, height_e, 0);
    const std::uint32_t spp = spp_e.present ? entry_scalar(s, spp_e, 0) : 1;
    const std::uint32_t compression = comp_e.present ? entry_scalar(s, comp_e, 0) : 1;
    const std::uint32_t photometric = photo_e.present ? entry_scalar(s, photo_e, 0) : 1;
    const std::uint32_t predictor = predictor_e.present ? entry_scalar(s, predictor_e, 0) : 1;
    const std::uint32_t rows_per_strip =
        rps_e.present ? entry_scalar(s, rps_e, 0) : height;

    if (width == 0 || height == 0) throw std::runtime_error("tiff: empty image");
    if (bits_e.present) {
        for (std::uint32_t i = 0; i < bits_e.count; ++i) {
            if (entry_scalar(s, bits_e, i) != 8)
                throw std::runtime_error("tiff: non-8-bit depth (" +
                                         std::to_string(entry_scalar(s, bits_e, i)) + ")");
        }
    }
    if (compression != 1 && compression != 5)
        throw std::runtime_error("tiff: unsupported codec (compression " +
                                 std::to_string(compression) + ")");
    if (photometric > 2) throw std::runtime_error("tiff: unsupported photometric interpretation");
    if (planar_e.present && entry_scalar(s, planar_e, 0) != 1)
        throw std::runtime_error("tiff: unsupported planar configuration");
    if (spp != 1 && spp != 3 && spp != 4)
        throw std::runtime_error("tiff: unsupported samples per pixel");
    if (predictor != 1 && predictor != 2)
        throw std::runtime_error("tiff: unsupported predictor");

    const std::uint32_t n_strips = (height + rows_per_strip - 1) / rows_per_strip;
    if (offsets_e.count != n_strips || (counts_e.present && counts_e.count != n_strips))
        throw std::runtime_error("tiff: strip table mismatch");

    const std::size_t row_bytes = static_cast<std::size_t>(width) * spp;
    std::vector<unsigned char> raster;
    raster.reserve(row_bytes * height);
    for (std::uint32_t strip = 0; strip < n_strips; ++strip) {
        const std::uint32_t rows =
            std::min<std::uint32_t>(rows_per_strip, height - strip * rows_per_strip);
        const std::size_t expect = row_bytes * rows;
        const std::size_t off = entry_scalar(s, offsets_e, strip);
        if (compression == 1) {
            if (off + expect > s.n) throw std::runtime_error("tiff: truncated stream");
            raster.insert(raster.end(), s.p + off, s.p + off + expect);
        } else {
            if (!counts_e.present) throw std::runtime_error("tiff: missing strip byte counts");
            const std::size_t len = entry_scalar(s, counts_e, strip);
            if (off + len > s.n) throw std::runtime_error("tiff: truncated stream");
            std::vector<unsigned char> dec = lzw_decode(s.p + off, len, expect);
            raster.insert(raster.end(), dec.begin(), dec.end());
        }
    }

    if (predictor == 2) {
        for (std::uint32_t y = 0; y < height; ++y) {
            unsigned char* row = raster.data() + static_cast<std::size_t>(y) * row_bytes;
            for (std::size_t x = spp; x < row_bytes; ++x)
                row[x] = static_cast<unsigned char>(row[x] + row[x - spp]);
        }
    }

    RgbImage img = make_rgb(static_cast<Index>(height), static_cast<Index>(width));
    for (std::size_t i = 0; i < static_cast<std::size_t>(width) * height; ++i) {
        if (spp == 1) {
            unsigned char v = raster[i];
            if (photometric == 0) v = static_cast<unsigned char>(255 - v);
            img.data[3 * i] = img.data[3 * i + 1] = img.data[3 * i + 2] = v;
        } else {
            img.data[3 * i] = raster[i * spp];
            img.data[3 * i + 1] = raster[i * spp + 1];
            img.data[3 * i + 2] = raster[i * spp + 2];
        }
    }
    return img;
}

}  // namespace

RgbImage decode_image(std::span<const std::byte> bytes) {
    if (bytes.size() >= 8) {
        static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
        if (std::memcmp(bytes.data(), png_sig, 8) == 0) return decode_png(bytes);
    }
    if (bytes.size() >= 4) {
        const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
        if ((p[0] == 'I' && p[1] == 'I') || (p[0] == 'M' && p[1] == 'M')) return decode_tiff(bytes);
    }
    throw std::runtime_error("decode_image: unsupported codec (not PNG or TIFF)");
}

RgbImage load_image(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_image: cannot open " + path.string());
    std::vector<std::byte> bytes;
    f.seekg(0, std::ios::end);
    bytes.resize(static_cast<std::size_t>(f.tellg()));
    f.seekg(0);
    f.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("load_image: read failed on " + path.string());
    return decode_image(bytes);
}

std::vector<std::byte> encode_png(const RgbImage& img) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_throw_error,
                                              png_quiet_warning);
    if (!png) throw std::runtime_error("png: failed to allocate write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png: failed to allocate info struct");
    }

    std::vector<std::byte> out;
    try {
        png_set_write_fn(png, &out, png_mem_write, png_noop_flush);
        png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                     static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        for (Index y = 0; y < img.height; ++y) {
            png_write_row(png, const_cast<png_bytep>(reinterpret_cast<const unsigned char*>(
                                   img.data.data() + static_cast<std::size_t>(y) * img.width * 3)));
        }
        png_write_end(png, nullptr);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
    png_destroy_write_struct(&png, &info);
    return out;
}

void save_png(const RgbImage& img, const std::filesystem::path& path) {
    const std::vector<std::byte> bytes = encode_png(img);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("save_png: cannot open " + tmp.string());
        f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!f) throw std::runtime_error("save_png: write failed on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace histo
