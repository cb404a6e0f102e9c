#pragma once

// File formats: the RLC run-matrix container and PBM (P1 / P4) bitmaps.
//
// RLC layout, little-endian: "RLC1", u32 rows, u32 width, u32 pairs per row,
// then rows x pairs-per-row x (u32 white, u32 black), rows padded with (0,0).

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "rlseg/bitmap.hpp"
#include "rlseg/error.hpp"
#include "rlseg/run_matrix.hpp"
#include "rlseg/segment_tree.hpp"

namespace rlseg {

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v)
{
    const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                static_cast<char>((v >> 16) & 0xff),
                                static_cast<char>((v >> 24) & 0xff)};
    os.write(b.data(), 4);
}

inline std::uint32_t get_u32(std::istream& is)
{
    std::array<unsigned char, 4> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), 4))
        throw FormatError("truncated RLC data");
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

inline std::uint32_t checked_u32(std::size_t v, const char* what)
{
    if (v > std::numeric_limits<std::uint32_t>::max())
        throw FormatError(std::string(what) + " does not fit in 32 bits");
    return static_cast<std::uint32_t>(v);
}

} // namespace detail

inline void write_rlc(std::ostream& os, const RunMatrix& r)
{
    os.write("RLC1", 4);
    detail::put_u32(os, detail::checked_u32(r.rows(), "row count"));
    detail::put_u32(os, detail::checked_u32(r.width(), "width"));
    detail::put_u32(os, detail::checked_u32(r.pairs_per_row(), "pairs per row"));
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.pairs_per_row(); ++j) {
            const RunPair p = r.pair(i, j);
            detail::put_u32(os, p.white);
            detail::put_u32(os, p.black);
        }
}

/// Reads an RLC stream. Rows are canonicalized on load; a row that does not
/// sum to the width raises InvalidRunMatrix.
inline RunMatrix read_rlc(std::istream& is)
{
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), 4) || std::string(magic.data(), 4) != "RLC1")
        throw FormatError("not an RLC1 stream");
    const std::uint32_t m = detail::get_u32(is);
    const std::uint32_t n = detail::get_u32(is);
    const std::uint32_t ppr = detail::get_u32(is);
    if (n > 0 && ppr == 0 && m > 0)
        throw FormatError("RLC header has rows of nonzero width but no pairs");
    RunMatrixBuilder b(n);
    for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = 0; j < ppr; ++j) {
            const std::uint32_t w = detail::get_u32(is);
            const std::uint32_t k = detail::get_u32(is);
            if (static_cast<std::uint64_t>(w) + k > n)
                throw InvalidRunMatrix("row " + std::to_string(i) + " exceeds the width");
            b.add_white(w);
            b.add_black(k);
        }
        b.end_row();
    }
    return b.finish();
}

inline void save_rlc(const std::string& path, const RunMatrix& r)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw FormatError("cannot open " + path + " for writing");
    write_rlc(os, r);
    if (!os)
        throw FormatError("write to " + path + " failed");
}

inline RunMatrix load_rlc(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw FormatError("cannot open " + path);
    return read_rlc(is);
}

namespace detail {

// Next header token of a PNM stream; '#' comments run to end of line.
inline std::string pnm_token(std::istream& is)
{
    std::string tok;
    int c;
    while ((c = is.get()) != EOF) {
        if (c == '#') {
            while ((c = is.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty())
                break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

inline std::size_t pnm_number(std::istream& is)
{
    const std::string tok = pnm_token(is);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
        throw FormatError("bad PBM header value '" + tok + "'");
    return std::stoul(tok);
}

} // namespace detail

inline Bitmap read_pbm(std::istream& is)
{
    const std::string magic = detail::pnm_token(is);
    if (magic != "P1" && magic != "P4")
        throw FormatError("not a PBM (P1/P4) stream");
    const std::size_t cols = detail::pnm_number(is);
    const std::size_t rows = detail::pnm_number(is);
    if (rows != 0 && cols > (std::size_t{1} << 32) / rows)
        throw FormatError("PBM dimensions too large");
    Bitmap b(rows, cols);
    if (magic == "P1") {
        for (std::size_t y = 0; y < rows; ++y)
            for (std::size_t x = 0; x < cols; ++x) {
                int c;
                do {
                    c = is.get();
                    if (c == '#')
                        while ((c = is.get()) != EOF && c != '\n') {
                        }
                } while (c != EOF && std::isspace(c));
                if (c != '0' && c != '1')
                    throw FormatError("bad or missing P1 pixel");
                b.set(y, x, c == '1');
            }
        return b;
    }
    // The single whitespace after the height was consumed by pnm_token.
    const std::size_t stride = (cols + 7) / 8;
    std::string buf(stride, '\0');
    for (std::size_t y = 0; y < rows; ++y) {
        if (!is.read(buf.data(), static_cast<std::streamsize>(stride)))
            throw FormatError("truncated P4 raster");
        auto px = b.row(y);
        for (std::size_t x = 0; x < cols; ++x)
            px[x] = (static_cast<unsigned char>(buf[x / 8]) >> (7 - x % 8)) & 1;
    }
    return b;
}

inline void write_pbm(std::ostream& os, const Bitmap& b, bool ascii = false)
{
    os << (ascii ? "P1" : "P4") << '\n' << b.cols() << ' ' << b.rows() << '\n';
    if (ascii) {
        for (std::size_t y = 0; y < b.rows(); ++y) {
            const auto px = b.row(y);
            for (std::size_t x = 0; x < px.size(); ++x) {
                os << static_cast<char>('0' + px[x]);
                if ((x + 1) % 70 == 0 || x + 1 == px.size())
                    os << '\n';
            }
        }
        return;
    }
    const std::size_t stride = (b.cols() + 7) / 8;
    std::string buf(stride, '\0');
    for (std::size_t y = 0; y < b.rows(); ++y) {
        std::fill(buf.begin(), buf.end(), '\0');
        const auto px = b.row(y);
        for (std::size_t x = 0; x < px.size(); ++x)
            if (px[x])
                buf[x / 8] = static_cast<char>(static_cast<unsigned char>(buf[x / 8]) | (0x80u >> (x % 8)));
        os.write(buf.data(), static_cast<std::streamsize>(stride));
    }
}

inline Bitmap load_pbm(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw FormatError("cannot open " + path);
    return read_pbm(is);
}

inline void save_pbm(const std::string& path, const Bitmap& b, bool ascii = false)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw FormatError("cannot open " + path + " for writing");
    write_pbm(os, b, ascii);
    if (!os)
        throw FormatError("write to " + path + " failed");
}

/// Outlines every node below the page in black, 1 px wide.
inline void draw_overlay(Bitmap& b, const SegmentNode& n)
{
    if (n.kind != NodeKind::Page && n.rect.bottom < b.rows() && n.rect.right < b.cols()) {
        const Rect& r = n.rect;
        for (std::size_t x = r.left; x <= r.right; ++x) {
            b.set(r.top, x, 1);
            b.set(r.bottom, x, 1);
        }
        for (std::size_t y = r.top; y <= r.bottom; ++y) {
            b.set(y, r.left, 1);
            b.set(y, r.right, 1);
        }
    }
    for (const auto& c : n.children)
        draw_overlay(b, c);
}

} // namespace rlseg
