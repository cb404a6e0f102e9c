#pragma once

// Detection of inverted (white-on-black) text rows from per-row 0-1
// histograms, and their conversion to normal polarity by a one-position run
// shift. Everything operates on run sums; no pixel row is ever expanded.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rlseg/error.hpp"
#include "rlseg/geometry.hpp"
#include "rlseg/run_matrix.hpp"

namespace rlseg {

inline constexpr std::size_t default_smooth_window = 9;

struct RowHistogram {
    std::vector<std::size_t> white; // H_W per row
    std::vector<std::size_t> black; // H_B per row

    std::size_t rows() const { return white.size(); }
};

inline RowHistogram row_histograms(const RunMatrix& r)
{
    RowHistogram h;
    h.white.resize(r.rows());
    h.black.resize(r.rows());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        std::size_t w = 0, b = 0;
        for (const auto& p : r.row(i)) {
            w += p.white;
            b += p.black;
        }
        if (w + b != r.width())
            throw InvalidRunMatrix("histogram of row " + std::to_string(i) +
                                   " does not sum to width");
        h.white[i] = w;
        h.black[i] = b;
    }
    return h;
}

/// delta(i) = 1 iff black strictly outnumbers white; ties stay normal.
inline std::vector<std::uint8_t> raw_indicator(const RowHistogram& h)
{
    std::vector<std::uint8_t> d(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i)
        d[i] = h.black[i] > h.white[i] ? 1 : 0;
    return d;
}

/// Majority filter of odd width; the window is truncated at the page edges
/// and a row is set when more than half of the rows it sees are set.
inline std::vector<std::uint8_t> smooth_indicator(std::span<const std::uint8_t> raw,
                                                  std::size_t window)
{
    if (window == 0 || window % 2 == 0)
        throw ConfigError("smoothing window must be odd and >= 1, got " + std::to_string(window));
    const std::size_t n = raw.size();
    const std::size_t half = window / 2;
    std::vector<std::size_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + raw[i];
    std::vector<std::uint8_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n, i + half + 1);
        const std::size_t ones = prefix[hi] - prefix[lo];
        out[i] = 2 * ones > hi - lo ? 1 : 0;
    }
    return out;
}

inline std::vector<RowRange> set_ranges(std::span<const std::uint8_t> flags, std::uint8_t value)
{
    std::vector<RowRange> out;
    std::size_t i = 0;
    while (i < flags.size()) {
        if (flags[i] != value) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < flags.size() && flags[j + 1] == value)
            ++j;
        out.push_back({i, j});
        i = j + 1;
    }
    return out;
}

struct RegionMap {
    std::vector<std::uint8_t> delta;  // smoothed indicator per row
    std::vector<RowRange> inverted;   // R_I ranges

    /// R_N ranges: the complement of the inverted ranges.
    std::vector<RowRange> normal() const { return set_ranges(delta, 0); }
    bool any_inverted() const { return !inverted.empty(); }
};

inline RegionMap regions_from_indicator(std::vector<std::uint8_t> smoothed)
{
    RegionMap map;
    map.inverted = set_ranges(smoothed, 1);
    map.delta = std::move(smoothed);
    return map;
}

inline RegionMap classify_regions(const RowHistogram& h,
                                  std::size_t smooth_window = default_smooth_window)
{
    const auto raw = raw_indicator(h);
    return regions_from_indicator(smooth_indicator(raw, smooth_window));
}

namespace detail {

// Left shift of the row's run sequence (drop a leading zero white run) or,
// when the row starts with white, insertion of a zero white run. Either way
// every run swaps colour.
inline void append_toggled_row(RunMatrixBuilder& b, std::span<const RunPair> row)
{
    if (row.empty()) {
        b.end_row();
        return;
    }
    const bool drop_leading = row.front().white == 0;
    // Flattened index k of the run sequence W1,B1,W2,B2,...; its colour in
    // the toggled row is given by its position after the shift.
    std::size_t out_pos = drop_leading ? 0 : 1;
    for (std::size_t j = 0; j < row.size(); ++j) {
        for (int c = 0; c < 2; ++c) {
            const std::uint32_t len = c ? row[j].black : row[j].white;
            if (j == 0 && c == 0 && drop_leading)
                continue;
            b.add_run(out_pos % 2 == 1, len);
            ++out_pos;
        }
    }
    b.end_row();
}

} // namespace detail

/// Complements the pixels of every row covered by ranges.
inline RunMatrix toggle_regions(const RunMatrix& r, std::span<const RowRange> ranges)
{
    for (const auto& rr : ranges)
        if (rr.top > rr.bottom || rr.bottom >= r.rows())
            throw OutOfBounds("toggle range outside document rows");
    std::vector<std::uint8_t> flip(r.rows(), 0);
    for (const auto& rr : ranges)
        for (std::size_t i = rr.top; i <= rr.bottom; ++i)
            flip[i] = 1;

    RunMatrixBuilder b(r.width(), r.rows());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        if (flip[i]) {
            detail::append_toggled_row(b, r.row(i));
        } else {
            for (const auto& p : r.row(i))
                b.add_pair(p);
            b.end_row();
        }
    }
    return b.finish();
}

inline RunMatrix toggle_region(const RunMatrix& r, RowRange rows)
{
    return toggle_regions(r, std::span<const RowRange>(&rows, 1));
}

struct NormalizedDocument {
    RunMatrix matrix;
    RegionMap regions;
};

inline NormalizedDocument normalize_document(const RunMatrix& r,
                                             std::size_t smooth_window = default_smooth_window)
{
    RegionMap regions = classify_regions(row_histograms(r), smooth_window);
    if (!regions.any_inverted())
        return {r, std::move(regions)};
    RunMatrix toggled = toggle_regions(r, regions.inverted);
    return {std::move(toggled), std::move(regions)};
}

} // namespace rlseg
