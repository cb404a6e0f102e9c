#pragma once

// Vertical column separators: strips of pixel columns where every column
// holds a long white run. Columns are produced by popping the run-matrix
// left to right, so the page is never expanded.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "rlseg/error.hpp"
#include "rlseg/geometry.hpp"
#include "rlseg/inverted_text.hpp"
#include "rlseg/run_matrix.hpp"
#include "rlseg/vertical_cursor.hpp"

namespace rlseg {

enum class Rounding { NearestTiesUp, Floor, Ceil };

/// Rounds num/den (den > 0) according to mode.
inline std::size_t rounded_div(std::size_t num, std::size_t den, Rounding mode)
{
    switch (mode) {
    case Rounding::Floor:
        return num / den;
    case Rounding::Ceil:
        return (num + den - 1) / den;
    case Rounding::NearestTiesUp:
    default:
        return (2 * num + den) / (2 * den);
    }
}

struct SeparatorParams {
    /// L_cs^v. Unset means m/6 of the document being scanned.
    std::optional<std::size_t> min_run;
    std::size_t min_width = 70;  // W_cs^v lower bound, inclusive
    std::size_t max_width = 120; // W_cs^v upper bound, inclusive
    bool remove_edges = true;
    Rounding rounding = Rounding::NearestTiesUp;

    /// Smallest run length that is >= rows/6 when min_run is unset.
    std::size_t resolve_min_run(std::size_t rows) const
    {
        if (min_run)
            return *min_run;
        return std::max<std::size_t>(1, (rows + 5) / 6);
    }

    void validate() const
    {
        if (min_run && *min_run == 0)
            throw ConfigError("L_cs_v must be positive");
        if (min_width < 1 || min_width > max_width)
            throw ConfigError("separator width bounds must satisfy 1 <= W_min <= W_max");
    }
};

struct ColumnSeparator {
    std::size_t v_alpha = 0; // first pixel column of the strip
    std::size_t v_beta = 0;  // last pixel column of the strip
    std::size_t l_v = 0;     // mean separator run length
    std::size_t s_h = 0;     // mean start row
    std::size_t e_h = 0;     // s_h + l_v, one past the last row
    std::vector<std::size_t> p; // per strip column: index of the separator run
    std::optional<std::size_t> overlap_group;

    std::size_t width() const { return v_beta - v_alpha + 1; }
    friend bool operator==(const ColumnSeparator&, const ColumnSeparator&) = default;
};

struct SeparatorExtent {
    std::size_t l_v = 0;
    std::size_t s_h = 0;
    std::size_t e_h = 0;
    std::vector<std::size_t> p;

    friend bool operator==(const SeparatorExtent&, const SeparatorExtent&) = default;
};

inline std::vector<std::size_t> qualifying_runs(const ColumnRuns& runs, std::size_t min_run)
{
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < runs.size(); ++k)
        if (runs[k].colour == 0 && runs[k].length >= min_run)
            idx.push_back(k);
    return idx;
}

/// Length, start and end of the separator(s) a group of candidate columns
/// encodes. A group whose columns all carry two or more qualifying runs is a
/// stack of separators sharing the strip; one extent is returned per stacked
/// run, top to bottom. Otherwise the longest qualifying run of each column is
/// used.
inline std::vector<SeparatorExtent> separator_params(std::span<const ColumnRuns> group,
                                                     std::size_t v_alpha, std::size_t v_beta,
                                                     std::size_t min_run,
                                                     Rounding rounding = Rounding::NearestTiesUp)
{
    if (v_beta < v_alpha)
        throw DegenerateGroup("separator group with V_beta < V_alpha");
    const std::size_t count = v_beta - v_alpha + 1;
    if (group.size() != count)
        throw DegenerateGroup("separator group has " + std::to_string(group.size()) +
                              " columns, expected " + std::to_string(count));

    std::vector<std::vector<std::size_t>> qual(count);
    std::size_t stacked = SIZE_MAX;
    for (std::size_t y = 0; y < count; ++y) {
        qual[y] = qualifying_runs(group[y], min_run);
        stacked = std::min(stacked, qual[y].size());
    }
    if (stacked == 0)
        throw DegenerateGroup("a column of the group has no qualifying white run");

    auto extent_for = [&](auto pick) {
        SeparatorExtent e;
        std::size_t sum_len = 0, sum_above = 0;
        for (std::size_t y = 0; y < count; ++y) {
            const std::size_t p = pick(y);
            const ColumnRuns& runs = group[y];
            for (std::size_t x = 0; x < p; ++x)
                sum_above += runs[x].length;
            sum_len += runs[p].length;
            e.p.push_back(p);
        }
        e.l_v = rounded_div(sum_len, count, rounding);
        e.s_h = rounded_div(sum_above, count, rounding);
        e.e_h = e.s_h + e.l_v;
        return e;
    };

    std::vector<SeparatorExtent> out;
    if (stacked == 1) {
        out.push_back(extent_for([&](std::size_t y) {
            std::size_t best = qual[y].front();
            for (std::size_t k : qual[y])
                if (group[y][k].length > group[y][best].length)
                    best = k;
            return best;
        }));
    } else {
        for (std::size_t k = 0; k < stacked; ++k)
            out.push_back(extent_for([&](std::size_t y) { return qual[y][k]; }));
    }
    return out;
}

/// Groups consecutive candidate columns into separators. next_column() must
/// return the ColumnRuns of pixel columns 0, 1, ..., width-1 in order.
template <class NextColumn>
std::vector<ColumnSeparator> separators_from_columns(std::size_t width, std::size_t rows,
                                                     const SeparatorParams& params,
                                                     NextColumn&& next_column,
                                                     std::vector<std::uint8_t>* candidates = nullptr)
{
    params.validate();
    const std::size_t min_run = params.resolve_min_run(rows);
    std::vector<ColumnSeparator> out;
    std::vector<ColumnRuns> group;
    std::size_t group_start = 0;
    std::size_t group_len = 0;
    std::size_t next_group_id = 0;
    if (candidates)
        candidates->assign(width, 0);

    auto close_group = [&](std::size_t last) {
        if (group_len == 0)
            return;
        const std::size_t a = group_start, b = last;
        const bool width_ok = group_len >= params.min_width && group_len <= params.max_width;
        const bool at_edge = a == 0 || b + 1 == width;
        if (width_ok && !(params.remove_edges && at_edge)) {
            auto extents = separator_params(group, a, b, min_run, params.rounding);
            std::optional<std::size_t> og;
            if (extents.size() > 1)
                og = next_group_id++;
            for (auto& e : extents)
                out.push_back({a, b, e.l_v, e.s_h, e.e_h, std::move(e.p), og});
        }
        group.clear();
        group_len = 0;
    };

    for (std::size_t x = 0; x < width; ++x) {
        ColumnRuns runs = next_column();
        const bool candidate = std::any_of(runs.begin(), runs.end(), [&](const ColumnRun& r) {
            return r.colour == 0 && r.length >= min_run;
        });
        if (candidates)
            (*candidates)[x] = candidate ? 1 : 0;
        if (!candidate) {
            if (x > 0)
                close_group(x - 1);
            continue;
        }
        if (group_len == 0)
            group_start = x;
        ++group_len;
        // Groups wider than W_max are discarded anyway; stop buffering them.
        if (group_len <= params.max_width)
            group.push_back(std::move(runs));
    }
    if (width > 0)
        close_group(width - 1);
    return out;
}

inline std::vector<ColumnSeparator> detect_separators(const RunMatrix& r,
                                                      const SeparatorParams& params,
                                                      std::vector<std::uint8_t>* candidates = nullptr)
{
    ColumnCursor cursor(r);
    std::vector<std::uint8_t> tau(r.rows());
    return separators_from_columns(
        r.width(), r.rows(), params,
        [&] {
            cursor.pop_column(tau);
            return column_runs(tau);
        },
        candidates);
}

namespace detail {

struct Band {
    std::size_t top = 0;
    std::size_t bottom = 0;
    std::vector<std::pair<std::size_t, std::size_t>> strips; // [v_alpha, v_beta], sorted
};

} // namespace detail

/// Orders column blocks for reading. Separators are taken in (S_h, V_alpha)
/// order; the first unused one is the reference and every unused separator
/// whose midpoint S_h + (E_h - S_h + 1)/2 falls in [S_h_ref, E_h_ref] joins its
/// band. Members of a stacked (overlap) group are released one at a time, top
/// first. Bands emit their blocks left to right between strips; rows no band
/// covers become full-width blocks.
inline std::vector<Rect> order_column_blocks(std::span<const ColumnSeparator> separators,
                                             std::size_t rows, std::size_t cols)
{
    std::vector<Rect> out;
    if (rows == 0 || cols == 0)
        return out;

    std::vector<std::size_t> order(separators.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& sa = separators[a];
        const auto& sb = separators[b];
        return std::tie(sa.s_h, sa.v_alpha) < std::tie(sb.s_h, sb.v_alpha);
    });

    // Consumed-extent pointer per overlap group: the next member (in s_h order) to release.
    std::map<std::size_t, std::vector<std::size_t>> group_members;
    for (std::size_t i : order)
        if (separators[i].overlap_group)
            group_members[*separators[i].overlap_group].push_back(i);
    std::map<std::size_t, std::size_t> group_ptr;

    auto eligible = [&](std::size_t i) {
        const auto& og = separators[i].overlap_group;
        if (!og)
            return true;
        return group_members[*og][group_ptr[*og]] == i;
    };

    std::vector<bool> used(separators.size(), false);
    std::vector<detail::Band> bands;
    for (;;) {
        std::optional<std::size_t> ref;
        for (std::size_t i : order)
            if (!used[i] && eligible(i)) {
                ref = i;
                break;
            }
        if (!ref)
            break;
        const auto& rs = separators[*ref];
        detail::Band band;
        std::vector<std::size_t> members{*ref};
        for (std::size_t i : order) {
            if (i == *ref || used[i] || !eligible(i))
                continue;
            const auto& s = separators[i];
            const std::size_t mid2 = 2 * s.s_h + (s.e_h - s.s_h + 1);
            if (mid2 >= 2 * rs.s_h && mid2 <= 2 * rs.e_h)
                members.push_back(i);
        }
        for (std::size_t i : members) {
            used[i] = true;
            if (auto og = separators[i].overlap_group)
                ++group_ptr[*og];
            band.strips.emplace_back(separators[i].v_alpha, separators[i].v_beta);
        }
        if (rs.e_h == 0 || rs.s_h >= rows)
            continue;
        band.top = rs.s_h;
        band.bottom = std::min(rs.e_h, rows) - 1;
        std::sort(band.strips.begin(), band.strips.end());
        bands.push_back(std::move(band));
    }

    std::stable_sort(bands.begin(), bands.end(),
                     [](const detail::Band& a, const detail::Band& b) { return a.top < b.top; });

    std::size_t next_row = 0;
    for (auto& band : bands) {
        if (band.top < next_row)
            band.top = next_row;
        if (band.top > band.bottom)
            continue;
        if (band.top > next_row)
            out.push_back({next_row, band.top - 1, 0, cols - 1});
        std::size_t x = 0;
        for (const auto& [a, b] : band.strips) {
            if (a > x)
                out.push_back({band.top, band.bottom, x, a - 1});
            x = std::max(x, b + 1);
        }
        if (x < cols)
            out.push_back({band.top, band.bottom, x, cols - 1});
        next_row = band.bottom + 1;
    }
    if (next_row < rows)
        out.push_back({next_row, rows - 1, 0, cols - 1});
    return out;
}

struct ColumnBlock {
    Rect rect;
    RunMatrix matrix;   // cropped and re-normalized
    RegionMap regions;  // inverted rows found inside the block, block-relative
};

/// Cuts a page-normalized document into ordered column blocks, each cropped
/// in compressed form and checked again for inverted regions.
inline std::vector<ColumnBlock> segment_columns(const RunMatrix& r, const SeparatorParams& params,
                                                std::size_t smooth_window = default_smooth_window)
{
    const auto separators = detect_separators(r, params);
    const auto rects = order_column_blocks(separators, r.rows(), r.width());
    std::vector<ColumnBlock> blocks;
    blocks.reserve(rects.size());
    for (const auto& rect : rects) {
        auto normalized = normalize_document(crop_block(r, rect), smooth_window);
        blocks.push_back({rect, std::move(normalized.matrix), std::move(normalized.regions)});
    }
    return blocks;
}

} // namespace rlseg
