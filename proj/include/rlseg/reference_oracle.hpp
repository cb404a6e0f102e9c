#pragma once

// Conventional path: decode first, then segment with direct pixel scans.
// Used as the equivalence oracle for the compressed path and as the baseline
// in timing/memory comparisons.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlseg/bitmap.hpp"
#include "rlseg/pipeline.hpp"

namespace rlseg {

struct PixelBackend {
    using Doc = Bitmap;

    static std::size_t rows(const Doc& d) { return d.rows(); }
    static std::size_t cols(const Doc& d) { return d.cols(); }

    static Doc despeckle(const Doc& d, std::size_t min_black)
    {
        Doc out = d;
        for (std::size_t y = 0; y < d.rows(); ++y) {
            auto px = out.row(y);
            std::size_t x = 0;
            while (x < px.size()) {
                if (!px[x]) {
                    ++x;
                    continue;
                }
                std::size_t e = x;
                while (e < px.size() && px[e])
                    ++e;
                if (e - x < min_black)
                    std::fill(px.begin() + static_cast<std::ptrdiff_t>(x),
                              px.begin() + static_cast<std::ptrdiff_t>(e), std::uint8_t{0});
                x = e;
            }
        }
        return out;
    }

    static RegionMap regions(const Doc& d, std::size_t window)
    {
        std::vector<std::uint8_t> raw(d.rows());
        for (std::size_t y = 0; y < d.rows(); ++y) {
            std::size_t black = 0;
            for (std::uint8_t v : d.row(y))
                black += v;
            raw[y] = black > d.cols() - black ? 1 : 0;
        }
        return regions_from_indicator(smooth_indicator(raw, window));
    }

    static Doc toggle(const Doc& d, std::span<const RowRange> ranges)
    {
        Doc out = d;
        for (const auto& r : ranges)
            out.invert_rect({r.top, r.bottom, 0, d.cols() - 1});
        return out;
    }

    static ColumnRuns pixel_column_runs(const Doc& d, std::size_t x)
    {
        ColumnRuns runs;
        for (std::size_t y = 0; y < d.rows(); ++y) {
            const std::uint8_t v = d.at(y, x);
            if (!runs.empty() && runs.back().colour == v)
                ++runs.back().length;
            else
                runs.push_back({v, 1});
        }
        return runs;
    }

    static std::vector<ColumnSeparator> separators(const Doc& d, const SeparatorParams& p)
    {
        std::size_t x = 0;
        return separators_from_columns(d.cols(), d.rows(), p,
                                       [&] { return pixel_column_runs(d, x++); });
    }

    static Doc crop(const Doc& d, const Rect& r) { return d.crop(r); }

    static RowProfile row_profile(const Doc& d)
    {
        RowProfile prof;
        prof.rows.resize(d.rows());
        for (std::size_t y = 0; y < d.rows(); ++y) {
            auto& ink = prof.rows[y];
            const auto px = d.row(y);
            for (std::size_t x = 0; x < px.size(); ++x) {
                if (!px[x])
                    continue;
                if (ink.mass == 0)
                    ink.first = x;
                ink.last = x;
                ++ink.mass;
            }
        }
        return prof;
    }

    static std::vector<ColumnInk> column_profile(const Doc& d)
    {
        std::vector<ColumnInk> cols(d.cols());
        for (std::size_t y = 0; y < d.rows(); ++y) {
            const auto px = d.row(y);
            for (std::size_t x = 0; x < px.size(); ++x) {
                if (!px[x])
                    continue;
                if (!cols[x].any) {
                    cols[x].any = true;
                    cols[x].first = y;
                }
                cols[x].last = y;
            }
        }
        return cols;
    }
};

inline PipelineResult reference_oracle_detailed(const Bitmap& b, const PipelineConfig& cfg = {})
{
    return run_stages<PixelBackend>(b, cfg);
}

inline SegmentTree reference_oracle(const Bitmap& b, const PipelineConfig& cfg = {})
{
    return run_stages<PixelBackend>(b, cfg).tree;
}

} // namespace rlseg
