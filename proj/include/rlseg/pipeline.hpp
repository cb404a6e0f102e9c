#pragma once

// End-to-end segmentation. The stage logic is written once against a small
// backend interface; CompressedBackend works on run matrices without ever
// expanding the page, the pixel backend in reference_oracle.hpp works on a
// decoded bitmap.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rlseg/column_segmenter.hpp"
#include "rlseg/error.hpp"
#include "rlseg/fine_segmenter.hpp"
#include "rlseg/inverted_text.hpp"
#include "rlseg/row_segmenter.hpp"
#include "rlseg/run_matrix.hpp"
#include "rlseg/segment_tree.hpp"

namespace rlseg {

struct PipelineConfig {
    SeparatorParams separators;
    RowParams rows;
    FineParams fine;
    std::size_t smooth_window = default_smooth_window;
    std::size_t despeckle_min_black = 0; // 0 or 1 disables despeckling
    double overlap = 0.5;
    bool count_spurious = true; // L_er includes detections matching no gt line

    void validate() const
    {
        separators.validate();
        rows.validate();
        fine.validate();
        if (smooth_window == 0 || smooth_window % 2 == 0)
            throw ConfigError("smooth_window must be odd and >= 1");
        if (!(overlap > 0.0 && overlap <= 1.0))
            throw ConfigError("overlap must lie in (0, 1]");
    }
};

struct BlockRegions {
    Rect rect;
    RegionMap regions; // block-relative rows
};

struct PipelineResult {
    SegmentTree tree;
    RegionMap page_regions;
    std::vector<ColumnSeparator> separators;
    std::vector<BlockRegions> blocks;
};

struct CompressedBackend {
    using Doc = RunMatrix;

    static std::size_t rows(const Doc& d) { return d.rows(); }
    static std::size_t cols(const Doc& d) { return d.width(); }
    static Doc despeckle(const Doc& d, std::size_t min_black) { return rlseg::despeckle(d, min_black); }
    static RegionMap regions(const Doc& d, std::size_t window)
    {
        return classify_regions(row_histograms(d), window);
    }
    static Doc toggle(const Doc& d, std::span<const RowRange> ranges)
    {
        return toggle_regions(d, ranges);
    }
    static std::vector<ColumnSeparator> separators(const Doc& d, const SeparatorParams& p)
    {
        return detect_separators(d, p);
    }
    static Doc crop(const Doc& d, const Rect& r) { return crop_block(d, r); }
    static RowProfile row_profile(const Doc& d) { return horizontal_profile(d); }
    static std::vector<ColumnInk> column_profile(const Doc& d) { return vertical_profile(d); }
};

namespace detail {

template <class Backend>
SegmentNode column_node(const typename Backend::Doc& block, const Rect& rect,
                        const RowLayout& layout, const PipelineConfig& cfg)
{
    SegmentNode col{NodeKind::Column, rect, {}};
    for (const auto& tb : layout) {
        SegmentNode bn{NodeKind::Block, tb.rect.translated(rect.top, rect.left), {}};
        for (const auto& para : tb.paragraphs) {
            SegmentNode pn{NodeKind::Paragraph, para.rect.translated(rect.top, rect.left), {}};
            for (const auto& line : para.lines) {
                const Rect page_line = line.translated(rect.top, rect.left);
                SegmentNode ln{NodeKind::Line, page_line, {}};
                const auto words = segment_line_profile(
                    Backend::column_profile(Backend::crop(block, line)), cfg.fine);
                for (const auto& w : words) {
                    SegmentNode wn{NodeKind::Word, w.rect.translated(page_line.top, page_line.left), {}};
                    for (const auto& c : w.characters)
                        wn.children.push_back(
                            {NodeKind::Character, c.translated(page_line.top, page_line.left), {}});
                    ln.children.push_back(std::move(wn));
                }
                pn.children.push_back(std::move(ln));
            }
            bn.children.push_back(std::move(pn));
        }
        col.children.push_back(std::move(bn));
    }
    return col;
}

} // namespace detail

/// Runs every stage on one page. Column blocks with no ink are dropped from
/// the tree; an all-white page gives a page node without children.
template <class Backend>
PipelineResult run_stages(const typename Backend::Doc& input, const PipelineConfig& cfg)
{
    using Doc = typename Backend::Doc;
    cfg.validate();
    PipelineResult res;
    const std::size_t m = Backend::rows(input), n = Backend::cols(input);
    res.tree.kind = NodeKind::Page;
    if (m == 0 || n == 0)
        return res;
    res.tree.rect = {0, m - 1, 0, n - 1};

    const Doc* page = &input;
    std::optional<Doc> owned;
    if (cfg.despeckle_min_black > 1) {
        owned = Backend::despeckle(input, cfg.despeckle_min_black);
        page = &*owned;
    }
    res.page_regions = Backend::regions(*page, cfg.smooth_window);
    if (res.page_regions.any_inverted()) {
        owned = Backend::toggle(*page, res.page_regions.inverted);
        page = &*owned;
    }

    res.separators = Backend::separators(*page, cfg.separators);
    const auto rects = order_column_blocks(res.separators, m, n);
    for (const auto& rect : rects) {
        Doc block = Backend::crop(*page, rect);
        RegionMap regions = Backend::regions(block, cfg.smooth_window);
        if (regions.any_inverted())
            block = Backend::toggle(block, regions.inverted);
        res.blocks.push_back({rect, std::move(regions)});

        const RowProfile profile = Backend::row_profile(block);
        bool any_ink = false;
        for (std::size_t i = 0; i < profile.size() && !any_ink; ++i)
            any_ink = !profile.blank(i);
        if (!any_ink)
            continue;
        const RowLayout layout = segment_rows(profile, cfg.rows);
        res.tree.children.push_back(detail::column_node<Backend>(block, rect, layout, cfg));
    }
    return res;
}

inline PipelineResult run_pipeline_detailed(const RunMatrix& r, const PipelineConfig& cfg = {})
{
    return run_stages<CompressedBackend>(r, cfg);
}

inline SegmentTree run_pipeline(const RunMatrix& r, const PipelineConfig& cfg = {})
{
    return run_stages<CompressedBackend>(r, cfg).tree;
}

} // namespace rlseg
