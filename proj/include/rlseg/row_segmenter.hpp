#pragma once

// Coarse segmentation of one column block: text lines are maximal bands of
// inked rows, and the blank gap in front of each line decides whether it
// continues the paragraph, opens a new paragraph, or opens a new text block.
// Paragraphs are also opened by a first-line indent.

#include <cstddef>
#include <map>
#include <vector>

#include "rlseg/error.hpp"
#include "rlseg/geometry.hpp"
#include "rlseg/run_matrix.hpp"

namespace rlseg {

struct RowParams {
    std::size_t block_gap_min = 25;     // W_bs: gap >= this separates text blocks
    std::size_t paragraph_gap_min = 10; // W_ps lower bound
    std::size_t paragraph_gap_max = 25; // W_ps upper bound; 25 itself resolves to a block
    std::size_t line_gap_max = 10;      // W_ls: gaps below this separate lines
    std::size_t indent_min = 30;        // I_p
    std::size_t indent_max = 100;
    bool use_indent = true;

    void validate() const
    {
        if (!(line_gap_max <= paragraph_gap_min && paragraph_gap_min <= paragraph_gap_max &&
              paragraph_gap_max <= block_gap_min))
            throw ConfigError("row gaps must satisfy W_ls <= W_ps_min <= W_ps_max <= W_bs");
        if (indent_min == 0 || indent_min > indent_max)
            throw ConfigError("indent bounds must satisfy 0 < I_p_min <= I_p_max");
    }
};

enum class GapKind { Line, Paragraph, Block };

/// Blank-row gap classification. Anything short of a paragraph gap is a
/// line gap, so the function is total even when W_ls < W_ps_min.
inline GapKind classify_gap(std::size_t gap, const RowParams& p)
{
    if (gap >= p.block_gap_min)
        return GapKind::Block;
    if (gap >= p.paragraph_gap_min)
        return GapKind::Paragraph;
    return GapKind::Line;
}

struct RowProfile {
    std::vector<RowInk> rows; // per row: black mass and first/last ink column

    std::size_t size() const { return rows.size(); }
    bool blank(std::size_t i) const { return rows[i].mass == 0; }
};

inline RowProfile horizontal_profile(const RunMatrix& block)
{
    RowProfile prof;
    prof.rows.reserve(block.rows());
    for (std::size_t i = 0; i < block.rows(); ++i)
        prof.rows.push_back(row_ink(block.row(i), block.width()));
    return prof;
}

struct ParagraphBox {
    Rect rect;
    std::vector<Rect> lines;
};

struct TextBlockBox {
    Rect rect;
    std::vector<ParagraphBox> paragraphs;
};

using RowLayout = std::vector<TextBlockBox>;

/// Line rectangles (rows of the ink band, columns of its ink extent).
inline std::vector<Rect> line_bands(const RowProfile& prof)
{
    std::vector<Rect> lines;
    std::size_t i = 0;
    while (i < prof.size()) {
        if (prof.blank(i)) {
            ++i;
            continue;
        }
        Rect r{i, i, prof.rows[i].first, prof.rows[i].last};
        while (i + 1 < prof.size() && !prof.blank(i + 1)) {
            ++i;
            r.bottom = i;
            r.left = std::min(r.left, prof.rows[i].first);
            r.right = std::max(r.right, prof.rows[i].last);
        }
        lines.push_back(r);
        ++i;
    }
    return lines;
}

/// Most frequent left margin; ties go to the smaller margin.
inline std::size_t modal_margin(const std::vector<Rect>& lines, std::size_t first, std::size_t last)
{
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t k = first; k <= last; ++k)
        ++counts[lines[k].left];
    std::size_t best = 0, best_count = 0;
    for (const auto& [margin, c] : counts)
        if (c > best_count) {
            best = margin;
            best_count = c;
        }
    return best;
}

inline RowLayout segment_rows(const RowProfile& prof, const RowParams& params)
{
    params.validate();
    const auto lines = line_bands(prof);
    if (lines.empty())
        throw EmptyBlock("block contains no ink");

    std::vector<GapKind> before(lines.size(), GapKind::Block);
    for (std::size_t k = 1; k < lines.size(); ++k)
        before[k] = classify_gap(lines[k].top - lines[k - 1].bottom - 1, params);

    RowLayout layout;
    std::size_t start = 0;
    while (start < lines.size()) {
        std::size_t end = start;
        while (end + 1 < lines.size() && before[end + 1] != GapKind::Block)
            ++end;

        const std::size_t modal = modal_margin(lines, start, end);
        TextBlockBox block{lines[start], {}};
        for (std::size_t k = start; k <= end; ++k) {
            bool opens = k == start || before[k] == GapKind::Paragraph;
            if (!opens && params.use_indent && lines[k].left > modal) {
                const std::size_t indent = lines[k].left - modal;
                opens = indent >= params.indent_min && indent <= params.indent_max;
            }
            if (opens)
                block.paragraphs.push_back({lines[k], {}});
            auto& para = block.paragraphs.back();
            para.lines.push_back(lines[k]);
            para.rect = bounding_union(para.rect, lines[k]);
            block.rect = bounding_union(block.rect, lines[k]);
        }
        layout.push_back(std::move(block));
        start = end + 1;
    }
    return layout;
}

inline RowLayout segment_rows(const RunMatrix& block, const RowParams& params)
{
    return segment_rows(horizontal_profile(block), params);
}

} // namespace rlseg
