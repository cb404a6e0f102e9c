#pragma once

// Deterministic synthetic pages with exact ground truth.
//
// A page is a vertical stack of sections separated by full-width rules.
// A section holds one or more text columns; text is laid out as blocks of
// paragraphs of lines of words of glyphs. Glyphs are box-shaped: by default a
// stroked "N" (two bars and a diagonal that touches every column), which keeps
// rows well below half ink so polarity detection sees ordinary text; filled
// boxes are available for tiny pages. Inverted bands are painted last.
//
// The generator checks its own output (polarity, gutters, despeckle safety)
// and throws InfeasibleSpec when the page would not segment as laid out.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rlseg/bitmap.hpp"
#include "rlseg/error.hpp"
#include "rlseg/evaluation.hpp"
#include "rlseg/geometry.hpp"
#include "rlseg/inverted_text.hpp"
#include "rlseg/segment_tree.hpp"

namespace rlseg {

struct SizeRange {
    std::size_t min = 0;
    std::size_t max = 0;

    friend bool operator==(const SizeRange&, const SizeRange&) = default;
};

enum class GlyphStyle { Stroke, Filled };

struct SectionSpec {
    std::size_t columns = 1;
    std::vector<double> weights; // relative column widths; empty means equal
    std::size_t height = 0;      // 0: share the rows left over by fixed sections
};

struct InvertedBandSpec {
    std::size_t section = 0;
    long column = -1;        // -1 spans the page width
    std::size_t block = 0;   // text block index within the column
    std::size_t pad = 3;     // rows added above and below the block
    std::optional<RowRange> rows; // explicit page rows instead of a block
};

struct LayoutSpec {
    std::size_t page_width = 0;
    std::size_t page_height = 0; // 0: sum of section heights and rules
    std::size_t margin_left = 40;
    std::size_t margin_right = 40;
    std::size_t gutter = 90;
    std::size_t section_padding = 30;
    std::size_t rule_height = 6;
    std::vector<SectionSpec> sections;

    SizeRange line_gap{3, 8};
    SizeRange paragraph_gap{12, 20};
    SizeRange block_gap{28, 40};
    SizeRange char_gap{1, 3};
    SizeRange word_gap{6, 12};
    SizeRange indent{40, 60}; // {0,0} disables first-line indents
    double indent_only_chance = 0.3;

    SizeRange glyph_width{6, 12};
    std::size_t line_height = 14;
    std::size_t x_height = 9;
    std::size_t stroke = 1;
    GlyphStyle style = GlyphStyle::Stroke;

    SizeRange glyphs_per_word{1, 7};
    SizeRange words_per_line{0, 0}; // {0,0}: fill and justify to the column edge
    SizeRange lines_per_paragraph{2, 5};
    SizeRange paragraphs_per_block{1, 3};
    SizeRange blocks_per_column{0, 0}; // {0,0}: as many as fit

    std::vector<InvertedBandSpec> inverted;
    std::size_t noise = 0; // isolated 1-px specks
    std::uint64_t seed = 1;
    bool force = false;    // accept gaps on classification boundaries
};

struct GeneratedDocument {
    Bitmap bitmap;
    GroundTruth truth;
    SegmentTree tree;
    std::vector<Rect> column_rects;   // expected column blocks in reading order
    std::vector<Rect> gutters;        // gutter strips, rows of their section
    std::vector<Rect> inverted_bands; // page rects that were complemented
    std::vector<Rect> full_width_bands;
};

namespace detail {

struct LineIntent {
    std::vector<std::vector<Rect>> words; // glyph boxes per word
};

struct ParagraphIntent {
    std::vector<LineIntent> lines;
};

struct BlockIntent {
    std::vector<ParagraphIntent> paragraphs;
};

struct ColumnIntent {
    Rect area; // column block rect the pipeline should produce
    std::size_t text_left = 0, text_right = 0;
    std::vector<BlockIntent> blocks;
};

struct SectionIntent {
    std::size_t top = 0, bottom = 0;
    std::vector<ColumnIntent> columns;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::size_t draw(std::size_t lo, std::size_t hi)
    {
        if (hi <= lo)
            return lo;
        return lo + static_cast<std::size_t>(eng_() % (hi - lo + 1));
    }
    std::size_t draw(SizeRange r) { return draw(r.min, r.max); }
    bool chance(double p) { return static_cast<double>(eng_() % 1000000) < p * 1e6; }

private:
    std::mt19937_64 eng_;
};

inline void draw_glyph(Bitmap& b, const Rect& box, std::size_t stroke, GlyphStyle style)
{
    if (style == GlyphStyle::Filled) {
        b.fill_rect(box, 1);
        return;
    }
    const std::size_t s = std::max<std::size_t>(1, stroke);
    const std::size_t w = box.width(), h = box.height();
    const std::size_t bar = std::min(s, w);
    b.fill_rect({box.top, box.bottom, box.left, box.left + bar - 1}, 1);
    b.fill_rect({box.top, box.bottom, box.right - bar + 1, box.right}, 1);
    for (std::size_t dx = 0; dx < w; ++dx) {
        const std::size_t dy = w == 1 ? 0 : (2 * dx * (h - 1) + (w - 1)) / (2 * (w - 1));
        const std::size_t y0 = box.top + dy;
        const std::size_t x0 = box.left + dx;
        b.fill_rect({y0, std::min(y0 + s - 1, box.bottom), x0, std::min(x0 + s - 1, box.right)}, 1);
    }
}

// Rules are box outlines: solid first and last rows stop every gutter run
// exactly, and two isolated dense rows never survive the polarity filter.
inline void draw_rule(Bitmap& b, const Rect& box, std::size_t stroke)
{
    const std::size_t bar = std::min(std::max<std::size_t>(1, stroke), box.width());
    b.fill_rect({box.top, box.top, box.left, box.right}, 1);
    b.fill_rect({box.bottom, box.bottom, box.left, box.right}, 1);
    b.fill_rect({box.top, box.bottom, box.left, box.left + bar - 1}, 1);
    b.fill_rect({box.top, box.bottom, box.right - bar + 1, box.right}, 1);
}

inline Rect union_of(const std::vector<Rect>& rs)
{
    Rect u = rs.front();
    for (const auto& r : rs)
        u = bounding_union(u, r);
    return u;
}

inline Rect line_rect(const LineIntent& l)
{
    Rect u = union_of(l.words.front());
    for (const auto& w : l.words)
        u = bounding_union(u, union_of(w));
    return u;
}

inline std::vector<std::uint8_t> smoothed_polarity(const Bitmap& b, std::size_t window)
{
    std::vector<std::uint8_t> raw(b.rows());
    for (std::size_t y = 0; y < b.rows(); ++y) {
        std::size_t black = 0;
        for (auto v : b.row(y))
            black += v;
        raw[y] = 2 * black > b.cols() ? 1 : 0;
    }
    return smooth_indicator(raw, window);
}

class PageBuilder {
public:
    explicit PageBuilder(const LayoutSpec& spec) : spec_(spec), rng_(spec.seed) {}

    GeneratedDocument build();

private:
    void check_ranges() const;
    void plan_rows();
    void lay_out_column(ColumnIntent& col, std::size_t top, std::size_t bottom);
    LineIntent make_line(std::size_t top, std::size_t left, std::size_t right, bool justify);
    std::vector<Rect> make_word(std::size_t top, std::size_t x);
    void render();
    void build_tree();
    void paint_bands();
    void validate_polarity() const;
    void validate_gutters() const;
    void add_noise();

    SegmentNode block_node(const BlockIntent& b) const;

    const LayoutSpec& spec_;
    Rng rng_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<SectionIntent> sections_;
    std::vector<Rect> rules_;
    Bitmap clean_; // page before inversion and noise
    GeneratedDocument doc_;
    std::vector<Rect> column_local_bands_;
};

inline void PageBuilder::check_ranges() const
{
    const auto& s = spec_;
    if (s.page_width == 0 || s.sections.empty())
        throw InfeasibleSpec("page width and at least one section are required");
    auto ordered = [](SizeRange r) { return r.min <= r.max; };
    for (SizeRange r : {s.line_gap, s.paragraph_gap, s.block_gap, s.char_gap, s.word_gap, s.indent,
                        s.glyph_width, s.glyphs_per_word, s.words_per_line, s.lines_per_paragraph,
                        s.paragraphs_per_block, s.blocks_per_column})
        if (!ordered(r))
            throw InfeasibleSpec("range with min > max");
    if (s.line_height == 0 || s.x_height == 0 || s.x_height > s.line_height)
        throw InfeasibleSpec("glyph heights must satisfy 0 < x_height <= line_height");
    if (s.glyph_width.min == 0 || s.char_gap.min == 0 || s.glyphs_per_word.min == 0 ||
        s.lines_per_paragraph.min == 0 || s.paragraphs_per_block.min == 0)
        throw InfeasibleSpec("glyph width, char gap and per-level counts must be positive");
    if (s.noise > 0 && !s.inverted.empty())
        throw InfeasibleSpec("noise cannot be combined with inverted bands");
    if (s.noise > 0 && s.stroke < 2 && s.style == GlyphStyle::Stroke)
        throw InfeasibleSpec("noise needs stroke >= 2 so despeckling keeps glyphs");
    if (s.rule_height < 2 && s.sections.size() > 1)
        throw InfeasibleSpec("rule_height must be at least 2");
    if (s.force)
        return;
    // Stay clear of every classification boundary.
    if (s.line_gap.max > 8)
        throw InfeasibleSpec("line gaps must stay <= 8");
    if (s.paragraph_gap.min < 11 || s.paragraph_gap.max > 23)
        throw InfeasibleSpec("paragraph gaps must stay within 11..23");
    if (s.block_gap.min < 27)
        throw InfeasibleSpec("block gaps must be >= 27");
    if (s.sections.size() > 1 && s.section_padding < 27)
        throw InfeasibleSpec("section padding must be >= 27 next to a rule");
    if (s.char_gap.max > 3)
        throw InfeasibleSpec("character gaps must stay within 1..3");
    if (s.word_gap.min < 6)
        throw InfeasibleSpec("word gaps must be >= 6");
    if (s.indent.max > 0 &&
        (s.indent.min < 31 || s.indent.max > 99 || s.indent.max - s.indent.min >= 30))
        throw InfeasibleSpec("indents must lie in 31..99 and differ by less than 30");
    for (const auto& sec : s.sections)
        if (sec.columns > 1 && (s.gutter < 71 || s.gutter > 119))
            throw InfeasibleSpec("gutter width must lie in 71..119");
}

inline void PageBuilder::plan_rows()
{
    const auto& secs = spec_.sections;
    const std::size_t rules = (secs.size() - 1) * spec_.rule_height;
    std::size_t fixed = rules, open = 0;
    for (const auto& s : secs) {
        fixed += s.height;
        open += s.height == 0 ? 1 : 0;
    }
    std::vector<std::size_t> heights;
    if (spec_.page_height == 0) {
        if (open)
            throw InfeasibleSpec("section heights are required when page_height is 0");
        rows_ = fixed;
        for (const auto& s : secs)
            heights.push_back(s.height);
    } else {
        rows_ = spec_.page_height;
        if (fixed > rows_ || (open == 0 && fixed != rows_))
            throw InfeasibleSpec("section heights do not add up to page_height");
        const std::size_t spare = rows_ - fixed;
        std::size_t seen = 0;
        for (const auto& s : secs) {
            if (s.height) {
                heights.push_back(s.height);
                continue;
            }
            ++seen;
            heights.push_back(spare / open + (seen == open ? spare % open : 0));
        }
    }
    cols_ = spec_.page_width;

    std::size_t y = 0;
    for (std::size_t i = 0; i < secs.size(); ++i) {
        if (heights[i] == 0)
            throw InfeasibleSpec("empty section");
        if (i > 0) {
            rules_.push_back({y, y + spec_.rule_height - 1, 0, cols_ - 1});
            y += spec_.rule_height;
        }
        SectionIntent sec;
        sec.top = y;
        sec.bottom = y + heights[i] - 1;
        y += heights[i];

        const std::size_t k = secs[i].columns;
        if (k == 0)
            throw InfeasibleSpec("section with zero columns");
        const std::size_t chrome = spec_.margin_left + spec_.margin_right + (k - 1) * spec_.gutter;
        if (chrome >= cols_)
            throw InfeasibleSpec("margins and gutters leave no room for text");
        const std::size_t text = cols_ - chrome;
        std::vector<double> w = secs[i].weights;
        if (w.empty())
            w.assign(k, 1.0);
        if (w.size() != k)
            throw InfeasibleSpec("column weights do not match column count");
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        std::size_t x = spec_.margin_left, used = 0;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t width = c + 1 == k ? text - used
                                           : static_cast<std::size_t>(static_cast<double>(text) * w[c] / total);
            if (width < 2 * spec_.glyph_width.max)
                throw InfeasibleSpec("column too narrow");
            used += width;
            ColumnIntent col;
            col.text_left = x;
            col.text_right = x + width - 1;
            x += width + spec_.gutter;
            sec.columns.push_back(std::move(col));
        }
        for (std::size_t c = 0; c < k; ++c) {
            auto& col = sec.columns[c];
            if (k == 1)
                col.area = {sec.top, sec.bottom, 0, cols_ - 1};
            else
                col.area = {sec.top, sec.bottom, c == 0 ? 0 : col.text_left,
                            c + 1 == k ? cols_ - 1 : col.text_right};
        }
        sections_.push_back(std::move(sec));
    }
    if (y != rows_)
        throw InfeasibleSpec("row plan does not fill the page");
}

inline std::vector<Rect> PageBuilder::make_word(std::size_t top, std::size_t x)
{
    std::vector<Rect> glyphs;
    const std::size_t n = rng_.draw(spec_.glyphs_per_word);
    for (std::size_t g = 0; g < n; ++g) {
        if (g > 0)
            x += rng_.draw(spec_.char_gap);
        const std::size_t w = rng_.draw(spec_.glyph_width);
        const bool tall = glyphs.empty() || rng_.draw(0, 2) == 0;
        const std::size_t gh = tall ? spec_.line_height : spec_.x_height;
        const std::size_t bottom = top + spec_.line_height - 1;
        glyphs.push_back({bottom - gh + 1, bottom, x, x + w - 1});
        x += w;
    }
    return glyphs;
}

inline LineIntent PageBuilder::make_line(std::size_t top, std::size_t left, std::size_t right,
                                         bool justify)
{
    // Word sequence with the minimal gaps; then gaps are widened to justify.
    LineIntent line;
    std::vector<std::size_t> gaps;
    const bool fixed_count = spec_.words_per_line.max > 0;
    const std::size_t want = fixed_count ? rng_.draw(spec_.words_per_line) : SIZE_MAX;
    const std::size_t limit =
        justify || fixed_count ? right : left + (right - left) * rng_.draw(30, 90) / 100;
    std::size_t x = left;
    while (line.words.size() < want) {
        const std::size_t gap = line.words.empty() ? 0 : rng_.draw(spec_.word_gap);
        auto word = make_word(top, x + gap);
        if (word.back().right > limit) {
            if (line.words.empty()) {
                // Trim the first word until it fits; a line always has ink.
                while (word.size() > 1 && word.back().right > right)
                    word.pop_back();
                if (word.back().right > right)
                    throw InfeasibleSpec("column narrower than a glyph");
                line.words.push_back(std::move(word));
                x = line.words.back().back().right + 1;
            }
            break;
        }
        if (!line.words.empty())
            gaps.push_back(gap);
        x = word.back().right + 1;
        line.words.push_back(std::move(word));
    }
    if (justify && !fixed_count) {
        const std::size_t slack = right + 1 - x;
        if (gaps.empty()) {
            line.words.back().back().right += slack;
        } else {
            std::size_t shift = 0;
            for (std::size_t k = 0; k < gaps.size(); ++k) {
                shift += slack / gaps.size() + (k < slack % gaps.size() ? 1 : 0);
                for (auto& g : line.words[k + 1]) {
                    g.left += shift;
                    g.right += shift;
                }
            }
        }
    }
    return line;
}

inline void PageBuilder::lay_out_column(ColumnIntent& col, std::size_t top, std::size_t bottom)
{
    const std::size_t lh = spec_.line_height;
    const std::size_t end = bottom + 1; // exclusive
    const bool indents = spec_.indent.max > 0;
    const bool indent_only_ok = indents && spec_.lines_per_paragraph.min >= 2;
    auto fits = [&](std::size_t y, std::size_t lines, std::size_t gap_between) {
        return y + lines * lh + (lines - 1) * gap_between <= end;
    };
    const std::size_t first_lines = std::min<std::size_t>(2, spec_.lines_per_paragraph.min);
    const std::size_t max_blocks =
        spec_.blocks_per_column.max ? rng_.draw(spec_.blocks_per_column) : SIZE_MAX;

    std::size_t y = top;
    bool first_block = true;
    while (col.blocks.size() < max_blocks) {
        const std::size_t bgap = first_block ? 0 : rng_.draw(spec_.block_gap);
        if (!fits(y + bgap, first_lines, spec_.line_gap.max))
            break;
        y += bgap;
        first_block = false;
        BlockIntent block;
        const std::size_t paras = rng_.draw(spec_.paragraphs_per_block);
        bool column_full = false;
        for (std::size_t p = 0; p < paras; ++p) {
            std::size_t pgap = 0;
            if (p > 0) {
                pgap = indent_only_ok && rng_.chance(spec_.indent_only_chance)
                           ? rng_.draw(spec_.line_gap)
                           : rng_.draw(spec_.paragraph_gap);
                if (!fits(y + pgap, first_lines, spec_.line_gap.max)) {
                    column_full = true;
                    break;
                }
            }
            y += pgap;
            ParagraphIntent para;
            const std::size_t lines = rng_.draw(spec_.lines_per_paragraph);
            const std::size_t indent = indents ? rng_.draw(spec_.indent) : 0;
            for (std::size_t l = 0; l < lines; ++l) {
                const std::size_t lgap = l == 0 ? 0 : rng_.draw(spec_.line_gap);
                if (y + lgap + lh > end) {
                    column_full = true;
                    break;
                }
                y += lgap;
                const bool last = l + 1 == lines;
                para.lines.push_back(make_line(y, col.text_left + (l == 0 ? indent : 0),
                                               col.text_right, !last));
                y += lh;
            }
            block.paragraphs.push_back(std::move(para));
            if (column_full)
                break;
        }
        col.blocks.push_back(std::move(block));
        if (column_full)
            break;
    }
}

inline void PageBuilder::render()
{
    clean_ = Bitmap(rows_, cols_);
    for (auto& sec : sections_) {
        const std::size_t pad = spec_.section_padding;
        if (sec.bottom + 1 < sec.top + 2 * pad + spec_.line_height)
            throw InfeasibleSpec("section too short for one line");
        for (auto& col : sec.columns) {
            lay_out_column(col, sec.top + pad, sec.bottom - pad);
            if (col.blocks.empty())
                throw InfeasibleSpec("a column received no text");
            for (const auto& b : col.blocks)
                for (const auto& p : b.paragraphs)
                    for (const auto& l : p.lines)
                        for (const auto& w : l.words)
                            for (const auto& g : w)
                                draw_glyph(clean_, g, spec_.stroke, spec_.style);
        }
    }
    for (const auto& r : rules_)
        draw_rule(clean_, r, spec_.stroke);
}

inline SegmentNode PageBuilder::block_node(const BlockIntent& b) const
{
    SegmentNode bn{NodeKind::Block, {}, {}};
    for (const auto& p : b.paragraphs) {
        SegmentNode pn{NodeKind::Paragraph, {}, {}};
        for (const auto& l : p.lines) {
            SegmentNode ln{NodeKind::Line, line_rect(l), {}};
            for (const auto& w : l.words) {
                SegmentNode wn{NodeKind::Word, union_of(w), {}};
                for (const auto& g : w)
                    wn.children.push_back({NodeKind::Character, g, {}});
                ln.children.push_back(std::move(wn));
            }
            pn.rect = pn.children.empty() ? ln.rect : bounding_union(pn.rect, ln.rect);
            pn.children.push_back(std::move(ln));
        }
        bn.rect = bn.children.empty() ? pn.rect : bounding_union(bn.rect, pn.rect);
        bn.children.push_back(std::move(pn));
    }
    return bn;
}

inline void PageBuilder::build_tree()
{
    auto& tree = doc_.tree;
    tree = {NodeKind::Page, {0, rows_ - 1, 0, cols_ - 1}, {}};

    // Text blocks that land in full-width column blocks: single-column
    // sections and rules, keyed by their top row.
    struct Pending {
        std::size_t top;
        SegmentNode node;
    };
    std::vector<Pending> full_width;
    std::size_t next_row = 0;

    auto flush_full_width = [&](std::size_t bottom) {
        if (next_row > bottom)
            return;
        const Rect area{next_row, bottom, 0, cols_ - 1};
        SegmentNode col{NodeKind::Column, area, {}};
        std::stable_sort(full_width.begin(), full_width.end(),
                         [](const Pending& a, const Pending& b) { return a.top < b.top; });
        for (auto& p : full_width)
            col.children.push_back(std::move(p.node));
        full_width.clear();
        doc_.column_rects.push_back(area);
        if (!col.children.empty())
            tree.children.push_back(std::move(col));
    };

    std::size_t rule_idx = 0;
    auto take_rules_before = [&](std::size_t row) {
        while (rule_idx < rules_.size() && rules_[rule_idx].top < row) {
            const Rect& r = rules_[rule_idx++];
            SegmentNode ln{NodeKind::Line, r, {}};
            SegmentNode wn{NodeKind::Word, r, {{NodeKind::Character, r, {}}}};
            ln.children.push_back(std::move(wn));
            SegmentNode pn{NodeKind::Paragraph, r, {}};
            pn.children.push_back(std::move(ln));
            SegmentNode bn{NodeKind::Block, r, {}};
            bn.children.push_back(std::move(pn));
            full_width.push_back({r.top, std::move(bn)});
        }
    };

    for (const auto& sec : sections_) {
        take_rules_before(sec.top);
        if (sec.columns.size() == 1) {
            for (const auto& b : sec.columns.front().blocks) {
                auto node = block_node(b);
                const std::size_t top = node.rect.top;
                full_width.push_back({top, std::move(node)});
            }
            continue;
        }
        if (sec.top > 0)
            flush_full_width(sec.top - 1);
        for (const auto& col : sec.columns) {
            SegmentNode cn{NodeKind::Column, col.area, {}};
            for (const auto& b : col.blocks)
                cn.children.push_back(block_node(b));
            doc_.column_rects.push_back(col.area);
            tree.children.push_back(std::move(cn));
        }
        for (std::size_t c = 0; c + 1 < sec.columns.size(); ++c)
            doc_.gutters.push_back({sec.top, sec.bottom, sec.columns[c].text_right + 1,
                                    sec.columns[c + 1].text_left - 1});
        next_row = sec.bottom + 1;
    }
    take_rules_before(rows_);
    flush_full_width(rows_ - 1);
}

inline void PageBuilder::paint_bands()
{
    for (const auto& band : spec_.inverted) {
        if (band.section >= sections_.size())
            throw InfeasibleSpec("inverted band names a missing section");
        const auto& sec = sections_[band.section];
        const bool full = band.column < 0 || sec.columns.size() == 1;
        const std::size_t c = full ? 0 : static_cast<std::size_t>(band.column);
        if (c >= sec.columns.size())
            throw InfeasibleSpec("inverted band names a missing column");
        const auto& col = sec.columns[c];
        Rect rect{0, 0, full ? 0 : col.area.left, full ? cols_ - 1 : col.area.right};
        if (band.rows) {
            rect.top = band.rows->top;
            rect.bottom = band.rows->bottom;
        } else {
            if (band.block >= col.blocks.size())
                throw InfeasibleSpec("inverted band names a missing block");
            const Rect br = block_node(col.blocks[band.block]).rect;
            rect.top = br.top >= sec.top + band.pad ? br.top - band.pad : sec.top;
            rect.bottom = std::min(br.bottom + band.pad, sec.bottom);
        }
        if (rect.bottom < rect.top || rect.bottom >= rows_)
            throw InfeasibleSpec("inverted band outside the page");
        if (!full && sec.columns.size() > 1 && band.rows &&
            (rect.top < sec.top || rect.bottom > sec.bottom))
            throw InfeasibleSpec("column band leaves its section");
        doc_.bitmap.invert_rect(rect);
        doc_.inverted_bands.push_back(rect);
        if (full)
            doc_.full_width_bands.push_back(rect);
        else
            column_local_bands_.push_back(rect);
    }
}

inline void PageBuilder::validate_polarity() const
{
    const std::size_t window = default_smooth_window;
    std::vector<std::uint8_t> want(rows_, 0);
    for (const auto& r : doc_.full_width_bands)
        for (std::size_t y = r.top; y <= r.bottom; ++y)
            want[y] = 1;
    if (smoothed_polarity(doc_.bitmap, window) != want)
        throw InfeasibleSpec("page-level polarity differs from the painted bands");

    Bitmap page = doc_.bitmap;
    for (const auto& r : doc_.full_width_bands)
        page.invert_rect({r.top, r.bottom, 0, cols_ - 1});
    for (const auto& area : doc_.column_rects) {
        const Bitmap block = page.crop(area);
        std::vector<std::uint8_t> local(area.height(), 0);
        for (const auto& r : column_local_bands_) {
            if (r.left < area.left || r.right > area.right || r.bottom < area.top ||
                r.top > area.bottom)
                continue;
            if (r.left != area.left || r.right != area.right)
                throw InfeasibleSpec("column band does not span its column block");
            for (std::size_t y = std::max(r.top, area.top); y <= std::min(r.bottom, area.bottom); ++y)
                local[y - area.top] = 1;
        }
        if (smoothed_polarity(block, window) != local)
            throw InfeasibleSpec("block-level polarity differs from the painted bands");
        for (std::size_t y = 0; y < local.size(); ++y)
            if (local[y])
                page.invert_rect({area.top + y, area.top + y, area.left, area.right});
    }
    // Gutters are not part of any column block and must be clean already.
    if (page != clean_)
        throw InfeasibleSpec("normalized page differs from the clean layout");
}

inline void PageBuilder::validate_gutters() const
{
    // Page as the separator stage sees it: full-width bands toggled back.
    Bitmap page = doc_.bitmap;
    for (const auto& r : doc_.full_width_bands)
        page.invert_rect({r.top, r.bottom, 0, cols_ - 1});

    const std::size_t min_run = std::max<std::size_t>(1, (rows_ + 5) / 6);
    std::vector<std::vector<RowRange>> long_runs(cols_);
    for (std::size_t x = 0; x < cols_; ++x) {
        std::size_t y = 0;
        while (y < rows_) {
            if (page.at(y, x)) {
                ++y;
                continue;
            }
            std::size_t e = y;
            while (e < rows_ && !page.at(e, x))
                ++e;
            if (e - y >= min_run)
                long_runs[x].push_back({y, e - 1});
            y = e;
        }
    }
    // Expected long white runs per column: one per section owning a gutter there.
    std::vector<std::vector<RowRange>> want(cols_);
    for (const auto& g : doc_.gutters)
        for (std::size_t x = g.left; x <= g.right; ++x)
            want[x].push_back({g.top, g.bottom});
    for (auto& w : want)
        std::sort(w.begin(), w.end());

    std::size_t x = 0;
    while (x < cols_) {
        if (long_runs[x].empty()) {
            ++x;
            continue;
        }
        std::size_t e = x;
        while (e + 1 < cols_ && !long_runs[e + 1].empty())
            ++e;
        // Strips at the page edge or outside the separator width range are
        // ignored by the separator stage.
        const bool at_edge = x == 0 || e + 1 == cols_;
        const std::size_t width = e - x + 1;
        if (!at_edge && width >= 70 && width <= 120) {
            for (std::size_t c = x; c <= e; ++c)
                if (long_runs[c] != want[c]) {
                    std::string got;
                    for (const auto& r : long_runs[c])
                        got += " " + std::to_string(r.top) + "-" + std::to_string(r.bottom);
                    throw InfeasibleSpec("white strip at columns " + std::to_string(x) + ".." +
                                         std::to_string(e) + " is not a planned gutter (column " +
                                         std::to_string(c) + " has long runs" + got + ")");
                }
        }
        x = e + 1;
    }
    for (std::size_t c = 0; c < cols_; ++c)
        if (!want[c].empty() && long_runs[c] != want[c])
            throw InfeasibleSpec("gutter column " + std::to_string(c) + " is not clean");
    // Each gutter must form a strip of its own, exactly its width.
    for (const auto& g : doc_.gutters) {
        const bool left_closed = g.left > 0 && long_runs[g.left - 1].empty();
        const bool right_closed = g.right + 1 < cols_ && long_runs[g.right + 1].empty();
        if (!left_closed || !right_closed)
            throw InfeasibleSpec("gutter merges with a neighbouring white strip");
        if (g.width() < 70 || g.width() > 120)
            throw InfeasibleSpec("gutter width outside the separator range");
    }
}

inline void PageBuilder::add_noise()
{
    std::size_t placed = 0, attempts = 0;
    auto& b = doc_.bitmap;
    while (placed < spec_.noise) {
        if (++attempts > spec_.noise * 1000 + 1000)
            throw InfeasibleSpec("no room for noise specks");
        const std::size_t y = rng_.draw(0, rows_ - 1);
        const std::size_t x = rng_.draw(1, cols_ - 2);
        if (b.at(y, x) || b.at(y, x - 1) || b.at(y, x + 1))
            continue;
        b.set(y, x, 1);
        ++placed;
    }
    // Every glyph run must survive despeckling; only the specks may go.
    for (std::size_t y = 0; y < rows_; ++y) {
        const auto px = clean_.row(y);
        std::size_t i = 0;
        while (i < px.size()) {
            if (!px[i]) {
                ++i;
                continue;
            }
            std::size_t e = i;
            while (e < px.size() && px[e])
                ++e;
            if (e - i < 2)
                throw InfeasibleSpec("glyph run of width 1 would be despeckled");
            i = e;
        }
    }
}

inline GeneratedDocument PageBuilder::build()
{
    check_ranges();
    plan_rows();
    render();
    build_tree();
    doc_.bitmap = clean_;
    paint_bands();

    for (const auto& col : doc_.tree.children)
        for (const auto& blk : col.children)
            for (const auto& par : blk.children)
                for (const auto& line : par.children) {
                    bool inv = false;
                    for (const auto& band : doc_.inverted_bands)
                        inv = inv || (interval_overlap(line.rect.top, line.rect.bottom, band.top,
                                                       band.bottom) > 0 &&
                                      interval_overlap(line.rect.left, line.rect.right, band.left,
                                                       band.right) > 0);
                    doc_.truth.lines.push_back({line.rect, inv});
                }

    validate_polarity();
    validate_gutters();
    if (spec_.noise > 0)
        add_noise();
    return std::move(doc_);
}

} // namespace detail

/// Renders spec into a page with its ground truth; deterministic in spec.seed.
inline GeneratedDocument generate(const LayoutSpec& spec)
{
    detail::PageBuilder builder(spec);
    return builder.build();
}

} // namespace rlseg
