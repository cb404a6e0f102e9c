#pragma once

// Fine segmentation of a text line: pixel columns are popped left to right,
// blank columns form gaps, wide gaps separate words and narrow ones separate
// characters.

#include <cstddef>
#include <vector>

#include "rlseg/error.hpp"
#include "rlseg/geometry.hpp"
#include "rlseg/run_matrix.hpp"
#include "rlseg/vertical_cursor.hpp"

namespace rlseg {

struct FineParams {
    std::size_t word_gap_min = 5; // W_ws: blank gap >= this separates words
    std::size_t char_gap_max = 5; // W_cs: blank gap < this separates characters

    void validate() const
    {
        if (word_gap_min == 0 || char_gap_max > word_gap_min)
            throw ConfigError("fine gaps must satisfy 0 < W_cs <= W_ws");
    }
};

enum class ColumnGapKind { Character, Word };

/// Every blank gap below W_ws splits characters, so the result is total.
inline ColumnGapKind classify_column_gap(std::size_t gap, const FineParams& p)
{
    return gap >= p.word_gap_min ? ColumnGapKind::Word : ColumnGapKind::Character;
}

struct WordBox {
    Rect rect;
    std::vector<Rect> characters;
};

/// Word/character banding over a per-column ink profile of one line.
inline std::vector<WordBox> segment_line_profile(const std::vector<ColumnInk>& cols,
                                                 const FineParams& params)
{
    params.validate();
    std::vector<WordBox> words;
    std::size_t x = 0;
    std::size_t last_ink_end = 0; // one past the previous character
    bool seen = false;
    while (x < cols.size()) {
        if (!cols[x].any) {
            ++x;
            continue;
        }
        Rect ch{cols[x].first, cols[x].last, x, x};
        while (x + 1 < cols.size() && cols[x + 1].any) {
            ++x;
            ch.top = std::min(ch.top, cols[x].first);
            ch.bottom = std::max(ch.bottom, cols[x].last);
            ch.right = x;
        }
        const bool new_word =
            !seen || classify_column_gap(ch.left - last_ink_end, params) == ColumnGapKind::Word;
        if (new_word)
            words.push_back({ch, {}});
        auto& w = words.back();
        w.characters.push_back(ch);
        w.rect = bounding_union(w.rect, ch);
        seen = true;
        last_ink_end = x + 1;
        ++x;
    }
    if (words.empty())
        throw EmptyLine("line contains no ink");
    return words;
}

inline std::vector<ColumnInk> vertical_profile(const RunMatrix& line)
{
    std::vector<ColumnInk> cols;
    cols.reserve(line.width());
    ColumnCursor cursor(line);
    std::vector<std::uint8_t> tau(line.rows());
    while (!cursor.exhausted()) {
        cursor.pop_column(tau);
        cols.push_back(column_ink(tau));
    }
    return cols;
}

/// Words (left to right) of a line matrix, each with its characters; rects
/// are tight ink boxes in line coordinates.
inline std::vector<WordBox> segment_line(const RunMatrix& line, const FineParams& params)
{
    return segment_line_profile(vertical_profile(line), params);
}

} // namespace rlseg
