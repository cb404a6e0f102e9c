#pragma once

// Run-matrix: a binary document stored as rows of (white, black) run-length
// pairs. Every row starts with a white run (possibly of length 0 when the row
// starts with ink) and the runs of a row always add up to the page width.
//
// Rows are stored compactly; the rectangular view of the classic run matrix
// (every row padded with (0,0) pairs up to pairs_per_row()) is available
// through pair(i, j) and is what the RLC container writes to disk.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rlseg/bitmap.hpp"
#include "rlseg/error.hpp"
#include "rlseg/geometry.hpp"

namespace rlseg {

struct RunPair {
    std::uint32_t white = 0;
    std::uint32_t black = 0;

    friend bool operator==(const RunPair&, const RunPair&) = default;
};

class RunMatrixBuilder;

class RunMatrix {
public:
    RunMatrix() = default;

    /// Builds a matrix from arbitrary (possibly non-canonical, possibly padded)
    /// pair rows. Throws InvalidRunMatrix if a row does not sum to width.
    static RunMatrix from_rows(std::size_t width, const std::vector<std::vector<RunPair>>& rows);

    std::size_t rows() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t width() const { return width_; }

    /// Pair count of the rectangular form (n'/2): the longest canonical row.
    std::size_t pairs_per_row() const { return pairs_per_row_; }

    /// Canonical pairs of row i, without padding.
    std::span<const RunPair> row(std::size_t i) const
    {
        return {pairs_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    /// Rectangular accessor; (0,0) beyond the end of the canonical row.
    RunPair pair(std::size_t i, std::size_t j) const
    {
        const auto r = row(i);
        return j < r.size() ? r[j] : RunPair{};
    }

    std::size_t total_pairs() const { return pairs_.size(); }

    /// Heap bytes held by this matrix.
    std::size_t byte_size() const
    {
        return pairs_.capacity() * sizeof(RunPair) + offsets_.capacity() * sizeof(std::size_t);
    }

    friend bool operator==(const RunMatrix& a, const RunMatrix& b)
    {
        return a.width_ == b.width_ && a.offsets_ == b.offsets_ && a.pairs_ == b.pairs_;
    }

private:
    friend class RunMatrixBuilder;

    std::size_t width_ = 0;
    std::size_t pairs_per_row_ = 0;
    std::vector<RunPair> pairs_;
    std::vector<std::size_t> offsets_;
};

/// Appends runs row by row and produces a canonical RunMatrix: adjacent
/// same-colour runs merge, zero-length runs vanish, a row that starts with
/// ink gets a leading zero white run.
class RunMatrixBuilder {
public:
    explicit RunMatrixBuilder(std::size_t width, std::size_t expected_rows = 0) : width_(width)
    {
        offsets_.reserve(expected_rows + 1);
        offsets_.push_back(0);
    }

    void add_white(std::uint32_t len)
    {
        if (len == 0)
            return;
        if (current_.black > 0) {
            pairs_.push_back(current_);
            current_ = {len, 0};
        } else {
            current_.white += len;
        }
        row_sum_ += len;
    }

    void add_black(std::uint32_t len)
    {
        current_.black += len;
        row_sum_ += len;
    }

    void add_run(bool black, std::uint32_t len) { black ? add_black(len) : add_white(len); }

    void add_pair(RunPair p)
    {
        add_white(p.white);
        add_black(p.black);
    }

    void end_row()
    {
        if (current_.white > 0 || current_.black > 0)
            pairs_.push_back(current_);
        if (row_sum_ != width_)
            throw InvalidRunMatrix("row " + std::to_string(offsets_.size() - 1) + " sums to " +
                                   std::to_string(row_sum_) + ", expected width " +
                                   std::to_string(width_));
        const std::size_t start = offsets_.back();
        pairs_per_row_ = std::max(pairs_per_row_, pairs_.size() - start);
        offsets_.push_back(pairs_.size());
        current_ = {};
        row_sum_ = 0;
    }

    RunMatrix finish()
    {
        RunMatrix m;
        m.width_ = width_;
        m.pairs_per_row_ = pairs_per_row_;
        pairs_.shrink_to_fit();
        m.pairs_ = std::move(pairs_);
        m.offsets_ = std::move(offsets_);
        pairs_ = {};
        offsets_ = {0};
        pairs_per_row_ = 0;
        return m;
    }

private:
    std::size_t width_;
    std::size_t row_sum_ = 0;
    std::size_t pairs_per_row_ = 0;
    RunPair current_{};
    std::vector<RunPair> pairs_;
    std::vector<std::size_t> offsets_;
};

inline RunMatrix RunMatrix::from_rows(std::size_t width,
                                      const std::vector<std::vector<RunPair>>& rows)
{
    RunMatrixBuilder b(width, rows.size());
    for (const auto& row : rows) {
        for (const auto& p : row)
            b.add_pair(p);
        b.end_row();
    }
    return b.finish();
}

/// First and last ink column of a row; has_ink false for an all-white row.
struct RowInk {
    std::size_t mass = 0;
    std::size_t first = 0;
    std::size_t last = 0;
    bool has_ink() const { return mass > 0; }
};

inline RowInk row_ink(std::span<const RunPair> row, std::size_t width)
{
    RowInk ink;
    for (const auto& p : row)
        ink.mass += p.black;
    if (ink.mass == 0)
        return ink;
    ink.first = row.front().white;
    const RunPair& tail = row.back();
    const std::size_t trailing_white = tail.black == 0 ? tail.white : 0;
    ink.last = width - trailing_white - 1;
    return ink;
}

inline RunMatrix encode_bitmap(const Bitmap& b)
{
    RunMatrixBuilder builder(b.cols(), b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        const auto px = b.row(i);
        std::size_t x = 0;
        while (x < px.size()) {
            const std::uint8_t colour = px[x];
            std::size_t end = x;
            while (end < px.size() && px[end] == colour)
                ++end;
            builder.add_run(colour != 0, static_cast<std::uint32_t>(end - x));
            x = end;
        }
        builder.end_row();
    }
    return builder.finish();
}

inline Bitmap decode_bitmap(const RunMatrix& r)
{
    Bitmap out(r.rows(), r.width());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        auto px = out.row(i);
        std::size_t x = 0;
        for (const auto& p : r.row(i)) {
            x += p.white;
            std::fill_n(px.begin() + static_cast<std::ptrdiff_t>(x), p.black, std::uint8_t{1});
            x += p.black;
        }
    }
    return out;
}

/// Extracts a rectangular sub-document by run arithmetic: runs straddling
/// the rectangle edges are split, everything else is copied or skipped.
inline RunMatrix crop_block(const RunMatrix& r, const Rect& rect)
{
    if (rect.top > rect.bottom || rect.left > rect.right || rect.bottom >= r.rows() ||
        rect.right >= r.width())
        throw OutOfBounds("crop rectangle exceeds document extent");

    const std::size_t lo = rect.left;
    const std::size_t hi = rect.right + 1; // exclusive
    RunMatrixBuilder b(rect.width(), rect.height());
    for (std::size_t i = rect.top; i <= rect.bottom; ++i) {
        std::size_t x = 0;
        for (const auto& p : r.row(i)) {
            if (x >= hi)
                break;
            for (int colour = 0; colour < 2; ++colour) {
                const std::size_t len = colour ? p.black : p.white;
                const std::size_t s = std::max(x, lo);
                const std::size_t e = std::min(x + len, hi);
                if (e > s)
                    b.add_run(colour == 1, static_cast<std::uint32_t>(e - s));
                x += len;
            }
        }
        b.end_row();
    }
    return b.finish();
}

/// Turns every black run shorter than min_black into white.
inline RunMatrix despeckle(const RunMatrix& r, std::size_t min_black)
{
    RunMatrixBuilder b(r.width(), r.rows());
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (const auto& p : r.row(i)) {
            b.add_white(p.white);
            b.add_run(p.black >= min_black, p.black);
        }
        b.end_row();
    }
    return b.finish();
}

} // namespace rlseg
