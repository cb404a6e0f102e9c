#pragma once

// Virtual vertical decompression. A ColumnCursor keeps, per row, a working
// copy of the head pair (W(i,1), B(i,1)) and emits pixel columns left to right
// using three per-row operations:
//
//   Pop      head W > 0: emit 0, W -= 1; else head B > 0: emit 1, B -= 1
//   Shift    head is (0,0) and pairs remain: the next pair becomes the head
//   Terminate head is (0,0) and nothing remains
//
// Shift is applied lazily, at the start of the pop that needs it.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlseg/error.hpp"
#include "rlseg/run_matrix.hpp"

namespace rlseg {

enum class CursorStatus : std::uint8_t { Pop, ShiftPop, Terminated };

class ColumnCursor {
public:
    explicit ColumnCursor(const RunMatrix& r)
        : matrix_(&r), head_(r.rows()), next_(r.rows(), 1), status_(r.rows(), CursorStatus::Pop)
    {
        for (std::size_t i = 0; i < r.rows(); ++i) {
            const auto row = r.row(i);
            head_[i] = row.empty() ? RunPair{} : row.front();
        }
        rows_active_ = r.width() == 0 ? 0 : r.rows();
        if (r.width() == 0)
            std::fill(status_.begin(), status_.end(), CursorStatus::Terminated);
    }

    std::size_t column_index() const { return column_; }
    std::size_t rows_active() const { return rows_active_; }
    bool exhausted() const { return column_ >= matrix_->width(); }

    /// Emits pixel column column_index() into out (one value per row).
    void pop_column(std::span<std::uint8_t> out)
    {
        if (exhausted())
            throw CursorExhausted("all " + std::to_string(matrix_->width()) +
                                  " columns already popped");
        const std::size_t m = matrix_->rows();
        for (std::size_t i = 0; i < m; ++i) {
            RunPair& h = head_[i];
            CursorStatus st = CursorStatus::Pop;
            if (h.white == 0 && h.black == 0) {
                const auto row = matrix_->row(i);
                while (h.white == 0 && h.black == 0 && next_[i] < row.size())
                    h = row[next_[i]++];
                st = CursorStatus::ShiftPop;
            }
            if (h.white > 0) {
                --h.white;
                out[i] = 0;
            } else {
                // Row sums equal the width, so an active row always has a run here.
                --h.black;
                out[i] = 1;
            }
            status_[i] = st;
        }
        ++column_;
        if (column_ == matrix_->width()) {
            for (std::size_t i = 0; i < m; ++i)
                status_[i] = CursorStatus::Terminated;
            rows_active_ = 0;
        }
    }

    std::vector<std::uint8_t> pop_column()
    {
        std::vector<std::uint8_t> out(matrix_->rows());
        pop_column(out);
        return out;
    }

    /// Status of row i after the most recent pop.
    CursorStatus status(std::size_t i) const { return status_[i]; }

    RunPair head(std::size_t i) const { return head_[i]; }

    /// The row's remaining run sequence as laid out in a run-matrix dump:
    /// head W, head B, then the unconsumed pairs, zero padded to count values.
    std::vector<std::uint32_t> remaining(std::size_t i, std::size_t count) const
    {
        std::vector<std::uint32_t> v{head_[i].white, head_[i].black};
        const auto row = matrix_->row(i);
        for (std::size_t j = next_[i]; j < row.size() && v.size() < count; ++j) {
            v.push_back(row[j].white);
            v.push_back(row[j].black);
        }
        v.resize(count, 0);
        return v;
    }

private:
    const RunMatrix* matrix_;
    std::vector<RunPair> head_;
    std::vector<std::uint32_t> next_;
    std::vector<CursorStatus> status_;
    std::size_t rows_active_ = 0;
    std::size_t column_ = 0;
};

/// One run of a popped column: colour 0 white / 1 black.
struct ColumnRun {
    std::uint8_t colour = 0;
    std::uint32_t length = 0;

    friend bool operator==(const ColumnRun&, const ColumnRun&) = default;
};

using ColumnRuns = std::vector<ColumnRun>;

inline ColumnRuns column_runs(std::span<const std::uint8_t> tau)
{
    ColumnRuns runs;
    for (std::uint8_t v : tau) {
        if (!runs.empty() && runs.back().colour == v)
            ++runs.back().length;
        else
            runs.push_back({v, 1});
    }
    return runs;
}

/// Vertical ink extent of one popped column.
struct ColumnInk {
    bool any = false;
    std::size_t first = 0;
    std::size_t last = 0;
};

inline ColumnInk column_ink(std::span<const std::uint8_t> tau)
{
    ColumnInk ink;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (!tau[i])
            continue;
        if (!ink.any) {
            ink.any = true;
            ink.first = i;
        }
        ink.last = i;
    }
    return ink;
}

} // namespace rlseg
