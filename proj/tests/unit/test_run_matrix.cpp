#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "rlseg/run_matrix.hpp"
#include "../support/oracles.hpp"

using namespace rlseg;
namespace oracle = rlseg::testing;
using rlseg::testing::random_bitmap;
using rlseg::testing::random_rect;

namespace {

Bitmap bitmap_from_rows(const std::vector<std::vector<int>>& rows)
{
    Bitmap b(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t y = 0; y < rows.size(); ++y)
        for (std::size_t x = 0; x < rows[y].size(); ++x)
            b.set(y, x, static_cast<std::uint8_t>(rows[y][x]));
    return b;
}

std::vector<RunPair> pairs(const RunMatrix& r, std::size_t i)
{
    const auto row = r.row(i);
    return {row.begin(), row.end()};
}

const std::vector<int> sample_line = {0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 1, 0};

} // namespace

TEST(RunMatrix, EncodeAllWhite)
{
    const auto r = encode_bitmap(Bitmap(3, 4));
    ASSERT_EQ(r.rows(), 3u);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_EQ(pairs(r, i), (std::vector<RunPair>{{4, 0}}));
}

TEST(RunMatrix, EncodeAllBlackStartsWithZeroWhite)
{
    const auto r = encode_bitmap(Bitmap(2, 5, 1));
    for (std::size_t i = 0; i < 2; ++i)
        EXPECT_EQ(pairs(r, i), (std::vector<RunPair>{{0, 5}}));
}

TEST(RunMatrix, EncodeSampleLine)
{
    const auto r = encode_bitmap(bitmap_from_rows({sample_line}));
    EXPECT_EQ(pairs(r, 0), (std::vector<RunPair>{{2, 2}, {4, 5}, {1, 0}}));
    EXPECT_EQ(r.width(), 14u);
}

TEST(RunMatrix, DecodeExamples)
{
    EXPECT_EQ(decode_bitmap(RunMatrix::from_rows(4, {{{4, 0}}, {{4, 0}}, {{4, 0}}})), Bitmap(3, 4));
    EXPECT_EQ(decode_bitmap(RunMatrix::from_rows(5, {{{0, 5}}})), Bitmap(1, 5, 1));
    EXPECT_EQ(decode_bitmap(RunMatrix::from_rows(14, {{{2, 2}, {4, 5}, {1, 0}}})),
              bitmap_from_rows({sample_line}));
}

TEST(RunMatrix, RowThatDoesNotSumToWidthIsRejected)
{
    EXPECT_THROW(RunMatrix::from_rows(10, {{{2, 2}, {4, 1}}}), InvalidRunMatrix);
    EXPECT_THROW(RunMatrix::from_rows(3, {{{2, 2}}}), InvalidRunMatrix);
}

TEST(RunMatrix, FromRowsCanonicalizes)
{
    // Padded, with an interior (0,0) pair and a split white run.
    const auto r = RunMatrix::from_rows(10, {{{2, 0}, {1, 3}, {0, 0}, {0, 2}, {2, 0}, {0, 0}}});
    EXPECT_EQ(pairs(r, 0), (std::vector<RunPair>{{3, 5}, {2, 0}}));
    EXPECT_EQ(r.pairs_per_row(), 2u);
    EXPECT_EQ(r.pair(0, 5), (RunPair{0, 0}));
}

TEST(RunMatrix, CropExample)
{
    const auto r = RunMatrix::from_rows(14, {{{2, 2}, {4, 5}, {1, 0}}});
    const auto c = crop_block(r, {0, 0, 1, 6});
    EXPECT_EQ(c.width(), 6u);
    EXPECT_EQ(pairs(c, 0), (std::vector<RunPair>{{1, 2}, {3, 0}}));
}

TEST(RunMatrix, CropFullExtentIsIdentity)
{
    std::mt19937_64 rng(3);
    const auto r = encode_bitmap(random_bitmap(rng, 9, 13));
    EXPECT_EQ(crop_block(r, {0, 8, 0, 12}), r);
}

TEST(RunMatrix, CropOfWhiteIsWhite)
{
    const auto r = encode_bitmap(Bitmap(10, 10));
    EXPECT_EQ(decode_bitmap(crop_block(r, {2, 5, 3, 9})), Bitmap(4, 7));
}

TEST(RunMatrix, CropOutsideThrows)
{
    const auto r = encode_bitmap(Bitmap(4, 4));
    EXPECT_THROW(crop_block(r, {0, 4, 0, 1}), OutOfBounds);
    EXPECT_THROW(crop_block(r, {0, 1, 2, 4}), OutOfBounds);
    EXPECT_THROW(crop_block(r, {2, 1, 0, 1}), OutOfBounds);
}

TEST(RunMatrix, DespeckleExamples)
{
    const auto r = RunMatrix::from_rows(10, {{{3, 1}, {3, 1}, {2, 0}}});
    EXPECT_EQ(pairs(despeckle(r, 2), 0), (std::vector<RunPair>{{10, 0}}));
    EXPECT_EQ(despeckle(r, 0), r);
    const auto black = RunMatrix::from_rows(5, {{{0, 5}}});
    EXPECT_EQ(despeckle(black, 2), black);
}

TEST(RunMatrixProperty, RoundTripRandomBitmaps)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> dim(1, 40);
    std::uniform_real_distribution<double> dens(0.0, 1.0);
    for (int t = 0; t < 500; ++t) {
        const auto b = random_bitmap(rng, dim(rng), dim(rng), dens(rng));
        const auto r = encode_bitmap(b);
        ASSERT_EQ(decode_bitmap(r), b);
        ASSERT_EQ(encode_bitmap(decode_bitmap(r)), r);
    }
}

TEST(RunMatrixProperty, CanonicalFormAndRowSums)
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::size_t> dim(1, 30);
    for (int t = 0; t < 300; ++t) {
        const auto b = random_bitmap(rng, dim(rng), dim(rng), 0.4);
        const auto r = encode_bitmap(b);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            const auto row = r.row(i);
            std::size_t sum = 0;
            for (std::size_t j = 0; j < row.size(); ++j) {
                sum += row[j].white + row[j].black;
                if (j > 0) {
                    EXPECT_GT(row[j].white, 0u);
                }
                if (j + 1 < row.size()) {
                    EXPECT_GT(row[j].black, 0u);
                }
            }
            EXPECT_EQ(sum, r.width());
            EXPECT_EQ(row.front().white == 0, b.at(i, 0) == 1);
        }
    }
}

TEST(RunMatrixProperty, PairCountMatchesRunCount)
{
    // A row with k maximal runs needs ceil((k + [starts black]) / 2) pairs.
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::size_t> dim(1, 30);
    for (int t = 0; t < 300; ++t) {
        const auto b = random_bitmap(rng, dim(rng), dim(rng), 0.5);
        const auto r = encode_bitmap(b);
        std::size_t expect = 0;
        for (std::size_t y = 0; y < b.rows(); ++y) {
            const std::size_t runs = oracle::run_count(b, y) + (b.at(y, 0) ? 1 : 0);
            const std::size_t need = (runs + 1) / 2;
            EXPECT_EQ(r.row(y).size(), need);
            expect = std::max(expect, need);
        }
        EXPECT_EQ(r.pairs_per_row(), expect);
        for (std::size_t y = 0; y < b.rows(); ++y)
            for (std::size_t j = r.row(y).size(); j < r.pairs_per_row(); ++j)
                EXPECT_EQ(r.pair(y, j), (RunPair{0, 0}));
    }
}

TEST(RunMatrixProperty, CropMatchesPixelSlice)
{
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<std::size_t> dim(1, 40);
    for (int t = 0; t < 500; ++t) {
        const auto b = random_bitmap(rng, dim(rng), dim(rng), 0.5);
        const Rect rect = random_rect(rng, b.rows(), b.cols());
        const auto c = crop_block(encode_bitmap(b), rect);
        ASSERT_EQ(c.rows(), rect.height());
        ASSERT_EQ(c.width(), rect.width());
        ASSERT_EQ(c, encode_bitmap(b.crop(rect)));
    }
}

TEST(RunMatrixProperty, CropComposes)
{
    std::mt19937_64 rng(15);
    for (int t = 0; t < 300; ++t) {
        const auto b = random_bitmap(rng, 30, 30, 0.5);
        const auto r = encode_bitmap(b);
        const Rect outer = random_rect(rng, 30, 30);
        const Rect inner = random_rect(rng, outer.height(), outer.width());
        const Rect composed = inner.translated(outer.top, outer.left);
        ASSERT_EQ(crop_block(crop_block(r, outer), inner), crop_block(r, composed));
    }
}

TEST(RunMatrixProperty, DespeckleMatchesPixelOracle)
{
    std::mt19937_64 rng(16);
    for (int t = 0; t < 300; ++t) {
        const auto b = random_bitmap(rng, 12, 25, 0.5);
        const std::size_t min_black = t % 5;
        Bitmap want = b;
        for (std::size_t y = 0; y < b.rows(); ++y) {
            std::size_t x = 0;
            while (x < b.cols()) {
                std::size_t e = x;
                while (e < b.cols() && b.at(y, e) == b.at(y, x))
                    ++e;
                if (b.at(y, x) && e - x < min_black)
                    for (std::size_t k = x; k < e; ++k)
                        want.set(y, k, 0);
                x = e;
            }
        }
        ASSERT_EQ(decode_bitmap(despeckle(encode_bitmap(b), min_black)), want);
    }
}

TEST(RunMatrixProperty, RowInkMatchesPixels)
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        const auto b = random_bitmap(rng, 10, 20, t % 2 ? 0.05 : 0.4);
        const auto r = encode_bitmap(b);
        for (std::size_t y = 0; y < b.rows(); ++y) {
            const RowInk ink = row_ink(r.row(y), r.width());
            std::size_t mass = 0, first = SIZE_MAX, last = 0;
            for (std::size_t x = 0; x < b.cols(); ++x)
                if (b.at(y, x)) {
                    ++mass;
                    first = std::min(first, x);
                    last = x;
                }
            ASSERT_EQ(ink.mass, mass);
            if (mass) {
                ASSERT_EQ(ink.first, first);
                ASSERT_EQ(ink.last, last);
            }
        }
    }
}
