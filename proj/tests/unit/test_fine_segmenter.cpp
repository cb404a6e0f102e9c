#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "rlseg/fine_segmenter.hpp"
#include "../support/oracles.hpp"

using namespace rlseg;
namespace oracle = rlseg::testing;

namespace {

// Line of solid ink bands of the given widths separated by the given gaps.
Bitmap line_of(const std::vector<std::size_t>& widths, const std::vector<std::size_t>& gaps,
               std::size_t rows = 10)
{
    std::size_t cols = 4;
    for (auto w : widths)
        cols += w;
    for (auto g : gaps)
        cols += g;
    Bitmap b(rows, cols);
    std::size_t x = 2;
    for (std::size_t k = 0; k < widths.size(); ++k) {
        b.fill_rect({1, rows - 2, x, x + widths[k] - 1}, 1);
        x += widths[k] + (k < gaps.size() ? gaps[k] : 0);
    }
    return b;
}

std::size_t char_count(const std::vector<WordBox>& words)
{
    std::size_t n = 0;
    for (const auto& w : words)
        n += w.characters.size();
    return n;
}

} // namespace

TEST(FineSegmenter, SolidBandIsOneWordOneCharacter)
{
    const auto words = segment_line(encode_bitmap(line_of({12}, {})), {});
    ASSERT_EQ(words.size(), 1u);
    ASSERT_EQ(words[0].characters.size(), 1u);
    EXPECT_EQ(words[0].rect, (Rect{1, 8, 2, 13}));
}

TEST(FineSegmenter, GapsTwoSevenThree)
{
    const auto words = segment_line(encode_bitmap(line_of({4, 4, 4, 4}, {2, 7, 3})), {});
    ASSERT_EQ(words.size(), 2u);
    EXPECT_EQ(words[0].characters.size(), 2u);
    EXPECT_EQ(words[1].characters.size(), 2u);
    EXPECT_EQ(words[0].rect, (Rect{1, 8, 2, 11}));
    EXPECT_EQ(words[1].rect, (Rect{1, 8, 19, 29}));
}

TEST(FineSegmenter, WidthBoundary)
{
    const FineParams p;
    EXPECT_EQ(classify_column_gap(1, p), ColumnGapKind::Character);
    EXPECT_EQ(classify_column_gap(4, p), ColumnGapKind::Character);
    EXPECT_EQ(classify_column_gap(5, p), ColumnGapKind::Word);
    EXPECT_EQ(segment_line(encode_bitmap(line_of({3, 3}, {4})), p).size(), 1u);
    EXPECT_EQ(segment_line(encode_bitmap(line_of({3, 3}, {5})), p).size(), 2u);
}

TEST(FineSegmenter, CharacterBoxesAreTight)
{
    Bitmap b(12, 20);
    b.fill_rect({2, 5, 3, 4}, 1);
    b.fill_rect({6, 9, 5, 6}, 1);
    const auto words = segment_line(encode_bitmap(b), {});
    ASSERT_EQ(words.size(), 1u);
    ASSERT_EQ(words[0].characters.size(), 1u);
    EXPECT_EQ(words[0].characters[0], (Rect{2, 9, 3, 6}));
}

TEST(FineSegmenter, BlankLineThrows)
{
    EXPECT_THROW(segment_line(encode_bitmap(Bitmap(8, 30)), {}), EmptyLine);
}

TEST(FineSegmenter, InconsistentParamsAreConfigErrors)
{
    FineParams p;
    p.char_gap_max = 6;
    EXPECT_THROW(p.validate(), ConfigError);
    p = {};
    p.word_gap_min = 0;
    p.char_gap_max = 0;
    EXPECT_THROW(p.validate(), ConfigError);
}

TEST(FineSegmenterProperty, BlankColumnsMatchPixels)
{
    std::mt19937_64 rng(61);
    for (int t = 0; t < 300; ++t) {
        const auto b = oracle::random_bitmap(rng, 12, 40, 0.02 + 0.02 * (t % 5));
        const auto prof = vertical_profile(encode_bitmap(b));
        ASSERT_EQ(prof.size(), b.cols());
        for (std::size_t x = 0; x < b.cols(); ++x) {
            const auto col = oracle::pixel_column(b, x);
            bool any = false;
            std::size_t first = 0, last = 0;
            for (std::size_t y = 0; y < col.size(); ++y)
                if (col[y]) {
                    if (!any)
                        first = y;
                    any = true;
                    last = y;
                }
            ASSERT_EQ(prof[x].any, any);
            if (any) {
                ASSERT_EQ(prof[x].first, first);
                ASSERT_EQ(prof[x].last, last);
            }
        }
    }
}

TEST(FineSegmenterProperty, WordsDisjointOrderedAndCharactersTileInk)
{
    std::mt19937_64 rng(62);
    for (int t = 0; t < 300; ++t) {
        const auto b = oracle::random_bitmap(rng, 10, 60, 0.03 + 0.01 * (t % 6));
        std::vector<WordBox> words;
        try {
            words = segment_line(encode_bitmap(b), {});
        } catch (const EmptyLine&) {
            continue;
        }
        std::vector<int> claimed(b.cols(), 0);
        for (std::size_t k = 0; k < words.size(); ++k) {
            if (k > 0) {
                ASSERT_GT(words[k].rect.left, words[k - 1].rect.right);
            }
            for (const auto& c : words[k].characters) {
                ASSERT_TRUE(words[k].rect.contains(c));
                for (std::size_t x = c.left; x <= c.right; ++x)
                    ++claimed[x];
            }
        }
        for (std::size_t x = 0; x < b.cols(); ++x) {
            const bool ink = oracle::longest_white(b, x) < b.rows();
            ASSERT_EQ(claimed[x], ink ? 1 : 0) << "column " << x;
        }
    }
}

TEST(FineSegmenterProperty, RaisingWordGapNeverAddsWords)
{
    std::mt19937_64 rng(63);
    for (int t = 0; t < 200; ++t) {
        const auto b = oracle::random_bitmap(rng, 8, 80, 0.03);
        const auto prof = vertical_profile(encode_bitmap(b));
        std::size_t prev = SIZE_MAX;
        for (std::size_t ws = 1; ws < 20; ++ws) {
            FineParams p;
            p.word_gap_min = ws;
            p.char_gap_max = std::min<std::size_t>(ws, 5);
            std::vector<WordBox> words;
            try {
                words = segment_line_profile(prof, p);
            } catch (const EmptyLine&) {
                break;
            }
            ASSERT_LE(words.size(), prev);
            prev = words.size();
            ASSERT_EQ(char_count(words), char_count(segment_line_profile(prof, {})));
        }
    }
}
