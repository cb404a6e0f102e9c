#include <gtest/gtest.h>

#include <optional>
#include <vector>

#include "rlseg/evaluation.hpp"
#include "rlseg/pipeline.hpp"
#include "rlseg/reference_oracle.hpp"
#include "rlseg/synth_gen.hpp"
#include "../support/corpus.hpp"

using namespace rlseg;
namespace oracle = rlseg::testing;

namespace {

std::optional<GeneratedDocument> first_feasible(LayoutSpec s, std::uint64_t tries = 40)
{
    for (std::uint64_t k = 0; k < tries; ++k) {
        s.seed = 1 + k;
        try {
            return generate(s);
        } catch (const InfeasibleSpec&) {
        }
    }
    return std::nullopt;
}

::testing::AssertionResult same_tree(const SegmentTree& got, const SegmentTree& want)
{
    if (auto diff = first_difference(got, want))
        return ::testing::AssertionFailure() << *diff;
    return ::testing::AssertionSuccess();
}

} // namespace

TEST(Pipeline, WhitePageHasNoColumns)
{
    const Bitmap b(300, 400);
    const auto tree = run_pipeline(encode_bitmap(b));
    EXPECT_EQ(tree.kind, NodeKind::Page);
    EXPECT_EQ(tree.rect, (Rect{0, 299, 0, 399}));
    EXPECT_TRUE(tree.children.empty());
    EXPECT_EQ(reference_oracle(b), tree);
}

TEST(Pipeline, SingleRectangleGivesOneNodePerLevel)
{
    Bitmap b(80, 100);
    b.fill_rect({30, 41, 20, 27}, 1);
    const auto tree = run_pipeline(encode_bitmap(b));
    for (NodeKind k : {NodeKind::Column, NodeKind::Block, NodeKind::Paragraph, NodeKind::Line,
                       NodeKind::Word, NodeKind::Character})
        EXPECT_EQ(count_nodes(tree, k), 1u) << to_string(k);
    EXPECT_EQ(collect_rects(tree, NodeKind::Character)[0], (Rect{30, 41, 20, 27}));
    EXPECT_EQ(reference_oracle(b), tree);
}

TEST(Pipeline, TwoColumnsThreeBlocksEachMatchGenerator)
{
    LayoutSpec s;
    s.page_width = 1100;
    s.sections = {{2, {}, 600}};
    s.blocks_per_column = {3, 3};
    s.paragraphs_per_block = {1, 3};
    s.lines_per_paragraph = {3, 5};
    const auto doc = first_feasible(s);
    ASSERT_TRUE(doc);
    ASSERT_EQ(doc->tree.children.size(), 2u);
    for (const auto& col : doc->tree.children)
        ASSERT_EQ(col.children.size(), 3u);
    const auto tree = run_pipeline(encode_bitmap(doc->bitmap));
    EXPECT_TRUE(same_tree(tree, doc->tree));
    EXPECT_TRUE(same_tree(reference_oracle(doc->bitmap), tree));
}

TEST(Pipeline, ColumnLocalBandIsToggledOnlyInItsBlock)
{
    LayoutSpec s;
    s.page_width = 1000;
    s.sections = {{2, {0.35, 0.65}, 800}};
    InvertedBandSpec band;
    band.column = 0;
    band.block = 0;
    s.inverted.push_back(band);
    const auto doc = first_feasible(s);
    ASSERT_TRUE(doc);
    ASSERT_EQ(doc->inverted_bands.size(), 1u);
    const Rect painted = doc->inverted_bands[0];

    const auto res = run_pipeline_detailed(encode_bitmap(doc->bitmap));
    EXPECT_FALSE(res.page_regions.any_inverted());
    ASSERT_EQ(res.blocks.size(), 2u);
    ASSERT_EQ(res.blocks[0].regions.inverted.size(), 1u);
    const RowRange local = res.blocks[0].regions.inverted[0];
    EXPECT_EQ(local.top + res.blocks[0].rect.top, painted.top);
    EXPECT_EQ(local.bottom + res.blocks[0].rect.top, painted.bottom);
    EXPECT_FALSE(res.blocks[1].regions.any_inverted());
    EXPECT_TRUE(same_tree(res.tree, doc->tree));
}

TEST(Pipeline, FullWidthBandIsToggledAtPageLevel)
{
    LayoutSpec s;
    s.page_width = 900;
    s.sections = {{1, {}, 700}};
    InvertedBandSpec band;
    band.block = 1;
    s.inverted.push_back(band);
    const auto doc = first_feasible(s);
    ASSERT_TRUE(doc);
    const auto res = run_pipeline_detailed(encode_bitmap(doc->bitmap));
    ASSERT_EQ(res.page_regions.inverted.size(), 1u);
    EXPECT_EQ(res.page_regions.inverted[0],
              (RowRange{doc->inverted_bands[0].top, doc->inverted_bands[0].bottom}));
    EXPECT_TRUE(same_tree(res.tree, doc->tree));
}

TEST(Pipeline, SpecksAreRemovedByDespeckling)
{
    LayoutSpec s;
    s.page_width = 1000;
    s.sections = {{2, {}, 700}};
    s.stroke = 2;
    s.glyph_width = {14, 20};
    s.noise = 250;
    const auto doc = first_feasible(s);
    ASSERT_TRUE(doc);
    PipelineConfig cfg;
    cfg.despeckle_min_black = 2;
    const auto tree = run_pipeline(encode_bitmap(doc->bitmap), cfg);
    EXPECT_TRUE(same_tree(tree, doc->tree));
    EXPECT_TRUE(same_tree(reference_oracle(doc->bitmap, cfg), tree));
}

TEST(Pipeline, BadConfigIsRejected)
{
    PipelineConfig cfg;
    cfg.smooth_window = 8;
    EXPECT_THROW(run_pipeline(encode_bitmap(Bitmap(10, 10)), cfg), ConfigError);
    cfg = {};
    cfg.overlap = 0.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(PipelineProperty, CorpusMatchesOracleAndGenerator)
{
    for (const auto& e : oracle::build_corpus(30)) {
        const auto doc = generate(e.spec);
        PipelineConfig cfg;
        if (e.noisy)
            cfg.despeckle_min_black = 2;
        const auto tree = run_pipeline(encode_bitmap(doc.bitmap), cfg);
        SCOPED_TRACE("corpus entry " + std::to_string(e.index));
        ASSERT_TRUE(same_tree(tree, doc.tree));
        ASSERT_TRUE(same_tree(reference_oracle(doc.bitmap, cfg), tree));
        const auto rep = accuracy(doc.truth, collect_rects(tree, NodeKind::Line));
        ASSERT_EQ(rep.l_er, 0u);
        ASSERT_EQ(rep.r_er, 0u);
    }
}

TEST(PipelineProperty, ChildrenLieInParents)
{
    for (const auto& e : oracle::build_corpus(6)) {
        const auto doc = generate(e.spec);
        PipelineConfig cfg;
        cfg.despeckle_min_black = e.noisy ? 2 : 0;
        const auto tree = run_pipeline(encode_bitmap(doc.bitmap), cfg);
        std::vector<const SegmentNode*> stack{&tree};
        while (!stack.empty()) {
            const auto* n = stack.back();
            stack.pop_back();
            for (const auto& c : n->children) {
                ASSERT_TRUE(n->rect.contains(c.rect));
                ASSERT_EQ(static_cast<int>(c.kind), static_cast<int>(n->kind) + 1);
                stack.push_back(&c);
            }
        }
    }
}
