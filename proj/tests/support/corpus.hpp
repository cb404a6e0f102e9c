#pragma once

// Deterministic mix of generated pages used by the oracle and acceptance
// tests: one, two and three columns, stacked gutters, mixed sections,
// inverted bands (page-wide and column-local) and specks.

#include <cstdint>
#include <string>
#include <vector>

#include "rlseg/synth_gen.hpp"

namespace rlseg::testing {

enum class CorpusLayout { OneColumn, TwoColumn, ThreeColumn, Stacked, Mixed, StackedWithBreak };

struct CorpusEntry {
    std::size_t index = 0;
    CorpusLayout layout = CorpusLayout::OneColumn;
    LayoutSpec spec;
    bool stacked = false;
    bool inverted = false;
    bool noisy = false;
};

inline LayoutSpec corpus_spec(std::size_t index, std::uint64_t seed, CorpusLayout& layout,
                              bool& stacked, bool& inverted, bool& noisy)
{
    detail::Rng rng(seed * 7919 + index);
    LayoutSpec s;
    s.seed = seed;
    s.page_width = rng.draw(900, 1300);
    s.gutter = rng.draw(75, 115);
    s.margin_left = rng.draw(20, 60);
    s.margin_right = rng.draw(20, 60);
    s.line_height = rng.draw(12, 18);
    s.x_height = s.line_height - rng.draw(3, 6);

    layout = static_cast<CorpusLayout>(index % 6);
    inverted = index % 3 == 0;
    noisy = !inverted && index % 7 == 1;
    stacked = layout == CorpusLayout::Stacked || layout == CorpusLayout::StackedWithBreak;
    if (noisy) {
        s.stroke = 2;
        s.glyph_width = {14, 20};
        s.noise = rng.draw(50, 300);
    }

    const std::size_t h = rng.draw(700, 1000);
    switch (layout) {
    case CorpusLayout::OneColumn:
        s.sections = {{1, {}, h}};
        break;
    case CorpusLayout::TwoColumn:
        s.sections = {{2, {0.35, 0.65}, h}};
        break;
    case CorpusLayout::ThreeColumn:
        s.sections = {{3, {}, h}};
        break;
    case CorpusLayout::Stacked:
        s.sections = {{3, {}, h / 2}, {3, {}, h / 2}};
        break;
    case CorpusLayout::Mixed:
        s.sections = {{1, {}, h / 3}, {2, {0.35, 0.65}, 2 * h / 3}};
        break;
    case CorpusLayout::StackedWithBreak:
        s.sections = {{2, {0.35, 0.65}, h / 2}, {1, {}, h / 4}, {2, {0.35, 0.65}, h / 2}};
        break;
    }

    if (inverted) {
        InvertedBandSpec band;
        band.pad = rng.draw(2, 6);
        switch (layout) {
        case CorpusLayout::OneColumn:
            band.section = 0;
            band.block = rng.draw(0, 1);
            break;
        case CorpusLayout::Mixed:
            band.section = index % 2 ? 0 : 1;
            band.column = band.section == 0 ? -1 : 0;
            break;
        case CorpusLayout::ThreeColumn:
        case CorpusLayout::Stacked:
            band.section = 0;
            band.column = static_cast<long>(rng.draw(0, 2));
            band.block = rng.draw(0, 1);
            break;
        default:
            band.section = 0;
            band.column = 0;
            break;
        }
        s.inverted.push_back(band);
    }
    return s;
}

/// count feasible pages; infeasible draws are skipped with the next seed.
inline std::vector<CorpusEntry> build_corpus(std::size_t count, std::size_t* rejected = nullptr)
{
    std::vector<CorpusEntry> out;
    std::size_t skipped = 0;
    for (std::size_t i = 0; out.size() < count; ++i) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            CorpusEntry e;
            e.index = i;
            e.spec = corpus_spec(i, 1 + i * 101 + attempt, e.layout, e.stacked, e.inverted, e.noisy);
            try {
                (void)generate(e.spec);
            } catch (const InfeasibleSpec&) {
                ++skipped;
                if (attempt > 50)
                    throw;
                continue;
            }
            out.push_back(std::move(e));
            break;
        }
    }
    if (rejected)
        *rejected = skipped;
    return out;
}

} // namespace rlseg::testing
