#pragma once

// Line-level accuracy: detected line rects are matched one-to-one against
// ground-truth lines and the miss/error counts feed the two accuracy ratios.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "rlseg/error.hpp"
#include "rlseg/geometry.hpp"

namespace rlseg {

struct GroundTruthLine {
    Rect rect;
    bool inverted = false;

    friend bool operator==(const GroundTruthLine&, const GroundTruthLine&) = default;
};

struct GroundTruth {
    std::vector<GroundTruthLine> lines;

    std::size_t l_gt() const { return lines.size(); }
    std::size_t r_gt() const
    {
        return static_cast<std::size_t>(
            std::count_if(lines.begin(), lines.end(), [](const auto& l) { return l.inverted; }));
    }
};

struct EvalReport {
    std::size_t r_gt = 0;
    std::size_t r_er = 0;
    std::optional<double> a_rl; // absent when there are no inverted gt lines
    std::size_t l_gt = 0;
    std::size_t l_er = 0;
    double a_ps = 0.0;
    std::size_t spurious = 0; // detections matched to nothing
};

/// (R_gt - R_er) / R_gt
inline double inverted_line_accuracy(std::size_t r_gt, std::size_t r_er)
{
    if (r_gt == 0)
        throw EmptyGroundTruth("no inverted ground-truth lines");
    return (static_cast<double>(r_gt) - static_cast<double>(r_er)) / static_cast<double>(r_gt);
}

/// (L_gt - L_er) / L_gt
inline double segmentation_accuracy(std::size_t l_gt, std::size_t l_er)
{
    if (l_gt == 0)
        throw EmptyGroundTruth("no ground-truth lines");
    return (static_cast<double>(l_gt) - static_cast<double>(l_er)) / static_cast<double>(l_gt);
}

inline bool lines_match(const Rect& detected, const Rect& gt, double overlap)
{
    const double v = static_cast<double>(
        interval_overlap(detected.top, detected.bottom, gt.top, gt.bottom));
    const double h = static_cast<double>(
        interval_overlap(detected.left, detected.right, gt.left, gt.right));
    return v >= overlap * static_cast<double>(gt.height()) &&
           h >= overlap * static_cast<double>(gt.width());
}

struct MatchResult {
    std::vector<std::optional<std::size_t>> gt_to_detected; // indexed like the gt input
    std::size_t unmatched_gt = 0;
    std::size_t unmatched_detected = 0;
};

/// Greedy one-to-one matching. Ground-truth lines are visited in rect order;
/// each takes the free candidate with the largest intersection, ties going to
/// the smaller rect, so the outcome does not depend on input order.
inline MatchResult match_lines(const std::vector<Rect>& detected, const std::vector<Rect>& gt,
                               double overlap = 0.5)
{
    if (!(overlap > 0.0 && overlap <= 1.0))
        throw ConfigError("overlap must lie in (0, 1]");
    MatchResult res;
    res.gt_to_detected.assign(gt.size(), std::nullopt);

    std::vector<std::size_t> gt_order(gt.size());
    for (std::size_t i = 0; i < gt.size(); ++i)
        gt_order[i] = i;
    std::stable_sort(gt_order.begin(), gt_order.end(),
                     [&](std::size_t a, std::size_t b) { return gt[a] < gt[b]; });

    std::vector<bool> used(detected.size(), false);
    for (std::size_t g : gt_order) {
        std::optional<std::size_t> best;
        std::size_t best_area = 0;
        for (std::size_t d = 0; d < detected.size(); ++d) {
            if (used[d] || !lines_match(detected[d], gt[g], overlap))
                continue;
            const std::size_t area =
                interval_overlap(detected[d].top, detected[d].bottom, gt[g].top, gt[g].bottom) *
                interval_overlap(detected[d].left, detected[d].right, gt[g].left, gt[g].right);
            if (!best || area > best_area || (area == best_area && detected[d] < detected[*best])) {
                best = d;
                best_area = area;
            }
        }
        if (best) {
            used[*best] = true;
            res.gt_to_detected[g] = best;
        } else {
            ++res.unmatched_gt;
        }
    }
    res.unmatched_detected =
        static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
    return res;
}

inline EvalReport accuracy(const GroundTruth& gt, const std::vector<Rect>& detected,
                           double overlap = 0.5, bool count_spurious = true)
{
    if (gt.lines.empty())
        throw EmptyGroundTruth("ground truth has no lines");
    std::vector<Rect> gt_rects;
    gt_rects.reserve(gt.lines.size());
    for (const auto& l : gt.lines)
        gt_rects.push_back(l.rect);
    const MatchResult m = match_lines(detected, gt_rects, overlap);

    EvalReport rep;
    rep.l_gt = gt.l_gt();
    rep.r_gt = gt.r_gt();
    for (std::size_t i = 0; i < gt.lines.size(); ++i)
        if (gt.lines[i].inverted && !m.gt_to_detected[i])
            ++rep.r_er;
    rep.spurious = m.unmatched_detected;
    const std::size_t errors = m.unmatched_gt + (count_spurious ? m.unmatched_detected : 0);
    rep.l_er = std::min(errors, rep.l_gt);
    rep.a_ps = segmentation_accuracy(rep.l_gt, rep.l_er);
    if (rep.r_gt > 0)
        rep.a_rl = inverted_line_accuracy(rep.r_gt, rep.r_er);
    return rep;
}

} // namespace rlseg
