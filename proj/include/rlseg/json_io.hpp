#pragma once

// JSON forms of trees, configs, ground truth, reports and layout specs.

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rlseg/column_segmenter.hpp"
#include "rlseg/error.hpp"
#include "rlseg/evaluation.hpp"
#include "rlseg/inverted_text.hpp"
#include "rlseg/pipeline.hpp"
#include "rlseg/segment_tree.hpp"
#include "rlseg/synth_gen.hpp"

namespace rlseg {

using json = nlohmann::json;

inline json rect_to_json(const Rect& r)
{
    return {{"top", r.top}, {"bottom", r.bottom}, {"left", r.left}, {"right", r.right}};
}

inline Rect rect_from_json(const json& j)
{
    try {
        Rect r{j.at("top").get<std::size_t>(), j.at("bottom").get<std::size_t>(),
               j.at("left").get<std::size_t>(), j.at("right").get<std::size_t>()};
        if (r.top > r.bottom || r.left > r.right)
            throw FormatError("rect with top > bottom or left > right");
        return r;
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad rect: ") + e.what());
    }
}

inline json tree_to_json(const SegmentNode& n)
{
    json children = json::array();
    for (const auto& c : n.children)
        children.push_back(tree_to_json(c));
    return {{"kind", std::string(to_string(n.kind))}, {"rect", rect_to_json(n.rect)},
            {"children", std::move(children)}};
}

inline SegmentNode tree_from_json(const json& j)
{
    try {
        SegmentNode n{node_kind_from_string(j.at("kind").get<std::string>()),
                      rect_from_json(j.at("rect")), {}};
        if (j.contains("children"))
            for (const auto& c : j.at("children"))
                n.children.push_back(tree_from_json(c));
        return n;
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad tree node: ") + e.what());
    }
}

inline json truth_to_json(const GroundTruth& gt)
{
    json lines = json::array();
    for (const auto& l : gt.lines) {
        json o = rect_to_json(l.rect);
        o["inverted"] = l.inverted;
        lines.push_back(std::move(o));
    }
    return {{"lines", std::move(lines)}};
}

inline GroundTruth truth_from_json(const json& j)
{
    try {
        GroundTruth gt;
        for (const auto& l : j.at("lines"))
            gt.lines.push_back({rect_from_json(l), l.value("inverted", false)});
        return gt;
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad ground truth: ") + e.what());
    }
}

/// Detected lines from either a segment tree or a ground-truth style list.
inline std::vector<Rect> detected_lines_from_json(const json& j)
{
    if (j.contains("kind"))
        return collect_rects(tree_from_json(j), NodeKind::Line);
    std::vector<Rect> out;
    for (const auto& l : truth_from_json(j).lines)
        out.push_back(l.rect);
    return out;
}

inline json report_to_json(const EvalReport& r)
{
    return {{"r_gt", r.r_gt},
            {"r_er", r.r_er},
            {"a_rl", r.a_rl ? json(*r.a_rl) : json(nullptr)},
            {"l_gt", r.l_gt},
            {"l_er", r.l_er},
            {"a_ps", r.a_ps}};
}

inline json regions_to_json(const RegionMap& m)
{
    json out = json::array();
    for (const auto& r : m.inverted)
        out.push_back({{"top", r.top}, {"bottom", r.bottom}});
    return out;
}

inline json separator_to_json(const ColumnSeparator& s)
{
    return {{"v_alpha", s.v_alpha},
            {"v_beta", s.v_beta},
            {"s_h", s.s_h},
            {"e_h", s.e_h},
            {"l_v", s.l_v},
            {"overlap_group", s.overlap_group ? json(*s.overlap_group) : json(nullptr)}};
}

namespace detail {

inline std::size_t config_size(const json& v, const std::string& key)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ConfigError("config key " + key + " must be a non-negative integer");
    return v.get<std::size_t>();
}

inline bool config_bool(const json& v, const std::string& key)
{
    if (!v.is_boolean())
        throw ConfigError("config key " + key + " must be a boolean");
    return v.get<bool>();
}

} // namespace detail

/// Flat config document; absent keys keep their defaults, unknown keys are
/// rejected.
inline PipelineConfig config_from_json(const json& j)
{
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    PipelineConfig cfg;
    for (const auto& [key, v] : j.items()) {
        if (key == "L_cs_v") {
            if (v.is_string()) {
                if (v.get<std::string>() != "m/6")
                    throw ConfigError("L_cs_v must be a number or \"m/6\"");
                cfg.separators.min_run.reset();
            } else {
                cfg.separators.min_run = detail::config_size(v, key);
            }
        } else if (key == "W_cs_v_min") {
            cfg.separators.min_width = detail::config_size(v, key);
        } else if (key == "W_cs_v_max") {
            cfg.separators.max_width = detail::config_size(v, key);
        } else if (key == "remove_edge_separators") {
            cfg.separators.remove_edges = detail::config_bool(v, key);
        } else if (key == "rounding") {
            const std::string s = v.is_string() ? v.get<std::string>() : "";
            if (s == "nearest")
                cfg.separators.rounding = Rounding::NearestTiesUp;
            else if (s == "floor")
                cfg.separators.rounding = Rounding::Floor;
            else if (s == "ceil")
                cfg.separators.rounding = Rounding::Ceil;
            else
                throw ConfigError("rounding must be \"nearest\", \"floor\" or \"ceil\"");
        } else if (key == "W_bs") {
            cfg.rows.block_gap_min = detail::config_size(v, key);
        } else if (key == "W_ps_min") {
            cfg.rows.paragraph_gap_min = detail::config_size(v, key);
        } else if (key == "W_ps_max") {
            cfg.rows.paragraph_gap_max = detail::config_size(v, key);
        } else if (key == "W_ls") {
            cfg.rows.line_gap_max = detail::config_size(v, key);
        } else if (key == "I_p_min") {
            cfg.rows.indent_min = detail::config_size(v, key);
        } else if (key == "I_p_max") {
            cfg.rows.indent_max = detail::config_size(v, key);
        } else if (key == "use_indent") {
            cfg.rows.use_indent = detail::config_bool(v, key);
        } else if (key == "W_ws") {
            cfg.fine.word_gap_min = detail::config_size(v, key);
        } else if (key == "W_cs") {
            cfg.fine.char_gap_max = detail::config_size(v, key);
        } else if (key == "smooth_window") {
            cfg.smooth_window = detail::config_size(v, key);
        } else if (key == "min_black") {
            cfg.despeckle_min_black = detail::config_size(v, key);
        } else if (key == "overlap") {
            if (!v.is_number())
                throw ConfigError("overlap must be a number");
            cfg.overlap = v.get<double>();
        } else if (key == "count_spurious") {
            cfg.count_spurious = detail::config_bool(v, key);
        } else {
            throw ConfigError("unknown config key " + key);
        }
    }
    cfg.validate();
    return cfg;
}

inline PipelineConfig load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

namespace detail {

inline SizeRange size_range_from_json(const json& v)
{
    if (v.is_array() && v.size() == 2)
        return {v[0].get<std::size_t>(), v[1].get<std::size_t>()};
    if (v.is_number())
        return {v.get<std::size_t>(), v.get<std::size_t>()};
    return {v.at("min").get<std::size_t>(), v.at("max").get<std::size_t>()};
}

} // namespace detail

/// Layout spec; ranges may be written as [min, max], {"min":..,"max":..} or a
/// single number.
inline LayoutSpec layout_from_json(const json& j)
{
    try {
        LayoutSpec s;
        auto size = [&](const char* key, std::size_t& dst) {
            if (j.contains(key))
                dst = j.at(key).get<std::size_t>();
        };
        auto range = [&](const char* key, SizeRange& dst) {
            if (j.contains(key))
                dst = detail::size_range_from_json(j.at(key));
        };
        size("page_width", s.page_width);
        size("page_height", s.page_height);
        size("margin_left", s.margin_left);
        size("margin_right", s.margin_right);
        size("gutter", s.gutter);
        size("section_padding", s.section_padding);
        size("rule_height", s.rule_height);
        size("line_height", s.line_height);
        size("x_height", s.x_height);
        size("stroke", s.stroke);
        size("noise", s.noise);
        range("line_gap", s.line_gap);
        range("paragraph_gap", s.paragraph_gap);
        range("block_gap", s.block_gap);
        range("char_gap", s.char_gap);
        range("word_gap", s.word_gap);
        range("indent", s.indent);
        range("glyph_width", s.glyph_width);
        range("glyphs_per_word", s.glyphs_per_word);
        range("words_per_line", s.words_per_line);
        range("lines_per_paragraph", s.lines_per_paragraph);
        range("paragraphs_per_block", s.paragraphs_per_block);
        range("blocks_per_column", s.blocks_per_column);
        if (j.contains("indent_only_chance"))
            s.indent_only_chance = j.at("indent_only_chance").get<double>();
        if (j.contains("seed"))
            s.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("force"))
            s.force = j.at("force").get<bool>();
        if (j.contains("style")) {
            const auto st = j.at("style").get<std::string>();
            if (st == "stroke")
                s.style = GlyphStyle::Stroke;
            else if (st == "filled")
                s.style = GlyphStyle::Filled;
            else
                throw ConfigError("style must be \"stroke\" or \"filled\"");
        }
        if (j.contains("columns") && !j.contains("sections"))
            s.sections.push_back({j.at("columns").get<std::size_t>(), {}, 0});
        if (j.contains("sections"))
            for (const auto& sj : j.at("sections")) {
                SectionSpec sec;
                sec.columns = sj.value("columns", std::size_t{1});
                sec.height = sj.value("height", std::size_t{0});
                if (sj.contains("weights"))
                    sec.weights = sj.at("weights").get<std::vector<double>>();
                s.sections.push_back(std::move(sec));
            }
        if (j.contains("inverted"))
            for (const auto& bj : j.at("inverted")) {
                InvertedBandSpec b;
                b.section = bj.value("section", std::size_t{0});
                b.column = bj.value("column", -1L);
                b.block = bj.value("block", std::size_t{0});
                b.pad = bj.value("pad", std::size_t{3});
                if (bj.contains("rows")) {
                    const auto& r = bj.at("rows");
                    b.rows = RowRange{r.at(0).get<std::size_t>(), r.at(1).get<std::size_t>()};
                }
                s.inverted.push_back(b);
            }
        return s;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad layout spec: ") + e.what());
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw FormatError("cannot open " + path);
    try {
        json j;
        is >> j;
        return j;
    } catch (const json::exception& e) {
        throw FormatError(path + " is not valid JSON: " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j)
{
    std::ofstream os(path);
    if (!os)
        throw FormatError("cannot open " + path + " for writing");
    os << j.dump(1) << '\n';
}

} // namespace rlseg
