#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rlseg/error.hpp"
#include "rlseg/geometry.hpp"

namespace rlseg {

enum class NodeKind { Page, Column, Block, Paragraph, Line, Word, Character };

inline std::string_view to_string(NodeKind k)
{
    switch (k) {
    case NodeKind::Page: return "page";
    case NodeKind::Column: return "column";
    case NodeKind::Block: return "block";
    case NodeKind::Paragraph: return "paragraph";
    case NodeKind::Line: return "line";
    case NodeKind::Word: return "word";
    case NodeKind::Character: return "character";
    }
    return "?";
}

inline NodeKind node_kind_from_string(std::string_view s)
{
    for (NodeKind k : {NodeKind::Page, NodeKind::Column, NodeKind::Block, NodeKind::Paragraph,
                       NodeKind::Line, NodeKind::Word, NodeKind::Character})
        if (to_string(k) == s)
            return k;
    throw FormatError("unknown node kind '" + std::string(s) + "'");
}

/// One node of the layout tree; rects are in page coordinates.
struct SegmentNode {
    NodeKind kind = NodeKind::Page;
    Rect rect;
    std::vector<SegmentNode> children;

    friend bool operator==(const SegmentNode&, const SegmentNode&) = default;
};

using SegmentTree = SegmentNode; // root has kind Page

inline std::size_t count_nodes(const SegmentNode& n, NodeKind kind)
{
    std::size_t c = n.kind == kind ? 1 : 0;
    for (const auto& ch : n.children)
        c += count_nodes(ch, kind);
    return c;
}

inline void collect_rects(const SegmentNode& n, NodeKind kind, std::vector<Rect>& out)
{
    if (n.kind == kind)
        out.push_back(n.rect);
    for (const auto& ch : n.children)
        collect_rects(ch, kind, out);
}

inline std::vector<Rect> collect_rects(const SegmentNode& n, NodeKind kind)
{
    std::vector<Rect> out;
    collect_rects(n, kind, out);
    return out;
}

/// Path to the first node where two trees differ, for test diagnostics.
inline std::optional<std::string> first_difference(const SegmentNode& a, const SegmentNode& b,
                                                   const std::string& path = "page")
{
    if (a.kind != b.kind)
        return path + ": kind " + std::string(to_string(a.kind)) + " vs " +
               std::string(to_string(b.kind));
    if (a.rect != b.rect) {
        std::ostringstream os;
        os << path << ": rect " << a.rect << " vs " << b.rect;
        return os.str();
    }
    if (a.children.size() != b.children.size())
        return path + ": " + std::to_string(a.children.size()) + " vs " +
               std::to_string(b.children.size()) + " children";
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (auto d = first_difference(a.children[i], b.children[i],
                                      path + "/" + std::string(to_string(a.children[i].kind)) +
                                          "[" + std::to_string(i) + "]"))
            return d;
    return std::nullopt;
}

inline void print_tree(std::ostream& os, const SegmentNode& n, int depth = 0)
{
    os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << to_string(n.kind) << ' '
       << n.rect << '\n';
    for (const auto& ch : n.children)
        print_tree(os, ch, depth + 1);
}

} // namespace rlseg
