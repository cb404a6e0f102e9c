#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <ostream>

namespace rlseg {

/// Axis-aligned pixel rectangle, all four bounds inclusive.
struct Rect {
    std::size_t top = 0;
    std::size_t bottom = 0;
    std::size_t left = 0;
    std::size_t right = 0;

    std::size_t height() const { return bottom - top + 1; }
    std::size_t width() const { return right - left + 1; }
    std::size_t area() const { return height() * width(); }

    bool contains(const Rect& o) const
    {
        return o.top >= top && o.bottom <= bottom && o.left >= left && o.right <= right;
    }

    Rect translated(std::size_t dy, std::size_t dx) const
    {
        return {top + dy, bottom + dy, left + dx, right + dx};
    }

    friend auto operator<=>(const Rect&, const Rect&) = default;
};

inline Rect bounding_union(const Rect& a, const Rect& b)
{
    return {std::min(a.top, b.top), std::max(a.bottom, b.bottom),
            std::min(a.left, b.left), std::max(a.right, b.right)};
}

/// Overlap length of two closed intervals, 0 if disjoint.
inline std::size_t interval_overlap(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1)
{
    const std::size_t lo = std::max(a0, b0);
    const std::size_t hi = std::min(a1, b1);
    return hi >= lo ? hi - lo + 1 : 0;
}

/// Closed range of rows [top, bottom].
struct RowRange {
    std::size_t top = 0;
    std::size_t bottom = 0;

    std::size_t height() const { return bottom - top + 1; }
    friend auto operator<=>(const RowRange&, const RowRange&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Rect& r)
{
    return os << "[rows " << r.top << ".." << r.bottom << ", cols " << r.left << ".." << r.right
              << "]";
}

inline std::ostream& operator<<(std::ostream& os, const RowRange& r)
{
    return os << "[" << r.top << ".." << r.bottom << "]";
}

} // namespace rlseg
