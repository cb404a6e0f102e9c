#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlseg/error.hpp"
#include "rlseg/geometry.hpp"

namespace rlseg {

/// Row-major binary image, one byte per pixel. 1 is black (ink), 0 is white.
class Bitmap {
public:
    Bitmap() = default;
    Bitmap(std::size_t rows, std::size_t cols, std::uint8_t fill = 0)
        : rows_(rows), cols_(cols), pixels_(rows * cols, fill ? 1 : 0)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t byte_size() const { return pixels_.size(); }

    std::uint8_t at(std::size_t r, std::size_t c) const { return pixels_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint8_t v) { pixels_[r * cols_ + c] = v ? 1 : 0; }

    std::span<const std::uint8_t> row(std::size_t r) const
    {
        return {pixels_.data() + r * cols_, cols_};
    }
    std::span<std::uint8_t> row(std::size_t r) { return {pixels_.data() + r * cols_, cols_}; }

    const std::vector<std::uint8_t>& pixels() const { return pixels_; }

    void fill_rect(const Rect& r, std::uint8_t v)
    {
        for (std::size_t y = r.top; y <= r.bottom; ++y)
            for (std::size_t x = r.left; x <= r.right; ++x)
                set(y, x, v);
    }

    void invert_rect(const Rect& r)
    {
        for (std::size_t y = r.top; y <= r.bottom; ++y)
            for (std::size_t x = r.left; x <= r.right; ++x)
                pixels_[y * cols_ + x] ^= 1;
    }

    Bitmap crop(const Rect& r) const
    {
        if (r.top > r.bottom || r.left > r.right || r.bottom >= rows_ || r.right >= cols_)
            throw OutOfBounds("bitmap crop outside image");
        Bitmap out(r.height(), r.width());
        for (std::size_t y = r.top; y <= r.bottom; ++y)
            for (std::size_t x = r.left; x <= r.right; ++x)
                out.set(y - r.top, x - r.left, at(y, x));
        return out;
    }

    friend bool operator==(const Bitmap&, const Bitmap&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> pixels_;
};

} // namespace rlseg
