#pragma once

// Heap accounting through replaced global operator new/delete. Define
// RLSEG_DEFINE_ALLOC_TRACKER in exactly one translation unit of a program
// before including this header; other units just see the counters.

#include <atomic>
#include <cstddef>

namespace rlseg::alloc {

inline std::atomic<std::size_t> current_bytes{0};
inline std::atomic<std::size_t> peak_bytes{0};

inline void note_alloc(std::size_t n)
{
    const std::size_t now = current_bytes.fetch_add(n) + n;
    std::size_t peak = peak_bytes.load();
    while (now > peak && !peak_bytes.compare_exchange_weak(peak, now)) {
    }
}

inline void note_free(std::size_t n) { current_bytes.fetch_sub(n); }

/// Peak bytes above the level at construction, for the lifetime of the scope.
class PeakScope {
public:
    PeakScope() : base_(current_bytes.load()) { peak_bytes.store(base_); }
    std::size_t peak_above_base() const
    {
        const std::size_t p = peak_bytes.load();
        return p > base_ ? p - base_ : 0;
    }

private:
    std::size_t base_;
};

} // namespace rlseg::alloc

#ifdef RLSEG_DEFINE_ALLOC_TRACKER

#include <cstdlib>
#include <new>

namespace rlseg::alloc::detail {

// Each block carries its size in a header aligned for any fundamental type.
inline constexpr std::size_t header = alignof(std::max_align_t);

inline void* tracked_alloc(std::size_t n)
{
    void* raw = std::malloc(n + header);
    if (!raw)
        throw std::bad_alloc();
    *static_cast<std::size_t*>(raw) = n;
    note_alloc(n);
    return static_cast<char*>(raw) + header;
}

inline void tracked_free(void* p) noexcept
{
    if (!p)
        return;
    void* raw = static_cast<char*>(p) - header;
    note_free(*static_cast<std::size_t*>(raw));
    std::free(raw);
}

} // namespace rlseg::alloc::detail

void* operator new(std::size_t n) { return rlseg::alloc::detail::tracked_alloc(n); }
void* operator new[](std::size_t n) { return rlseg::alloc::detail::tracked_alloc(n); }
void operator delete(void* p) noexcept { rlseg::alloc::detail::tracked_free(p); }
void operator delete[](void* p) noexcept { rlseg::alloc::detail::tracked_free(p); }
void operator delete(void* p, std::size_t) noexcept { rlseg::alloc::detail::tracked_free(p); }
void operator delete[](void* p, std::size_t) noexcept { rlseg::alloc::detail::tracked_free(p); }

#endif
