#pragma once

// Integer intervals and the three shifted dyadic grids on Z.
//
// Grid t (t = 1, 2, 3) at level k consists of the half-open real intervals
//
//     Q = 2^k * [ m + (-1)^k (t-1)/3 ,  m + 1 + (-1)^k (t-1)/3 )
//
// restricted to the integers.  Every such interval has length 2^k, so it
// holds exactly 2^k integer points.  The alternating sign makes each grid
// nested (children of a level-k cube are level-(k-1) cubes of the same grid),
// and for a fixed level the middle thirds of the cubes of all three grids
// partition Z.  Endpoints are multiples of 1/3, so all arithmetic is carried
// out on 3x the real endpoint and is exact.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sparselab {

// floor(a / b) and ceil(a / b) for b > 0 and any sign of a.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return (a % b != 0 && a > 0) ? q + 1 : q;
}

// Half-open integer interval [lo, hi).
struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    constexpr std::int64_t size() const { return hi > lo ? hi - lo : 0; }
    constexpr bool empty() const { return hi <= lo; }
    constexpr bool contains(std::int64_t x) const { return lo <= x && x < hi; }
    constexpr bool contains(const Interval& o) const {
        return o.empty() || (lo <= o.lo && o.hi <= hi);
    }
    constexpr Interval intersect(const Interval& o) const {
        const std::int64_t a = lo > o.lo ? lo : o.lo;
        const std::int64_t b = hi < o.hi ? hi : o.hi;
        return b > a ? Interval{a, b} : Interval{a, a};
    }
    constexpr bool overlaps(const Interval& o) const { return !intersect(o).empty(); }
    constexpr Interval hull(const Interval& o) const {
        if (empty()) return o;
        if (o.empty()) return *this;
        return {lo < o.lo ? lo : o.lo, hi > o.hi ? hi : o.hi};
    }
    constexpr auto operator<=>(const Interval&) const = default;
};

// The truncation window of an experiment.  Signals in an experiment are
// supported inside it; lo == hi is the empty window.
struct GridWindow : Interval {
    GridWindow() = default;
    GridWindow(std::int64_t lo_, std::int64_t hi_);

    // The symmetric window [-n, n].
    static GridWindow symmetric(std::int64_t n) { return GridWindow(-n, n + 1); }
};

struct DyadicCube {
    static constexpr int kMaxLevel = 48;

    int shift = 1;           // grid index t in {1, 2, 3}
    int level = 0;           // side length 2^level
    std::int64_t index = 0;  // position m inside the grid

    DyadicCube() = default;
    DyadicCube(int shift_, int level_, std::int64_t index_);

    // Cube of grid `shift` at `level` containing the integer x.
    static DyadicCube containing(int shift, int level, std::int64_t x);

    std::int64_t side() const { return std::int64_t{1} << level; }

    // Integer points of Q, of the middle third (1/3)Q, and of the triple 3Q.
    Interval points() const;
    Interval middle_third() const;
    Interval triple() const;

    // Real endpoints of Q.
    double real_lo() const { return static_cast<double>(scaled_lo()) / 3.0; }
    double real_hi() const { return real_lo() + static_cast<double>(side()); }

    std::array<DyadicCube, 2> children() const;
    DyadicCube parent() const;
    bool contains(const DyadicCube& other) const;

    std::string to_string() const;

    auto operator<=>(const DyadicCube&) const = default;

private:
    // 3 * (real left endpoint); exact.
    std::int64_t scaled_lo() const;
};

// All cubes of grid t at level k whose points meet the window, in increasing
// position.  Empty window gives an empty list.
std::vector<DyadicCube> shifted_grid_cubes(int shift, int level, const Interval& window);

// All cubes of the three grids with levels 0..max_level that lie inside the
// window.  A negative max_level selects the largest level that fits.
std::vector<DyadicCube> cube_family(const Interval& window, int max_level = -1);

// Smallest cube (lowest level first, then lowest shift) containing the
// interval.  The interval must be nonempty.
DyadicCube smallest_cube_containing(const Interval& span);

}  // namespace sparselab
