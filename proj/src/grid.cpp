#include "sparselab/grid.hpp"

#include <sstream>
#include <stdexcept>

namespace sparselab {

namespace {

int level_sign(int level) { return (level % 2 == 0) ? 1 : -1; }

void check_shift_level(int shift, int level) {
    if (shift < 1 || shift > 3) {
        throw std::invalid_argument("dyadic cube: shift must be in {1,2,3}, got " +
                                    std::to_string(shift));
    }
    if (level < 0 || level > DyadicCube::kMaxLevel) {
        throw std::invalid_argument("dyadic cube: level out of range: " + std::to_string(level));
    }
}

}  // namespace

GridWindow::GridWindow(std::int64_t lo_, std::int64_t hi_) : Interval{lo_, hi_} {
    if (hi_ < lo_) {
        throw std::invalid_argument("grid window: hi < lo");
    }
}

DyadicCube::DyadicCube(int shift_, int level_, std::int64_t index_)
    : shift(shift_), level(level_), index(index_) {
    check_shift_level(shift, level);
}

std::int64_t DyadicCube::scaled_lo() const {
    return side() * (3 * index + level_sign(level) * (shift - 1));
}

DyadicCube DyadicCube::containing(int shift, int level, std::int64_t x) {
    check_shift_level(shift, level);
    const std::int64_t s = std::int64_t{1} << level;
    const std::int64_t offset = s * level_sign(level) * (shift - 1);
    return DyadicCube(shift, level, floor_div(3 * x - offset, 3 * s));
}

Interval DyadicCube::points() const {
    const std::int64_t lo = ceil_div(scaled_lo(), 3);
    return {lo, lo + side()};
}

Interval DyadicCube::middle_third() const {
    const std::int64_t a = scaled_lo();
    return {ceil_div(a + side(), 3), ceil_div(a + 2 * side(), 3)};
}

Interval DyadicCube::triple() const {
    const Interval p = points();
    return {p.lo - side(), p.hi + side()};
}

std::array<DyadicCube, 2> DyadicCube::children() const {
    if (level == 0) {
        throw std::logic_error("dyadic cube: level-0 cube has no children");
    }
    const std::int64_t first = 2 * index + level_sign(level) * (shift - 1);
    return {DyadicCube(shift, level - 1, first), DyadicCube(shift, level - 1, first + 1)};
}

DyadicCube DyadicCube::parent() const {
    const int up = level + 1;
    return DyadicCube(shift, up, floor_div(index - level_sign(up) * (shift - 1), 2));
}

bool DyadicCube::contains(const DyadicCube& other) const {
    if (other.shift != shift || other.level > level) return false;
    DyadicCube c = other;
    while (c.level < level) c = c.parent();
    return c.index == index;
}

std::string DyadicCube::to_string() const {
    std::ostringstream os;
    os << "Q(t=" << shift << ",k=" << level << ",m=" << index << ")";
    return os.str();
}

std::vector<DyadicCube> shifted_grid_cubes(int shift, int level, const Interval& window) {
    std::vector<DyadicCube> out;
    if (window.empty()) return out;
    const DyadicCube first = DyadicCube::containing(shift, level, window.lo);
    const DyadicCube last = DyadicCube::containing(shift, level, window.hi - 1);
    out.reserve(static_cast<std::size_t>(last.index - first.index + 1));
    for (std::int64_t m = first.index; m <= last.index; ++m) {
        out.emplace_back(shift, level, m);
    }
    return out;
}

std::vector<DyadicCube> cube_family(const Interval& window, int max_level) {
    std::vector<DyadicCube> out;
    if (window.empty()) return out;
    if (max_level < 0) {
        max_level = 0;
        while (max_level < DyadicCube::kMaxLevel &&
               (std::int64_t{1} << (max_level + 1)) <= window.size()) {
            ++max_level;
        }
    }
    for (int k = 0; k <= max_level; ++k) {
        for (int t = 1; t <= 3; ++t) {
            for (const DyadicCube& q : shifted_grid_cubes(t, k, window)) {
                if (window.contains(q.points())) out.push_back(q);
            }
        }
    }
    return out;
}

DyadicCube smallest_cube_containing(const Interval& span) {
    if (span.empty()) {
        throw std::invalid_argument("smallest_cube_containing: empty interval");
    }
    for (int k = 0; k <= DyadicCube::kMaxLevel; ++k) {
        if ((std::int64_t{1} << k) < span.size()) continue;
        for (int t = 1; t <= 3; ++t) {
            const DyadicCube q = DyadicCube::containing(t, k, span.lo);
            if (q.points().contains(span)) return q;
        }
    }
    throw std::out_of_range("smallest_cube_containing: interval too long");
}

}  // namespace sparselab
