#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace gridpoly {

// A lattice cell. x grows east, y grows north.
struct Cell {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }
inline Cell operator-(Cell a, Cell b) { return {a.x - b.x, a.y - b.y}; }

enum class Dir : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Dir, 4> all_dirs{Dir::North, Dir::East, Dir::South, Dir::West};

inline Cell delta(Dir d) {
    switch (d) {
        case Dir::North: return {0, 1};
        case Dir::East: return {1, 0};
        case Dir::South: return {0, -1};
        case Dir::West: return {-1, 0};
    }
    return {0, 0};
}

inline Cell step(Cell c, Dir d) { return c + delta(d); }

inline Dir opposite(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 2) % 4); }
inline Dir left_of(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 3) % 4); }
inline Dir right_of(Dir d) { return static_cast<Dir>((static_cast<int>(d) + 1) % 4); }

// Direction of a unit move from `from` to `to`; cells must be 4-adjacent.
Dir dir_between(Cell from, Cell to);

bool adjacent4(Cell a, Cell b);

const char* dir_name(Dir d);

std::string to_string(Cell c);

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
        // splitmix-style mix of the two coordinates
        std::uint64_t v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
                          static_cast<std::uint32_t>(c.y);
        v ^= v >> 30;
        v *= 0xbf58476d1ce4e5b9ULL;
        v ^= v >> 27;
        v *= 0x94d049bb133111ebULL;
        v ^= v >> 31;
        return static_cast<std::size_t>(v);
    }
};

}  // namespace gridpoly
