#include "gridpoly/knowledge.hpp"

namespace gridpoly {

SensorReading sense(const GridPolygon& p, Cell pos) {
    if (!p.is_free(pos)) throw std::invalid_argument("sense: position not free");
    SensorReading r{};
    for (Dir d : all_dirs)
        r.by_dir[static_cast<std::size_t>(d)] =
            p.is_free(step(pos, d)) ? CellStatus::Free : CellStatus::Blocked;
    return r;
}

}  // namespace gridpoly
