#include "gridpoly/transcript.hpp"

#include <sstream>
#include <stdexcept>

namespace gridpoly {

std::string serialize_transcript(const Transcript& t) {
    std::ostringstream out;
    out << "gridpoly-transcript v1\n";
    out << "polygon " << t.polygon_id << "\n";
    out << "strategy " << t.strategy << "\n";
    out << "start " << t.start.x << " " << t.start.y << "\n";
    out << "steps " << t.steps() << " revisits " << t.revisits << " complete "
        << (t.complete ? 1 : 0) << "\n";
    Cell prev = t.start;
    for (Cell c : t.moves) {
        out << (c.x - prev.x) << " " << (c.y - prev.y) << "\n";
        prev = c;
    }
    return out.str();
}

Transcript parse_transcript(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "gridpoly-transcript v1")
        throw std::runtime_error("bad transcript header");
    Transcript t;
    std::string word;
    in >> word >> t.polygon_id;
    in >> word >> t.strategy;
    int steps = 0, complete = 0;
    in >> word >> t.start.x >> t.start.y;
    in >> word >> steps >> word >> t.revisits >> word >> complete;
    t.complete = complete != 0;
    Cell pos = t.start;
    for (int i = 0; i < steps; ++i) {
        int dx, dy;
        if (!(in >> dx >> dy)) throw std::runtime_error("truncated transcript");
        if (std::abs(dx) + std::abs(dy) != 1) throw std::runtime_error("non-unit move");
        pos = pos + Cell{dx, dy};
        t.moves.push_back(pos);
    }
    return t;
}

}  // namespace gridpoly
