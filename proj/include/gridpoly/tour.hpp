#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gridpoly/polygon.hpp"
#include "gridpoly/rational.hpp"

namespace gridpoly {

enum class TourCertificate { Hamiltonian, ExactSearch };

// A provably minimal closed covering walk from the start cell.
struct OptimalTour {
    int length = 0;
    std::vector<Cell> path;  // closed: front == back == start
    TourCertificate certificate = TourCertificate::ExactSearch;
};

struct InstanceTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int default_exact_threshold();  // 26 unless GRIDPOLY_EXACT_THRESHOLD overrides

// Hamiltonian cycle through the start cell, as a closed path, if one exists.
// Pruned DFS (bipartite balance, forced degree-2 edges, unvisited-region
// connectivity). Within budget an empty result is definitive.
std::optional<std::vector<Cell>> hamiltonian_cycle(const GridPolygon& p,
                                                   std::uint64_t node_budget = 200'000'000ULL);

// All-pairs shortest paths inside the polygon, indexed by compact cell id.
std::vector<std::vector<std::uint16_t>> pairwise_distances(const GridPolygon& p);

// Exact minimum length of a walk that starts at `pos`, visits every free cell
// not already in `visited`, and ends at the polygon start. A* over
// (position, visited-set); requires size() <= 32.
int exact_cover_length(const GridPolygon& p, Cell pos, const std::vector<Cell>& visited);

// Lexicographically smallest (by move sequence, N<E<S<W) walk achieving a
// known-optimal length from the initial state. Used to freeze golden paths.
std::vector<Cell> lexmin_cover_path(const GridPolygon& p, Cell pos,
                                    const std::vector<Cell>& visited, int optimal_length);

OptimalTour optimal_tour(const GridPolygon& p, int exact_threshold = default_exact_threshold());

// Minimal further steps to visit all remaining cells and return to start,
// given a legal prefix (positions walked so far, starting at p.start()).
int min_completion(const GridPolygon& p, const std::vector<Cell>& prefix,
                   int exact_threshold = default_exact_threshold());

// Exact rational steps / optimum. `steps` is a completed transcript's count.
Rational competitive_ratio(int steps, const OptimalTour& opt);

}  // namespace gridpoly
