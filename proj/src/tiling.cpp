#include "colstack/tiling.hpp"
#include "colstack/errors.hpp"

#include <algorithm>

namespace colstack {

std::optional<std::string> find_violation(const TilingProblem& p)
{
    std::set<std::string> tiles;
    for (const auto& t : p.tiles) {
        if (t.empty())
            return std::string("empty tile name");
        if (!tiles.insert(t).second)
            return "tile " + t + " declared twice";
    }
    if (!tiles.count(p.initial))
        return "initial tile " + p.initial + " is not a tile";
    if (!tiles.count(p.final))
        return "final tile " + p.final + " is not a tile";
    for (const auto* rel : {&p.horizontal, &p.vertical}) {
        for (const auto& [a, b] : *rel) {
            if (!tiles.count(a) || !tiles.count(b))
                return "relation pair (" + a + ", " + b + ") uses an unknown tile";
        }
    }
    return std::nullopt;
}

TilingSolution::TilingSolution(unsigned n, std::vector<std::string> cells)
    : n_(n), cells_(std::move(cells))
{
    if (n >= 16)
        throw DimensionMismatch("grid size 2^" + std::to_string(n) + " is too large");
    const std::size_t side = std::size_t{1} << n;
    if (cells_.size() != side * side) {
        throw DimensionMismatch("expected " + std::to_string(side * side) + " cells, got " +
                                std::to_string(cells_.size()));
    }
}

namespace {

// Constraints of cell (row, col) against its left and upper neighbours.
bool cell_ok(const TilingProblem& p, std::size_t side, const std::vector<std::string>& cells,
             std::size_t idx)
{
    const std::size_t row = idx / side;
    const std::size_t col = idx % side;
    const std::string& t = cells[idx];
    const std::size_t last = side * side - 1;
    if (idx == 0 && t != p.initial)
        return false;
    if (idx == last && t != p.final)
        return false;
    if (idx != 0 && t == p.initial)
        return false;
    if (idx != last && t == p.final)
        return false;
    if (col > 0 && !p.horizontal.count({cells[idx - 1], t}))
        return false;
    if (row > 0 && !p.vertical.count({cells[idx - side], t}))
        return false;
    return true;
}

} // namespace

bool check_solution(const TilingProblem& p, unsigned n, const TilingSolution& s)
{
    if (s.n() != n)
        throw DimensionMismatch("solution is a 2^" + std::to_string(s.n()) + " grid, expected 2^" +
                                std::to_string(n));
    const auto& cells = s.cells();
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        if (!cell_ok(p, s.side(), cells, idx))
            return false;
    }
    return true;
}

std::optional<TilingSolution> solve_bruteforce(const TilingProblem& p, unsigned n, unsigned max_n)
{
    if (n > max_n)
        throw ResourceBoundExceeded("brute-force tiling refuses n = " + std::to_string(n) + " > " +
                                    std::to_string(max_n));
    if (p.tiles.empty())
        return std::nullopt;
    const std::size_t side = std::size_t{1} << n;
    const std::size_t total = side * side;
    std::vector<std::string> cells(total);
    std::vector<std::size_t> choice(total, 0);

    // Iterative backtracking over choice[idx] in tile declaration order.
    std::size_t idx = 0;
    while (true) {
        bool placed = false;
        while (choice[idx] < p.tiles.size()) {
            cells[idx] = p.tiles[choice[idx]];
            ++choice[idx];
            if (cell_ok(p, side, cells, idx)) {
                placed = true;
                break;
            }
        }
        if (placed) {
            if (idx + 1 == total)
                return TilingSolution(n, cells);
            ++idx;
            choice[idx] = 0;
        } else {
            if (idx == 0)
                return std::nullopt;
            --idx;
        }
    }
}

} // namespace colstack
