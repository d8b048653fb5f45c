#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace colstack {

using TilePair = std::pair<std::string, std::string>;

struct TilingProblem {
    std::vector<std::string> tiles;
    std::set<TilePair> horizontal;
    std::set<TilePair> vertical;
    std::string initial;
    std::string final;

    friend bool operator==(const TilingProblem&, const TilingProblem&) = default;
};

/// First inconsistency in the problem (unknown tile, duplicate tile), or nullopt.
std::optional<std::string> find_violation(const TilingProblem& p);

/// 2^n x 2^n grid of tiles, row major.
class TilingSolution {
public:
    TilingSolution() = default;
    /// Throws DimensionMismatch unless cells.size() == 4^n.
    TilingSolution(unsigned n, std::vector<std::string> cells);

    unsigned n() const { return n_; }
    std::size_t side() const { return std::size_t{1} << n_; }
    const std::string& at(std::size_t row, std::size_t col) const { return cells_[row * side() + col]; }
    const std::vector<std::string>& cells() const { return cells_; }

    friend bool operator==(const TilingSolution&, const TilingSolution&) = default;

private:
    unsigned n_ = 0;
    std::vector<std::string> cells_{""};
};

/// Corner tiles, horizontal and vertical adjacency, and the initial and final
/// tiles appearing only in the first and last cell. Throws DimensionMismatch
/// when s is not a 2^n x 2^n grid.
bool check_solution(const TilingProblem& p, unsigned n, const TilingSolution& s);

/// Row-major backtracking, tiles tried in declaration order; the first valid
/// grid found is returned. Throws ResourceBoundExceeded when n > max_n.
std::optional<TilingSolution> solve_bruteforce(const TilingProblem& p, unsigned n, unsigned max_n = 3);

} // namespace colstack
