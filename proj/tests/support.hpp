#pragma once

#include <utility>
#include <vector>

#include "lls/construct.hpp"
#include "lls/ledger.hpp"

namespace lls::testing {

// Every (g, k) with 2 <= k <= k_max and theorem_threshold(k) <= g <= g_max.
inline std::vector<std::pair<int, int>> grid(int g_max = 30, int k_max = 8)
{
    std::vector<std::pair<int, int>> cells;
    for (int k = 2; k <= k_max; ++k)
        for (int g = theorem_threshold(k); g <= g_max; ++g)
            cells.emplace_back(g, k);
    return cells;
}

// Changes one vanishing entry, u if `which_u`, by `delta`.
inline LimitSeries mutate(LimitSeries s, std::size_t component, std::size_t row, bool which_u, int delta)
{
    auto& r = s.components[component].table[row];
    (which_u ? r.u : r.v) += delta;
    return s;
}

}  // namespace lls::testing
