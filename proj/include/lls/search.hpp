#pragma once

// Exhaustive enumeration of combinatorial limit series with canonical
// determinant on small chains, independent of the explicit constructions.
//
// The search ansatz fixes every component degree to 2g-2. In rank 2 the
// bundle is a sum of two degree g-1 line bundles whose product is the
// canonical restriction, either pinned to P and Q or a free Jacobian choice,
// and the twist is g-1. In rank 1 the bundle is the canonical restriction and
// the twist is 2g-2. Indecomposable bundles are not searched. Results are
// combinatorial solutions; nothing is claimed about the components of the
// moduli locus they lie on.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "lls/series.hpp"

namespace lls {

struct SearchSpace {
    int genus = 0;
    int rank = 2;
    int dimension = 0;
    /// Search only components 1..prefix (0: the whole chain). Prefix searches
    /// skip the degree condition, which involves every component.
    int prefix = 0;

    int degree() const noexcept { return 2 * genus - 2; }
    int twist() const noexcept { return rank == 1 ? 2 * genus - 2 : genus - 1; }
    int components() const noexcept { return prefix > 0 ? prefix : genus; }
};

struct SearchOptions {
    /// Number of solutions kept in the report; the count is always exact.
    std::optional<std::size_t> limit;
    /// Report whether canonical_form(*target) is among the solutions.
    std::optional<LimitSeries> target;
    unsigned workers = 1;
    /// false: no admissibility or node pruning, full validation at every leaf.
    bool prune = true;
    /// Maximal genus accepted; defaults to search_cap(rank).
    std::optional<int> cap;
};

struct SearchReport {
    std::uint64_t count = 0;
    std::vector<LimitSeries> solutions;
    std::uint64_t nodes_expanded = 0;
    std::uint64_t pruned_by_node_condition = 0;
    std::uint64_t tables_rejected = 0;
    /// Node choices whose forced identifications no fiber isomorphism meets.
    std::uint64_t rejected_gluings = 0;
    std::optional<bool> target_found;
    double wall_seconds = 0.0;
};

/// 8 in rank 2, 10 in rank 1, unless LLS_SEARCH_CAP is set.
int search_cap(int rank);

/// Throws "cap-exceeded" above the cap and "invalid-search-space" on bad input.
SearchReport enumerate(const SearchSpace& space, const SearchOptions& options = {});

/// Summands sorted by (p, q), rows sorted by (u, -v), matchings rewritten and
/// normalized among identical rows, forced pairs sorted. Idempotent.
LimitSeries canonical_form(const LimitSeries& series);

/// The first `components` components of `series` with their nodes.
LimitSeries truncate(const LimitSeries& series, int components);

}  // namespace lls
