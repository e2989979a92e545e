#pragma once

// Brill-Noether numerology and the itemized parameter count of a series.

#include <vector>

#include "lls/series.hpp"

namespace lls {

/// r^2(g-1) + 1 - k(k - d + r(g-1)).
long long rho_general(long long r, long long d, long long g, long long k);

/// Expected dimension of rank-2 bundles with canonical determinant and k
/// sections: 3g - 3 - k(k+1)/2.
long long rho_canonical(long long g, long long k);

/// Minimal genus from which the construction exists for k sections.
int theorem_threshold(int dimension);

/// Half-open genus interval [lo, hi).
struct GenusRange {
    int lo = 0;
    int hi = 0;

    bool contains(int g) const noexcept { return lo <= g && g < hi; }
    bool empty() const noexcept { return hi <= lo; }
    bool operator==(const GenusRange&) const = default;
};

/// Genera where the canonical-determinant locus exceeds the expected
/// dimension of rank-2 degree-(2g-2) bundles with k sections. Throws
/// "corollary-defect" if the excess fails anywhere in the interval.
GenusRange corollary_range(int dimension);

struct DimensionLedger {
    std::vector<int> gluing_params;  // per node
    std::vector<int> moduli;         // per component
    std::vector<int> endo_dim;       // per component
    int stability_term = 1;
    int total = 0;

    int gluing_subtotal() const;
    int moduli_subtotal() const;
    int endo_subtotal() const;
};

/// Parameter count of the family a validated rank-2 series moves in: gluings
/// plus Jacobian choices minus endomorphisms plus one for a stable bundle.
/// Throws "unvalidated-series" if validate_all fails.
DimensionLedger count_dimension(const LimitSeries& series);

}  // namespace lls
