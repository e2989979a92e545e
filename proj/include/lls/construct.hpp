#pragma once

// Explicit limit linear series with canonical determinant on a chain of g
// elliptic curves: the rank-1 limit canonical series and the rank-2 series
// with k = 2k1 or k = 2k1 + 1 sections.

#include "lls/series.hpp"

namespace lls {

/// i = layer^2 + 2c + eps over the first k1^2 components, with either
/// 0 <= c <= layer-1 and eps in {1,2}, or c = layer and eps = 1 (i a square).
struct LayerDecomposition {
    int index = 0;
    int layer = 0;
    int c = 0;
    int eps = 1;

    bool is_square() const noexcept { return c == layer; }
    bool operator==(const LayerDecomposition&) const = default;
};

LayerDecomposition decompose_index(int i, int half_dimension);

/// Rank 1, dimension g, degree 2g-2, twist 2g-2. Requires g >= 2.
LimitSeries canonical_limit_series(int genus);

struct ConstructOptions {
    /// Generate below the existence threshold; validation decides the verdict.
    bool force = false;
};

LimitSeries construct_even(int genus, int dimension, ConstructOptions options = {});
LimitSeries construct_odd(int genus, int dimension, ConstructOptions options = {});

/// Dispatches on the parity of `dimension`.
LimitSeries construct(int genus, int dimension, ConstructOptions options = {});

/// k = 3, g = 3: the combinatorial series exists but is only strictly
/// semistable; the stable bundle is the dual of the kernel of the evaluation
/// map H^0(K) x O -> K, which this library does not construct.
bool needs_external_stable_model(int genus, int dimension) noexcept;

}  // namespace lls
