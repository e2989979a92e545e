#pragma once

// Chains of elliptic curves and divisor classes supported on the two marked
// points of each component.
//
// Component i (1-based) carries points P_i and Q_i; node j glues Q_j to
// P_{j+1}. The points are generic, so a line bundle O(p P + q Q) is faithfully
// represented by its coefficient pair and two such bundles are isomorphic iff
// their pairs agree.

#include <compare>
#include <utility>
#include <variant>

namespace lls {

class ChainCurve {
public:
    explicit ChainCurve(int components);

    int genus() const noexcept { return components_; }
    int components() const noexcept { return components_; }
    int nodes() const noexcept { return components_ - 1; }

    bool operator==(const ChainCurve&) const = default;

private:
    int components_;
};

/// O(p P + q Q) on one elliptic component.
struct SplitLineBundle {
    int p = 0;
    int q = 0;

    int degree() const noexcept { return p + q; }
    auto operator<=>(const SplitLineBundle&) const = default;
};

/// Direct sum of two line bundles. When `symbolic` is set the summands are a
/// free choice L + L' of the Jacobian (one modulus); the stored pairs are only
/// a representative with the right determinant and must not be used for any
/// coincidence test.
struct SplitBundle {
    SplitLineBundle first;
    SplitLineBundle second;
    bool symbolic = false;

    int degree() const noexcept { return first.degree() + second.degree(); }
    /// Equal summands with a fixed class, i.e. L + L.
    bool has_equal_summands() const noexcept { return !symbolic && first == second; }
    bool operator==(const SplitBundle&) const = default;
};

/// The unique indecomposable rank-2 bundle of even degree with a marked
/// section of vanishing (marked_u, marked_v) at (P, Q).
struct IndecomposableBundle {
    int degree = 0;
    int marked_u = 0;
    int marked_v = 0;

    bool operator==(const IndecomposableBundle&) const = default;
};

using RankTwoBundle = std::variant<SplitBundle, IndecomposableBundle>;

/// Bundle carried by one component: a line bundle in rank 1, otherwise rank 2.
using ComponentBundle = std::variant<SplitLineBundle, SplitBundle, IndecomposableBundle>;

int degree(const ComponentBundle& bundle);
int rank(const ComponentBundle& bundle);

/// Restriction of the canonical bundle to component i: (p, q) = (2i-2, 2g-2i).
SplitLineBundle canonical_restriction(int component, int genus);

/// Componentwise sum of the summand classes. Throws
/// "determinant-class-unavailable" for the indecomposable bundle, which only
/// records its degree.
SplitLineBundle determinant(const RankTwoBundle& bundle);

}  // namespace lls
