#pragma once

// Limit linear series on a chain of elliptic curves, tracked at the level of
// vanishing orders.
//
// A series of rank r, dimension k and degree d consists of a bundle and a
// k-row vanishing table per component, a section matching and forced
// direction identifications per node, and the twist integer a. The
// validators implement the degree condition (a), the node condition (b), a
// sufficient criterion for the determinacy condition (c), the canonical
// determinant check and the elliptic vanishing calculus for each table.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lls/chain.hpp"

namespace lls {

/// Minimum vanishing orders (u at P, v at Q) of one basis section.
struct VanishingRow {
    int u = 0;
    int v = 0;

    int sum() const noexcept { return u + v; }
    auto operator<=>(const VanishingRow&) const = default;
};

/// Rows are listed with u nondecreasing and v nonincreasing.
using VanishingTable = std::vector<VanishingRow>;

/// A line in a fiber named by the bundle structure: one of the two summands of
/// a split bundle, or the marked sub line bundle of the indecomposable one.
enum class Direction { First, Second, Marked };

const char* to_string(Direction d) noexcept;

/// The fiber isomorphism at a node must send `left` (at Q_i) to `right` (at P_{i+1}).
struct ForcedPair {
    Direction left = Direction::First;
    Direction right = Direction::First;

    auto operator<=>(const ForcedPair&) const = default;
};

struct NodeGluing {
    /// matching[j] is the row on component i+1 glued to row j of component i (0-based).
    std::vector<int> matching;
    std::vector<ForcedPair> forced_pairs;

    /// 4 for a free gluing, one less per forced identification.
    int free_parameter_count() const noexcept { return 4 - static_cast<int>(forced_pairs.size()); }
    bool operator==(const NodeGluing&) const = default;
};

struct Component {
    ComponentBundle bundle;
    VanishingTable table;

    /// Number of free line-bundle choices on this component (0 or 1).
    int moduli_freedom() const noexcept;
    bool operator==(const Component&) const = default;
};

struct LimitSeries {
    ChainCurve chain{1};
    int rank = 2;
    int dimension = 0;
    int degree = 0;
    int twist = 0;
    std::vector<Component> components;  // components[i] lives on C_{i+1}
    std::vector<NodeGluing> nodes;      // nodes[i] glues C_{i+1} to C_{i+2}

    bool operator==(const LimitSeries&) const = default;
};

// ---------------------------------------------------------------------------
// Elliptic vanishing calculus

struct Admissibility {
    bool ok = true;
    std::string diagnostic;

    explicit operator bool() const noexcept { return ok; }
};

/// Whether `table` is realizable as a section space of `bundle`.
///
/// On O(pP+qQ) of degree d a row is realizable iff u+v = d-1, or (u,v) = (p,q)
/// exactly. The rows (p-1,q) and (p,q-1) collapse onto the (p,q) section and are
/// not realizable on their own. A split bundle must admit an assignment of rows
/// to summands with distinct u per summand. The indecomposable bundle of
/// degree 2m accepts rows with u+v = m-1 and its marked row at most once.
Admissibility admissible_table(const ComponentBundle& bundle, const VanishingTable& table);

/// Fiber direction at which the section of `row` is pinned by the bundle, if
/// any: the only summand able to carry the row, or the marked line.
std::optional<Direction> pinned_direction(const ComponentBundle& bundle, VanishingRow row);

/// Identifications every gluing at node `node` (0-based) must respect: a
/// matched pair whose vanishing is unique on both sides of the node and pinned
/// to a direction on both sides. Sorted, without duplicates.
std::vector<ForcedPair> derive_forced_pairs(const LimitSeries& series, std::size_t node);

/// The same rule for two adjacent components glued by `matching`.
std::vector<ForcedPair> forced_pairs_between(
    const Component& left, const Component& right, const std::vector<int>& matching);
/// No direction is sent to two directions or receives two.
bool is_partial_isomorphism(const std::vector<ForcedPair>& pairs);
/// Identity matchings plus derived forced pairs for every node.
void assign_gluings(LimitSeries& series);

// ---------------------------------------------------------------------------
// Validators

struct CheckResult {
    std::string name;
    bool passed = true;
    std::vector<std::string> diagnostics;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    /// Informational remarks (e.g. checks passed on degree only).
    std::vector<std::string> notes;

    bool all_passed() const noexcept;
    const CheckResult* find(const std::string& name) const noexcept;
    std::vector<std::string> failed() const;
};

CheckResult check_shape(const LimitSeries& s);
CheckResult check_degree_condition(const LimitSeries& s);
CheckResult check_node_condition(const LimitSeries& s);
CheckResult check_determinacy_condition(const LimitSeries& s);
CheckResult check_canonical_determinant(const LimitSeries& s);
CheckResult check_admissibility(const LimitSeries& s);
CheckResult check_monotonicity(const LimitSeries& s);
CheckResult check_multiplicity(const LimitSeries& s);
CheckResult check_gluings(const LimitSeries& s);

bool validate_degree_condition(const LimitSeries& s);
bool validate_node_condition(const LimitSeries& s);
bool validate_determinacy_condition(const LimitSeries& s);
bool validate_canonical_determinant(const LimitSeries& s);

ValidationReport validate_all(const LimitSeries& s);

/// Validation of the first components of a genus-`genus` series: everything
/// except the degree condition, with canonical restrictions taken on the full
/// chain.
ValidationReport validate_prefix(const LimitSeries& prefix, int genus);

}  // namespace lls
