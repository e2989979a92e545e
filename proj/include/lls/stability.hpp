#pragma once

// Combinatorial stability of the bundle glued from a rank-2 series.
//
// Every component bundle has two summands of the same slope (or is the
// indecomposable bundle), so the glued bundle is semistable and can only fail
// stability through a destabilizing chain: a slope-equal line subbundle on
// every component whose directions the node gluings identify all along the
// chain. A gluing identifies two given directions only when a forced pair says
// so; a generic gluing sends any specific direction to a generic one.
//
// An L+L component is transparent: every direction of its fiber spans a
// sub line bundle, so a chain passes through with whatever direction it
// carries.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lls/series.hpp"

namespace lls {

enum class GluingGenericity { Generic, Indeterminate };

enum class StabilityVerdict { Stable, StrictlySemistable, Unknown };

const char* to_string(StabilityVerdict v) noexcept;

/// How a chain selects its sub line bundle on one component.
enum class Selection {
    First,     // first summand
    Second,    // second summand
    Marked,    // marked line of the indecomposable bundle
    Adaptive,  // L+L before any constraint: any direction can still be chosen
    Carried,   // L+L carrying the direction fixed by the previous gluing
};

/// How a node treats the chain's direction.
enum class NodeLink {
    Forced,         // a forced pair sends the direction to the next selection
    Adaptive,       // the chain was still free to choose
    Generic,        // generic image, accepted only by a transparent component
    Indeterminate,  // node flagged indeterminate; identification not excluded
    Killed,         // generic image is no slope-equal sub line bundle
};

struct DestabilizingChain {
    std::vector<Selection> selections;  // one per component reached
    std::vector<NodeLink> links;        // one per node crossed
    /// 0-based node where the chain dies; nullopt if it survives.
    std::optional<int> killed_at;
    bool indeterminate = false;
};

struct StabilityReport {
    StabilityVerdict verdict = StabilityVerdict::Stable;
    std::vector<DestabilizingChain> chains;

    std::vector<int> kill_nodes() const;
};

/// Each component has slope-balanced summands or is indecomposable of even degree.
bool check_semistable(const LimitSeries& series);

/// One flag per node. Throws "not-semistable" if check_semistable fails.
StabilityReport check_stable(const LimitSeries& series, std::span<const GluingGenericity> genericity);
StabilityReport check_stable(const LimitSeries& series);

std::string describe(const DestabilizingChain& chain);

}  // namespace lls
