#include "lls/stability.hpp"

#include <algorithm>
#include <sstream>

#include "lls/error.hpp"

namespace lls {

const char* to_string(StabilityVerdict v) noexcept
{
    switch (v) {
    case StabilityVerdict::Stable: return "stable";
    case StabilityVerdict::StrictlySemistable: return "strictly-semistable";
    case StabilityVerdict::Unknown: return "unknown";
    }
    return "?";
}

std::vector<int> StabilityReport::kill_nodes() const
{
    std::vector<int> nodes;
    for (const auto& c : chains)
        if (c.killed_at)
            nodes.push_back(*c.killed_at);
    return nodes;
}

bool check_semistable(const LimitSeries& series)
{
    for (const auto& c : series.components) {
        if (const auto* split = std::get_if<SplitBundle>(&c.bundle)) {
            if (split->first.degree() != split->second.degree())
                return false;
        }
        else if (const auto* indec = std::get_if<IndecomposableBundle>(&c.bundle)) {
            if (indec->degree % 2 != 0)
                return false;
        }
    }
    return true;
}

namespace {

    bool transparent(const ComponentBundle& b)
    {
        const auto* split = std::get_if<SplitBundle>(&b);
        return split && split->has_equal_summands();
    }

    std::vector<Selection> candidates(const ComponentBundle& b)
    {
        if (std::holds_alternative<IndecomposableBundle>(b))
            return {Selection::Marked};
        return {Selection::First, Selection::Second};
    }

    std::optional<Direction> as_direction(Selection s)
    {
        switch (s) {
        case Selection::First: return Direction::First;
        case Selection::Second: return Direction::Second;
        case Selection::Marked: return Direction::Marked;
        default: return std::nullopt;
        }
    }

    Selection as_selection(Direction d)
    {
        switch (d) {
        case Direction::First: return Selection::First;
        case Direction::Second: return Selection::Second;
        default: return Selection::Marked;
        }
    }

    struct Walker {
        const LimitSeries& series;
        std::span<const GluingGenericity> genericity;
        std::vector<DestabilizingChain> out;

        // `label` is the direction a carried chain holds on a transparent
        // component when it entered through a forced pair.
        void walk(DestabilizingChain chain, std::optional<Direction> label)
        {
            const std::size_t i = chain.selections.size() - 1;
            if (i + 1 == series.components.size()) {
                out.push_back(std::move(chain));
                return;
            }
            const auto& next = series.components[i + 1].bundle;
            const Selection here = chain.selections.back();

            auto advance = [&](NodeLink link, Selection sel, std::optional<Direction> lab, bool indeterminate) {
                DestabilizingChain c = chain;
                c.links.push_back(link);
                c.selections.push_back(sel);
                c.indeterminate = c.indeterminate || indeterminate;
                walk(std::move(c), lab);
            };
            auto enter_freely = [&](NodeLink link, bool indeterminate) {
                if (transparent(next)) {
                    advance(link, link == NodeLink::Adaptive ? Selection::Adaptive : Selection::Carried, std::nullopt,
                        indeterminate);
                    return;
                }
                for (auto sel : candidates(next))
                    advance(link, sel, as_direction(sel), indeterminate);
            };

            if (here == Selection::Adaptive) {
                enter_freely(NodeLink::Adaptive, false);
                return;
            }

            const std::optional<Direction> dir = here == Selection::Carried ? label : as_direction(here);
            if (dir) {
                for (const auto& fp : series.nodes[i].forced_pairs)
                    if (fp.left == *dir) {
                        const Selection sel = transparent(next) ? Selection::Carried : as_selection(fp.right);
                        advance(NodeLink::Forced, sel, fp.right, false);
                        return;
                    }
            }
            if (genericity[i] == GluingGenericity::Indeterminate) {
                enter_freely(NodeLink::Indeterminate, true);
                return;
            }
            if (transparent(next)) {
                advance(NodeLink::Generic, Selection::Carried, std::nullopt, false);
                return;
            }
            chain.links.push_back(NodeLink::Killed);
            chain.killed_at = static_cast<int>(i);
            out.push_back(std::move(chain));
        }
    };

}  // namespace

StabilityReport check_stable(const LimitSeries& series, std::span<const GluingGenericity> genericity)
{
    if (!check_semistable(series))
        throw Error("not-semistable", "some component has summands of different slope");
    if (genericity.size() != series.nodes.size())
        throw Error("invalid-argument", "expected one genericity flag per node");

    StabilityReport report;
    if (series.rank == 1 || series.components.empty())
        return report;

    Walker walker{series, genericity, {}};
    const auto& first = series.components.front().bundle;
    if (transparent(first)) {
        walker.walk(DestabilizingChain{{Selection::Adaptive}, {}, std::nullopt, false}, std::nullopt);
    }
    else {
        for (auto sel : candidates(first))
            walker.walk(DestabilizingChain{{sel}, {}, std::nullopt, false}, as_direction(sel));
    }
    report.chains = std::move(walker.out);

    const bool survivor = std::any_of(report.chains.begin(), report.chains.end(),
        [](const DestabilizingChain& c) { return !c.killed_at && !c.indeterminate; });
    const bool maybe = std::any_of(
        report.chains.begin(), report.chains.end(), [](const DestabilizingChain& c) { return !c.killed_at; });
    report.verdict = survivor ? StabilityVerdict::StrictlySemistable
        : maybe                ? StabilityVerdict::Unknown
                               : StabilityVerdict::Stable;
    return report;
}

StabilityReport check_stable(const LimitSeries& series)
{
    std::vector<GluingGenericity> flags(series.nodes.size(), GluingGenericity::Generic);
    return check_stable(series, flags);
}

std::string describe(const DestabilizingChain& chain)
{
    static const char* sel_names[] = {"1", "2", "m", "*", "~"};
    std::ostringstream out;
    for (std::size_t i = 0; i < chain.selections.size(); ++i) {
        if (i > 0) {
            switch (chain.links[i - 1]) {
            case NodeLink::Forced: out << " => "; break;
            case NodeLink::Adaptive: out << " -> "; break;
            case NodeLink::Generic: out << " ~> "; break;
            case NodeLink::Indeterminate: out << " ?> "; break;
            case NodeLink::Killed: out << " x "; break;
            }
        }
        out << "C" << i + 1 << ":" << sel_names[static_cast<int>(chain.selections[i])];
    }
    if (chain.killed_at)
        out << " x killed at node C" << *chain.killed_at + 1 << "-C" << *chain.killed_at + 2;
    else
        out << (chain.indeterminate ? " survives (indeterminate)" : " survives");
    return out.str();
}

}  // namespace lls
