#include "lls/chain.hpp"

#include <string>
#include <type_traits>

#include "lls/error.hpp"

namespace lls {

ChainCurve::ChainCurve(int components) : components_(components)
{
    if (components < 1)
        throw Error("invalid-genus", "a chain needs at least one component, got " + std::to_string(components));
}

int degree(const ComponentBundle& bundle)
{
    return std::visit(
        [](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, IndecomposableBundle>)
                return b.degree;
            else
                return b.degree();
        },
        bundle);
}

int rank(const ComponentBundle& bundle)
{
    return std::holds_alternative<SplitLineBundle>(bundle) ? 1 : 2;
}

SplitLineBundle canonical_restriction(int component, int genus)
{
    if (genus < 1 || component < 1 || component > genus)
        throw Error("index-out-of-range",
            "component " + std::to_string(component) + " is not in 1.." + std::to_string(genus));
    return {2 * component - 2, 2 * genus - 2 * component};
}

SplitLineBundle determinant(const RankTwoBundle& bundle)
{
    if (const auto* split = std::get_if<SplitBundle>(&bundle))
        return {split->first.p + split->second.p, split->first.q + split->second.q};
    throw Error("determinant-class-unavailable", "the indecomposable bundle records its degree only");
}

}  // namespace lls
