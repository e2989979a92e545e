#include "lls/ledger.hpp"

#include <numeric>
#include <string>

#include "lls/error.hpp"

namespace lls {

long long rho_general(long long r, long long d, long long g, long long k)
{
    return r * r * (g - 1) + 1 - k * (k - d + r * (g - 1));
}

long long rho_canonical(long long g, long long k) { return 3 * g - 3 - k * (k + 1) / 2; }

int theorem_threshold(int dimension)
{
    if (dimension < 2)
        throw Error("invalid-dimension", "k must be at least 2, got " + std::to_string(dimension));
    const int k1 = dimension / 2;
    if (dimension % 2 == 1)
        return k1 * k1 + k1 + 1;
    if (k1 > 2)
        return k1 * k1;
    return k1 == 2 ? 5 : 3;
}

GenusRange corollary_range(int dimension)
{
    if (dimension < 2)
        throw Error("invalid-dimension", "k must be at least 2, got " + std::to_string(dimension));
    const int k1 = dimension / 2;
    GenusRange range = dimension % 2 == 0 ? GenusRange{k1 * k1, 2 * k1 * k1 - k1}
                                          : GenusRange{k1 * k1 + k1 + 1, 2 * k1 * k1 + k1};
    for (int g = range.lo; g < range.hi; ++g)
        if (rho_canonical(g, dimension) <= rho_general(2, 2 * g - 2, g, dimension))
            throw Error("corollary-defect", "no excess dimension at g=" + std::to_string(g) + ", k="
                    + std::to_string(dimension));
    return range;
}

int DimensionLedger::gluing_subtotal() const { return std::accumulate(gluing_params.begin(), gluing_params.end(), 0); }
int DimensionLedger::moduli_subtotal() const { return std::accumulate(moduli.begin(), moduli.end(), 0); }
int DimensionLedger::endo_subtotal() const { return std::accumulate(endo_dim.begin(), endo_dim.end(), 0); }

DimensionLedger count_dimension(const LimitSeries& series)
{
    if (series.rank != 2)
        throw Error("unsupported-rank", "the parameter count is defined for rank-2 series");
    if (auto report = validate_all(series); !report.all_passed()) {
        std::string failed;
        for (const auto& name : report.failed())
            failed += (failed.empty() ? "" : ", ") + name;
        throw Error("unvalidated-series", "validation failed: " + failed);
    }

    DimensionLedger ledger;
    for (const auto& node : series.nodes)
        ledger.gluing_params.push_back(node.free_parameter_count());
    for (const auto& c : series.components) {
        ledger.moduli.push_back(c.moduli_freedom());
        const auto* split = std::get_if<SplitBundle>(&c.bundle);
        ledger.endo_dim.push_back(split && split->has_equal_summands() ? 4 : 2);
    }
    ledger.total = ledger.gluing_subtotal() + ledger.moduli_subtotal() - ledger.endo_subtotal() + ledger.stability_term;
    return ledger;
}

}  // namespace lls
