#include "lls/construct.hpp"

#include <string>

#include "lls/error.hpp"
#include "lls/ledger.hpp"

namespace lls {

namespace {

    void require_threshold(int genus, int dimension, const ConstructOptions& options)
    {
        const int needed = theorem_threshold(dimension);
        if (genus < needed && !options.force)
            throw Error("below-theorem-threshold",
                "k=" + std::to_string(dimension) + " requires g >= " + std::to_string(needed) + ", got g="
                    + std::to_string(genus));
    }


    // Bundle and rows of component i <= k1^2 in the even construction.
    Component layered_component(int g, int k1, int i)
    {
        const auto [index, a, c, eps] = decompose_index(i, k1);
        (void)index;
        SplitBundle bundle{{c - a + i - 1, g - i - c + a}, {a - c + i - 1, g - i - a + c}, false};

        // rows[j] holds row j+1
        VanishingTable rows(2 * k1);
        auto set_pair = [&](int e, int u, int v) {
            rows[2 * e - 2] = {u, v};
            rows[2 * e - 1] = {u, v};
        };
        auto set_row = [&](int j, int u, int v) { rows[j - 1] = {u, v}; };

        for (int e = 1; e <= c; ++e)
            set_pair(e, i + e - a - 3, g - i - e + a + 1);
        if (c == a) {
            set_pair(a + 1, i - 1, g - i);
        }
        else {
            set_row(2 * c + 1, eps == 1 ? i + c - a - 1 : i + c - a - 2, g - i - c + a);
            set_row(2 * c + 2, i + c - a - 1, eps == 1 ? g - i - c + a - 1 : g - i - c + a);
            for (int e = c + 2; e <= a; ++e)
                set_pair(e, i + e - a - 2, g - i - e + a);
            set_row(2 * a + 1, eps == 1 ? i - c + a - 1 : i - c + a - 2, g - i + c - a);
            set_row(2 * a + 2, i + a - c - 1, eps == 1 ? g - i - a + c - 1 : g - i - a + c);
        }
        for (int e = a + 2; e <= k1; ++e)
            set_pair(e, i + e - 2, g - i - e);
        return {bundle, rows};
    }

    // L + L' with L generic of degree g-1 and L L' the canonical restriction.
    SplitBundle free_split(int g, int i) { return {{i - 1, g - i}, {i - 1, g - i}, true}; }

    LimitSeries rank_two_shell(int g, int k)
    {
        LimitSeries s;
        s.chain = ChainCurve(g);
        s.rank = 2;
        s.dimension = k;
        s.degree = 2 * g - 2;
        s.twist = g - 1;
        return s;
    }

    void require_rank_two_inputs(int genus, int dimension, int parity)
    {
        if (genus < 1)
            throw Error("invalid-genus", "genus must be positive");
        if (dimension < 2 || dimension % 2 != parity)
            throw Error("invalid-dimension",
                "k=" + std::to_string(dimension) + " is not an " + (parity == 0 ? "even" : "odd") + " value >= 2");
    }

}  // namespace

LayerDecomposition decompose_index(int i, int half_dimension)
{
    if (half_dimension < 1 || i < 1 || i > half_dimension * half_dimension)
        throw Error("index-out-of-range",
            "component " + std::to_string(i) + " is not in 1.." + std::to_string(half_dimension * half_dimension));
    int layer = 0;
    while ((layer + 1) * (layer + 1) < i)
        ++layer;
    // i in (layer^2, (layer+1)^2]
    const int offset = i - layer * layer;  // 1 .. 2 layer + 1
    if (offset == 2 * layer + 1)
        return {i, layer, layer, 1};
    return {i, layer, (offset - 1) / 2, offset % 2 == 1 ? 1 : 2};
}

LimitSeries canonical_limit_series(int genus)
{
    if (genus < 2)
        throw Error("invalid-genus", "the canonical series needs g >= 2");
    const int g = genus;
    LimitSeries s;
    s.chain = ChainCurve(g);
    s.rank = 1;
    s.dimension = g;
    s.degree = 2 * g - 2;
    s.twist = 2 * g - 2;
    for (int i = 1; i <= g; ++i) {
        VanishingTable rows;
        for (int e = 1; e <= g; ++e) {
            const int u = e < i ? i - 3 + e : i - 2 + e;
            const int v = e <= i ? 2 * g - i - e : 2 * g - i - e - 1;
            rows.push_back({u, v});
        }
        s.components.push_back({canonical_restriction(i, g), rows});
    }
    assign_gluings(s);
    return s;
}

LimitSeries construct_even(int genus, int dimension, ConstructOptions options)
{
    require_rank_two_inputs(genus, dimension, 0);
    require_threshold(genus, dimension, options);
    const int g = genus;
    const int k1 = dimension / 2;
    LimitSeries s = rank_two_shell(g, dimension);
    for (int i = 1; i <= g; ++i) {
        if (i <= k1 * k1) {
            s.components.push_back(layered_component(g, k1, i));
            continue;
        }
        VanishingTable rows;
        for (int e = 1; e <= k1; ++e) {
            rows.push_back({i + e - k1 - 2, g - i + k1 - e});
            rows.push_back({i + e - k1 - 2, g - i + k1 - e});
        }
        s.components.push_back({free_split(g, i), rows});
    }
    assign_gluings(s);
    return s;
}

LimitSeries construct_odd(int genus, int dimension, ConstructOptions options)
{
    require_rank_two_inputs(genus, dimension, 1);
    require_threshold(genus, dimension, options);
    const int g = genus;
    const int k1 = dimension / 2;
    const int square = k1 * k1;
    const int marked_u = square + k1;
    const int marked_v = g - 1 - square - k1;
    const int indecomposable_at = square + k1 + 1;
    LimitSeries s = rank_two_shell(g, dimension);

    for (int i = 1; i <= g; ++i) {
        if (i <= square) {
            auto comp = layered_component(g, k1, i);
            comp.table.push_back({i + k1 - 1, g - i - k1 - 1});
            s.components.push_back(std::move(comp));
        }
        else if (i < indecomposable_at) {
            const int m = i - square;
            SplitBundle bundle{{i + m - k1 - 2, g - i - m + k1 + 1}, {marked_u, marked_v}, false};
            VanishingTable rows;
            for (int e = 1; e <= k1; ++e) {
                rows.push_back({e < m ? i + e - k1 - 3 : i + e - k1 - 2, e <= m ? g - i - e + k1 + 1 : g - i - e + k1});
                rows.push_back({i + e - k1 - 2, g - i - e + k1});
            }
            rows.push_back({marked_u, marked_v});
            s.components.push_back({bundle, rows});
        }
        else if (i == indecomposable_at) {
            // u continues the previous component through the node; the last row is the marked section.
            VanishingTable rows;
            const auto& prev = s.components.back().table;
            for (std::size_t j = 0; j + 1 < prev.size(); ++j) {
                const int u = g - 1 - prev[j].v;
                rows.push_back({u, g - 2 - u});
            }
            rows.push_back({marked_u, marked_v});
            s.components.push_back({IndecomposableBundle{2 * g - 2, marked_u, marked_v}, rows});
        }
        else {
            VanishingTable rows{{i - k1 - 2, g - i + k1}};
            for (int e = 1; e <= k1; ++e) {
                rows.push_back({i + e - k1 - 2, g - i - e + k1});
                rows.push_back({i + e - k1 - 2, g - i - e + k1});
            }
            s.components.push_back({free_split(g, i), rows});
        }
    }
    assign_gluings(s);
    return s;
}

LimitSeries construct(int genus, int dimension, ConstructOptions options)
{
    return dimension % 2 == 0 ? construct_even(genus, dimension, options) : construct_odd(genus, dimension, options);
}

bool needs_external_stable_model(int genus, int dimension) noexcept { return dimension == 3 && genus == 3; }

}  // namespace lls
