#include "lls/series.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <type_traits>

namespace lls {

const char* to_string(Direction d) noexcept
{
    switch (d) {
    case Direction::First: return "1";
    case Direction::Second: return "2";
    case Direction::Marked: return "m";
    }
    return "?";
}

int Component::moduli_freedom() const noexcept
{
    const auto* split = std::get_if<SplitBundle>(&bundle);
    return split && split->symbolic ? 1 : 0;
}

namespace {

    // Bit 0: first summand (or the line bundle), bit 1: second summand.
    using ChargeMask = unsigned;

    ChargeMask line_charge(SplitLineBundle line, VanishingRow row, bool symbolic)
    {
        if (symbolic)
            return row.sum() == line.degree() - 1 ? 1u : 0u;
        if (row.u == line.p && row.v == line.q)
            return 1u;
        if (row.sum() == line.degree() - 1 && row.u != line.p - 1 && row.u != line.p)
            return 1u;
        return 0u;
    }

    ChargeMask split_charge(const SplitBundle& b, VanishingRow row)
    {
        return line_charge(b.first, row, b.symbolic) | (line_charge(b.second, row, b.symbolic) << 1);
    }

    std::string row_label(std::size_t j, VanishingRow row)
    {
        std::ostringstream out;
        out << "row " << j + 1 << " (" << row.u << "," << row.v << ")";
        return out.str();
    }

    Admissibility reject(std::string why) { return {false, std::move(why)}; }

    Admissibility admissible_line(SplitLineBundle line, const VanishingTable& table)
    {
        std::map<int, int> seen;
        for (std::size_t j = 0; j < table.size(); ++j) {
            if (!line_charge(line, table[j], false))
                return reject(row_label(j, table[j]) + " is not realizable on O(" + std::to_string(line.p) + "P+"
                    + std::to_string(line.q) + "Q)");
            if (++seen[table[j].u] > 1)
                return reject(row_label(j, table[j]) + " repeats a vanishing order of a line bundle");
        }
        return {};
    }

    Admissibility admissible_split(const SplitBundle& b, const VanishingTable& table)
    {
        // Distinct u per summand is the only coupling between rows, so rows
        // with different u are assigned independently.
        std::map<int, std::vector<std::size_t>> by_u;
        for (std::size_t j = 0; j < table.size(); ++j) {
            if (!split_charge(b, table[j]))
                return reject(row_label(j, table[j]) + " cannot be charged to either summand");
            by_u[table[j].u].push_back(j);
        }
        for (const auto& [u, rows] : by_u) {
            if (rows.size() > 2)
                return reject(row_label(rows[2], table[rows[2]]) + " is a third section with vanishing " + std::to_string(u)
                    + " at P");
            if (rows.size() == 2) {
                ChargeMask a = split_charge(b, table[rows[0]]);
                ChargeMask c = split_charge(b, table[rows[1]]);
                bool straight = (a & 1u) && (c & 2u);
                bool crossed = (a & 2u) && (c & 1u);
                if (!straight && !crossed)
                    return reject(row_label(rows[1], table[rows[1]]) + " competes with "
                        + row_label(rows[0], table[rows[0]]) + " for the same summand");
            }
        }
        return {};
    }

    Admissibility admissible_indecomposable(const IndecomposableBundle& b, const VanishingTable& table)
    {
        if (b.degree % 2 != 0)
            return reject("indecomposable bundle of odd degree " + std::to_string(b.degree) + " is not modelled");
        const int half = b.degree / 2;
        const VanishingRow marked{b.marked_u, b.marked_v};
        const VanishingRow below_p{b.marked_u - 1, b.marked_v};
        const VanishingRow below_q{b.marked_u, b.marked_v - 1};
        int marked_rows = 0, below_p_rows = 0, below_q_rows = 0;
        std::map<int, int> at_p, at_q;
        for (std::size_t j = 0; j < table.size(); ++j) {
            const auto row = table[j];
            if (row == marked)
                ++marked_rows;
            else if (row.sum() != half - 1)
                return reject(row_label(j, table[j]) + " has vanishing sum " + std::to_string(row.sum()) + ", expected "
                    + std::to_string(half - 1));
            below_p_rows += row == below_p;
            below_q_rows += row == below_q;
            if (marked_rows > 1 || below_p_rows > 1 || below_q_rows > 1)
                return reject(row_label(j, table[j]) + " collapses onto the marked section");
            if (++at_p[row.u] > 2 || ++at_q[row.v] > 2)
                return reject(row_label(j, table[j]) + " exceeds rank-2 multiplicity");
        }
        return {};
    }

    std::optional<Direction> to_direction(ChargeMask m)
    {
        if (m == 1u)
            return Direction::First;
        if (m == 2u)
            return Direction::Second;
        return std::nullopt;
    }

    bool is_permutation(const std::vector<int>& m, std::size_t n)
    {
        if (m.size() != n)
            return false;
        std::vector<bool> hit(n, false);
        for (int x : m) {
            if (x < 0 || static_cast<std::size_t>(x) >= n || hit[x])
                return false;
            hit[x] = true;
        }
        return true;
    }

    bool tables_well_formed(const LimitSeries& s)
    {
        if (s.components.size() < 1 || s.nodes.size() + 1 != s.components.size())
            return false;
        for (const auto& c : s.components)
            if (c.table.size() != static_cast<std::size_t>(s.dimension))
                return false;
        for (const auto& n : s.nodes)
            if (!is_permutation(n.matching, s.dimension))
                return false;
        return true;
    }

    bool has_direction(const ComponentBundle& b, Direction d)
    {
        if (d == Direction::Marked)
            return std::holds_alternative<IndecomposableBundle>(b);
        return std::holds_alternative<SplitBundle>(b);
    }

    std::string component_label(std::size_t i) { return "component " + std::to_string(i + 1); }
    std::string node_label(std::size_t i)
    {
        return "node " + std::to_string(i + 1) + " (C" + std::to_string(i + 1) + "-C" + std::to_string(i + 2) + ")";
    }

    CheckResult canonical_determinant_check(const LimitSeries& s, int genus)
    {
        CheckResult r{"canonical-determinant", true, {}};
        for (std::size_t i = 0; i < s.components.size(); ++i) {
            const int index = static_cast<int>(i) + 1;
            if (index > genus) {
                r.passed = false;
                r.diagnostics.push_back(component_label(i) + " lies beyond genus " + std::to_string(genus));
                continue;
            }
            const auto expected = canonical_restriction(index, genus);
            const auto& bundle = s.components[i].bundle;
            std::optional<SplitLineBundle> actual;
            if (const auto* line = std::get_if<SplitLineBundle>(&bundle))
                actual = *line;
            else if (const auto* split = std::get_if<SplitBundle>(&bundle))
                actual = determinant(RankTwoBundle{*split});
            if (actual) {
                if (*actual != expected) {
                    r.passed = false;
                    r.diagnostics.push_back(component_label(i) + " determinant (" + std::to_string(actual->p) + ","
                        + std::to_string(actual->q) + ") differs from canonical (" + std::to_string(expected.p) + ","
                        + std::to_string(expected.q) + ")");
                }
            }
            else if (degree(bundle) != expected.degree()) {
                r.passed = false;
                r.diagnostics.push_back(component_label(i) + " indecomposable degree " + std::to_string(degree(bundle))
                    + " differs from " + std::to_string(expected.degree()));
            }
        }
        return r;
    }

    void add_notes(const LimitSeries& s, ValidationReport& report)
    {
        for (std::size_t i = 0; i < s.components.size(); ++i)
            if (std::holds_alternative<IndecomposableBundle>(s.components[i].bundle)) {
                report.notes.push_back(component_label(i)
                    + ": indecomposable bundle checked against the canonical class on degree only");
                report.notes.push_back(component_label(i) + ": determinacy accepted by the degree <= 2a criterion");
            }
    }

    ValidationReport validate_impl(const LimitSeries& s, int genus, bool full)
    {
        ValidationReport report;
        report.checks.push_back(check_shape(s));
        if (full)
            report.checks.push_back(check_degree_condition(s));
        report.checks.push_back(check_node_condition(s));
        report.checks.push_back(check_determinacy_condition(s));
        report.checks.push_back(canonical_determinant_check(s, genus));
        report.checks.push_back(check_admissibility(s));
        report.checks.push_back(check_monotonicity(s));
        report.checks.push_back(check_multiplicity(s));
        report.checks.push_back(check_gluings(s));
        add_notes(s, report);
        return report;
    }

}  // namespace

Admissibility admissible_table(const ComponentBundle& bundle, const VanishingTable& table)
{
    for (std::size_t j = 0; j < table.size(); ++j)
        if (table[j].u < 0 || table[j].v < 0)
            return reject(row_label(j, table[j]) + " has a negative vanishing order");
    if (const auto* line = std::get_if<SplitLineBundle>(&bundle))
        return admissible_line(*line, table);
    if (const auto* split = std::get_if<SplitBundle>(&bundle))
        return admissible_split(*split, table);
    return admissible_indecomposable(std::get<IndecomposableBundle>(bundle), table);
}

std::optional<Direction> pinned_direction(const ComponentBundle& bundle, VanishingRow row)
{
    if (const auto* split = std::get_if<SplitBundle>(&bundle)) {
        if (split->symbolic || split->has_equal_summands())
            return std::nullopt;
        return to_direction(split_charge(*split, row));
    }
    if (const auto* indec = std::get_if<IndecomposableBundle>(&bundle))
        if (row == VanishingRow{indec->marked_u, indec->marked_v})
            return Direction::Marked;
    return std::nullopt;
}

std::vector<ForcedPair> forced_pairs_between(
    const Component& left, const Component& right, const std::vector<int>& matching)
{
    std::vector<ForcedPair> pairs;
    if (matching.size() != left.table.size() || !is_permutation(matching, right.table.size()))
        return pairs;

    std::map<int, int> v_count, u_count;
    for (const auto& row : left.table)
        ++v_count[row.v];
    for (const auto& row : right.table)
        ++u_count[row.u];

    for (std::size_t j = 0; j < left.table.size(); ++j) {
        const auto& lrow = left.table[j];
        const auto& rrow = right.table[matching[j]];
        if (v_count[lrow.v] != 1 || u_count[rrow.u] != 1)
            continue;
        auto l = pinned_direction(left.bundle, lrow);
        auto r = pinned_direction(right.bundle, rrow);
        if (l && r)
            pairs.push_back({*l, *r});
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

std::vector<ForcedPair> derive_forced_pairs(const LimitSeries& series, std::size_t node)
{
    if (series.rank < 2 || node + 1 >= series.components.size() || node >= series.nodes.size())
        return {};
    return forced_pairs_between(series.components[node], series.components[node + 1], series.nodes[node].matching);
}

bool is_partial_isomorphism(const std::vector<ForcedPair>& pairs)
{
    for (std::size_t x = 0; x < pairs.size(); ++x)
        for (std::size_t y = x + 1; y < pairs.size(); ++y)
            if (pairs[x].left == pairs[y].left || pairs[x].right == pairs[y].right)
                return false;
    return true;
}

void assign_gluings(LimitSeries& series)
{
    series.nodes.assign(series.components.empty() ? 0 : series.components.size() - 1, NodeGluing{});
    for (auto& node : series.nodes) {
        node.matching.resize(series.dimension);
        for (int j = 0; j < series.dimension; ++j)
            node.matching[j] = j;
    }
    for (std::size_t i = 0; i < series.nodes.size(); ++i)
        series.nodes[i].forced_pairs = derive_forced_pairs(series, i);
}

// ---------------------------------------------------------------------------

bool ValidationReport::all_passed() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const noexcept
{
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

std::vector<std::string> ValidationReport::failed() const
{
    std::vector<std::string> names;
    for (const auto& c : checks)
        if (!c.passed)
            names.push_back(c.name);
    return names;
}

CheckResult check_shape(const LimitSeries& s)
{
    CheckResult r{"shape", true, {}};
    auto fail = [&](std::string msg) {
        r.passed = false;
        r.diagnostics.push_back(std::move(msg));
    };
    if (s.rank < 1 || s.rank > 2)
        fail("rank " + std::to_string(s.rank) + " is not 1 or 2");
    if (s.dimension < 1)
        fail("dimension must be positive");
    if (s.twist < 1)
        fail("twist integer must be positive");
    if (s.components.size() != static_cast<std::size_t>(s.chain.components()))
        fail("expected " + std::to_string(s.chain.components()) + " components, found "
            + std::to_string(s.components.size()));
    if (s.nodes.size() + 1 != s.components.size())
        fail("expected " + std::to_string(s.components.size() - 1) + " nodes, found " + std::to_string(s.nodes.size()));
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        const auto& c = s.components[i];
        if (c.table.size() != static_cast<std::size_t>(s.dimension))
            fail(component_label(i) + " has " + std::to_string(c.table.size()) + " rows, expected "
                + std::to_string(s.dimension));
        if (rank(c.bundle) != s.rank)
            fail(component_label(i) + " bundle has rank " + std::to_string(rank(c.bundle)));
    }
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
        if (!is_permutation(s.nodes[i].matching, s.dimension))
            fail(node_label(i) + " matching is not a permutation of the rows");
    return r;
}

CheckResult check_degree_condition(const LimitSeries& s)
{
    CheckResult r{"degree", true, {}};
    long long total = 0;
    for (const auto& c : s.components)
        total += degree(c.bundle);
    const long long m = static_cast<long long>(s.components.size());
    const long long lhs = total - static_cast<long long>(s.rank) * (m - 1) * s.twist;
    if (lhs != s.degree) {
        r.passed = false;
        r.diagnostics.push_back("sum of degrees " + std::to_string(total) + " minus r(M-1)a gives " + std::to_string(lhs)
            + ", expected " + std::to_string(s.degree));
    }
    return r;
}

CheckResult check_node_condition(const LimitSeries& s)
{
    CheckResult r{"node", true, {}};
    if (!tables_well_formed(s)) {
        r.passed = false;
        r.diagnostics.push_back("malformed tables or matchings");
        return r;
    }
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
        const auto& left = s.components[i].table;
        const auto& right = s.components[i + 1].table;
        for (std::size_t j = 0; j < left.size(); ++j) {
            const int m = s.nodes[i].matching[j];
            const int sum = left[j].v + right[m].u;
            if (sum < s.twist) {
                r.passed = false;
                r.diagnostics.push_back(node_label(i) + ": row " + std::to_string(j + 1) + " v=" + std::to_string(left[j].v)
                    + " + row " + std::to_string(m + 1) + " u=" + std::to_string(right[m].u) + " = " + std::to_string(sum)
                    + " < a=" + std::to_string(s.twist));
            }
        }
    }
    return r;
}

CheckResult check_determinacy_condition(const LimitSeries& s)
{
    CheckResult r{"determinacy", true, {}};
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        const auto& b = s.components[i].bundle;
        auto fail = [&](int deg, int bound) {
            r.passed = false;
            r.diagnostics.push_back(component_label(i) + ": degree " + std::to_string(deg) + " exceeds " + std::to_string(bound));
        };
        if (const auto* line = std::get_if<SplitLineBundle>(&b)) {
            if (line->degree() > s.twist)
                fail(line->degree(), s.twist);
        }
        else if (const auto* split = std::get_if<SplitBundle>(&b)) {
            for (const auto& summand : {split->first, split->second})
                if (summand.degree() > s.twist)
                    fail(summand.degree(), s.twist);
        }
        else if (const auto& indec = std::get<IndecomposableBundle>(b); indec.degree > 2 * s.twist) {
            fail(indec.degree, 2 * s.twist);
        }
    }
    return r;
}

CheckResult check_canonical_determinant(const LimitSeries& s)
{
    return canonical_determinant_check(s, s.chain.genus());
}

CheckResult check_admissibility(const LimitSeries& s)
{
    CheckResult r{"admissibility", true, {}};
    for (std::size_t i = 0; i < s.components.size(); ++i)
        if (auto a = admissible_table(s.components[i].bundle, s.components[i].table); !a) {
            r.passed = false;
            r.diagnostics.push_back(component_label(i) + ": " + a.diagnostic);
        }
    return r;
}

CheckResult check_monotonicity(const LimitSeries& s)
{
    CheckResult r{"monotonicity", true, {}};
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        const auto& t = s.components[i].table;
        for (std::size_t j = 1; j < t.size(); ++j)
            if (t[j].u < t[j - 1].u || t[j].v > t[j - 1].v) {
                r.passed = false;
                r.diagnostics.push_back(component_label(i) + ": " + row_label(j, t[j]) + " breaks the ordering");
            }
    }
    return r;
}

CheckResult check_multiplicity(const LimitSeries& s)
{
    CheckResult r{"multiplicity", true, {}};
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        std::map<int, int> at_p, at_q;
        for (const auto& row : s.components[i].table) {
            ++at_p[row.u];
            ++at_q[row.v];
        }
        for (const auto& [u, n] : at_p)
            if (n > s.rank) {
                r.passed = false;
                r.diagnostics.push_back(component_label(i) + ": vanishing " + std::to_string(u) + " at P occurs "
                    + std::to_string(n) + " times");
            }
        for (const auto& [v, n] : at_q)
            if (n > s.rank) {
                r.passed = false;
                r.diagnostics.push_back(component_label(i) + ": vanishing " + std::to_string(v) + " at Q occurs "
                    + std::to_string(n) + " times");
            }
    }
    return r;
}

CheckResult check_gluings(const LimitSeries& s)
{
    CheckResult r{"gluing", true, {}};
    auto fail = [&](std::size_t i, const std::string& msg) {
        r.passed = false;
        r.diagnostics.push_back(node_label(i) + ": " + msg);
    };
    for (std::size_t i = 0; i < s.nodes.size() && i + 1 < s.components.size(); ++i) {
        const auto& stored = s.nodes[i].forced_pairs;
        if (s.rank == 1) {
            if (!stored.empty())
                fail(i, "rank-1 gluings carry no directions");
            continue;
        }
        if (stored.size() > 2)
            fail(i, std::to_string(stored.size()) + " forced pairs, at most 2 allowed");
        for (std::size_t x = 0; x < stored.size(); ++x) {
            if (!has_direction(s.components[i].bundle, stored[x].left)
                || !has_direction(s.components[i + 1].bundle, stored[x].right))
                fail(i, std::string("direction ") + to_string(stored[x].left) + ">" + to_string(stored[x].right)
                        + " does not exist on the bundles");
        }
        if (!is_partial_isomorphism(stored))
            fail(i, "forced pairs do not define a partial isomorphism");
        for (const auto& needed : derive_forced_pairs(s, i))
            if (std::find(stored.begin(), stored.end(), needed) == stored.end())
                fail(i, std::string("missing forced pair ") + to_string(needed.left) + ">" + to_string(needed.right));
    }
    return r;
}

bool validate_degree_condition(const LimitSeries& s) { return check_degree_condition(s).passed; }
bool validate_node_condition(const LimitSeries& s) { return check_node_condition(s).passed; }
bool validate_determinacy_condition(const LimitSeries& s) { return check_determinacy_condition(s).passed; }
bool validate_canonical_determinant(const LimitSeries& s) { return check_canonical_determinant(s).passed; }

ValidationReport validate_all(const LimitSeries& s) { return validate_impl(s, s.chain.genus(), true); }

ValidationReport validate_prefix(const LimitSeries& prefix, int genus) { return validate_impl(prefix, genus, false); }

}  // namespace lls
