#include "lls/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include "lls/error.hpp"

namespace lls {

namespace {

    struct Option {
        Component component;
        std::vector<int> u;
        std::vector<int> v;
        // skip[j]: first later option whose rows 0..j differ from these
        std::vector<std::uint32_t> skip;
    };

    void link_skips(std::vector<Option>& opts)
    {
        for (std::size_t o = opts.size(); o-- > 0;) {
            const auto& t = opts[o].component.table;
            opts[o].skip.assign(t.size(), static_cast<std::uint32_t>(o + 1));
            if (o + 1 == opts.size() || !(opts[o + 1].component.bundle == opts[o].component.bundle))
                continue;
            const auto& next = opts[o + 1];
            for (std::size_t j = 0; j < t.size() && next.component.table[j] == t[j]; ++j)
                opts[o].skip[j] = next.skip[j];
        }
    }

    std::vector<ComponentBundle> candidate_bundles(const SearchSpace& space, int i)
    {
        const int g = space.genus;
        if (space.rank == 1)
            return {canonical_restriction(i, g)};
        std::vector<ComponentBundle> out;
        for (int p = 0; 2 * p <= 2 * i - 2; ++p) {
            const int p2 = 2 * i - 2 - p;
            if (p2 > g - 1)
                continue;
            out.push_back(SplitBundle{{p, g - 1 - p}, {p2, g - 1 - p2}, false});
        }
        out.push_back(SplitBundle{{i - 1, g - i}, {i - 1, g - i}, true});
        return out;
    }

    std::vector<VanishingRow> candidate_rows(const SearchSpace& space, const ComponentBundle& bundle)
    {
        const int line_degree = space.rank == 1 ? space.degree() : space.genus - 1;
        std::vector<VanishingRow> rows;
        for (int u = 0; u <= line_degree - 1; ++u)
            rows.push_back({u, line_degree - 1 - u});
        if (const auto* line = std::get_if<SplitLineBundle>(&bundle))
            rows.push_back({line->p, line->q});
        else if (const auto* split = std::get_if<SplitBundle>(&bundle); split && !split->symbolic) {
            rows.push_back({split->first.p, split->first.q});
            rows.push_back({split->second.p, split->second.q});
        }
        std::sort(rows.begin(), rows.end(), [](VanishingRow a, VanishingRow b) {
            return a.u != b.u ? a.u < b.u : a.v > b.v;
        });
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        return rows;
    }

    bool multiplicity_ok(const VanishingTable& t, int rank)
    {
        std::map<int, int> at_p, at_q;
        for (auto r : t)
            if (++at_p[r.u] > rank || ++at_q[r.v] > rank)
                return false;
        return true;
    }

    // Nondecreasing sequences over the (u,-v)-sorted candidate rows. With
    // `rank` set, a row is skipped once `rank` earlier rows share its u or v.
    void tables_from(const std::vector<VanishingRow>& rows, int k, std::optional<int> rank, std::size_t start,
        VanishingTable& cur, const std::function<void(const VanishingTable&)>& emit)
    {
        if (static_cast<int>(cur.size()) == k) {
            emit(cur);
            return;
        }
        for (std::size_t x = start; x < rows.size(); ++x) {
            if (rank && static_cast<int>(cur.size()) >= *rank) {
                int same_u = 0, same_v = 0;
                for (auto it = cur.rbegin(); it != cur.rend(); ++it) {
                    same_u += it->u == rows[x].u;
                    same_v += it->v == rows[x].v;
                }
                if (same_u >= *rank || same_v >= *rank)
                    continue;
            }
            cur.push_back(rows[x]);
            tables_from(rows, k, rank, x, cur, emit);
            cur.pop_back();
        }
    }

    std::vector<std::vector<Option>> build_options(const SearchSpace& space, bool prune, std::uint64_t& rejected)
    {
        std::vector<std::vector<Option>> all;
        for (int i = 1; i <= space.components(); ++i) {
            std::vector<Option> opts;
            for (const auto& bundle : candidate_bundles(space, i)) {
                auto rows = candidate_rows(space, bundle);
                std::optional<int> rank;
                if (prune) {
                    // rows no summand can carry never appear in an admissible table
                    std::erase_if(rows, [&](VanishingRow r) { return !admissible_table(bundle, {r}); });
                    rank = space.rank;
                }
                VanishingTable cur;
                tables_from(rows, space.dimension, rank, 0, cur, [&](const VanishingTable& t) {
                    if (prune && (!multiplicity_ok(t, space.rank) || !admissible_table(bundle, t))) {
                        ++rejected;
                        return;
                    }
                    Option o{{bundle, t}, {}, {}, {}};
                    for (auto r : t) {
                        o.u.push_back(r.u);
                        o.v.push_back(r.v);
                    }
                    opts.push_back(std::move(o));
                });
            }
            link_skips(opts);
            all.push_back(std::move(opts));
        }
        return all;
    }

    LimitSeries shell(const SearchSpace& space)
    {
        LimitSeries s;
        s.chain = ChainCurve(space.components());
        s.rank = space.rank;
        s.dimension = space.dimension;
        s.degree = space.degree();
        s.twist = space.twist();
        return s;
    }

    struct Branch {
        std::uint64_t count = 0;
        std::uint64_t expanded = 0;
        std::uint64_t pruned = 0;
        std::uint64_t inconsistent = 0;
        bool target_found = false;
        std::vector<LimitSeries> kept;
    };

    struct Searcher {
        const SearchSpace& space;
        const SearchOptions& options;
        const std::vector<std::vector<Option>>& opts;
        const std::optional<LimitSeries>& target;
        std::vector<const Option*> path;
        std::vector<int> identity;
        Branch result;

        LimitSeries assemble() const
        {
            LimitSeries s = shell(space);
            for (const auto* o : path)
                s.components.push_back(o->component);
            assign_gluings(s);
            return s;
        }

        bool on_target() const
        {
            if (!target)
                return false;
            for (std::size_t i = 0; i < path.size(); ++i)
                if (!(path[i]->component == target->components[i]))
                    return false;
            return true;
        }

        void leaf()
        {
            if (!options.prune) {
                LimitSeries s = assemble();
                auto report = space.prefix > 0 ? validate_prefix(s, space.genus) : validate_all(s);
                if (!report.all_passed())
                    return;
            }
            ++result.count;
            if (on_target()) {
                // Identity matchings on sorted tables are canonical, so the
                // derived gluings decide equality.
                if (assemble() == *target)
                    result.target_found = true;
            }
            if (!options.limit || result.kept.size() < *options.limit)
                result.kept.push_back(assemble());
        }

        // Across a node a row keeps its v only if the next row is a special
        // (sum = line degree) row, otherwise v drops by at least one; each
        // component has at most `rank` special rows and v must stay >= 0.
        bool can_finish(const Option& o, std::size_t remaining) const
        {
            const long long m = static_cast<long long>(remaining);
            long long needed = 0;
            for (int v : o.v)
                needed += std::max(0LL, m - v);
            return needed <= space.rank * m;
        }

        void descend(std::size_t depth)
        {
            if (depth == opts.size()) {
                leaf();
                return;
            }
            const int a = space.twist();
            const auto& level = opts[depth];
            for (std::size_t x = 0; x < level.size();) {
                const auto& o = level[x];
                if (options.prune && depth > 0) {
                    // a failing row fails every option sharing the rows up to it
                    const auto& prev_v = path.back()->v;
                    std::size_t j = 0;
                    while (j < prev_v.size() && prev_v[j] + o.u[j] >= a)
                        ++j;
                    if (j < prev_v.size()) {
                        ++result.pruned;
                        x = o.skip[j];
                        continue;
                    }
                }
                ++x;
                if (options.prune && depth > 0 && space.rank == 2
                    && !is_partial_isomorphism(forced_pairs_between(path.back()->component, o.component, identity))) {
                    ++result.inconsistent;
                    continue;
                }
                if (options.prune && !can_finish(o, opts.size() - depth - 1)) {
                    ++result.pruned;
                    continue;
                }
                ++result.expanded;
                path.push_back(&o);
                descend(depth + 1);
                path.pop_back();
            }
        }
    };

}  // namespace

int search_cap(int rank)
{
    if (const char* env = std::getenv("LLS_SEARCH_CAP")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0)
            return static_cast<int>(value);
    }
    return rank == 1 ? 10 : 8;
}

SearchReport enumerate(const SearchSpace& space, const SearchOptions& options)
{
    const auto started = std::chrono::steady_clock::now();
    if (space.rank != 1 && space.rank != 2)
        throw Error("invalid-search-space", "rank must be 1 or 2");
    if (space.genus < 2 || space.dimension < 1 || space.prefix < 0 || space.prefix > space.genus)
        throw Error("invalid-search-space", "need g >= 2, k >= 1 and 0 <= prefix <= g");
    const int cap = options.cap.value_or(search_cap(space.rank));
    if (space.genus > cap)
        throw Error("cap-exceeded", "g=" + std::to_string(space.genus) + " exceeds the search cap " + std::to_string(cap)
                + "; raise it with --cap or LLS_SEARCH_CAP");

    SearchReport report;
    const auto opts = build_options(space, options.prune, report.tables_rejected);

    std::optional<LimitSeries> target;
    if (options.target) {
        LimitSeries t = canonical_form(*options.target);
        if (t.components.size() < static_cast<std::size_t>(space.components()))
            throw Error("invalid-search-space", "target has fewer components than the search space");
        target = truncate(t, space.components());
    }

    std::vector<Branch> branches(opts.front().size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t b; (b = next.fetch_add(1)) < branches.size();) {
            Searcher s{space, options, opts, target, {}, {}, {}};
            for (int j = 0; j < space.dimension; ++j)
                s.identity.push_back(j);
            ++s.result.expanded;
            s.path.push_back(&opts.front()[b]);
            s.descend(1);
            branches[b] = std::move(s.result);
        }
    };
    const unsigned workers = std::max(1u, options.workers);
    if (workers == 1) {
        work();
    }
    else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }

    bool found = false;
    for (auto& b : branches) {
        report.count += b.count;
        report.nodes_expanded += b.expanded;
        report.pruned_by_node_condition += b.pruned;
        report.rejected_gluings += b.inconsistent;
        found = found || b.target_found;
        for (auto& s : b.kept)
            if (!options.limit || report.solutions.size() < *options.limit)
                report.solutions.push_back(std::move(s));
    }
    if (target)
        report.target_found = found;
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

LimitSeries truncate(const LimitSeries& series, int components)
{
    LimitSeries out = series;
    const auto n = static_cast<std::size_t>(std::max(1, components));
    if (n >= series.components.size())
        return out;
    out.chain = ChainCurve(static_cast<int>(n));
    out.components.resize(n);
    out.nodes.resize(n - 1);
    return out;
}

LimitSeries canonical_form(const LimitSeries& series)
{
    LimitSeries out = series;
    const std::size_t n = out.components.size();
    auto flip = [](Direction d) {
        return d == Direction::First ? Direction::Second : d == Direction::Second ? Direction::First : d;
    };

    for (std::size_t i = 0; i < n; ++i) {
        auto* split = std::get_if<SplitBundle>(&out.components[i].bundle);
        if (!split || !(split->second < split->first))
            continue;
        std::swap(split->first, split->second);
        if (i < out.nodes.size())
            for (auto& fp : out.nodes[i].forced_pairs)
                fp.left = flip(fp.left);
        if (i > 0 && i - 1 < out.nodes.size())
            for (auto& fp : out.nodes[i - 1].forced_pairs)
                fp.right = flip(fp.right);
    }

    // new_index[i][old row] after sorting rows by (u, -v)
    std::vector<std::vector<int>> new_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& table = out.components[i].table;
        std::vector<int> order(table.size());
        for (std::size_t j = 0; j < order.size(); ++j)
            order[j] = static_cast<int>(j);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return table[a].u != table[b].u ? table[a].u < table[b].u : table[a].v > table[b].v;
        });
        VanishingTable sorted;
        new_index[i].assign(table.size(), 0);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            sorted.push_back(table[order[pos]]);
            new_index[i][order[pos]] = static_cast<int>(pos);
        }
        table = std::move(sorted);
    }

    for (std::size_t i = 0; i < out.nodes.size() && i + 1 < n; ++i) {
        auto& node = out.nodes[i];
        const auto& left = out.components[i].table;
        const auto& right = out.components[i + 1].table;
        if (node.matching.size() != left.size() || node.matching.size() != right.size()) {
            std::sort(node.forced_pairs.begin(), node.forced_pairs.end());
            continue;
        }
        std::vector<int> moved(node.matching.size());
        for (std::size_t j = 0; j < node.matching.size(); ++j) {
            const int target = node.matching[j];
            if (target < 0 || static_cast<std::size_t>(target) >= right.size()) {
                moved.clear();
                break;
            }
            moved[new_index[i][j]] = new_index[i + 1][target];
        }
        if (!moved.empty()) {
            // Identical rows are interchangeable: keep only how many rows of each
            // left value meet each right value, then reassign in index order.
            // Right values are keyed by their first row so groups follow table order.
            std::vector<std::size_t> group_start(right.size());
            for (std::size_t r = 0; r < right.size(); ++r)
                group_start[r] = r > 0 && right[r] == right[r - 1] ? group_start[r - 1] : r;
            std::map<VanishingRow, std::map<std::size_t, int>> meets;
            for (std::size_t j = 0; j < moved.size(); ++j)
                ++meets[left[j]][group_start[moved[j]]];
            std::vector<std::size_t> next_free(right.size());
            for (std::size_t r = 0; r < right.size(); ++r)
                next_free[r] = r;
            for (std::size_t j = 0; j < moved.size(); ++j) {
                auto& groups = meets[left[j]];
                auto it = groups.begin();
                while (it->second == 0)
                    ++it;
                --it->second;
                moved[j] = static_cast<int>(next_free[it->first]++);
            }
            node.matching = std::move(moved);
        }
        std::sort(node.forced_pairs.begin(), node.forced_pairs.end());
        node.forced_pairs.erase(std::unique(node.forced_pairs.begin(), node.forced_pairs.end()), node.forced_pairs.end());
    }
    return out;
}

}  // namespace lls
