#include <doctest.h>

#include <algorithm>

#include "lls/construct.hpp"
#include "lls/series.hpp"
#include "support.hpp"

using namespace lls;

namespace {

LimitSeries two_component(int rank, int d1, int d2, int a, int d)
{
    LimitSeries s;
    s.chain = ChainCurve(2);
    s.rank = rank;
    s.dimension = 1;
    s.degree = d;
    s.twist = a;
    auto bundle = [&](int deg) -> ComponentBundle {
        if (rank == 1)
            return SplitLineBundle{0, deg};
        return SplitBundle{{0, deg - deg / 2}, {0, deg / 2}, false};
    };
    s.components = {{bundle(d1), {{0, 0}}}, {bundle(d2), {{0, 0}}}};
    s.nodes = {NodeGluing{{0}, {}}};
    return s;
}

}  // namespace

TEST_CASE("admissible tables")
{
    CHECK(admissible_table(SplitLineBundle{2, 2}, {{0, 3}, {2, 2}, {3, 0}}));
    CHECK(admissible_table(SplitBundle{{0, 8}, {0, 8}, false}, {{0, 8}, {0, 8}, {1, 6}, {1, 6}}));

    auto r = admissible_table(SplitBundle{{0, 3}, {1, 2}, false}, {{0, 3}, {0, 3}});
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.diagnostic.empty());

    // rows one below a special row collapse onto it
    CHECK_FALSE(admissible_table(SplitLineBundle{2, 2}, {{1, 2}}));
    CHECK_FALSE(admissible_table(SplitLineBundle{2, 2}, {{2, 1}}));
    CHECK(admissible_table(SplitLineBundle{2, 2}, {{0, 3}}));
    // u+v above the degree
    CHECK_FALSE(admissible_table(SplitLineBundle{2, 2}, {{3, 2}}));
    // a free summand has no special row
    CHECK_FALSE(admissible_table(SplitBundle{{2, 2}, {2, 2}, true}, {{2, 2}}));
    CHECK(admissible_table(SplitBundle{{2, 2}, {2, 2}, true}, {{1, 2}, {1, 2}}));
    // three rows with the same u exceed rank 2
    CHECK_FALSE(admissible_table(SplitBundle{{0, 4}, {0, 4}, false}, {{1, 2}, {1, 2}, {1, 2}}));
}

TEST_CASE("indecomposable admissibility")
{
    const IndecomposableBundle e{12, 2, 4};
    CHECK(admissible_table(e, {{0, 5}, {1, 4}, {2, 4}}));
    CHECK_FALSE(admissible_table(e, {{2, 4}, {2, 4}}));
    CHECK_FALSE(admissible_table(e, {{3, 3}}));
    CHECK_FALSE(admissible_table(e, {{1, 4}, {1, 4}}));
}

TEST_CASE("admissibility is invariant under summand swap")
{
    // every table of up to three rows drawn from the realizable-looking rows
    for (int d = 2; d <= 5; ++d)
        for (int p1 = 0; p1 <= d; ++p1)
            for (int p2 = 0; p2 <= d; ++p2) {
                const SplitLineBundle a{p1, d - p1}, b{p2, d - p2};
                std::vector<VanishingRow> rows;
                for (int u = 0; u <= d; ++u) {
                    if (u <= d - 1)
                        rows.push_back({u, d - 1 - u});
                    rows.push_back({u, d - u});
                }
                for (std::size_t x = 0; x < rows.size(); ++x)
                    for (std::size_t y = x; y < rows.size(); ++y)
                        for (std::size_t z = y; z < rows.size(); ++z) {
                            VanishingTable t{rows[x], rows[y], rows[z]};
                            CHECK(admissible_table(SplitBundle{a, b, false}, t).ok
                                == admissible_table(SplitBundle{b, a, false}, t).ok);
                        }
            }
}

TEST_CASE("degree condition")
{
    LimitSeries s = construct_even(5, 4);
    CHECK(validate_degree_condition(s));
    CHECK(validate_degree_condition(canonical_limit_series(6)));
    CHECK_FALSE(validate_degree_condition(two_component(2, 3, 3, 2, 3)));
    CHECK(validate_degree_condition(two_component(2, 4, 4, 2, 4)));
}

TEST_CASE("node condition")
{
    LimitSeries s;
    s.chain = ChainCurve(2);
    s.rank = 1;
    s.dimension = 2;
    s.degree = 2;
    s.twist = 2;
    s.components = {{SplitLineBundle{0, 2}, {{0, 1}, {1, 0}}}, {SplitLineBundle{2, 0}, {{0, 0}, {0, 0}}}};
    s.nodes = {NodeGluing{{0, 1}, {}}};
    CHECK_FALSE(validate_node_condition(s));
    const auto check = check_node_condition(s);
    REQUIRE_FALSE(check.diagnostics.empty());
    CHECK(check.diagnostics.front().find("C1-C2") != std::string::npos);

    CHECK(validate_node_condition(canonical_limit_series(3)));
}

TEST_CASE("determinacy condition")
{
    CHECK(validate_determinacy_condition(construct_even(9, 4)));
    CHECK(validate_determinacy_condition(construct_odd(7, 3)));

    LimitSeries s = construct_even(5, 4);
    s.components[0].bundle = SplitBundle{{0, 5}, {0, 3}, false};
    CHECK_FALSE(validate_determinacy_condition(s));
}

TEST_CASE("canonical determinant")
{
    CHECK(validate_canonical_determinant(construct_even(9, 4)));
    CHECK(validate_canonical_determinant(canonical_limit_series(7)));

    LimitSeries s = construct_even(9, 4);
    s.components[0].bundle = SplitBundle{{0, 8}, {1, 7}, false};
    CHECK_FALSE(validate_canonical_determinant(s));

    const auto report = validate_all(construct_odd(7, 3));
    CHECK(report.all_passed());
    CHECK_FALSE(report.notes.empty());
}

TEST_CASE("validate_all on constructions")
{
    CHECK(validate_all(construct_even(9, 4)).all_passed());
    CHECK(validate_all(construct_odd(7, 3)).all_passed());

    const auto report = validate_all(testing::mutate(construct_even(9, 4), 2, 1, true, 1));
    CHECK_FALSE(report.all_passed());
    const auto failed = report.failed();
    CHECK((std::count(failed.begin(), failed.end(), "admissibility") + std::count(failed.begin(), failed.end(), "node")
              + std::count(failed.begin(), failed.end(), "monotonicity"))
        > 0);

    const std::vector<std::string> names{"shape", "degree", "node", "determinacy", "canonical-determinant",
        "admissibility", "monotonicity", "multiplicity", "gluing"};
    for (const auto& n : names)
        CHECK(report.find(n) != nullptr);
}

TEST_CASE("node condition holds with equality on constructions")
{
    for (auto [g, k] : testing::grid()) {
        const LimitSeries s = construct(g, k);
        for (std::size_t i = 0; i + 1 < s.components.size(); ++i)
            for (std::size_t j = 0; j < s.components[i].table.size(); ++j) {
                const int v = s.components[i].table[j].v;
                const int u = s.components[i + 1].table[s.nodes[i].matching[j]].u;
                CHECK(u + v == s.twist);
            }
    }
}

TEST_CASE("every single-entry mutation of a construction is detected")
{
    for (auto [g, k] : testing::grid(14, 8)) {
        const LimitSeries s = construct(g, k);
        for (std::size_t i = 0; i < s.components.size(); ++i)
            for (std::size_t j = 0; j < s.components[i].table.size(); ++j)
                for (bool which_u : {true, false})
                    for (int delta : {-1, 1}) {
                        INFO("g=" << g << " k=" << k << " C" << i + 1 << " row " << j + 1 << (which_u ? " u" : " v")
                                  << (delta > 0 ? "+1" : "-1"));
                        CHECK_FALSE(validate_all(testing::mutate(s, i, j, which_u, delta)).all_passed());
                    }
    }
}

TEST_CASE("gluing check")
{
    LimitSeries s = construct_even(5, 4);
    REQUIRE(s.nodes[1].forced_pairs.size() == 2);
    CHECK(check_gluings(s).passed);

    LimitSeries missing = s;
    missing.nodes[1].forced_pairs.pop_back();
    CHECK_FALSE(check_gluings(missing).passed);

    LimitSeries clash = s;
    clash.nodes[1].forced_pairs = {{Direction::First, Direction::Second}, {Direction::Second, Direction::Second}};
    CHECK_FALSE(check_gluings(clash).passed);

    // specializing a free gluing is allowed
    LimitSeries extra = s;
    extra.nodes[0].forced_pairs = {{Direction::First, Direction::First}};
    CHECK(check_gluings(extra).passed);

    LimitSeries marked = s;
    marked.nodes[0].forced_pairs = {{Direction::Marked, Direction::First}};
    CHECK_FALSE(check_gluings(marked).passed);
}

TEST_CASE("partial isomorphisms")
{
    CHECK(is_partial_isomorphism({}));
    CHECK(is_partial_isomorphism({{Direction::First, Direction::Second}, {Direction::Second, Direction::First}}));
    CHECK_FALSE(is_partial_isomorphism({{Direction::First, Direction::Second}, {Direction::Second, Direction::Second}}));
    CHECK_FALSE(is_partial_isomorphism({{Direction::First, Direction::First}, {Direction::First, Direction::Second}}));
}

TEST_CASE("free parameter count")
{
    CHECK(NodeGluing{{0}, {}}.free_parameter_count() == 4);
    CHECK(NodeGluing{{0}, {{Direction::Marked, Direction::First}}}.free_parameter_count() == 3);
    CHECK(NodeGluing{{0}, {{Direction::First, Direction::Second}, {Direction::Second, Direction::First}}}
              .free_parameter_count()
        == 2);
}
