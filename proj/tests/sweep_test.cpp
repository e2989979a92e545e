#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "lls/error.hpp"
#include "lls/ledger.hpp"
#include "lls/sweep.hpp"

using namespace lls;

namespace {

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("default grid has 40 rows")
{
    const auto rows = run_sweep({});
    CHECK(rows.size() == 40);
    for (const auto& r : rows) {
        CHECK(r.rho_canonical >= 0);
        if (r.validated) {
            CHECK(r.ledger_matches);
            CHECK(r.ledger_total == r.rho_canonical);
        }
        CHECK(r.validated == r.threshold_ok);
    }

    SweepOptions all;
    all.include_negative = true;
    CHECK(run_sweep(all).size() == 50);
}

TEST_CASE("csv cells")
{
    const auto csv = lines(to_csv(run_sweep({})));
    REQUIRE(csv.size() == 41);
    CHECK(csv[0] == sweep_csv_header);
    auto has = [&](const std::string& row) { return std::find(csv.begin(), csv.end(), row) != csv.end(); };
    CHECK(has("5,4,2,1,1,1,1,2,1,stable"));
    CHECK(has("3,3,0,0,1,0,1,0,1,external"));
    // negative expected dimension is skipped
    CHECK(std::none_of(csv.begin(), csv.end(), [](const std::string& r) { return r.rfind("4,4,", 0) == 0; }));
    CHECK(has("4,2,6,9,1,0,1,6,1,stable"));
    CHECK(has("9,6,3,-3,1,1,1,3,1,stable"));
    CHECK(has("7,3,12,16,1,0,1,12,1,stable"));
}

TEST_CASE("below-threshold cells are reported but not constructed")
{
    const auto r = sweep_cell(6, 5);
    CHECK_FALSE(r.threshold_ok);
    CHECK_FALSE(r.validated);
    CHECK_FALSE(r.ledger_total.has_value());
    CHECK_FALSE(r.ledger_matches);
    CHECK(r.stability == "-");
    CHECK(r.rho_canonical == rho_canonical(6, 5));
}

TEST_CASE("sweep output does not depend on the worker count")
{
    SweepOptions o;
    o.g_max = 20;
    o.k_max = 8;
    const std::string one = to_csv(run_sweep(o));
    for (unsigned w : {2u, 5u}) {
        o.workers = w;
        CHECK(to_csv(run_sweep(o)) == one);
    }
}

TEST_CASE("sweep rejects empty grids")
{
    SweepOptions o;
    o.g_min = 10;
    o.g_max = 9;
    CHECK_THROWS_AS(run_sweep(o), Error);
}
