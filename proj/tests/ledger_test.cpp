#include <doctest.h>

#include "lls/construct.hpp"
#include "lls/error.hpp"
#include "lls/ledger.hpp"
#include "support.hpp"

using namespace lls;

namespace {

// r^2 g - r^2 + 1 - k^2 + k d - k r g + k r, the expanded form
long long rho_expanded(long long r, long long d, long long g, long long k)
{
    return r * r * g - r * r + 1 - k * k + k * d - k * r * g + k * r;
}

}  // namespace

TEST_CASE("rho_general")
{
    CHECK(rho_general(2, 8, 5, 4) == 1);
    CHECK(rho_general(1, 0, 7, 0) == 7);
    CHECK(rho_general(2, 0, 1, 0) == 1);

    for (long long r = 1; r <= 4; ++r)
        for (long long g = 0; g <= 20; ++g)
            for (long long d = -3; d <= 2 * g + 2; ++d)
                for (long long k = 0; k <= 9; ++k)
                    CHECK(rho_general(r, d, g, k) == rho_expanded(r, d, g, k));

    // rank 2, degree 2g-2
    for (long long g = 2; g <= 30; ++g)
        for (long long k = 0; k <= 8; ++k)
            CHECK(rho_general(2, 2 * g - 2, g, k) == 4 * g - 3 - k * k);
}

TEST_CASE("rho_general in rank 1 is the classical number")
{
    // g - (s+1)(g-d+s) for a g^s_d, with k = s+1 sections
    const int spots[][3] = {{4, 3, 1}, {6, 4, 1}, {6, 5, 2}, {10, 9, 3}, {3, 4, 2}, {8, 14, 7}};
    for (auto [g, d, s] : spots)
        CHECK(rho_general(1, d, g, s + 1) == g - (s + 1) * (g - d + s));
    // canonical series of any genus
    for (int g = 2; g <= 30; ++g)
        CHECK(rho_general(1, 2 * g - 2, g, g) == 0);
}

TEST_CASE("rho_canonical")
{
    CHECK(rho_canonical(11, 7) == 2);
    CHECK(rho_canonical(5, 4) == 2);
    for (int g = 2; g <= 30; ++g)
        CHECK(rho_canonical(g, 0) == 3 * g - 3);
}

TEST_CASE("existence thresholds")
{
    CHECK(theorem_threshold(4) == 5);
    CHECK(theorem_threshold(8) == 16);
    CHECK(theorem_threshold(3) == 3);
    CHECK(theorem_threshold(2) == 3);
    CHECK(theorem_threshold(5) == 7);
    CHECK(theorem_threshold(6) == 9);
    CHECK(theorem_threshold(7) == 13);
    CHECK_THROWS_AS(theorem_threshold(1), Error);
}

TEST_CASE("excess genus ranges")
{
    CHECK(corollary_range(6) == GenusRange{9, 15});
    CHECK(corollary_range(4) == GenusRange{4, 6});
    CHECK(corollary_range(7) == GenusRange{13, 21});
    CHECK(corollary_range(5) == GenusRange{7, 10});
    CHECK(corollary_range(8) == GenusRange{16, 28});

    const auto r4 = corollary_range(4);
    CHECK(r4.contains(5));
    CHECK_FALSE(r4.contains(6));
    CHECK(theorem_threshold(4) == 5);

    // excess holds exactly below k(k-1)/2
    for (int k = 4; k <= 12; ++k) {
        const auto range = corollary_range(k);
        for (int g = std::max(range.lo, theorem_threshold(k)); g < range.hi; ++g)
            CHECK(rho_canonical(g, k) > rho_general(2, 2 * g - 2, g, k));
        for (int g = 2; g <= 80; ++g)
            CHECK((rho_canonical(g, k) > rho_general(2, 2 * g - 2, g, k)) == (g < k * (k - 1) / 2));
        CHECK(range.hi == k * (k - 1) / 2);
    }
}

TEST_CASE("ledger of the g=5, k=4 construction")
{
    const auto l = count_dimension(construct_even(5, 4));
    CHECK(l.gluing_params == std::vector<int>{4, 2, 4, 4});
    CHECK(l.gluing_subtotal() == 14);
    CHECK(l.moduli_subtotal() == 1);
    CHECK(l.endo_subtotal() == 14);
    CHECK(l.stability_term == 1);
    CHECK(l.total == 2);
}

TEST_CASE("ledger of the g=7, k=3 construction")
{
    const auto l = count_dimension(construct_odd(7, 3));
    CHECK(l.gluing_params == std::vector<int>{4, 3, 4, 4, 4, 4});
    CHECK(l.gluing_subtotal() == 23);
    CHECK(l.moduli_subtotal() == 4);
    CHECK(l.endo_subtotal() == 16);
    CHECK(l.total == 12);
    CHECK(l.total == rho_canonical(7, 3));
}

TEST_CASE("even closed forms by summation")
{
    for (auto [g, k] : testing::grid()) {
        if (k % 2 != 0)
            continue;
        const int k1 = k / 2;
        const auto l = count_dimension(construct_even(g, k));
        INFO("g=" << g << " k=" << k);
        CHECK(l.gluing_subtotal() == 4 * g - k1 * k1 + k1 - 4);
        CHECK(l.endo_subtotal() == 4 * k1 + 2 * (g - k1));
        CHECK(l.moduli_subtotal() == g - k1 * k1);
        CHECK(l.total == 3 * g - 2 * k1 * k1 - k1 - 3);
        CHECK(l.total
            == l.gluing_subtotal() + l.moduli_subtotal() - l.endo_subtotal() + l.stability_term);
    }
}

TEST_CASE("four-dimensional endomorphisms sit on square indices")
{
    for (auto [g, k] : testing::grid()) {
        const int k1 = k / 2;
        const auto l = count_dimension(construct(g, k));
        for (int i = 1; i <= g; ++i) {
            bool square = false;
            for (int j = 1; j <= k1; ++j)
                square = square || i == j * j;
            CHECK(l.endo_dim[i - 1] == (square ? 4 : 2));
        }
    }
}

TEST_CASE("ledger total equals the expected dimension on the grid")
{
    for (auto [g, k] : testing::grid()) {
        INFO("g=" << g << " k=" << k);
        CHECK(count_dimension(construct(g, k)).total == rho_canonical(g, k));
    }
}

TEST_CASE("ledger refuses invalid input")
{
    try {
        count_dimension(testing::mutate(construct_even(5, 4), 1, 0, true, 1));
        FAIL("expected an error");
    }
    catch (const Error& e) {
        CHECK(e.code() == "unvalidated-series");
    }
    CHECK_THROWS_AS(count_dimension(canonical_limit_series(4)), Error);
}
