#include "lls/sweep.hpp"

#include <atomic>
#include <sstream>
#include <thread>
#include <utility>

#include "lls/construct.hpp"
#include "lls/error.hpp"
#include "lls/ledger.hpp"
#include "lls/stability.hpp"

namespace lls {

SweepRow sweep_cell(int g, int k)
{
    SweepRow row;
    row.g = g;
    row.k = k;
    row.rho_canonical = rho_canonical(g, k);
    row.rho_general = rho_general(2, 2 * g - 2, g, k);
    row.threshold_ok = g >= theorem_threshold(k);
    row.corollary_excess = row.threshold_ok && corollary_range(k).contains(g);
    if (!row.threshold_ok)
        return row;

    const LimitSeries series = construct(g, k);
    row.validated = validate_all(series).all_passed();
    if (!row.validated)
        return row;
    const auto ledger = count_dimension(series);
    row.ledger_total = ledger.total;
    row.ledger_matches = ledger.total == row.rho_canonical;
    if (needs_external_stable_model(g, k))
        row.stability = "external";
    else
        row.stability = to_string(check_stable(series).verdict);
    return row;
}

std::vector<SweepRow> run_sweep(const SweepOptions& options)
{
    if (options.g_min < 2 || options.g_max < options.g_min || options.k_min < 2 || options.k_max < options.k_min)
        throw Error("invalid-argument", "sweep needs 2 <= g-min <= g-max and 2 <= k-min <= k-max");
    std::vector<std::pair<int, int>> cells;
    for (int g = options.g_min; g <= options.g_max; ++g)
        for (int k = options.k_min; k <= options.k_max; ++k)
            if (options.include_negative || rho_canonical(g, k) >= 0)
                cells.emplace_back(g, k);

    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t c; (c = next.fetch_add(1)) < cells.size();)
            rows[c] = sweep_cell(cells[c].first, cells[c].second);
    };
    if (options.workers <= 1) {
        work();
    }
    else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < options.workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << sweep_csv_header << '\n';
    for (const auto& r : rows) {
        out << r.g << ',' << r.k << ',' << r.rho_canonical << ',' << r.rho_general << ',' << int(r.threshold_ok) << ','
            << int(r.corollary_excess) << ',' << int(r.validated) << ',';
        if (r.ledger_total)
            out << *r.ledger_total;
        out << ',' << int(r.ledger_matches) << ',' << r.stability << '\n';
    }
    return out.str();
}

}  // namespace lls
