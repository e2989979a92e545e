#pragma once

// Grid sweeps over (g, k) producing one CSV row per cell.
//
// Columns, in order:
//   g,k,rho_K,rho_2g2,threshold_ok,corollary_excess,validated,ledger_total,ledger_matches,stability
// Booleans are written 1/0. Cells below the existence threshold are not
// constructed: validated and ledger_matches are 0, ledger_total is empty and
// stability is "-". The k = 3, g = 3 cell reports stability "external".

#include <optional>
#include <string>
#include <vector>

namespace lls {

struct SweepRow {
    int g = 0;
    int k = 0;
    long long rho_canonical = 0;
    long long rho_general = 0;  // rank 2, degree 2g-2
    bool threshold_ok = false;
    bool corollary_excess = false;
    bool validated = false;
    std::optional<int> ledger_total;
    bool ledger_matches = false;
    std::string stability = "-";
};

struct SweepOptions {
    int g_min = 3;
    int g_max = 12;
    int k_min = 2;
    int k_max = 6;
    /// Also emit cells whose expected dimension is negative.
    bool include_negative = false;
    unsigned workers = 1;
};

inline constexpr const char* sweep_csv_header =
    "g,k,rho_K,rho_2g2,threshold_ok,corollary_excess,validated,ledger_total,ledger_matches,stability";

SweepRow sweep_cell(int g, int k);

/// Rows in grid order (g outer, k inner) regardless of worker count.
std::vector<SweepRow> run_sweep(const SweepOptions& options);

std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace lls
