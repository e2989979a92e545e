// lls: construct, verify and count limit linear series of rank 2 with
// canonical determinant on chains of elliptic curves.
//
// Exit codes
//   0  all checks passed
//   1  usage or I/O error
//   2  a validator failed
//   3  (g, k) below the existence threshold (construct without --force)
//   4  malformed series file

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lls/construct.hpp"
#include "lls/ledger.hpp"
#include "lls/search.hpp"
#include "lls/series_io.hpp"
#include "lls/stability.hpp"
#include "lls/sweep.hpp"

namespace {

enum ExitCode : int { kPass = 0, kUsage = 1, kValidation = 2, kThreshold = 3, kParse = 4 };

void print_report(std::ostream& out, const lls::ValidationReport& report)
{
    for (const auto& check : report.checks) {
        out << (check.passed ? "  pass  " : "  FAIL  ") << check.name << '\n';
        for (const auto& d : check.diagnostics)
            out << "        " << d << '\n';
    }
    for (const auto& note : report.notes)
        out << "  note  " << note << '\n';
    if (report.all_passed())
        out << "all checks passed\n";
    else {
        out << "failed:";
        for (const auto& name : report.failed())
            out << ' ' << name;
        out << '\n';
    }
}

lls::LimitSeries load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw lls::Error("io", "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return lls::parse_series(buf.str());
}

int cmd_construct(int g, int k, const std::string& out_path, const std::string& format, bool force)
{
    lls::LimitSeries series;
    try {
        series = lls::construct(g, k, {force});
    }
    catch (const lls::Error& e) {
        if (e.code() == "below-theorem-threshold") {
            std::cerr << "k=" << k << " requires g ≥ " << lls::theorem_threshold(k) << " (use --force to explore)\n";
            return kThreshold;
        }
        throw;
    }
    const auto text = lls::serialize(series, format == "structured" ? lls::SeriesFormat::Structured : lls::SeriesFormat::Text);
    std::ostream* summary = &std::cout;
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        summary = &std::cerr;
    }
    else {
        std::ofstream out(out_path);
        if (!out)
            throw lls::Error("io", "cannot write " + out_path);
        out << text;
        *summary << "wrote " << out_path << '\n';
    }
    const auto report = lls::validate_all(series);
    print_report(*summary, report);
    if (lls::needs_external_stable_model(g, k))
        *summary << "note: the stable bundle for g=3, k=3 is the dual evaluation-kernel bundle, not constructed here\n";
    return report.all_passed() ? kPass : kValidation;
}

int cmd_verify(const std::string& path)
{
    const auto report = lls::validate_all(load(path));
    print_report(std::cout, report);
    return report.all_passed() ? kPass : kValidation;
}

int cmd_dim(const std::string& path)
{
    const auto series = load(path);
    const auto report = lls::validate_all(series);
    if (!report.all_passed()) {
        print_report(std::cout, report);
        return kValidation;
    }
    const auto ledger = lls::count_dimension(series);
    std::cout << "gluings";
    for (std::size_t i = 0; i < ledger.gluing_params.size(); ++i)
        std::cout << " C" << i + 1 << "-C" << i + 2 << ":" << ledger.gluing_params[i];
    std::cout << "\n  subtotal " << ledger.gluing_subtotal() << "\nmoduli";
    for (std::size_t i = 0; i < ledger.moduli.size(); ++i)
        std::cout << " C" << i + 1 << ":" << ledger.moduli[i];
    std::cout << "\n  subtotal " << ledger.moduli_subtotal() << "\nendomorphisms";
    for (std::size_t i = 0; i < ledger.endo_dim.size(); ++i)
        std::cout << " C" << i + 1 << ":" << ledger.endo_dim[i];
    std::cout << "\n  subtotal " << ledger.endo_subtotal() << "\nstability +" << ledger.stability_term << '\n';
    const auto rho = lls::rho_canonical(series.chain.genus(), series.dimension);
    std::cout << "total " << ledger.total << (ledger.total == rho ? " = " : " != ") << "rho " << rho << '\n';

    const auto stability = lls::check_stable(series);
    std::cout << "stability " << lls::to_string(stability.verdict) << '\n';
    for (const auto& chain : stability.chains)
        std::cout << "  " << lls::describe(chain) << '\n';
    return kPass;
}

int cmd_search(const lls::SearchSpace& space, std::size_t max, unsigned workers, int cap, bool slow, bool with_construction)
{
    lls::SearchOptions options;
    options.limit = max;
    options.workers = workers;
    options.prune = !slow;
    if (cap > 0)
        options.cap = cap;
    if (with_construction)
        options.target = space.rank == 1 ? lls::canonical_limit_series(space.genus)
                                         : lls::construct(space.genus, space.dimension);
    const auto report = lls::enumerate(space, options);
    std::cout << "combinatorial solutions " << report.count << '\n'
              << "nodes expanded " << report.nodes_expanded << '\n'
              << "pruned by node condition " << report.pruned_by_node_condition << '\n'
              << "tables rejected " << report.tables_rejected << '\n'
              << "gluings rejected " << report.rejected_gluings << '\n';
    if (report.target_found)
        std::cout << "construction found " << (*report.target_found ? "yes" : "no") << '\n';
    std::cout << "wall time " << report.wall_seconds << " s\n";
    for (std::size_t i = 0; i < report.solutions.size(); ++i)
        std::cout << "--- solution " << i + 1 << '\n' << lls::serialize(report.solutions[i]);
    return with_construction && !*report.target_found ? kValidation : kPass;
}

int cmd_sweep(const lls::SweepOptions& options, const std::string& out_path)
{
    const auto csv = lls::to_csv(lls::run_sweep(options));
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
        return kPass;
    }
    std::ofstream out(out_path);
    if (!out)
        throw lls::Error("io", "cannot write " + out_path);
    out << csv;
    return kPass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Limit linear series of rank 2 with canonical determinant on elliptic chains"};
    app.require_subcommand(1);

    int g = 0, k = 0, r = 2, prefix = 0, cap = 0;
    std::string out_path, format = "text", file;
    bool force = false, slow = false, with_construction = false;
    std::size_t max = 10;
    unsigned workers = 1;
    lls::SweepOptions sweep;

    auto* construct = app.add_subcommand("construct", "emit the explicit series for (g, k)");
    construct->add_option("--g", g, "genus")->required();
    construct->add_option("--k", k, "number of sections")->required();
    construct->add_option("--out", out_path, "output file (default stdout)");
    construct->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    construct->add_flag("--force", force, "generate below the existence threshold");

    auto* verify = app.add_subcommand("verify", "validate a series file");
    verify->add_option("file", file)->required();

    auto* dim = app.add_subcommand("dim", "itemized parameter count and stability of a series file");
    dim->add_option("file", file)->required();

    auto* search = app.add_subcommand("search", "enumerate combinatorial series for small (g, k)");
    search->add_option("--g", g)->required();
    search->add_option("--k", k)->required();
    search->add_option("--r", r, "rank (1 or 2)");
    search->add_option("--max", max, "solutions to print");
    search->add_option("--prefix", prefix, "search only the first components");
    search->add_option("--workers", workers);
    search->add_option("--cap", cap, "maximal genus (default 8 in rank 2, 10 in rank 1, or LLS_SEARCH_CAP)");
    search->add_flag("--slow", slow, "disable pruning");
    search->add_flag("--contains-construction", with_construction, "check the explicit series is found");

    auto* sweep_cmd = app.add_subcommand("sweep", "CSV report over a (g, k) grid");
    sweep_cmd->add_option("--g-min", sweep.g_min);
    sweep_cmd->add_option("--g-max", sweep.g_max);
    sweep_cmd->add_option("--k-min", sweep.k_min);
    sweep_cmd->add_option("--k-max", sweep.k_max);
    sweep_cmd->add_option("--workers", sweep.workers);
    sweep_cmd->add_flag("--all-cells", sweep.include_negative, "include cells with negative expected dimension");
    sweep_cmd->add_option("--out", out_path, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*construct)
            return cmd_construct(g, k, out_path, format, force);
        if (*verify)
            return cmd_verify(file);
        if (*dim)
            return cmd_dim(file);
        if (*search)
            return cmd_search({g, r, k, prefix}, max, workers, cap, slow, with_construction);
        if (*sweep_cmd)
            return cmd_sweep(sweep, out_path);
    }
    catch (const lls::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    }
    catch (const lls::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == "below-theorem-threshold" ? kThreshold : kUsage;
    }
    return kUsage;
}
