// Command-line front end. Subcommands map one-to-one onto library calls;
// all numeric output goes through format_real so runs are byte-reproducible.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selftest/acceptance.hpp"
#include "seriate/seriate.hpp"

namespace {

seriate::RootFamily parse_family(const std::string& s) {
    if (s == "cos-centered") return seriate::RootFamily::cos_centered;
    if (s == "sin") return seriate::RootFamily::sin_family;
    if (s == "cos-uncentered") return seriate::RootFamily::cos_uncentered;
    throw CLI::ValidationError("--family", "unknown family '" + s + "'");
}

seriate::KernelVariant parse_variant(const std::string& s) {
    if (s == "proximity") return seriate::KernelVariant::proximity;
    if (s == "centered") return seriate::KernelVariant::centered_scaled;
    if (s == "uncentered") return seriate::KernelVariant::uncentered;
    if (s == "twin") return seriate::KernelVariant::twin;
    throw CLI::ValidationError("--variant", "unknown variant '" + s + "'");
}

void run_theory(const std::string& family, int count) {
    const auto roots = seriate::solve_roots(parse_family(family), count);
    std::cout << "branch,a,lambda\n";
    for (const seriate::TranscendentalRoot& r : roots)
        std::cout << r.branch << ',' << seriate::format_real(r.a) << ','
                  << seriate::format_real(r.lambda) << '\n';
}

void run_kernel(int n, const std::string& variant, const std::string& emit_what) {
    const seriate::SymMatrix m = seriate::build_kernel(n, parse_variant(variant));
    if (emit_what == "matrix") {
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (std::size_t j = 0; j < m.size(); ++j) {
                if (j) std::cout << ',';
                std::cout << seriate::format_real(m(i, j));
            }
            std::cout << '\n';
        }
        return;
    }
    if (emit_what == "eigen") {
        const seriate::EigenDecomposition eig = seriate::eigendecompose(m);
        std::cout << "index,eigenvalue\n";
        for (std::size_t i = 0; i < eig.values.size(); ++i)
            std::cout << i + 1 << ',' << seriate::format_real(eig.values[i]) << '\n';
        return;
    }
    throw CLI::ValidationError("--emit", "expected 'matrix' or 'eigen', got '" + emit_what + "'");
}

void run_simulate(int n, int bills, std::uint64_t seed, bool two_party, double gap) {
    const seriate::Legislature leg = two_party ? seriate::two_party_legislature(n, gap)
                                               : seriate::uniform_legislature(n);
    seriate::RollCallDataset ds;
    ds.votes = seriate::simulate(leg, bills, seed);
    ds.parties = leg.parties.empty()
                     ? std::vector<std::string>(leg.positions.size(), "U")
                     : leg.parties;
    seriate::write_rollcall(ds, std::cout);
}

void run_analyze(const std::string& input, bool no_square, double min_participation,
                 const std::string& out_dir, bool svg) {
    seriate::RollCallDataset ds = seriate::parse_rollcall(input);
    const std::size_t parsed = ds.votes.legislators();
    if (min_participation > 0.0) ds = seriate::filter_participation(ds, min_participation);
    const seriate::AnalysisResult r = seriate::analyze(ds, !no_square);
    seriate::emit(r, out_dir);
    if (svg)
        seriate::emit_svg(r, (std::filesystem::path(out_dir) / "scatter.svg").string());

    std::cout << "legislators " << r.ids.size() << " kept of " << parsed << '\n';
    std::cout << "eigenvalues";
    for (std::size_t i = 0; i < r.eigenvalues.size() && i < 3; ++i)
        std::cout << ' ' << seriate::format_real(r.eigenvalues[i]);
    std::cout << '\n';
    std::cout << "dropped_negative_mass " << seriate::format_real(r.dropped_negative_mass)
              << '\n';
    if (r.truncated) std::cout << "note: fewer than 3 positive eigenvalues, embedding padded\n";
    std::cout << "wrote eigenvalues.csv embedding.csv order.csv scatter.csv"
              << (svg ? " scatter.svg" : "") << " to " << out_dir << '\n';
}

void run_compare(const std::string& order_file, const std::string& scores_file) {
    const std::vector<std::string> order = seriate::parse_order(order_file);
    const auto scores = seriate::parse_scores(scores_file);
    const seriate::ScoreComparison c = seriate::compare_scores(order, scores);
    std::cout << "spearman=" << seriate::format_real(c.spearman) << '\n';
    std::cout << "kendall=" << seriate::format_real(c.kendall) << '\n';
    std::cout << "joined=" << c.joined << '\n';
    if (c.degenerate_ties) std::cout << "degenerate_ties=true\n";
}

int run_verify(bool fast, const std::string& house_data) {
    selftest::Options opt;
    opt.fast = fast;
    opt.house_data_path = house_data;
    const std::vector<selftest::CriterionResult> rs = selftest::run_acceptance(opt);
    selftest::print_results(std::cout, rs);
    return selftest::all_passed(rs) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral seriation of roll-call style data"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string family;
    int count = 3;
    CLI::App* theory = app.add_subcommand("theory", "roots of the limit eigenvalue equations");
    theory->add_option("--family", family, "cos-centered, sin, or cos-uncentered")->required();
    theory->add_option("--count", count, "number of roots")->check(CLI::PositiveNumber);
    theory->callback([&] { run_theory(family, count); });

    int kn = 0;
    std::string variant;
    std::string emit_what = "matrix";
    CLI::App* kernel = app.add_subcommand("kernel", "sampled kernel matrices");
    kernel->add_option("--n", kn, "grid size")->required()->check(CLI::PositiveNumber);
    kernel->add_option("--variant", variant, "proximity, centered, uncentered, or twin")
        ->required();
    kernel->add_option("--emit", emit_what, "matrix (default) or eigen");
    kernel->callback([&] { run_kernel(kn, variant, emit_what); });

    int sn = 0, bills = 0;
    std::uint64_t seed = 0;
    bool two_party = false;
    double gap = 0.5;
    CLI::App* simulate = app.add_subcommand("simulate", "draw cut-point votes, CSV to stdout");
    simulate->add_option("--n", sn, "legislators (per party with --two-party)")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--bills", bills, "number of bills")->required()->check(
        CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "RNG seed")->required();
    simulate->add_flag("--two-party", two_party, "two separated blocks instead of a uniform grid");
    simulate->add_option("--gap", gap, "separation between the blocks (with --two-party)");
    simulate->callback([&] { run_simulate(sn, bills, seed, two_party, gap); });

    std::string input, out_dir;
    bool no_square = false, svg = false;
    double min_participation = 0.0;
    CLI::App* analyze = app.add_subcommand("analyze", "embed and order a vote file");
    analyze->add_option("--input", input, "vote CSV")->required();
    analyze->add_flag("--no-square", no_square, "embed the proximities without squaring");
    analyze->add_option("--min-participation", min_participation,
                        "drop legislators voting on less than this fraction");
    analyze->add_option("--out", out_dir, "output directory")->required();
    analyze->add_flag("--svg", svg, "also render the 2-D projection");
    analyze->callback(
        [&] { run_analyze(input, no_square, min_participation, out_dir, svg); });

    std::string order_file, scores_file;
    CLI::App* compare = app.add_subcommand("compare", "rank correlations against a score file");
    compare->add_option("--order", order_file, "order.csv from analyze")->required();
    compare->add_option("--scores", scores_file, "legislator_id,score CSV")->required();
    compare->callback([&] { run_compare(order_file, scores_file); });

    bool fast = false;
    std::string house_data;
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance checklist");
    verify->add_flag("--fast", fast, "skip the long-running checks (reported as SKIP)");
    verify->add_option("--house-data", house_data, "vote CSV for the conditional dataset check");
    verify->callback([&] { exit_code = run_verify(fast, house_data); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
