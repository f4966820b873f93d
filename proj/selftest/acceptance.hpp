#pragma once

// The release acceptance checklist. Every criterion prints one PASS/FAIL
// line; numeric tolerances are pinned here and nowhere else. The `fast`
// option skips the long-running criteria outright rather than shrinking
// their parameters, so a green line always means the full check ran.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "selftest/oracles.hpp"
#include "seriate/seriate.hpp"

namespace selftest {

enum class Status { pass, fail, skipped };

struct CriterionResult {
    int id = 0;
    std::string name;
    Status status = Status::fail;
    std::string detail;
};

struct Options {
    bool fast = false;
    std::string house_data_path; // empty: the conditional dataset check is skipped
};

namespace detail {

inline std::string num(double v) { return seriate::format_real(v, 10); }

inline seriate::SymMatrix distance_matrix(const std::vector<std::vector<double>>& pts) {
    const std::size_t n = pts.size();
    seriate::SymMatrix d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < pts[i].size(); ++c) {
                const double diff = pts[i][c] - pts[j][c];
                s += diff * diff;
            }
            d.set(i, j, std::sqrt(s));
        }
    return d;
}

} // namespace detail

inline std::vector<CriterionResult> run_acceptance(const Options& opt) {
    using namespace seriate;
    std::vector<CriterionResult> out;

    auto add = [&](int id, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        try {
            auto [ok, detail] = body();
            r.status = ok ? Status::pass : Status::fail;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.status = Status::fail;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(r));
    };
    auto skip = [&](int id, const std::string& name, const std::string& why) {
        out.push_back({id, name, Status::skipped, why});
    };

    const std::vector<int> grid{50, 100, 200, 400};
    const std::vector<TranscendentalRoot> cc = solve_roots(RootFamily::cos_centered, 3);
    const std::vector<TranscendentalRoot> sf = solve_roots(RootFamily::sin_family, 3);
    const std::vector<TranscendentalRoot> cu = solve_roots(RootFamily::cos_uncentered, 3);

    // 1: max-entry residuals of the closed-form eigenfunctions on the
    //    centered scaled kernel, against (a+4)/(2n) and (a+2)/(2n)
    add(1, "eigenfunction residual bounds", [&]() -> std::pair<bool, std::string> {
        bool ok = true;
        double worst_ratio = 0.0;
        std::string worst_at;
        for (int n : grid)
            for (const auto& fam : {cc, sf})
                for (const TranscendentalRoot& root : fam) {
                    const ResidualReport rep = residual_bound_check(n, root);
                    if (!rep.pass) ok = false;
                    const double ratio = rep.max_residual / rep.bound;
                    if (ratio > worst_ratio) {
                        worst_ratio = ratio;
                        worst_at = "n=" + std::to_string(n) + " a=" + detail::num(root.a);
                    }
                }
        return {ok, "24 residual checks, worst residual/bound=" + detail::num(worst_ratio) +
                        " at " + worst_at};
    });

    // 2: spectrum gap to 1/(1+a^2) within (a+4)/sqrt(n) resp. (a+2)/sqrt(n),
    //    plus the pinned n=400 first-sine gap
    add(2, "eigenvalue gap bounds", [&]() -> std::pair<bool, std::string> {
        bool ok = true;
        double worst_ratio = 0.0;
        double pinned_gap = 0.0;
        for (int n : grid) {
            const EigenDecomposition eig =
                eigendecompose(build_kernel(n, KernelVariant::centered_scaled));
            for (const auto& fam : {cc, sf})
                for (const TranscendentalRoot& root : fam) {
                    const GapReport rep = eigenvalue_gap_check(eig.values, n, root,
                                                               KernelVariant::centered_scaled);
                    if (!rep.pass) ok = false;
                    worst_ratio = std::max(worst_ratio, rep.gap / rep.bound);
                    if (n == 400 && root.family == RootFamily::sin_family && root.branch == 0)
                        pinned_gap = rep.gap;
                }
        }
        if (pinned_gap > 0.005) ok = false;
        return {ok, "worst gap/bound=" + detail::num(worst_ratio) +
                        ", first sine gap at n=400 is " + detail::num(pinned_gap) +
                        " (pin 0.005)"};
    });

    // 3: frozen windows for the first root and eigenvalue of each family
    add(3, "root value windows", [&]() -> std::pair<bool, std::string> {
        struct Window {
            const char* label;
            double a, lambda, a_lo, a_hi, l_lo, l_hi;
        };
        const Window w[] = {
            {"sin", sf[0].a, sf[0].lambda, 3.6725, 3.6745, 0.0688, 0.0692},
            {"cos_centered", cc[0].a, cc[0].lambda, 6.386, 6.388, 0.0238, 0.0240},
            {"cos_uncentered", cu[0].a, cu[0].lambda, 1.306, 1.308, 0.368, 0.370},
        };
        bool ok = true;
        std::string msg;
        for (const Window& x : w) {
            const bool a_ok = x.a > x.a_lo && x.a < x.a_hi;
            const bool l_ok = x.lambda > x.l_lo && x.lambda < x.l_hi;
            if (!a_ok || !l_ok) {
                ok = false;
                if (!msg.empty()) msg += "; ";
                msg += std::string(x.label) + " a=" + detail::num(x.a) +
                       (a_ok ? " in (" : " OUTSIDE (") + detail::num(x.a_lo) + ", " +
                       detail::num(x.a_hi) + "), lambda=" + detail::num(x.lambda) +
                       (l_ok ? " in (" : " OUTSIDE (") + detail::num(x.l_lo) + ", " +
                       detail::num(x.l_hi) + ")";
            }
        }
        if (ok) msg = "all three root/eigenvalue windows hold";
        return {ok, msg};
    });

    // 4: spectrum of the negated scaled two-population matrix at n=200:
    //    top eigenvalue near 0.37, then an exactly repeated pair near 0.069
    if (opt.fast) {
        skip(4, "two-population spectrum", "fast mode: 400x400 eigendecomposition skipped");
    } else {
        add(4, "two-population spectrum", [&]() -> std::pair<bool, std::string> {
            const int n = 200;
            const SymMatrix m =
                build_kernel(n, KernelVariant::twin).scaled(-1.0 / (2.0 * n));
            const EigenDecomposition eig = eigendecompose(m);
            const double l1 = eig.values[0], l2 = eig.values[1], l3 = eig.values[2];
            const double spread = std::abs(l2 - l3);
            const bool ok = std::abs(l1 - 0.37) <= 0.02 && std::abs(l2 - 0.069) <= 0.02 &&
                            std::abs(l3 - 0.069) <= 0.02 && spread <= 1e-6;
            return {ok, "l1=" + detail::num(l1) + ", pair=(" + detail::num(l2) + ", " +
                            detail::num(l3) + "), spread=" + detail::num(spread)};
        });
    }

    // 5: closed-form trig-exponential integrals against kink-split Simpson
    add(5, "trig-exponential quadrature", [&]() -> std::pair<bool, std::string> {
        const double pi = 3.14159265358979323846;
        double worst = 0.0;
        for (double a : {pi, 2.0 * pi, 5.5})
            for (double c : {0.0, 0.3, 0.5, 1.0})
                for (TrigMode mode : {TrigMode::cos, TrigMode::sin}) {
                    const double closed = trig_exp_integral(a, c, mode);
                    const double quad = oracles::integrate_with_kink(
                        [&](double x) {
                            const double t = a * (x - 0.5);
                            return std::exp(-std::abs(x - c)) *
                                   (mode == TrigMode::cos ? std::cos(t) : std::sin(t));
                        },
                        c);
                    worst = std::max(worst, std::abs(closed - quad));
                }
        return {worst <= 1e-8, "24 integrals, worst |closed - quadrature|=" + detail::num(worst)};
    });

    // 6: the tight two-by-two certificate instance: gap exactly 0,
    //    eigenvector distance exactly 0.2
    add(6, "perturbation certificate instance", [&]() -> std::pair<bool, std::string> {
        SymMatrix a(2);
        a.set(0, 0, 1.0);
        a.set(1, 1, 1.5);
        const std::vector<double> f{std::sqrt(0.96), 0.2};
        const PerturbationCertificate cert = certify_near_eigenpair(a, f, 1.0);
        const bool ok = cert.gap_to_input == 0.0 && cert.eigenvector_distance.has_value() &&
                        std::abs(*cert.eigenvector_distance - 0.2) <= 1e-15;
        return {ok, "gap=" + detail::num(cert.gap_to_input) + ", distance=" +
                        (cert.eigenvector_distance
                             ? detail::num(*cert.eigenvector_distance)
                             : std::string("absent")) +
                        ", residual=" + detail::num(cert.residual)};
    });

    // 7: concentration of empirical distances at the prescribed bill count
    if (opt.fast) {
        skip(7, "distance concentration", "fast mode: 200-trial simulation skipped");
    } else {
        add(7, "distance concentration", [&]() -> std::pair<bool, std::string> {
            const Legislature leg = uniform_legislature(20);
            const ConcentrationReport rep =
                concentration_trial(leg, 0.1, 200, /*seed*/ 1007);
            const bool ok = rep.bills == 415 && rep.success_fraction >= 0.9;
            return {ok, "m=" + std::to_string(rep.bills) + ", success fraction " +
                            detail::num(rep.success_fraction) + " over " +
                            std::to_string(rep.trials) + " trials (floor 0.9)"};
        });
    }

    // 8: per-pair disagreement frequency sits within 4 binomial standard
    //    errors of the position gap
    add(8, "pairwise disagreement law", [&]() -> std::pair<bool, std::string> {
        const Legislature leg = uniform_legislature(20);
        const int m = 100000;
        const VoteMatrix votes = simulate(leg, m, /*seed*/ 1008);
        const SymMatrix dh = empirical_distance(votes);
        const std::pair<int, int> pairs[] = {{0, 19}, {0, 1},  {9, 10}, {0, 10}, {4, 14},
                                             {2, 17}, {5, 6},  {7, 15}, {3, 11}, {12, 19}};
        bool ok = true;
        double worst = 0.0;
        for (const auto& [i, j] : pairs) {
            const double d = std::abs(leg.positions[static_cast<std::size_t>(i)] -
                                      leg.positions[static_cast<std::size_t>(j)]);
            const double tol = 4.0 * std::sqrt(d * (1.0 - d) / m);
            const double dev = std::abs(dh(static_cast<std::size_t>(i),
                                           static_cast<std::size_t>(j)) -
                                        d);
            worst = std::max(worst, tol > 0.0 ? dev / tol : 0.0);
            if (dev > tol) ok = false;
        }
        return {ok, "10 pairs at m=100000, worst deviation/(4 sigma)=" + detail::num(worst)};
    });

    // 9: end-to-end shape on simulated two-party votes. The proximity matrix
    //    is embedded unsquared here; the squared path concentrates too much
    //    mass in the first coordinate to keep the second and third comparable.
    if (opt.fast) {
        skip(9, "two-party pipeline shape", "fast mode: 200x5000 simulation skipped");
    } else {
        add(9, "two-party pipeline shape", [&]() -> std::pair<bool, std::string> {
            const Legislature leg = two_party_legislature(100, 0.5);
            RollCallDataset ds;
            ds.votes = simulate(leg, 5000, /*seed*/ 1009);
            ds.parties = leg.parties;
            ds.participation.assign(leg.positions.size(), 1.0);
            const AnalysisResult r = analyze(ds, /*square_first=*/false);

            const double r12 = r.eigenvalues[0] / r.eigenvalues[1];
            const double r23 = r.eigenvalues[1] / r.eigenvalues[2];

            const std::size_t n = r.ids.size();
            std::size_t agree = 0;
            for (std::size_t i = 0; i < n; ++i)
                if ((r.embedding(i, 0) > 0.0) == (ds.parties[i] == "A")) ++agree;
            const double classification =
                std::max(agree, n - agree) / static_cast<double>(n);

            std::vector<std::size_t> rank_of(n);
            for (std::size_t pos = 0; pos < n; ++pos) rank_of[r.order[pos]] = pos;
            double worst_tau = 1.0;
            for (const std::string party : {"A", "B"}) {
                std::vector<double> xs, ys;
                for (std::size_t i = 0; i < n; ++i)
                    if (ds.parties[i] == party) {
                        xs.push_back(static_cast<double>(rank_of[i]));
                        ys.push_back(leg.positions[i]);
                    }
                worst_tau = std::min(worst_tau, std::abs(kendall_tau(xs, ys)));
            }

            const bool ok = r12 >= 3.0 && r23 >= 0.8 && r23 <= 1.25 &&
                            classification >= 0.99 && worst_tau >= 0.95;
            return {ok, "l1/l2=" + detail::num(r12) + ", l2/l3=" + detail::num(r23) +
                            ", party split by first coordinate " + detail::num(classification) +
                            ", within-party |tau| >= " + detail::num(worst_tau) +
                            " (unsquared proximity path)"};
        });
    }

    // 10: conditional check against a user-supplied house vote file
    if (opt.house_data_path.empty()) {
        skip(10, "house dataset eigenvalue ratios",
             "no dataset supplied (--house-data FILE); the other criteria constitute acceptance");
    } else {
        add(10, "house dataset eigenvalue ratios", [&]() -> std::pair<bool, std::string> {
            RollCallDataset ds = parse_rollcall(opt.house_data_path);
            ds = filter_participation(ds, 0.9);
            const AnalysisResult r = analyze(ds, /*square_first=*/true);
            const double r21 = r.eigenvalues[1] / r.eigenvalues[0];
            const double r31 = r.eigenvalues[2] / r.eigenvalues[0];
            const double want21 = 0.00764 / 0.13192;
            const double want31 = 0.00634 / 0.13192;
            const bool ok = std::abs(r21 - want21) <= 0.05 * want21 &&
                            std::abs(r31 - want31) <= 0.05 * want31;
            return {ok, "kept " + std::to_string(r.ids.size()) + " legislators; l2/l1=" +
                            detail::num(r21) + " (want " + detail::num(want21) + "), l3/l1=" +
                            detail::num(r31) + " (want " + detail::num(want31) + "), 5% rel"};
        });
    }

    // 11: classical scaling reconstructs Euclidean data and strain is
    //     monotone in the embedding dimension
    add(11, "Euclidean MDS exactness", [&]() -> std::pair<bool, std::string> {
        const std::vector<std::vector<std::vector<double>>> sets = {
            {{0.12, 0.94}, {0.71, 0.33}, {0.45, 0.58}, {0.89, 0.17}, {0.26, 0.61}},
            {{0.31, 0.75, 0.12},
             {0.84, 0.22, 0.56},
             {0.05, 0.48, 0.93},
             {0.67, 0.91, 0.34},
             {0.29, 0.13, 0.77},
             {0.52, 0.66, 0.08},
             {0.96, 0.41, 0.63},
             {0.18, 0.85, 0.49}},
        };
        bool ok = true;
        double worst_rec = 0.0;
        for (const auto& pts : sets) {
            const std::size_t n = pts.size();
            const SymMatrix d = detail::distance_matrix(pts);
            const Embedding full = classical_mds(d, n, /*square_first=*/true);
            const SymMatrix rec = reconstructed_distances(full);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    worst_rec = std::max(worst_rec, std::abs(rec(i, j) - d(i, j)));

            SymMatrix d2(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) d2.set(i, j, d(i, j) * d(i, j));
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t k = 1; k <= n; ++k) {
                const double s = strain(d2, classical_mds(d, k, true));
                if (s > prev + 1e-9) ok = false;
                prev = s;
            }
        }
        if (worst_rec > 1e-9) ok = false;
        return {ok, "worst distance reconstruction error " + detail::num(worst_rec) +
                        " (cap 1e-9), strain non-increasing in k on both point sets"};
    });

    return out;
}

inline bool all_passed(const std::vector<CriterionResult>& rs) {
    for (const CriterionResult& r : rs)
        if (r.status == Status::fail) return false;
    return true;
}

inline void print_results(std::ostream& os, const std::vector<CriterionResult>& rs) {
    int pass = 0, fail = 0, skipped = 0;
    for (const CriterionResult& r : rs) {
        const char* word = r.status == Status::pass ? "PASS"
                           : r.status == Status::fail ? "FAIL"
                                                      : "SKIP";
        (r.status == Status::pass ? pass : r.status == Status::fail ? fail : skipped)++;
        os << '[' << std::setw(2) << r.id << "] " << word << "  " << r.name;
        if (!r.detail.empty()) os << "  (" << r.detail << ')';
        os << '\n';
    }
    os << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
}

} // namespace selftest
