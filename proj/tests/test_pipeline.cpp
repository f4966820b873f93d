#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "seriate/pipeline.hpp"
#include "seriate/roots.hpp"

using namespace seriate;

namespace {

Catch::Approx near(double v, double m) { return Catch::Approx(v).margin(m).epsilon(0.0); }

double rank_alignment(const std::vector<std::size_t>& order_slice) {
    std::vector<double> xs, ys;
    for (std::size_t p = 0; p < order_slice.size(); ++p) {
        xs.push_back(static_cast<double>(p));
        ys.push_back(static_cast<double>(order_slice[p]));
    }
    return kendall_tau(xs, ys);
}

std::size_t longest_incremental_run(const std::vector<std::size_t>& seq) {
    std::size_t best = seq.empty() ? 0 : 1, cur = 1;
    for (std::size_t p = 1; p < seq.size(); ++p) {
        cur = seq[p] == seq[p - 1] + 1 ? cur + 1 : 1;
        best = std::max(best, cur);
    }
    return best;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::size_t line_count(const std::string& s) {
    std::size_t c = 0;
    for (char ch : s)
        if (ch == '\n') ++c;
    return c;
}

} // namespace

TEST_CASE("ordering recovers the twin construction up to the sine fold") {
    const int n = 50;
    const TwinEigenfunctions t = twin_theory(n);
    Matrix coords(2 * n, 3);
    for (std::size_t i = 0; i < 2 * static_cast<std::size_t>(n); ++i) {
        coords(i, 0) = t.separator[i];
        coords(i, 1) = t.first_block[i];
        coords(i, 2) = t.second_block[i];
    }
    const Ordering o = order_legislators(coords);
    REQUIRE(o.order.size() == 100);

    for (std::size_t i = 0; i < 50; ++i) CHECK(o.group[i] == 1);
    for (std::size_t i = 50; i < 100; ++i) CHECK(o.group[i] == 2);
    const std::vector<std::size_t> g1(o.order.begin(), o.order.begin() + 50);
    const std::vector<std::size_t> g2(o.order.begin() + 50, o.order.end());
    for (std::size_t i : g1) CHECK(i < 50);
    for (std::size_t i : g2) CHECK(i >= 50);

    // the sine eigenfunction folds near both block edges; the interior is
    // recovered verbatim and the overall agreement stays high
    CHECK(rank_alignment(g1) >= 0.95);
    CHECK(rank_alignment(g2) >= 0.95);
    CHECK(longest_incremental_run(g1) >= 30);
    CHECK(longest_incremental_run(g2) >= 30);

    // plumbing check: within each group the order is exactly the stable sort
    // by the sorting coordinate
    std::vector<std::size_t> expect(50);
    std::iota(expect.begin(), expect.end(), 0);
    std::stable_sort(expect.begin(), expect.end(),
                     [&](std::size_t a, std::size_t b) { return coords(a, 1) < coords(b, 1); });
    CHECK(g1 == expect);
}

TEST_CASE("single-signed first coordinate yields one group") {
    Matrix coords(4, 3);
    const double c1[4] = {0.3, 0.1, 0.4, 0.2};
    const double c2[4] = {0.5, -0.5, 0.25, -0.25};
    for (std::size_t i = 0; i < 4; ++i) {
        coords(i, 0) = c1[i];
        coords(i, 1) = c2[i];
        coords(i, 2) = 0.0;
    }
    const Ordering o = order_legislators(coords);
    CHECK(o.group == std::vector<int>{1, 1, 1, 1});
    CHECK(o.order == std::vector<std::size_t>{1, 3, 2, 0});
}

TEST_CASE("zero first coordinates adopt the side of the nearest nonzero") {
    Matrix coords(4, 3);
    const double c1[4] = {0.5, 0.0, -0.5, 0.1};
    const double c2[4] = {1.0, 2.0, 0.5, 3.0};
    const double c3[4] = {0.0, 0.0, 0.7, 0.0};
    for (std::size_t i = 0; i < 4; ++i) {
        coords(i, 0) = c1[i];
        coords(i, 1) = c2[i];
        coords(i, 2) = c3[i];
    }
    const Ordering o = order_legislators(coords);
    // index 1 joins the positive side (nearest nonzero is +0.1), so the
    // positive side holds the larger second-coordinate norm and comes first
    CHECK(o.group == std::vector<int>{1, 1, 2, 1});
    CHECK(o.order == std::vector<std::size_t>{0, 1, 3, 2});
}

TEST_CASE("ordering under column sign flips") {
    const int n = 20;
    const TwinEigenfunctions t = twin_theory(n);
    Matrix coords(2 * n, 3);
    for (std::size_t i = 0; i < 2 * static_cast<std::size_t>(n); ++i) {
        coords(i, 0) = t.separator[i];
        coords(i, 1) = t.first_block[i];
        coords(i, 2) = t.second_block[i];
    }
    const Ordering base = order_legislators(coords);

    Matrix f1 = coords, f2 = coords, f3 = coords;
    for (std::size_t i = 0; i < coords.rows(); ++i) {
        f1(i, 0) = -coords(i, 0);
        f2(i, 1) = -coords(i, 1);
        f3(i, 2) = -coords(i, 2);
    }

    // flipping the separator relabels nothing: group 1 is still the side
    // carrying the second coordinate's mass
    const Ordering o1 = order_legislators(f1);
    CHECK(o1.group == base.group);
    CHECK(o1.order == base.order);

    // flipping the second coordinate reverses group 1 only
    const Ordering o2 = order_legislators(f2);
    std::vector<std::size_t> want(base.order.begin(), base.order.begin() + n);
    std::reverse(want.begin(), want.end());
    want.insert(want.end(), base.order.begin() + n, base.order.end());
    CHECK(o2.order == want);

    // flipping the third coordinate reverses group 2 only
    const Ordering o3 = order_legislators(f3);
    std::vector<std::size_t> want3(base.order.begin(), base.order.begin() + n);
    std::vector<std::size_t> tail(base.order.begin() + n, base.order.end());
    std::reverse(tail.begin(), tail.end());
    want3.insert(want3.end(), tail.begin(), tail.end());
    CHECK(o3.order == want3);
}

TEST_CASE("order_legislators input validation") {
    CHECK_THROWS_AS(order_legislators(Matrix(0, 3)), std::invalid_argument);
    CHECK_THROWS_AS(order_legislators(Matrix(5, 2)), std::invalid_argument);
}

TEST_CASE("two-party pipeline separates the parties") {
    const Legislature leg = two_party_legislature(100, 0.5);
    RollCallDataset ds;
    ds.votes = simulate(leg, 5000, 1009);
    ds.parties = leg.parties;
    ds.participation.assign(leg.positions.size(), 1.0);
    const AnalysisResult r = analyze(ds, false);

    REQUIRE(r.eigenvalues.size() == 200);
    CHECK(r.eigenvalues[0] / r.eigenvalues[1] >= 3.0);
    CHECK(r.eigenvalues[1] / r.eigenvalues[2] >= 0.8);
    CHECK(r.eigenvalues[1] / r.eigenvalues[2] <= 1.25);

    std::size_t agree = 0;
    for (std::size_t i = 0; i < 200; ++i)
        if ((r.embedding(i, 0) > 0.0) == (ds.parties[i] == "A")) ++agree;
    const double frac = std::max(agree, 200 - agree) / 200.0;
    CHECK(frac >= 0.99);

    std::vector<std::size_t> rank_of(200);
    for (std::size_t p = 0; p < 200; ++p) rank_of[r.order[p]] = p;
    for (const std::string party : {"A", "B"}) {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < 200; ++i)
            if (ds.parties[i] == party) {
                xs.push_back(static_cast<double>(rank_of[i]));
                ys.push_back(leg.positions[i]);
            }
        CHECK(std::abs(kendall_tau(xs, ys)) >= 0.95);
    }

    // every member of one group precedes every member of the other
    for (std::size_t p = 1; p < 200; ++p)
        CHECK(r.group[r.order[p]] >= r.group[r.order[p - 1]]);
}

TEST_CASE("single-population pipeline traces a horseshoe") {
    const Legislature leg = uniform_legislature(100);
    RollCallDataset ds;
    ds.votes = simulate(leg, 5000, 4242);
    ds.parties.assign(100, "U");
    ds.participation.assign(100, 1.0);
    const AnalysisResult r = analyze(ds);

    CHECK(r.eigenvalues[0] > r.eigenvalues[1]);
    CHECK(r.eigenvalues[1] > r.eigenvalues[2]);
    CHECK(r.eigenvalues[2] > 0.0);

    // first coordinate tracks the latent order
    std::vector<double> c1, pos;
    for (std::size_t i = 0; i < 100; ++i) {
        c1.push_back(r.embedding(i, 0));
        pos.push_back(leg.positions[i]);
    }
    CHECK(std::abs(kendall_tau(c1, pos)) >= 0.95);

    // second coordinate bends: same sign at the ends, opposite in the middle
    const double e0 = r.embedding(0, 1), e99 = r.embedding(99, 1), mid = r.embedding(50, 1);
    CHECK(e0 * e99 > 0.0);
    CHECK(e0 * mid < 0.0);
    int sign_changes = 0;
    for (std::size_t i = 1; i < 100; ++i)
        if (r.embedding(i, 1) * r.embedding(i - 1, 1) < 0.0) ++sign_changes;
    CHECK(sign_changes <= 2);
}

TEST_CASE("analyze rejects tiny datasets") {
    std::istringstream in("legislator_id,party,b1\nA,R,Y\nB,D,N\nC,I,Y\n");
    const RollCallDataset d = parse_rollcall(in);
    CHECK_THROWS_AS(analyze(d), std::invalid_argument);
}

TEST_CASE("rank correlation basics") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{10, 20, 30, 40};
    const std::vector<double> yr{40, 30, 20, 10};
    CHECK(kendall_tau(x, y) == 1.0);
    CHECK(kendall_tau(x, yr) == -1.0);
    CHECK(spearman_rho(x, y) == 1.0);
    CHECK(spearman_rho(x, yr) == -1.0);

    const std::vector<double> tied{1, 1, 2, 3};
    CHECK(kendall_tau(tied, y) == near(5.0 / std::sqrt(30.0), 1e-15));
    CHECK(spearman_rho(tied, y) == near(4.5 / std::sqrt(22.5), 1e-15));

    const std::vector<double> flat{7, 7, 7, 7};
    CHECK(kendall_tau(flat, y) == 0.0);
    CHECK(spearman_rho(flat, y) == 0.0);
}

TEST_CASE("score comparison joins on ids") {
    const std::vector<std::string> order{"a", "b", "c", "d"};
    const std::vector<std::pair<std::string, double>> aligned{
        {"a", 1.0}, {"b", 2.0}, {"c", 3.0}, {"d", 4.0}};
    ScoreComparison c = compare_scores(order, aligned);
    CHECK(c.spearman == 1.0);
    CHECK(c.kendall == 1.0);
    CHECK(c.joined == 4);
    CHECK_FALSE(c.degenerate_ties);

    const std::vector<std::pair<std::string, double>> reversed{
        {"a", 4.0}, {"b", 3.0}, {"c", 2.0}, {"d", 1.0}};
    c = compare_scores(order, reversed);
    CHECK(c.spearman == -1.0);
    CHECK(c.kendall == -1.0);

    const std::vector<std::pair<std::string, double>> constant{
        {"a", 5.0}, {"b", 5.0}, {"c", 5.0}};
    c = compare_scores(order, constant);
    CHECK(c.degenerate_ties);
    CHECK(c.spearman == 0.0);
    CHECK(c.kendall == 0.0);
    CHECK(c.joined == 3);

    const std::vector<std::pair<std::string, double>> partial{
        {"b", 1.0}, {"z", 9.0}, {"d", 2.0}, {"b", 100.0}};
    c = compare_scores(order, partial);
    CHECK(c.joined == 2);
    CHECK(c.kendall == 1.0); // first b entry wins the duplicate

    CHECK_THROWS_AS(compare_scores(order, {{"zz", 1.0}}), std::runtime_error);
}

TEST_CASE("score and order files parse strictly") {
    std::istringstream good("legislator_id,score\na,0.5\nb,-1.25\n");
    const auto scores = parse_scores(good);
    REQUIRE(scores.size() == 2);
    CHECK(scores[0].first == "a");
    CHECK(scores[0].second == 0.5);
    CHECK(scores[1].second == -1.25);

    std::istringstream badhead("id,score\na,0.5\n");
    CHECK_THROWS_AS(parse_scores(badhead), ParseError);
    std::istringstream badnum("legislator_id,score\na,abc\n");
    CHECK_THROWS_AS(parse_scores(badnum), ParseError);
    std::istringstream empty("legislator_id,score\n");
    CHECK_THROWS_AS(parse_scores(empty), ParseError);

    std::istringstream order_file("rank,legislator_id,group\n1,b,G1\n2,a,G2\n");
    CHECK(parse_order(order_file) == std::vector<std::string>{"b", "a"});
    std::istringstream badorder("rank,who,group\n1,b,G1\n");
    CHECK_THROWS_AS(parse_order(badorder), ParseError);
}

TEST_CASE("emit writes stable csv artifacts") {
    namespace fs = std::filesystem;
    const Legislature leg = two_party_legislature(3, 0.4);
    RollCallDataset ds;
    ds.votes = simulate(leg, 40, 31415);
    ds.parties = leg.parties;
    ds.participation.assign(6, 1.0);
    const AnalysisResult r = analyze(ds);

    const fs::path dir_a = fs::temp_directory_path() / "seriate_emit_a";
    const fs::path dir_b = fs::temp_directory_path() / "seriate_emit_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    emit(r, dir_a.string());
    emit(r, dir_b.string());

    for (const char* name : {"eigenvalues.csv", "embedding.csv", "order.csv", "scatter.csv"}) {
        const std::string a = slurp(dir_a / name);
        CHECK(a == slurp(dir_b / name));
        CHECK(!a.empty());
    }
    CHECK(line_count(slurp(dir_a / "embedding.csv")) == 7);
    CHECK(line_count(slurp(dir_a / "order.csv")) == 7);
    CHECK(line_count(slurp(dir_a / "eigenvalues.csv")) == 7);

    const std::vector<std::string> order = parse_order((dir_a / "order.csv").string());
    REQUIRE(order.size() == 6);
    for (std::size_t p = 0; p < 6; ++p) CHECK(order[p] == r.ids[r.order[p]]);

    emit_svg(r, (dir_a / "scatter.svg").string());
    const std::string svg = slurp(dir_a / "scatter.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(line_count(svg) == static_cast<std::size_t>(6 + 3));

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}
