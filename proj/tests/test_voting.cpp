#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "seriate/voting.hpp"

using namespace seriate;

namespace {
Catch::Approx near(double v, double m) { return Catch::Approx(v).margin(m).epsilon(0.0); }
} // namespace

TEST_CASE("SplitMix64 produces the reference stream") {
    SplitMix64 g(1234567);
    CHECK(g.next() == 6457827717110365317ULL);
    CHECK(g.next() == 3203168211198807973ULL);
    CHECK(g.next() == 9817491932198370423ULL);

    SplitMix64 u(42);
    CHECK(u.uniform() == near(0.7415648787718233, 1e-16));
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("substreams differ by index and stay reproducible") {
    CHECK(substream(42, 0) != substream(42, 1));
    CHECK(substream(42, 0) == substream(42, 0));
    CHECK(substream(7, 3) != substream(8, 3));
}

TEST_CASE("uniform legislature sits on the i/n grid") {
    const Legislature l = uniform_legislature(4);
    REQUIRE(l.positions == std::vector<double>{0.25, 0.5, 0.75, 1.0});
    CHECK(l.parties.empty());
    CHECK_THROWS_AS(uniform_legislature(0), std::invalid_argument);
}

TEST_CASE("two-party legislature spacing") {
    const Legislature l = two_party_legislature(3, 0.2);
    REQUIRE(l.positions == std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
    REQUIRE(l.parties ==
            std::vector<std::string>{"A", "A", "A", "B", "B", "B"});

    const Legislature tight = two_party_legislature(1, 1.0);
    REQUIRE(tight.positions == std::vector<double>{0.0, 1.0});

    CHECK_THROWS_AS(two_party_legislature(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(two_party_legislature(2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(two_party_legislature(0, 0.5), std::invalid_argument);
}

TEST_CASE("endpoint legislators always disagree") {
    Legislature l;
    l.positions = {0.0, 1.0};
    const VoteMatrix v = simulate(l, 500, 11);
    const SymMatrix d = empirical_distance(v);
    CHECK(d(0, 1) == 1.0);
    CHECK(d(0, 0) == 0.0);
}

TEST_CASE("identical positions never disagree") {
    Legislature l;
    l.positions = {0.4, 0.4};
    const VoteMatrix v = simulate(l, 500, 12);
    CHECK(empirical_distance(v)(0, 1) == 0.0);
}

TEST_CASE("disagreement frequency matches the position gap") {
    Legislature l;
    l.positions = {0.25, 0.75};
    const VoteMatrix v = simulate(l, 100000, 13);
    CHECK(empirical_distance(v)(0, 1) == near(0.5, 0.005));
}

TEST_CASE("abstention contributes a half disagreement") {
    VoteMatrix v;
    v.legislator_ids = {"a", "b"};
    v.bill_ids = {"b1", "b2"};
    v.codes = {0, +1, +1, +1};
    const SymMatrix d = empirical_distance(v);
    CHECK(d(0, 1) == 0.25);
}

TEST_CASE("fully opposed rows are at distance one") {
    VoteMatrix v;
    v.legislator_ids = {"a", "b"};
    v.bill_ids = {"b1", "b2", "b3"};
    v.codes = {+1, +1, +1, -1, -1, -1};
    CHECK(empirical_distance(v)(0, 1) == 1.0);
}

TEST_CASE("flipping every polarity leaves distances unchanged") {
    const Legislature l = uniform_legislature(6);
    BillSet bills = draw_bills(300, 555);
    const VoteMatrix a = cast_votes(l, bills);
    for (auto& p : bills.polarities) p ^= 1u;
    const VoteMatrix b = cast_votes(l, bills);
    bool any_vote_changed = false;
    const SymMatrix da = empirical_distance(a);
    const SymMatrix db = empirical_distance(b);
    for (std::size_t i = 0; i < a.legislators(); ++i) {
        for (std::size_t k = 0; k < a.bills(); ++k)
            if (a.code(i, k) != b.code(i, k)) any_vote_changed = true;
        for (std::size_t j = 0; j < a.legislators(); ++j) CHECK(da(i, j) == db(i, j));
    }
    CHECK(any_vote_changed);
}

TEST_CASE("simulation is deterministic in the seed") {
    const Legislature l = uniform_legislature(5);
    const VoteMatrix a = simulate(l, 200, 99);
    const VoteMatrix b = simulate(l, 200, 99);
    const VoteMatrix c = simulate(l, 200, 100);
    CHECK(a.codes == b.codes);
    CHECK(a.codes != c.codes);
}

TEST_CASE("empirical distances converge along nested bill draws") {
    Legislature l;
    l.positions = {0.2, 0.5, 0.9};
    double prev = 1.0;
    for (int m : {1000, 10000, 100000}) {
        const VoteMatrix v = simulate(l, m, 2026);
        const SymMatrix d = empirical_distance(v);
        double worst = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                worst = std::max(worst,
                                 std::abs(d(i, j) - std::abs(l.positions[i] - l.positions[j])));
        CHECK(worst <= prev);
        prev = worst;
    }
    CHECK(prev <= 0.02);
}

TEST_CASE("required bill counts") {
    CHECK(required_bills(401, 0.05) == 2997);
    CHECK(required_bills(20, 0.1) == 415);
    CHECK(required_bills(100, 0.1) <= required_bills(401, 0.1));
    CHECK_THROWS_AS(required_bills(1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(required_bills(10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(required_bills(10, 1.0), std::invalid_argument);
}

TEST_CASE("concentration in the loose regime") {
    const Legislature l = uniform_legislature(5);
    const ConcentrationReport rep = concentration_trial(l, 0.5, 50, 424242);
    CHECK(rep.bills == required_bills(5, 0.5));
    CHECK(rep.trials == 50);
    CHECK(rep.success_fraction == 1.0);
}

TEST_CASE("single concentration trial is reproducible") {
    const Legislature l = uniform_legislature(6);
    const ConcentrationReport a = concentration_trial(l, 0.3, 1, 5);
    const ConcentrationReport b = concentration_trial(l, 0.3, 1, 5);
    CHECK(a.successes == b.successes);
    CHECK(a.success_fraction == b.success_fraction);
}

TEST_CASE("cross-party distances dominate within-party distances") {
    const Legislature l = two_party_legislature(5, 0.5);
    const VoteMatrix v = simulate(l, 5000, 321);
    const SymMatrix d = empirical_distance(v);
    double max_within = 0.0, min_cross = 1.0;
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = i + 1; j < 10; ++j) {
            if (l.parties[i] == l.parties[j])
                max_within = std::max(max_within, d(i, j));
            else
                min_cross = std::min(min_cross, d(i, j));
        }
    CHECK(min_cross > max_within);
}

TEST_CASE("vote codes stay in range and ids are padded") {
    const Legislature l = uniform_legislature(12);
    const VoteMatrix v = simulate(l, 30, 8);
    REQUIRE(v.legislators() == 12);
    REQUIRE(v.bills() == 30);
    CHECK(v.legislator_ids.front() == "L01");
    CHECK(v.legislator_ids.back() == "L12");
    for (std::int8_t c : v.codes) CHECK((c == 1 || c == -1));
    CHECK(v.value(0, 0) == 0.5 * v.code(0, 0));
}
