#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "seriate/matrix.hpp"

namespace seriate {

// SplitMix64: tiny, portable, splittable. Every randomized routine in this
// library derives per-item generators from one user seed via substream(), so
// results are reproducible bit for bit and independent of evaluation order.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; } // [0,1)
};

inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return g.next();
}

struct Legislature {
    std::vector<double> positions;    // ascending, in [0,1]
    std::vector<std::string> parties; // empty, or one label per position
};

inline Legislature uniform_legislature(int n) {
    if (n < 1) throw std::invalid_argument("uniform_legislature: n must be positive");
    Legislature l;
    l.positions.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        l.positions[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / n;
    return l;
}

// Two blocks of equally spaced positions separated by a dead zone of width
// `gap` centered at 1/2. A single member per party sits at its block's
// midpoint.
inline Legislature two_party_legislature(int n_per_party, double gap) {
    if (n_per_party < 1)
        throw std::invalid_argument("two_party_legislature: n_per_party must be positive");
    if (!(gap > 0.0 && gap <= 1.0))
        throw std::invalid_argument("two_party_legislature: gap must lie in (0,1]");
    Legislature l;
    auto fill = [&](double lo, double hi, const char* party) {
        for (int j = 0; j < n_per_party; ++j) {
            const double t = n_per_party == 1
                                 ? 0.5
                                 : static_cast<double>(j) / (n_per_party - 1);
            l.positions.push_back(lo + (hi - lo) * t);
            l.parties.emplace_back(party);
        }
    };
    fill(0.0, 0.5 * (1.0 - gap), "A");
    fill(0.5 * (1.0 + gap), 1.0, "B");
    return l;
}

struct BillSet {
    std::vector<double> cutpoints;        // in [0,1]
    std::vector<std::uint8_t> polarities; // 0 or 1
    std::uint64_t seed = 0;
};

// Cutpoints uniform on [0,1], polarities uniform on {0,1}. Bill k draws from
// substream(seed, k).
inline BillSet draw_bills(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("draw_bills: m must be positive");
    BillSet b;
    b.seed = seed;
    b.cutpoints.resize(static_cast<std::size_t>(m));
    b.polarities.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        SplitMix64 g(substream(seed, static_cast<std::uint64_t>(k)));
        b.cutpoints[static_cast<std::size_t>(k)] = g.uniform();
        b.polarities[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(g.next() & 1u);
    }
    return b;
}

// Votes live in {+1/2, -1/2, 0} but are stored as integer codes +1/-1/0 so
// that distance sums stay exact.
struct VoteMatrix {
    std::vector<std::string> legislator_ids;
    std::vector<std::string> bill_ids;
    std::vector<std::int8_t> codes; // row-major, legislators x bills

    std::size_t legislators() const { return legislator_ids.size(); }
    std::size_t bills() const { return bill_ids.size(); }
    std::int8_t code(std::size_t i, std::size_t k) const { return codes[i * bills() + k]; }
    void set_code(std::size_t i, std::size_t k, std::int8_t c) { codes[i * bills() + k] = c; }
    double value(std::size_t i, std::size_t k) const { return 0.5 * code(i, k); }
};

namespace detail {

inline std::vector<std::string> sequential_ids(char prefix, std::size_t count) {
    const std::size_t width = std::to_string(count).size();
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        std::string num = std::to_string(i);
        out.push_back(prefix + std::string(width - num.size(), '0') + num);
    }
    return out;
}

inline void check_legislature(const Legislature& leg) {
    if (leg.positions.empty())
        throw std::invalid_argument("legislature has no members");
    double prev = 0.0;
    for (double p : leg.positions) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("legislator position outside [0,1]");
        if (p < prev) throw std::invalid_argument("legislator positions not ascending");
        prev = p;
    }
    if (!leg.parties.empty() && leg.parties.size() != leg.positions.size())
        throw std::invalid_argument("party labels do not match member count");
}

} // namespace detail

// A member votes +1/2 when it sits at or left of the cutpoint and the
// polarity is 0; the other three cases follow by flipping either condition.
// Ties l == C count as the left side. No abstentions are generated.
inline VoteMatrix cast_votes(const Legislature& leg, const BillSet& bills) {
    detail::check_legislature(leg);
    const std::size_t m = bills.cutpoints.size();
    if (m == 0 || bills.polarities.size() != m)
        throw std::invalid_argument("cast_votes: malformed bill set");
    const std::size_t n = leg.positions.size();

    VoteMatrix v;
    v.legislator_ids = detail::sequential_ids('L', n);
    v.bill_ids = detail::sequential_ids('B', m);
    v.codes.resize(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const std::int8_t yea = bills.polarities[k] == 0 ? +1 : -1;
            const bool left = leg.positions[i] <= bills.cutpoints[k];
            v.codes[i * m + k] = left ? yea : static_cast<std::int8_t>(-yea);
        }
    return v;
}

inline VoteMatrix simulate(const Legislature& leg, int m, std::uint64_t seed) {
    return cast_votes(leg, draw_bills(m, seed));
}

// Mean absolute vote difference per pair. Accumulated over integer codes and
// divided once, so the result is exact: a disagreement contributes 1, an
// abstention against a cast vote contributes 1/2.
inline SymMatrix empirical_distance(const VoteMatrix& v) {
    const std::size_t n = v.legislators();
    const std::size_t m = v.bills();
    if (n == 0 || m == 0) throw std::invalid_argument("empirical_distance: empty vote matrix");
    SymMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int8_t* ri = v.codes.data() + i * m;
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::int8_t* rj = v.codes.data() + j * m;
            long long acc = 0;
            for (std::size_t k = 0; k < m; ++k) acc += std::abs(static_cast<int>(ri[k]) - rj[k]);
            d.set(i, j, static_cast<double>(acc) / (2.0 * static_cast<double>(m)));
        }
    }
    return d;
}

// Bill count sufficient for all pairwise distances to concentrate within
// epsilon at confidence 1 - epsilon: ceil(ln(n/sqrt(eps)) / eps^2).
inline int required_bills(int n, double epsilon) {
    if (n < 2) throw std::invalid_argument("required_bills: n must be at least 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("required_bills: epsilon must lie in (0,1)");
    return static_cast<int>(
        std::ceil(std::log(n / std::sqrt(epsilon)) / (epsilon * epsilon)));
}

struct ConcentrationReport {
    int bills = 0;
    int trials = 0;
    int successes = 0;
    double success_fraction = 0.0;
};

// Each trial simulates a fresh bill set (substream(seed, t)) at the bill
// count required_bills dictates and succeeds when every pair's empirical
// distance lands within epsilon of the true |l_i - l_j|.
inline ConcentrationReport concentration_trial(const Legislature& leg, double epsilon,
                                               int trials, std::uint64_t seed) {
    detail::check_legislature(leg);
    if (trials < 1) throw std::invalid_argument("concentration_trial: trials must be positive");
    const int m = required_bills(static_cast<int>(leg.positions.size()), epsilon);
    ConcentrationReport r;
    r.bills = m;
    r.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const VoteMatrix v = simulate(leg, m, substream(seed, static_cast<std::uint64_t>(t)));
        const SymMatrix dh = empirical_distance(v);
        bool ok = true;
        const std::size_t n = leg.positions.size();
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double truth = std::abs(leg.positions[i] - leg.positions[j]);
                if (std::abs(dh(i, j) - truth) > epsilon) { ok = false; break; }
            }
        if (ok) ++r.successes;
    }
    r.success_fraction = static_cast<double>(r.successes) / trials;
    return r;
}

} // namespace seriate
