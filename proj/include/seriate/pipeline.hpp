#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seriate/format.hpp"
#include "seriate/mds.hpp"
#include "seriate/rollcall.hpp"

namespace seriate {

struct Ordering {
    std::vector<std::size_t> order; // permutation: first group, then second
    std::vector<int> group;         // 1 or 2 per input index
};

// Seriation from a 3-column embedding. Members split by the sign of the
// first coordinate; rows with an exact zero there adopt the side of the
// nonzero first coordinate nearest zero. The side with the larger restricted
// 2-norm of the second coordinate becomes group 1 and is sorted by that
// coordinate ascending; the other side is sorted by the third coordinate.
// A norm tie goes to the side holding the largest |second coordinate|.
inline Ordering order_legislators(const Matrix& coords) {
    const std::size_t n = coords.rows();
    if (n == 0) throw std::invalid_argument("order_legislators: empty embedding");
    if (coords.cols() < 3)
        throw std::invalid_argument("order_legislators: need 3 embedding columns");

    std::vector<int> side(n, 0);
    double closest = std::numeric_limits<double>::infinity();
    int closest_side = +1;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = coords(i, 0);
        side[i] = c > 0.0 ? +1 : c < 0.0 ? -1 : 0;
        if (c != 0.0 && std::abs(c) < closest) {
            closest = std::abs(c);
            closest_side = side[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (side[i] == 0) side[i] = closest_side;

    std::vector<std::size_t> pos, neg;
    double norm_pos = 0.0, norm_neg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f2 = coords(i, 1);
        if (side[i] > 0) { pos.push_back(i); norm_pos += f2 * f2; }
        else             { neg.push_back(i); norm_neg += f2 * f2; }
    }

    bool pos_first;
    if (norm_pos != norm_neg) {
        pos_first = norm_pos > norm_neg;
    } else {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(coords(i, 1)) > best) { best = std::abs(coords(i, 1)); arg = i; }
        pos_first = side[arg] > 0;
    }

    std::vector<std::size_t>& g1 = pos_first ? pos : neg;
    std::vector<std::size_t>& g2 = pos_first ? neg : pos;
    std::stable_sort(g1.begin(), g1.end(), [&](std::size_t a, std::size_t b) {
        return coords(a, 1) < coords(b, 1);
    });
    std::stable_sort(g2.begin(), g2.end(), [&](std::size_t a, std::size_t b) {
        return coords(a, 2) < coords(b, 2);
    });

    Ordering o;
    o.group.assign(n, 2);
    for (std::size_t i : g1) o.group[i] = 1;
    o.order = g1;
    o.order.insert(o.order.end(), g2.begin(), g2.end());
    return o;
}

struct AnalysisResult {
    std::vector<std::string> ids;
    std::vector<std::string> parties;
    std::vector<double> eigenvalues; // full Gram spectrum, descending
    Matrix embedding;                // n x 3, zero-padded when truncated
    std::vector<std::size_t> order;
    std::vector<int> group;
    double dropped_negative_mass = 0.0;
    double max_center_rowsum = 0.0;
    bool truncated = false;
};

// votes -> mean-disagreement distances -> saturating proximity 1 - e^{-d}
// -> 3-column scaled embedding -> seriation.
inline AnalysisResult analyze(const RollCallDataset& d, bool square_first = true) {
    const std::size_t n = d.votes.legislators();
    if (n < 4) throw std::invalid_argument("analyze: need at least 4 legislators");

    const SymMatrix dhat = empirical_distance(d.votes);
    SymMatrix prox(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            prox.set(i, j, 1.0 - std::exp(-dhat(i, j)));

    const Embedding e = classical_mds(prox, 3, square_first);

    AnalysisResult r;
    r.ids = d.votes.legislator_ids;
    r.parties = d.parties;
    r.eigenvalues = e.spectrum;
    r.dropped_negative_mass = e.dropped_negative_mass;
    r.max_center_rowsum = e.max_center_rowsum;
    r.truncated = e.truncated;
    r.embedding = Matrix(n, 3);
    for (std::size_t j = 0; j < e.coords.cols() && j < 3; ++j)
        for (std::size_t i = 0; i < n; ++i) r.embedding(i, j) = e.coords(i, j);

    Ordering o = order_legislators(r.embedding);
    r.order = std::move(o.order);
    r.group = std::move(o.group);
    return r;
}

namespace detail {

inline std::vector<double> midranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double mid = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = mid;
        i = j + 1;
    }
    return rank;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace detail

// Ties are mid-ranked for the rank correlation and discounted in the tau
// denominator (the tau-b convention).
inline double kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    long long concordant = 0, discordant = 0, tied_x = 0, tied_y = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0.0) ++tied_x;
            if (dy == 0.0) ++tied_y;
            if (dx == 0.0 || dy == 0.0) continue;
            if ((dx < 0.0) == (dy < 0.0)) ++concordant; else ++discordant;
        }
    const long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
    const double denom =
        std::sqrt(static_cast<double>(n0 - tied_x) * static_cast<double>(n0 - tied_y));
    if (denom == 0.0) return 0.0;
    return static_cast<double>(concordant - discordant) / denom;
}

inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    return detail::pearson(detail::midranks(x), detail::midranks(y));
}

struct ScoreComparison {
    double spearman = 0.0;
    double kendall = 0.0;
    std::size_t joined = 0;
    bool degenerate_ties = false;
};

// Inner join of the recovered order against an external score per id, then
// both rank correlations of recovered rank vs score. Fully tied scores give
// 0 with the degenerate flag rather than an error.
inline ScoreComparison compare_scores(const std::vector<std::string>& ordered_ids,
                                      const std::vector<std::pair<std::string, double>>& scores) {
    std::map<std::string, double> lookup;
    for (const auto& [id, s] : scores) lookup.emplace(id, s);

    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < ordered_ids.size(); ++r) {
        auto it = lookup.find(ordered_ids[r]);
        if (it == lookup.end()) continue;
        xs.push_back(static_cast<double>(r + 1));
        ys.push_back(it->second);
    }
    if (xs.empty()) throw std::runtime_error("compare_scores: no ids in common");

    ScoreComparison c;
    c.joined = xs.size();
    const bool all_tied =
        std::all_of(ys.begin(), ys.end(), [&](double v) { return v == ys.front(); });
    if (all_tied || xs.size() < 2) {
        c.degenerate_ties = true;
        return c;
    }
    c.spearman = spearman_rho(xs, ys);
    c.kendall = kendall_tau(xs, ys);
    return c;
}

// Score file: header `legislator_id,score`, then id,real rows.
inline std::vector<std::pair<std::string, double>> parse_scores(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file", 1, 1);
    detail::chomp(line);
    std::vector<detail::CsvField> header = detail::split_csv(line);
    if (header.size() != 2 || header[0].text != "legislator_id" || header[1].text != "score")
        throw ParseError("malformed header, expected legislator_id,score", 1, 1);

    std::vector<std::pair<std::string, double>> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        detail::chomp(line);
        std::vector<detail::CsvField> f = detail::split_csv(line);
        if (f.size() != 2)
            throw ParseError("row has " + std::to_string(f.size()) + " fields, expected 2",
                             lineno, 1);
        if (f[0].text.empty()) throw ParseError("empty legislator id", lineno, f[0].column);
        double score = 0.0;
        const char* first = f[1].text.data();
        const char* last = first + f[1].text.size();
        auto res = std::from_chars(first, last, score);
        if (res.ec != std::errc() || res.ptr != last)
            throw ParseError("unparseable score '" + f[1].text + "'", lineno, f[1].column);
        out.emplace_back(f[0].text, score);
    }
    if (out.empty()) throw ParseError("no score rows", lineno + 1, 1);
    return out;
}

inline std::vector<std::pair<std::string, double>> parse_scores(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open score file: " + path);
    return parse_scores(in);
}

// Reads back the order.csv that emit() writes; returns ids in listed order.
inline std::vector<std::string> parse_order(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file", 1, 1);
    detail::chomp(line);
    std::vector<detail::CsvField> header = detail::split_csv(line);
    if (header.size() != 3 || header[0].text != "rank" || header[1].text != "legislator_id" ||
        header[2].text != "group")
        throw ParseError("malformed header, expected rank,legislator_id,group", 1, 1);

    std::vector<std::string> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        detail::chomp(line);
        std::vector<detail::CsvField> f = detail::split_csv(line);
        if (f.size() != 3)
            throw ParseError("row has " + std::to_string(f.size()) + " fields, expected 3",
                             lineno, 1);
        if (f[1].text.empty()) throw ParseError("empty legislator id", lineno, f[1].column);
        out.push_back(f[1].text);
    }
    if (out.empty()) throw ParseError("no order rows", lineno + 1, 1);
    return out;
}

inline std::vector<std::string> parse_order(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open order file: " + path);
    return parse_order(in);
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + p.string());
    return f;
}

inline void close_output(std::ofstream& f, const std::filesystem::path& p) {
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + p.string());
}

} // namespace detail

// Writes eigenvalues.csv, embedding.csv, order.csv and scatter.csv into
// out_dir (created if missing). Formatting goes through format_real, so
// rerunning on identical input reproduces the files byte for byte.
inline void emit(const AnalysisResult& r, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + dir.string());

    {
        const fs::path p = dir / "eigenvalues.csv";
        std::ofstream f = detail::open_output(p);
        f << "index,eigenvalue\n";
        for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
            f << (i + 1) << ',' << format_real(r.eigenvalues[i]) << '\n';
        detail::close_output(f, p);
    }
    {
        const fs::path p = dir / "embedding.csv";
        std::ofstream f = detail::open_output(p);
        f << "legislator_id,c1,c2,c3\n";
        for (std::size_t i = 0; i < r.ids.size(); ++i)
            f << r.ids[i] << ',' << format_real(r.embedding(i, 0)) << ','
              << format_real(r.embedding(i, 1)) << ',' << format_real(r.embedding(i, 2))
              << '\n';
        detail::close_output(f, p);
    }
    {
        const fs::path p = dir / "order.csv";
        std::ofstream f = detail::open_output(p);
        f << "rank,legislator_id,group\n";
        for (std::size_t rk = 0; rk < r.order.size(); ++rk) {
            const std::size_t i = r.order[rk];
            f << (rk + 1) << ',' << r.ids[i] << ',' << (r.group[i] == 1 ? "G1" : "G2") << '\n';
        }
        detail::close_output(f, p);
    }
    {
        const fs::path p = dir / "scatter.csv";
        std::ofstream f = detail::open_output(p);
        f << "id,party,c1,c2,c3\n";
        for (std::size_t i = 0; i < r.ids.size(); ++i) {
            const std::string party = i < r.parties.size() ? r.parties[i] : std::string();
            f << r.ids[i] << ',' << party << ',' << format_real(r.embedding(i, 0)) << ','
              << format_real(r.embedding(i, 1)) << ',' << format_real(r.embedding(i, 2))
              << '\n';
        }
        detail::close_output(f, p);
    }
}

// Standalone scatter of the first two embedding columns, one dot per member,
// colored by group.
inline void emit_svg(const AnalysisResult& r, const std::string& path) {
    const std::size_t n = r.ids.size();
    double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lo1 = std::min(lo1, r.embedding(i, 0));
        hi1 = std::max(hi1, r.embedding(i, 0));
        lo2 = std::min(lo2, r.embedding(i, 1));
        hi2 = std::max(hi2, r.embedding(i, 1));
    }
    if (hi1 == lo1) hi1 = lo1 + 1.0;
    if (hi2 == lo2) hi2 = lo2 + 1.0;
    const double w = 640.0, h = 480.0, margin = 40.0;
    auto sx = [&](double v) { return margin + (v - lo1) / (hi1 - lo1) * (w - 2 * margin); };
    auto sy = [&](double v) { return h - margin - (v - lo2) / (hi2 - lo2) * (h - 2 * margin); };

    const std::filesystem::path p(path);
    std::ofstream f = detail::open_output(p);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
    f << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
        const char* color = r.group[i] == 1 ? "#1f6fb4" : "#c23b22";
        f << "<circle cx=\"" << format_real(sx(r.embedding(i, 0)), 6) << "\" cy=\""
          << format_real(sy(r.embedding(i, 1)), 6) << "\" r=\"3\" fill=\"" << color
          << "\" fill-opacity=\"0.8\"/>\n";
    }
    f << "</svg>\n";
    detail::close_output(f, p);
}

} // namespace seriate
