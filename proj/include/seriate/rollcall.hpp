#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seriate/voting.hpp"

namespace seriate {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + msg),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

struct RollCallDataset {
    VoteMatrix votes;
    std::vector<std::string> parties;     // one label per legislator
    std::vector<double> participation;    // fraction of cast (nonzero) votes per row
    std::vector<std::string> dropped_ids; // filled by filter_participation
};

namespace detail {

struct CsvField {
    std::string text;
    std::size_t column; // 1-based character offset of the field start
};

inline std::vector<CsvField> split_csv(const std::string& line) {
    std::vector<CsvField> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back({line.substr(start, i - start), start + 1});
            start = i + 1;
        }
    }
    return out;
}

inline void chomp(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace detail

// Vote file: header `legislator_id,party,<bill ids...>`, then one row per
// legislator with cells in {Y, N, X}. No quoting, no trimming; anything else
// is rejected with its location. Present-votes and the like must be mapped
// to X upstream, deliberately.
inline RollCallDataset parse_rollcall(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file", 1, 1);
    detail::chomp(line);
    std::vector<detail::CsvField> header = detail::split_csv(line);
    if (header.size() < 3 || header[0].text != "legislator_id" || header[1].text != "party")
        throw ParseError("malformed header, expected legislator_id,party,<bill ids...>", 1, 1);

    RollCallDataset d;
    for (std::size_t k = 2; k < header.size(); ++k) {
        if (header[k].text.empty())
            throw ParseError("empty bill id in header", 1, header[k].column);
        d.votes.bill_ids.push_back(header[k].text);
    }
    const std::size_t m = d.votes.bill_ids.size();

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        detail::chomp(line);
        std::vector<detail::CsvField> f = detail::split_csv(line);
        if (f.size() != m + 2)
            throw ParseError("row has " + std::to_string(f.size()) + " fields, expected " +
                                 std::to_string(m + 2),
                             lineno, 1);
        if (f[0].text.empty()) throw ParseError("empty legislator id", lineno, f[0].column);
        d.votes.legislator_ids.push_back(f[0].text);
        d.parties.push_back(f[1].text);
        std::size_t cast = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const std::string& cell = f[k + 2].text;
            std::int8_t code;
            if (cell == "Y") code = +1;
            else if (cell == "N") code = -1;
            else if (cell == "X") code = 0;
            else
                throw ParseError("unknown vote symbol '" + cell + "'", lineno, f[k + 2].column);
            d.votes.codes.push_back(code);
            if (code != 0) ++cast;
        }
        d.participation.push_back(static_cast<double>(cast) / static_cast<double>(m));
    }
    if (d.votes.legislator_ids.empty()) throw ParseError("no legislator rows", lineno + 1, 1);
    return d;
}

inline RollCallDataset parse_rollcall(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open vote file: " + path);
    return parse_rollcall(in);
}

inline void write_rollcall(const RollCallDataset& d, std::ostream& out) {
    out << "legislator_id,party";
    for (const std::string& b : d.votes.bill_ids) out << ',' << b;
    out << '\n';
    const std::size_t m = d.votes.bills();
    for (std::size_t i = 0; i < d.votes.legislators(); ++i) {
        out << d.votes.legislator_ids[i] << ',' << d.parties[i];
        for (std::size_t k = 0; k < m; ++k) {
            const std::int8_t c = d.votes.code(i, k);
            out << ',' << (c > 0 ? 'Y' : c < 0 ? 'N' : 'X');
        }
        out << '\n';
    }
}

// Keeps legislators whose participation is at least min_fraction (inclusive
// boundary), recording the ids that fall away.
inline RollCallDataset filter_participation(const RollCallDataset& d, double min_fraction) {
    if (!(min_fraction >= 0.0 && min_fraction <= 1.0))
        throw std::invalid_argument("filter_participation: min_fraction must lie in [0,1]");
    const std::size_t m = d.votes.bills();
    RollCallDataset out;
    out.votes.bill_ids = d.votes.bill_ids;
    for (std::size_t i = 0; i < d.votes.legislators(); ++i) {
        if (d.participation[i] >= min_fraction) {
            out.votes.legislator_ids.push_back(d.votes.legislator_ids[i]);
            out.parties.push_back(d.parties[i]);
            out.participation.push_back(d.participation[i]);
            const std::int8_t* row = d.votes.codes.data() + i * m;
            out.votes.codes.insert(out.votes.codes.end(), row, row + m);
        } else {
            out.dropped_ids.push_back(d.votes.legislator_ids[i]);
        }
    }
    if (out.votes.legislator_ids.empty())
        throw std::runtime_error("filter_participation: every legislator dropped");
    return out;
}

} // namespace seriate
