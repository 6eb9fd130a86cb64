#include "ranksiege/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ranksiege {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

long parse_long(std::string_view s, long line, const char* what) {
    s = trim(s);
    long value = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw DataError(std::string("expected an integer for ") + what + ", got '" +
                            std::string(s) + "'",
                        line);
    return value;
}

// Iterates lines of `text`, calling fn(line, line_number).
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    long line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        fn(line, line_no);
        if (end == text.size()) break;
        start = end + 1;
    }
}

}  // namespace

long Election::total_ballots() const {
    long t = 0;
    for (const Ballot& b : ballots) t += b.count;
    return t;
}

long Election::induced_comparisons() const {
    long t = 0;
    for (const Ballot& b : ballots) {
        const long k = static_cast<long>(b.ranking.size());
        t += b.count * (k * (k - 1) / 2);
    }
    return t;
}

Election parse_preflib(std::string_view text) {
    Election e;
    int max_id = 0;
    for_each_line(text, [&](std::string_view raw, long line) {
        std::string_view s = trim(raw);
        if (s.empty()) return;
        if (s.front() == '#') {
            std::string_view body = trim(s.substr(1));
            constexpr std::string_view kCount = "NUMBER ALTERNATIVES:";
            constexpr std::string_view kName = "ALTERNATIVE NAME ";
            if (body.substr(0, kCount.size()) == kCount) {
                e.n = static_cast<int>(parse_long(body.substr(kCount.size()), line,
                                                  "NUMBER ALTERNATIVES"));
                if (e.n < 1) throw DataError("NUMBER ALTERNATIVES must be positive", line);
                e.names.resize(e.n);
            } else if (body.substr(0, kName.size()) == kName) {
                std::string_view rest = body.substr(kName.size());
                const std::size_t colon = rest.find(':');
                if (colon == std::string_view::npos)
                    throw DataError("malformed ALTERNATIVE NAME line", line);
                const long id = parse_long(rest.substr(0, colon), line, "alternative id");
                if (id < 1) throw DataError("alternative ids are 1-based", line);
                if (static_cast<std::size_t>(id) > e.names.size()) e.names.resize(id);
                e.names[id - 1] = std::string(trim(rest.substr(colon + 1)));
            }
            return;  // other metadata ignored
        }
        const std::size_t colon = s.find(':');
        if (colon == std::string_view::npos)
            throw DataError("expected 'count: c1,c2,...' ballot line", line);
        Ballot ballot;
        ballot.count = parse_long(s.substr(0, colon), line, "ballot count");
        if (ballot.count < 1) throw DataError("ballot count must be positive", line);
        std::string_view rest = s.substr(colon + 1);
        std::vector<char> seen(e.n > 0 ? e.n : 0, 0);
        while (!rest.empty()) {
            std::size_t comma = rest.find(',');
            std::string_view field =
                comma == std::string_view::npos ? rest : rest.substr(0, comma);
            const long id = parse_long(field, line, "candidate id");
            if (id < 1) throw DataError("candidate ids are 1-based", line);
            if (e.n > 0 && id > e.n)
                throw DataError("candidate id " + std::to_string(id) + " exceeds declared count",
                                line);
            const int c = static_cast<int>(id) - 1;
            if (c < static_cast<int>(seen.size()) && seen[c])
                throw DataError("duplicate candidate " + std::to_string(id) + " within ballot",
                                line);
            if (c >= static_cast<int>(seen.size())) seen.resize(c + 1, 0);
            seen[c] = 1;
            ballot.ranking.push_back(c);
            max_id = std::max(max_id, static_cast<int>(id));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
            if (trim(rest).empty())
                throw DataError("trailing comma in ballot ranking", line);
        }
        if (ballot.ranking.empty()) throw DataError("empty ballot ranking", line);
        e.ballots.push_back(std::move(ballot));
    });
    if (e.n == 0) e.n = max_id;
    if (e.n == 0) throw DataError("no candidates found in file");
    e.names.resize(e.n);
    return e;
}

std::vector<Comparison> ballots_to_comparisons(std::span<const Ballot> ballots) {
    std::vector<Comparison> out;
    for (const Ballot& b : ballots) {
        const std::size_t k = b.ranking.size();
        for (long copy = 0; copy < b.count; ++copy)
            for (std::size_t a = 0; a + 1 < k; ++a)
                for (std::size_t c = a + 1; c < k; ++c)
                    out.push_back(Comparison{b.ranking[a], b.ranking[c], Origin::Original});
    }
    return out;
}

std::vector<Comparison> parse_pairwise_csv(std::string_view text) {
    std::vector<Comparison> out;
    int base = 1;
    bool saw_data = false;
    for_each_line(text, [&](std::string_view raw, long line) {
        std::string_view s = trim(raw);
        if (s.empty()) return;
        const bool has_alpha = std::any_of(s.begin(), s.end(), [](char c) {
            return std::isalpha(static_cast<unsigned char>(c));
        });
        if (has_alpha) {
            if (saw_data) throw DataError("unexpected non-numeric row", line);
            // Header row; ids default to 1-based unless it says otherwise.
            std::string lower(s);
            std::transform(lower.begin(), lower.end(), lower.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (lower.find("0-based") != std::string::npos) base = 0;
            return;
        }
        const std::size_t comma = s.find(',');
        if (comma == std::string_view::npos)
            throw DataError("expected 'winner,loser'", line);
        const long w = parse_long(s.substr(0, comma), line, "winner id");
        const long l = parse_long(s.substr(comma + 1), line, "loser id");
        if (w == l) throw DataError("winner and loser must differ", line);
        if (w - base < 0 || l - base < 0) throw DataError("candidate id below base", line);
        out.push_back(Comparison{static_cast<Candidate>(w - base),
                                 static_cast<Candidate>(l - base), Origin::Original});
        saw_data = true;
    });
    return out;
}

std::string serialize_stream(std::span<const Comparison> stream) {
    std::string out = "winner,loser\n";
    for (const Comparison& c : stream) {
        out += std::to_string(c.winner + 1);
        out += ',';
        out += std::to_string(c.loser + 1);
        out += '\n';
    }
    return out;
}

int candidate_count(std::span<const Comparison> stream) {
    int n = 0;
    for (const Comparison& c : stream) n = std::max({n, c.winner + 1, c.loser + 1});
    return n;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace ranksiege
