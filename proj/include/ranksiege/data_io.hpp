#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ranksiege/core.hpp"

namespace ranksiege {

// One ballot: a strict (possibly partial) ordering cast `count` times.
struct Ballot {
    long count = 1;
    std::vector<Candidate> ranking;  // best first, 0-based
};

struct Election {
    int n = 0;
    std::vector<Ballot> ballots;
    std::vector<std::string> names;  // may be empty when the file has none

    long total_ballots() const;
    long induced_comparisons() const;  // sum of count * k(k-1)/2
};

// PrefLib SOI/SOC subset: '#' metadata lines ("# NUMBER ALTERNATIVES: n",
// "# ALTERNATIVE NAME i: ...") followed by "count: c1,c2,..." ballot lines
// with 1-based candidate ids. Parse errors carry the line number.
Election parse_preflib(std::string_view text);

// Each ballot of length k emits count passes over its k(k-1)/2
// ordered-above pairs, ballots in file order, pairs lexicographic by
// position. Unranked candidates contribute nothing.
std::vector<Comparison> ballots_to_comparisons(std::span<const Ballot> ballots);

// Pairwise stream CSV: "winner,loser" per line with 1-based ids. An
// optional leading header may override the base with a "0-based" token
// (e.g. "winner,loser # 0-based").
std::vector<Comparison> parse_pairwise_csv(std::string_view text);

// Canonical stream serialization: "winner,loser" header, then 1-based rows
// in stream order.
std::string serialize_stream(std::span<const Comparison> stream);

// Smallest n covering every candidate in the stream (0 for an empty one).
int candidate_count(std::span<const Comparison> stream);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace ranksiege
