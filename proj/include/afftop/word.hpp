#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace afftop {

// Finite words over {0,1} are plain strings of '0'/'1' characters.
using Word = std::string;

inline void check_word(const Word& w) {
    for (char c : w)
        if (c != '0' && c != '1')
            throw std::invalid_argument("word contains a symbol other than 0/1: " + w);
}

inline std::size_t count_symbol(const Word& w, char c) {
    return static_cast<std::size_t>(std::count(w.begin(), w.end(), c));
}

// Symbol-wise complement; exchanging the two maps corresponds to this
// involution on words together with (x, y) |-> (1-y, 1-x) on points.
inline Word mirror_word(const Word& w) {
    Word m = w;
    for (char& c : m) c = (c == '0') ? '1' : '0';
    return m;
}

// Eventually periodic infinite word  u v v v ...  with finite prefix u
// (possibly empty) and nonempty period v. Serialized as "u(v)".
struct EPWord {
    Word prefix;
    Word period;

    EPWord(Word u, Word v) : prefix(std::move(u)), period(std::move(v)) {
        check_word(prefix);
        check_word(period);
        if (period.empty()) throw std::invalid_argument("eventually periodic word needs a nonempty period");
    }

    static EPWord parse(const std::string& text) {
        const auto open = text.find('(');
        const auto close = text.find(')');
        if (open == std::string::npos || close == std::string::npos || close != text.size() - 1 ||
            close < open + 2)
            throw std::invalid_argument("expected \"u(v)\" with nonempty v, got: " + text);
        return EPWord(text.substr(0, open), text.substr(open + 1, close - open - 2 + 1));
    }

    std::string str() const { return prefix + "(" + period + ")"; }

    char symbol_at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return period[(i - prefix.size()) % period.size()];
    }

    // First n symbols of the infinite expansion.
    Word expansion(std::size_t n) const {
        Word out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(symbol_at(i));
        return out;
    }

    // Left shift by k symbols, renormalized so the period length is unchanged.
    EPWord shift(std::size_t k) const {
        if (k <= prefix.size()) return EPWord(prefix.substr(k), period);
        const std::size_t r = (k - prefix.size()) % period.size();
        return EPWord(Word(), period.substr(r) + period.substr(0, r));
    }

    EPWord mirrored() const { return EPWord(mirror_word(prefix), mirror_word(period)); }

    bool operator==(const EPWord& o) const {
        // Equality as infinite sequences: compare long enough expansions to
        // cover both preperiods plus two full periods of each.
        const std::size_t n = std::max(prefix.size(), o.prefix.size()) +
                              2 * (period.size() + o.period.size());
        return expansion(n) == o.expansion(n);
    }
};

// All distinct shifts of w, i.e. the suffix orbit {shift(k) : k >= 0}.
// Shifts repeat with index period |v| once past the prefix, so scanning
// k < |u| + |v| reaches every distinct tail; duplicates are removed by
// comparing canonical expansions.
inline std::vector<EPWord> distinct_shifts(const EPWord& w) {
    std::vector<EPWord> out;
    std::vector<Word> seen;
    const std::size_t key_len = w.prefix.size() + 2 * w.period.size();
    for (std::size_t k = 0; k < w.prefix.size() + w.period.size(); ++k) {
        EPWord t = w.shift(k);
        Word key = t.expansion(key_len);
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(std::move(key));
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace afftop
