#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlgt {

/// A d-ary word; digit 0 is the most significant (printed first).
using Word = std::vector<int>;

inline std::string word_to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (int digit : w) s += static_cast<char>('0' + digit);
    return s;
}

inline std::int64_t word_to_int(const Word& w, const std::vector<int>& dims) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < w.size(); ++i) v = v * dims[i] + w[i];
    return v;
}

inline std::int64_t word_to_int(const Word& w, int d) {
    std::int64_t v = 0;
    for (int digit : w) v = v * d + digit;
    return v;
}

inline Word int_to_word(std::int64_t value, const std::vector<int>& dims) {
    Word w(dims.size(), 0);
    for (std::size_t i = dims.size(); i-- > 0;) {
        w[i] = static_cast<int>(value % dims[i]);
        value /= dims[i];
    }
    return w;
}

/// The d-ary reflected Gray code over k digits: d^k words, consecutive words
/// differ in exactly one digit. Digit 0 is the slow (most significant) one.
inline std::vector<Word> gray_sequence(int d, int k) {
    if (d < 2 || k < 1) throw std::invalid_argument("gray_sequence: need d >= 2, k >= 1");
    std::vector<Word> seq{Word{}};
    for (int pos = 0; pos < k; ++pos) {
        std::vector<Word> next;
        next.reserve(seq.size() * static_cast<std::size_t>(d));
        for (int v = 0; v < d; ++v) {
            if (v % 2 == 0) {
                for (auto it = seq.begin(); it != seq.end(); ++it) {
                    Word w{v};
                    w.insert(w.end(), it->begin(), it->end());
                    next.push_back(std::move(w));
                }
            } else {
                for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
                    Word w{v};
                    w.insert(w.end(), it->begin(), it->end());
                    next.push_back(std::move(w));
                }
            }
        }
        seq = std::move(next);
    }
    return seq;
}

} // namespace qlgt
