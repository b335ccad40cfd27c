#pragma once

#include <stdexcept>
#include <string>

#include "chocoq/problem.hpp"

namespace chocoq {

/// Bit/index conventions: variable x_i lives on qubit i (1-based), and the
/// bitstring x1 x2 .. xn maps to a state index with x1 as the most
/// significant bit, so |1010> for n=4 is index 10.

inline size_t bits_to_index(const Bits& bits) {
    size_t idx = 0;
    for (uint8_t b : bits) idx = (idx << 1) | (b ? 1u : 0u);
    return idx;
}

inline Bits index_to_bits(size_t idx, int n) {
    Bits bits(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        bits[static_cast<size_t>(i)] = (idx >> (n - 1 - i)) & 1 ? 1 : 0;
    return bits;
}

inline std::string bits_to_string(const Bits& bits) {
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits) s.push_back(b ? '1' : '0');
    return s;
}

inline Bits bits_from_string(const std::string& s) {
    Bits bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bitstring must be over {0,1}: " + s);
        bits.push_back(c == '1' ? 1 : 0);
    }
    return bits;
}

/// Bit position (from the least significant end) of qubit q in a state
/// index, for an n-qubit register.
inline int qubit_bit(int q, int n) { return n - q; }

} // namespace chocoq
