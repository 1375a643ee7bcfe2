/*
 * Copyright 2025 bosonlines contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace bosonlines {

/// Pascal-triangle binomial coefficients, exact in uint64 for n <= 64.
class BinomialTable {
public:
    static constexpr int max_n = 64;

    constexpr BinomialTable() : c_{} {
        for (int n = 0; n <= max_n; ++n) {
            c_[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c_[n][k] = c_[n - 1][k - 1] + (k <= n - 1 ? c_[n - 1][k] : 0);
        }
    }

    constexpr std::uint64_t operator()(int n, int k) const {
        if (n < 0 || k < 0 || k > n) return 0;
        return c_[n][k];
    }

private:
    std::uint64_t c_[max_n + 1][max_n + 1];
};

inline constexpr BinomialTable binom{};

inline int popcount(std::uint64_t v) { return std::popcount(v); }

/// Smallest mask with the given number of set bits.
inline std::uint64_t first_mask(int weight) {
    return weight == 0 ? 0ull : (weight >= 64 ? ~0ull : (1ull << weight) - 1);
}

/// Gosper's hack: next mask with the same popcount, ascending numeric order.
/// Undefined for v == 0; callers handle the weight-0 class separately.
inline std::uint64_t next_mask_same_weight(std::uint64_t v) {
    std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

/// Rank of `mask` within its popcount class, counting masks in ascending
/// numeric order (combinatorial number system, colex = numeric order).
inline std::uint64_t comb_rank(std::uint64_t mask) {
    std::uint64_t r = 0;
    int k = 0;
    while (mask) {
        const int b = std::countr_zero(mask);
        mask &= mask - 1;
        ++k;
        r += binom(b, k);
    }
    return r;
}

/// Visits every submask of r in ascending numeric order, 0 and r included.
template <typename Fn>
inline void for_each_submask(std::uint64_t r, Fn&& fn) {
    std::uint64_t s = 0;
    while (true) {
        fn(s);
        if (s == r) break;
        s = (s - r) & r;
    }
}

/// Bit positions of the set bits of `mask`, ascending.
inline std::vector<int> set_bits(std::uint64_t mask) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(popcount(mask)));
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

/// n! as a double (exact up to n = 170; callers stay far below).
inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace bosonlines
