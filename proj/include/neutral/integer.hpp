#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "neutral/error.hpp"

namespace neutral {

using Int = std::int64_t;

namespace detail {

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorCode::Overflow, "integer addition overflow");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorCode::Overflow, "integer multiplication overflow");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Error(ErrorCode::Overflow, "integer subtraction overflow");
    return r;
}

} // namespace detail

/// Least nonnegative residue of a modulo m (m > 0).
constexpr Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

/// (a * b) mod m without intermediate overflow.
constexpr Int mulmod(Int a, Int b, Int m) {
    return static_cast<Int>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
constexpr std::tuple<Int, Int, Int> extended_gcd(Int a, Int b) {
    Int old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * x; old_x = x; x = t;
        t = old_y - q * y; old_y = y; y = t;
    }
    if (old_r < 0) return {-old_r, -old_x, -old_y};
    return {old_r, old_x, old_y};
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
constexpr Int inverse_mod(Int a, Int m) {
    auto [g, x, y] = extended_gcd(mod(a, m), m);
    (void)y;
    if (g != 1) throw Error(ErrorCode::InvalidGroup, "element is not a unit");
    return mod(x, m);
}

constexpr bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Distinct prime divisors of n >= 1 in increasing order.
inline std::vector<Int> prime_divisors(Int n) {
    std::vector<Int> out;
    for (Int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Largest e with p^e | n, and p^e itself.
inline std::pair<int, Int> prime_power_part(Int n, Int p) {
    int e = 0;
    Int q = 1;
    while (n % p == 0) {
        n /= p;
        q *= p;
        ++e;
    }
    return {e, q};
}

inline void require_prime(Int p) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
}

} // namespace neutral
