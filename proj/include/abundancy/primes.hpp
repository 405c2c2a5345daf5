#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace abundancy {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Strong probable-prime test to one base; n odd, n > 2.
inline bool strong_probable_prime(std::uint64_t n, std::uint64_t base)
{
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = pow_mod(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Deterministic for every 64-bit input: the first twelve prime bases have no
/// common strong pseudoprime below 3.3e24.
inline bool is_prime(std::uint64_t n)
{
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (std::uint64_t p : bases) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    for (std::uint64_t b : bases) {
        if (!detail::strong_probable_prime(n, b)) return false;
    }
    return true;
}

/// Sieve of Eratosthenes; all primes <= limit in increasing order.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit)
{
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

/// Primes below one million, built once.
inline std::span<const std::uint32_t> small_primes()
{
    static const std::vector<std::uint32_t> table = primes_up_to(1'000'000);
    return table;
}

inline std::uint64_t next_prime(std::uint64_t n)
{
    if (n < 2) return 2;
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

/// The first `count` primes.
inline std::vector<std::uint64_t> first_primes(std::size_t count)
{
    std::vector<std::uint64_t> out;
    out.reserve(count);
    std::uint64_t p = 1;
    while (out.size() < count) {
        p = next_prime(p);
        out.push_back(p);
    }
    return out;
}

} // namespace abundancy
