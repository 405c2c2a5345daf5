#pragma once

#include "abundancy/factorization.hpp"
#include "abundancy/primes.hpp"
#include "abundancy/ratio.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace abundancy {

/// sigma(p^a) = (p^(a+1) - 1) / (p - 1).
inline mpz_class sigma_prime_power(std::uint64_t p, unsigned a)
{
    mpz_class num;
    mpz_class base = to_mpz(p);
    mpz_pow_ui(num.get_mpz_t(), base.get_mpz_t(), a + 1UL);
    num -= 1;
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), mpz_class(base - 1).get_mpz_t());
    return num;
}

/// Sum of divisors through multiplicativity.
inline mpz_class sigma(const Factorization& f)
{
    mpz_class s = 1;
    for (const auto& pp : f.pairs()) s *= sigma_prime_power(pp.prime, pp.exponent);
    return s;
}

/// Independent route: walk divisor pairs (d, n/d) up to sqrt(n). Oracle scale only.
inline mpz_class sigma_by_divisor_enumeration(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("sigma_by_divisor_enumeration: n must be positive");
    unsigned __int128 total = 0;
    std::uint64_t d = 1;
    for (; d * d < n; ++d) {
        if (n % d == 0) total += d + n / d;
    }
    if (d * d == n) total += d;
    const auto hi = static_cast<std::uint64_t>(total >> 64);
    const auto lo = static_cast<std::uint64_t>(total);
    return (to_mpz(hi) << 64) + to_mpz(lo);
}

/// sigma(k) for every k in [0, limit]; entry 0 is unused. Additive divisor sieve,
/// O(limit log limit).
inline std::vector<std::uint64_t> sigma_sieve(std::uint64_t limit)
{
    if (limit > 200'000'000) throw std::invalid_argument("sigma_sieve: limit above 2e8");
    std::vector<std::uint64_t> s(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint64_t d = 1; d <= limit; ++d) {
        for (std::uint64_t m = d; m <= limit; m += d) s[m] += d;
    }
    return s;
}

inline ExactRatio abundancy_index(const Factorization& f)
{
    return ExactRatio(sigma(f), f.value());
}

enum class NumberClass { Perfect, Abundant, Deficient };

inline std::string_view to_string(NumberClass c)
{
    switch (c) {
    case NumberClass::Perfect: return "Perfect";
    case NumberClass::Abundant: return "Abundant";
    case NumberClass::Deficient: return "Deficient";
    }
    return "?";
}

struct Classification {
    NumberClass tag = NumberClass::Deficient;
    /// I(n) when it is an integer >= 2.
    std::optional<unsigned long> multiperfect_order;
};

/// Exact comparison of I(n) with 2. n = 1 is Deficient and has no order.
inline Classification classify(const Factorization& f)
{
    const ExactRatio index = abundancy_index(f);
    const auto c = index <=> ExactRatio(2);
    Classification out;
    out.tag = c == 0 ? NumberClass::Perfect : c > 0 ? NumberClass::Abundant : NumberClass::Deficient;
    if (index.is_integer() && index.numerator() >= 2) {
        out.multiperfect_order = index.numerator().get_ui();
    }
    return out;
}

struct IndexBounds {
    ExactRatio lower;
    ExactRatio upper;
};

/// prod (p+1)/p <= I(n) <= prod p/(p-1) over the distinct primes of n.
inline IndexBounds index_bounds(const Factorization& f)
{
    mpz_class lo_num = 1, lo_den = 1, hi_num = 1, hi_den = 1;
    for (const auto& pp : f.pairs()) {
        const mpz_class p = to_mpz(pp.prime);
        lo_num *= p + 1;
        lo_den *= p;
        hi_num *= p;
        hi_den *= p - 1;
    }
    return {ExactRatio(lo_num, lo_den), ExactRatio(hi_num, hi_den)};
}

/// lcm(1..n) read off directly: each prime p <= n to its largest power <= n.
inline Factorization lcm_range_factorization(std::uint64_t n)
{
    std::vector<PrimePower> pairs;
    for (std::uint64_t p = 2; p <= n; p = next_prime(p)) {
        unsigned a = 0;
        for (std::uint64_t q = p; q <= n; q *= p) {
            ++a;
            if (q > n / p) break;
        }
        pairs.push_back({p, a});
    }
    return Factorization::from_trusted(std::move(pairs));
}

/// Product of the first k primes.
inline Factorization primorial_factorization(std::size_t k)
{
    std::vector<PrimePower> pairs;
    for (std::uint64_t p : first_primes(k)) pairs.push_back({p, 1});
    return Factorization::from_trusted(std::move(pairs));
}

/// I(lcm(1, ..., n)); dominates H_n because every 1/i appears in the divisor sum.
inline ExactRatio index_of_reciprocal_sum(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("index_of_reciprocal_sum: N must be positive");
    return abundancy_index(lcm_range_factorization(n));
}

namespace detail {

// sum_{k=a}^{b-1} 1/k as an unreduced fraction, by binary splitting.
inline void harmonic_split(std::uint64_t a, std::uint64_t b, mpz_class& num, mpz_class& den)
{
    if (b - a == 1) {
        num = 1;
        den = to_mpz(a);
        return;
    }
    const std::uint64_t mid = a + (b - a) / 2;
    mpz_class ln, ld, rn, rd;
    harmonic_split(a, mid, ln, ld);
    harmonic_split(mid, b, rn, rd);
    num = ln * rd + rn * ld;
    den = ld * rd;
}

} // namespace detail

/// H_n = 1 + 1/2 + ... + 1/n, exact.
inline ExactRatio harmonic_number(std::uint64_t n)
{
    if (n == 0) return ExactRatio(0);
    mpz_class num, den;
    detail::harmonic_split(1, n + 1, num, den);
    return ExactRatio(num, den);
}

/// Lucas-Lehmer: 2^p - 1 is prime. p itself must be prime (p = 2 gives 3).
inline bool lucas_lehmer(unsigned long p)
{
    if (p == 2) return true;
    if (p < 2 || !is_prime(p)) return false;
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), 2, p);
    m -= 1;
    mpz_class s = 4, hi;
    for (unsigned long i = 0; i < p - 2; ++i) {
        s = s * s - 2;
        if (sgn(s) < 0) s += m;
        // x mod 2^p-1 == (x & m) + (x >> p), folded until below m
        while (s > m) {
            mpz_tdiv_q_2exp(hi.get_mpz_t(), s.get_mpz_t(), p);
            mpz_and(s.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
            s += hi;
        }
        if (s == m) s = 0;
    }
    return s == 0;
}

struct EvenPerfect {
    unsigned long exponent = 0;
    mpz_class value;
};

/// 2^(p-1) (2^p - 1) for the first `count` Mersenne prime exponents p.
inline std::vector<EvenPerfect> even_perfect_numbers(std::size_t count)
{
    if (count == 0) throw std::invalid_argument("even_perfect_numbers: count must be positive");
    std::vector<EvenPerfect> out;
    for (unsigned long p = 2; out.size() < count; p = next_prime(p)) {
        if (!lucas_lehmer(p)) continue;
        mpz_class mersenne;
        mpz_ui_pow_ui(mersenne.get_mpz_t(), 2, p);
        mersenne -= 1;
        mpz_class n;
        mpz_mul_2exp(n.get_mpz_t(), mersenne.get_mpz_t(), p - 1);
        out.push_back({p, std::move(n)});
    }
    return out;
}

/// Factorization of 2^(p-1) (2^p - 1) when the Mersenne factor fits in 64 bits.
inline std::optional<Factorization> even_perfect_factorization(const EvenPerfect& e)
{
    if (e.exponent >= 64) return std::nullopt;
    const std::uint64_t mersenne = (std::uint64_t{1} << e.exponent) - 1;
    return Factorization::from_trusted({{2, static_cast<unsigned>(e.exponent - 1)}, {mersenne, 1}});
}

} // namespace abundancy
