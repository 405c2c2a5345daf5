#pragma once

#include "abundancy/primes.hpp"
#include "abundancy/ratio.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace abundancy {

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// n = prod p_i^a_i with strictly increasing primes and exponents >= 1.
/// The empty factorization is n = 1.
class Factorization {
public:
    Factorization() = default;

    explicit Factorization(std::vector<PrimePower> pairs) : pairs_(std::move(pairs))
    {
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            const auto& pp = pairs_[i];
            if (pp.exponent == 0) throw std::invalid_argument("zero exponent in factorization");
            if (i > 0 && pairs_[i - 1].prime >= pp.prime) {
                throw std::invalid_argument("factorization primes must be strictly increasing");
            }
            if (!is_prime(pp.prime)) {
                throw std::invalid_argument("non-prime base " + std::to_string(pp.prime) + " in factorization");
            }
        }
    }

    /// Skips the invariant checks; for producers that construct primes themselves.
    static Factorization from_trusted(std::vector<PrimePower> pairs)
    {
        Factorization f;
        f.pairs_ = std::move(pairs);
        return f;
    }

    std::span<const PrimePower> pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    mpz_class value() const
    {
        mpz_class n = 1;
        mpz_class t;
        for (const auto& pp : pairs_) {
            mpz_ui_pow_ui(t.get_mpz_t(), pp.prime, pp.exponent);
            n *= t;
        }
        return n;
    }

    /// "2^2*3^1"; the unit is written "1".
    std::string to_string() const
    {
        if (pairs_.empty()) return "1";
        std::string out;
        for (const auto& pp : pairs_) {
            if (!out.empty()) out += '*';
            out += std::to_string(pp.prime) + '^' + std::to_string(pp.exponent);
        }
        return out;
    }

    static Factorization parse(std::string_view text)
    {
        if (text == "1") return {};
        std::vector<PrimePower> pairs;
        while (!text.empty()) {
            const auto star = text.find('*');
            const auto term = text.substr(0, star);
            const auto caret = term.find('^');
            if (caret == std::string_view::npos) throw ParseError("factor term without exponent: '" + std::string(term) + "'");
            const mpz_class p = parse_integer(term.substr(0, caret));
            const mpz_class a = parse_integer(term.substr(caret + 1));
            if (!fits_u64(p) || !a.fits_uint_p()) throw ParseError("factor term out of range: '" + std::string(term) + "'");
            pairs.push_back({to_u64(p), static_cast<unsigned>(a.get_ui())});
            text = star == std::string_view::npos ? std::string_view{} : text.substr(star + 1);
            if (star != std::string_view::npos && text.empty()) throw ParseError("trailing '*' in factorization");
        }
        try {
            return Factorization(std::move(pairs));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> pairs_;
};

namespace detail {

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// Brent's variant of Pollard rho. n must be odd and composite.
inline std::uint64_t pollard_brent(std::uint64_t n)
{
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void split_cofactor(std::uint64_t n, std::vector<std::uint64_t>& primes)
{
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    const std::uint64_t d = pollard_brent(n);
    split_cofactor(d, primes);
    split_cofactor(n / d, primes);
}

} // namespace detail

/// Trial division by the primes below 10^6, then Pollard-Brent on whatever
/// cofactor is left. Every reported prime passes the deterministic 64-bit test.
inline Factorization factorize(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> pairs;
    for (std::uint64_t p : small_primes()) {
        if (p * p > n) break;
        if (n % p != 0) continue;
        unsigned a = 0;
        do {
            n /= p;
            ++a;
        } while (n % p == 0);
        pairs.push_back({p, a});
    }
    if (n > 1) {
        std::vector<std::uint64_t> large;
        detail::split_cofactor(n, large);
        std::sort(large.begin(), large.end());
        for (std::uint64_t p : large) {
            if (!pairs.empty() && pairs.back().prime == p) {
                ++pairs.back().exponent;
            } else {
                pairs.push_back({p, 1});
            }
        }
    }
    return Factorization::from_trusted(std::move(pairs));
}

inline Factorization factorize(const mpz_class& n)
{
    if (!fits_u64(n)) throw std::out_of_range("factorize: only 64-bit inputs are supported, got " + n.get_str());
    return factorize(to_u64(n));
}

} // namespace abundancy
