#pragma once

#include "abundancy/arith.hpp"
#include "abundancy/factorization.hpp"
#include "abundancy/primes.hpp"
#include "abundancy/ratio.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace abundancy {

/// A superabundant n: I(m) < I(n) for every m < n.
struct SuperabundantRecord {
    mpz_class n;
    Factorization factorization;
    ExactRatio index;

    friend bool operator==(const SuperabundantRecord&, const SuperabundantRecord&) = default;
};

inline SuperabundantRecord make_record(Factorization f)
{
    SuperabundantRecord r{f.value(), f, abundancy_index(f)};
    return r;
}

inline constexpr std::uint64_t kBruteforceLimit = 10'000'000;

struct SweepOptions {
    /// Records already known, in order. The sweep continues after the last one.
    const std::vector<SuperabundantRecord>* resume_from = nullptr;
    /// Called once per newly found record, in increasing order.
    std::function<void(const SuperabundantRecord&)> on_record;
};

namespace detail {

inline std::vector<SuperabundantRecord> resume_prefix(const SweepOptions& opts, const mpz_class& limit)
{
    std::vector<SuperabundantRecord> out;
    if (opts.resume_from == nullptr) return out;
    for (const auto& r : *opts.resume_from) {
        if (r.n > limit) break;
        out.push_back(r);
    }
    return out;
}

} // namespace detail

/// Direct sweep over 1..limit with a running maximum of sigma(n)/n, compared by
/// cross-multiplication in 128-bit integers.
inline std::vector<SuperabundantRecord> superabundant_bruteforce(std::uint64_t limit, const SweepOptions& opts = {})
{
    if (limit == 0) throw std::invalid_argument("superabundant_bruteforce: limit must be positive");
    if (limit > kBruteforceLimit) throw std::invalid_argument("superabundant_bruteforce: limit above 10^7");

    std::vector<SuperabundantRecord> out = detail::resume_prefix(opts, to_mpz(limit));
    std::uint64_t start = 1;
    std::uint64_t best_sigma = 0, best_n = 1;  // I = 0 before n = 1
    if (!out.empty()) {
        best_n = to_u64(out.back().n);
        best_sigma = to_u64(sigma(out.back().factorization));
        start = best_n + 1;
    }
    if (start > limit) return out;

    const std::vector<std::uint64_t> s = sigma_sieve(limit);
    for (std::uint64_t n = start; n <= limit; ++n) {
        // s[n]/n > best_sigma/best_n
        if (static_cast<unsigned __int128>(s[n]) * best_n > static_cast<unsigned __int128>(best_sigma) * n) {
            best_sigma = s[n];
            best_n = n;
            out.push_back(make_record(factorize(n)));
            if (opts.on_record) opts.on_record(out.back());
        }
    }
    return out;
}

/// Exponent vectors (a_1 >= a_2 >= ... >= a_k >= 1) over the first k primes
/// whose product is <= limit, in increasing order of value. The empty vector
/// (n = 1) is included.
inline std::vector<Factorization> superabundant_candidates(const mpz_class& limit)
{
    std::vector<Factorization> out;
    if (limit < 1) return out;
    std::vector<std::uint64_t> primes;
    std::vector<PrimePower> stack;

    std::function<void(const mpz_class&, unsigned)> walk = [&](const mpz_class& value, unsigned max_exp) {
        out.push_back(Factorization::from_trusted(stack));
        const std::size_t i = stack.size();
        if (primes.size() <= i) primes.push_back(next_prime(primes.empty() ? 1 : primes.back()));
        const std::uint64_t p = primes[i];
        mpz_class next = value;
        for (unsigned a = 1; a <= max_exp; ++a) {
            next *= p;
            if (next > limit) break;
            stack.push_back({p, a});
            walk(next, a);
            stack.pop_back();
        }
    };
    walk(mpz_class(1), static_cast<unsigned>(mpz_sizeinbase(limit.get_mpz_t(), 2)));

    std::vector<std::pair<mpz_class, std::size_t>> order;
    order.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) order.emplace_back(out[i].value(), i);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Factorization> sorted;
    sorted.reserve(out.size());
    for (const auto& [v, i] : order) sorted.push_back(std::move(out[i]));
    return sorted;
}

/// Running-maximum sweep restricted to the candidate set. Rearranging the
/// exponents of any m onto the smallest primes in non-increasing order gives a
/// candidate m' <= m with I(m') >= I(m), so the candidates' running maximum is
/// the global one.
inline std::vector<SuperabundantRecord> superabundant_structured(const mpz_class& limit, const SweepOptions& opts = {})
{
    if (limit < 1) throw std::invalid_argument("superabundant_structured: limit must be positive");
    std::vector<SuperabundantRecord> out = detail::resume_prefix(opts, limit);
    mpz_class best_sigma = 0, best_n = 1;
    if (!out.empty()) {
        best_n = out.back().n;
        best_sigma = sigma(out.back().factorization);
    }
    for (auto& f : superabundant_candidates(limit)) {
        mpz_class n = f.value();
        if (!out.empty() && n <= out.back().n) continue;
        mpz_class s = sigma(f);
        if (s * best_n > best_sigma * n) {
            best_sigma = s;
            best_n = n;
            ExactRatio index(s, n);
            out.push_back({std::move(n), std::move(f), std::move(index)});
            if (opts.on_record) opts.on_record(out.back());
        }
    }
    return out;
}

struct SuperabundantCount {
    std::size_t count = 0;
    bool log_lower_bound_holds = false;
};

/// S(x), with the flag S(x) >= ln x decided exactly as x <= e^S(x).
inline SuperabundantCount count_superabundant(const mpz_class& x)
{
    if (x < 1) throw std::invalid_argument("count_superabundant: x must be positive");
    SuperabundantCount out;
    out.count = superabundant_structured(x).size();

    const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(x.get_mpz_t(), 2) + 64);
    mpfr_t e_lo, e_hi;
    mpfr_inits2(bits, e_lo, e_hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(e_lo, out.count, MPFR_RNDN);
    mpfr_set_ui(e_hi, out.count, MPFR_RNDN);
    mpfr_exp(e_lo, e_lo, MPFR_RNDD);
    mpfr_exp(e_hi, e_hi, MPFR_RNDU);
    if (mpfr_cmp_z(e_lo, x.get_mpz_t()) >= 0) {
        out.log_lower_bound_holds = true;
    } else if (mpfr_cmp_z(e_hi, x.get_mpz_t()) < 0) {
        out.log_lower_bound_holds = false;
    } else {
        mpfr_clears(e_lo, e_hi, static_cast<mpfr_ptr>(nullptr));
        throw std::runtime_error("count_superabundant: could not separate e^S(x) from x");
    }
    mpfr_clears(e_lo, e_hi, static_cast<mpfr_ptr>(nullptr));
    return out;
}

} // namespace abundancy
