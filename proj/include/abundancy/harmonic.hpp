#pragma once

#include "abundancy/arith.hpp"
#include "abundancy/constants.hpp"
#include "abundancy/interval.hpp"
#include "abundancy/ratio.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace abundancy {

inline constexpr std::uint64_t kExactHarmonicLimit = 10'000;

namespace detail {

/// B_0, B_2, B_4, ..., B_{2k}; grown on demand and shared.
inline mpq_class bernoulli_even(std::size_t k)
{
    static std::vector<mpq_class> all{mpq_class(1)};  // B_0, B_1, B_2, ... (every index)
    static std::mutex mu;
    std::lock_guard lock(mu);
    const std::size_t want = 2 * k;
    while (all.size() <= want) {
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        const std::size_t m = all.size();
        mpq_class acc = 0;
        mpz_class binom = 1;  // C(m+1, 0)
        for (std::size_t j = 0; j < m; ++j) {
            acc += binom * all[j];
            binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
        }
        mpq_class b = -acc / static_cast<unsigned long>(m + 1);
        b.canonicalize();
        all.push_back(b);
    }
    return all[want];
}

inline RawEnclosure enclosure_of(const ExactRatio& q, mpfr_prec_t bits)
{
    RawEnclosure out(bits);
    mpfr_set_q(out.lo.get(), q.mpq().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(out.hi.get(), q.mpq().get_mpq_t(), MPFR_RNDU);
    return out;
}

// H_n = ln n + gamma + 1/(2n) - sum_{k=1}^{K} B_2k / (2k n^2k) + R,
// |R| <= |B_{2K+2}| / ((2K+2) n^{2K+2}).
inline RawEnclosure harmonic_euler_maclaurin(std::uint64_t n, mpfr_prec_t bits)
{
    const mpfr_prec_t w = bits + 64;
    const mpz_class nz = to_mpz(n);
    const mpz_class n2 = nz * nz;
    mpq_class series(1, 2 * nz);
    series.canonicalize();
    mpz_class npow = n2;
    mpq_class err;
    mpfr_t err_f;
    mpfr_init2(err_f, 64);
    for (std::size_t k = 1;; ++k) {
        const mpq_class next = abs(bernoulli_even(k)) / (mpz_class(2 * k) * npow);
        mpfr_set_q(err_f, next.get_mpq_t(), MPFR_RNDU);
        if (!mpfr_zero_p(err_f) && mpfr_get_exp(err_f) < -(bits + 8)) {
            err = next;
            break;
        }
        if (k > 4000) {
            mpfr_clear(err_f);
            throw std::runtime_error("harmonic: asymptotic series did not converge");
        }
        series -= bernoulli_even(k) / (mpz_class(2 * k) * npow);
        npow *= n2;
    }
    mpfr_clear(err_f);
    series.canonicalize();

    const RawEnclosure g = euler_gamma_raw(bits);
    RawEnclosure out(w);
    BigFloat t(w);
    mpfr_log_ui(out.lo.get(), n, MPFR_RNDD);
    mpfr_log_ui(out.hi.get(), n, MPFR_RNDU);
    mpfr_add(out.lo.get(), out.lo.get(), g.lo.get(), MPFR_RNDD);
    mpfr_add(out.hi.get(), out.hi.get(), g.hi.get(), MPFR_RNDU);
    mpq_class lo_q = series - err, hi_q = series + err;
    mpfr_set_q(t.get(), lo_q.get_mpq_t(), MPFR_RNDD);
    mpfr_add(out.lo.get(), out.lo.get(), t.get(), MPFR_RNDD);
    mpfr_set_q(t.get(), hi_q.get_mpq_t(), MPFR_RNDU);
    mpfr_add(out.hi.get(), out.hi.get(), t.get(), MPFR_RNDU);
    return out;
}

} // namespace detail

/// Enclosure of H_n: exact rational for n <= 10^4, Euler-Maclaurin beyond.
inline RawEnclosure harmonic_raw(std::uint64_t n, mpfr_prec_t bits)
{
    if (n <= kExactHarmonicLimit) return detail::enclosure_of(harmonic_number(n), bits);
    return detail::harmonic_euler_maclaurin(n, bits);
}

struct HarmonicValue {
    std::uint64_t n = 0;
    std::optional<ExactRatio> exact;  // present for n <= 10^4
    BoundInterval enclosure;
};

inline HarmonicValue harmonic(std::uint64_t n, int precision_digits)
{
    if (n == 0) throw std::invalid_argument("harmonic: n must be positive");
    validate_precision(precision_digits);
    std::optional<ExactRatio> exact;
    if (n <= kExactHarmonicLimit) exact = harmonic_number(n);
    auto enclosure = certify(precision_digits, [&](mpfr_prec_t bits) {
        return exact ? detail::enclosure_of(*exact, bits) : detail::harmonic_euler_maclaurin(n, bits);
    });
    return {n, std::move(exact), std::move(enclosure)};
}

} // namespace abundancy
