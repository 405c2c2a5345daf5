#pragma once

#include "abundancy/interval.hpp"

#include <mpfr.h>

#include <cmath>
#include <map>
#include <mutex>

namespace abundancy {

namespace detail {

inline bool negligible(const BigFloat& term, const BigFloat& sum, mpfr_prec_t bits)
{
    if (mpfr_zero_p(term.get())) return true;
    return mpfr_get_exp(term.get()) + bits + 8 < mpfr_get_exp(sum.get());
}

// Brent-McMillan:
//   gamma = A(m) - ln m - K0(2m)/I0(2m),  A(m) = sum_k a_k^2 H_k / sum_k a_k^2,  a_k = m^k/k!
// with 0 < K0(2m)/I0(2m) < pi e^{-4m}. Every term is carried as a lower and
// upper bound. Once k >= 2m consecutive terms shrink by at least half, so each
// tail is bounded by the last included term.
inline RawEnclosure euler_gamma_uncached(mpfr_prec_t bits)
{
    const mpfr_prec_t w = bits + 64;
    const auto m = static_cast<unsigned long>(std::ceil(((bits + 16) * 0.6931471805599453 + 1.2) / 4.0)) + 1;

    BigFloat a_lo(w), a_hi(w), h_lo(w), h_hi(w), inv(w);
    BigFloat v_lo(w), v_hi(w), u_lo(w), u_hi(w);
    BigFloat sv_lo(w), sv_hi(w), su_lo(w), su_hi(w);
    mpfr_set_ui(a_lo.get(), 1, MPFR_RNDN);
    mpfr_set_ui(a_hi.get(), 1, MPFR_RNDN);
    mpfr_set_ui(sv_lo.get(), 1, MPFR_RNDN);  // k = 0: a_0 = 1, H_0 = 0
    mpfr_set_ui(sv_hi.get(), 1, MPFR_RNDN);

    for (unsigned long k = 1;; ++k) {
        mpfr_mul_ui(a_lo.get(), a_lo.get(), m, MPFR_RNDD);
        mpfr_div_ui(a_lo.get(), a_lo.get(), k, MPFR_RNDD);
        mpfr_mul_ui(a_hi.get(), a_hi.get(), m, MPFR_RNDU);
        mpfr_div_ui(a_hi.get(), a_hi.get(), k, MPFR_RNDU);

        mpfr_set_ui(inv.get(), 1, MPFR_RNDN);
        mpfr_div_ui(inv.get(), inv.get(), k, MPFR_RNDD);
        mpfr_add(h_lo.get(), h_lo.get(), inv.get(), MPFR_RNDD);
        mpfr_set_ui(inv.get(), 1, MPFR_RNDN);
        mpfr_div_ui(inv.get(), inv.get(), k, MPFR_RNDU);
        mpfr_add(h_hi.get(), h_hi.get(), inv.get(), MPFR_RNDU);

        mpfr_sqr(v_lo.get(), a_lo.get(), MPFR_RNDD);
        mpfr_sqr(v_hi.get(), a_hi.get(), MPFR_RNDU);
        mpfr_mul(u_lo.get(), v_lo.get(), h_lo.get(), MPFR_RNDD);
        mpfr_mul(u_hi.get(), v_hi.get(), h_hi.get(), MPFR_RNDU);

        mpfr_add(sv_lo.get(), sv_lo.get(), v_lo.get(), MPFR_RNDD);
        mpfr_add(sv_hi.get(), sv_hi.get(), v_hi.get(), MPFR_RNDU);
        mpfr_add(su_lo.get(), su_lo.get(), u_lo.get(), MPFR_RNDD);
        mpfr_add(su_hi.get(), su_hi.get(), u_hi.get(), MPFR_RNDU);

        if (k >= 2 * m && negligible(v_hi, sv_lo, bits) && negligible(u_hi, su_lo, bits)) break;
    }
    // tails
    mpfr_add(sv_hi.get(), sv_hi.get(), v_hi.get(), MPFR_RNDU);
    mpfr_add(su_hi.get(), su_hi.get(), u_hi.get(), MPFR_RNDU);

    BigFloat log_lo(w), log_hi(w), k0(w), pi(w);
    mpfr_log_ui(log_lo.get(), m, MPFR_RNDD);
    mpfr_log_ui(log_hi.get(), m, MPFR_RNDU);
    mpfr_set_si(k0.get(), -4 * static_cast<long>(m), MPFR_RNDN);
    mpfr_exp(k0.get(), k0.get(), MPFR_RNDU);
    mpfr_const_pi(pi.get(), MPFR_RNDU);
    mpfr_mul(k0.get(), k0.get(), pi.get(), MPFR_RNDU);

    RawEnclosure out(w);
    mpfr_div(out.lo.get(), su_lo.get(), sv_hi.get(), MPFR_RNDD);
    mpfr_sub(out.lo.get(), out.lo.get(), log_hi.get(), MPFR_RNDD);
    mpfr_sub(out.lo.get(), out.lo.get(), k0.get(), MPFR_RNDD);
    mpfr_div(out.hi.get(), su_hi.get(), sv_lo.get(), MPFR_RNDU);
    mpfr_sub(out.hi.get(), out.hi.get(), log_lo.get(), MPFR_RNDU);
    return out;
}

template <class Fn>
RawEnclosure cached_enclosure(std::map<mpfr_prec_t, RawEnclosure>& cache, std::mutex& mu, mpfr_prec_t bits, Fn&& fn)
{
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(bits); it != cache.end()) return it->second;
    }
    RawEnclosure value = fn(bits);
    std::lock_guard lock(mu);
    return cache.emplace(bits, std::move(value)).first->second;
}

} // namespace detail

/// Enclosure of the Euler-Mascheroni constant at `bits` working precision. Memoized.
inline RawEnclosure euler_gamma_raw(mpfr_prec_t bits)
{
    static std::map<mpfr_prec_t, RawEnclosure> cache;
    static std::mutex mu;
    return detail::cached_enclosure(cache, mu, bits, detail::euler_gamma_uncached);
}

/// Enclosure of e^gamma at `bits` working precision. Memoized.
inline RawEnclosure exp_gamma_raw(mpfr_prec_t bits)
{
    static std::map<mpfr_prec_t, RawEnclosure> cache;
    static std::mutex mu;
    return detail::cached_enclosure(cache, mu, bits, [](mpfr_prec_t b) {
        const RawEnclosure g = euler_gamma_raw(b);
        RawEnclosure out(b + 64);
        mpfr_exp(out.lo.get(), g.lo.get(), MPFR_RNDD);
        mpfr_exp(out.hi.get(), g.hi.get(), MPFR_RNDU);
        return out;
    });
}

inline BoundInterval euler_gamma(int precision_digits)
{
    validate_precision(precision_digits);
    return certify(precision_digits, euler_gamma_raw);
}

} // namespace abundancy
