#pragma once

#include "abundancy/arith.hpp"
#include "abundancy/constants.hpp"
#include "abundancy/factorization.hpp"
#include "abundancy/harmonic.hpp"
#include "abundancy/interval.hpp"
#include "abundancy/ratio.hpp"
#include "abundancy/scan.hpp"
#include "abundancy/superabundant.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace abundancy {

enum class Verdict { Holds, Violates, Undecided };

inline std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Violates: return "Violates";
    case Verdict::Undecided: return "Undecided";
    }
    return "?";
}

inline constexpr int kDefaultPrecisionDigits = 50;
inline constexpr int kPrecisionCapDigits = 400;
inline constexpr std::uint64_t kRobinThreshold = 5041;

/// Holds: index < bound.lo. Violates: index > bound.hi. Undecided otherwise.
struct RobinReport {
    mpz_class n;
    mpz_class sigma;
    ExactRatio index;
    BoundInterval bound;
    Verdict verdict = Verdict::Undecided;
    int precision_digits = 0;
};

/// Holds: sigma <= bound.lo. Violates: sigma > bound.hi. Undecided otherwise.
struct LagariasReport {
    std::uint64_t n = 0;
    mpz_class sigma;
    BoundInterval bound;
    Verdict verdict = Verdict::Undecided;
    int precision_digits = 0;
};

namespace detail {

inline void require_loglog_defined(const mpz_class& n, const char* who)
{
    if (n < 3) throw std::invalid_argument(std::string(who) + ": n must be at least 3, got " + n.get_str());
}

// ln ln n for n >= 3, where ln n > 1 and the outer log is positive.
inline RawEnclosure loglog_raw(const mpz_class& n, mpfr_prec_t bits)
{
    const mpfr_prec_t w = bits + 32;
    RawEnclosure out(w);
    mpfr_set_z(out.lo.get(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(out.hi.get(), n.get_mpz_t(), MPFR_RNDU);
    mpfr_log(out.lo.get(), out.lo.get(), MPFR_RNDD);
    mpfr_log(out.hi.get(), out.hi.get(), MPFR_RNDU);
    mpfr_log(out.lo.get(), out.lo.get(), MPFR_RNDD);
    mpfr_log(out.hi.get(), out.hi.get(), MPFR_RNDU);
    return out;
}

// e^gamma ln ln n
inline RawEnclosure robin_bound_raw(const mpz_class& n, mpfr_prec_t bits)
{
    const RawEnclosure eg = exp_gamma_raw(bits);
    RawEnclosure out = loglog_raw(n, bits);
    mpfr_mul(out.lo.get(), out.lo.get(), eg.lo.get(), MPFR_RNDD);
    mpfr_mul(out.hi.get(), out.hi.get(), eg.hi.get(), MPFR_RNDU);
    return out;
}

// e^gamma ln ln n + 0.6483 / ln ln n
inline RawEnclosure robin_unconditional_bound_raw(const mpz_class& n, mpfr_prec_t bits)
{
    const mpfr_prec_t w = bits + 32;
    const RawEnclosure eg = exp_gamma_raw(bits);
    const RawEnclosure ll = loglog_raw(n, bits);
    RawEnclosure out(w);
    BigFloat c_lo(w), c_hi(w);
    mpfr_set_ui(c_lo.get(), 6483, MPFR_RNDN);
    mpfr_div_ui(c_lo.get(), c_lo.get(), 10000, MPFR_RNDD);
    mpfr_set_ui(c_hi.get(), 6483, MPFR_RNDN);
    mpfr_div_ui(c_hi.get(), c_hi.get(), 10000, MPFR_RNDU);
    mpfr_div(c_lo.get(), c_lo.get(), ll.hi.get(), MPFR_RNDD);
    mpfr_div(c_hi.get(), c_hi.get(), ll.lo.get(), MPFR_RNDU);
    mpfr_mul(out.lo.get(), ll.lo.get(), eg.lo.get(), MPFR_RNDD);
    mpfr_mul(out.hi.get(), ll.hi.get(), eg.hi.get(), MPFR_RNDU);
    mpfr_add(out.lo.get(), out.lo.get(), c_lo.get(), MPFR_RNDD);
    mpfr_add(out.hi.get(), out.hi.get(), c_hi.get(), MPFR_RNDU);
    return out;
}

inline Verdict compare_strict(const ExactRatio& value, const BoundInterval& bound)
{
    const mpq_srcptr q = value.mpq().get_mpq_t();
    if (mpfr_cmp_q(bound.lo().get(), q) > 0) return Verdict::Holds;
    if (mpfr_cmp_q(bound.hi().get(), q) < 0) return Verdict::Violates;
    return Verdict::Undecided;
}

inline Verdict compare_non_strict(const mpz_class& value, const BoundInterval& bound)
{
    if (mpfr_cmp_z(bound.lo().get(), value.get_mpz_t()) >= 0) return Verdict::Holds;
    if (mpfr_cmp_z(bound.hi().get(), value.get_mpz_t()) < 0) return Verdict::Violates;
    return Verdict::Undecided;
}

template <class BoundFn>
RobinReport robin_report(const mpz_class& n, const mpz_class& sig, int digits, BoundFn&& bound_raw)
{
    validate_precision(digits);
    ExactRatio index(sig, n);
    for (int d = digits;; d = std::min(2 * d, kPrecisionCapDigits)) {
        BoundInterval bound = certify(d, [&](mpfr_prec_t bits) { return bound_raw(n, bits); });
        const Verdict v = compare_strict(index, bound);
        if (v != Verdict::Undecided || d >= kPrecisionCapDigits) {
            return RobinReport{n, sig, std::move(index), std::move(bound), v, d};
        }
    }
}

} // namespace detail

/// Certified enclosure of e^gamma ln ln n.
inline BoundInterval robin_bound(const mpz_class& n, int precision_digits)
{
    detail::require_loglog_defined(n, "robin_bound");
    validate_precision(precision_digits);
    return certify(precision_digits, [&](mpfr_prec_t bits) { return detail::robin_bound_raw(n, bits); });
}

/// I(n) against e^gamma ln ln n, doubling the precision (to 400 digits) while
/// the enclosure cannot separate the two.
inline RobinReport robin_check(const Factorization& f, int precision_digits = kDefaultPrecisionDigits)
{
    const mpz_class n = f.value();
    detail::require_loglog_defined(n, "robin_check");
    return detail::robin_report(n, sigma(f), precision_digits, detail::robin_bound_raw);
}

inline RobinReport robin_check(std::uint64_t n, int precision_digits = kDefaultPrecisionDigits)
{
    detail::require_loglog_defined(to_mpz(n), "robin_check");
    return robin_check(factorize(n), precision_digits);
}

/// The unconditional form: I(n) < e^gamma ln ln n + 0.6483 / ln ln n for n >= 3.
inline RobinReport robin_unconditional_check(const Factorization& f, int precision_digits = kDefaultPrecisionDigits)
{
    const mpz_class n = f.value();
    detail::require_loglog_defined(n, "robin_unconditional_check");
    return detail::robin_report(n, sigma(f), precision_digits, detail::robin_unconditional_bound_raw);
}

inline RobinReport robin_unconditional_check(std::uint64_t n, int precision_digits = kDefaultPrecisionDigits)
{
    detail::require_loglog_defined(to_mpz(n), "robin_unconditional_check");
    return robin_unconditional_check(factorize(n), precision_digits);
}

/// Verdict counts over a range scan. Listed n are in increasing order.
struct ScanSummary {
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> violations;
    std::vector<std::uint64_t> undecided;
};

namespace detail {

template <class BoundFn>
ScanSummary robin_range_scan(std::uint64_t first, std::uint64_t last, int digits, const ScanOptions& opts, BoundFn bound_raw)
{
    validate_precision(digits);
    first = std::max<std::uint64_t>(first, 3);
    ScanSummary out;
    if (last < first) return out;
    const std::vector<std::uint64_t> sig = sigma_sieve(last);
    struct Chunk {
        std::vector<std::uint64_t> violations, undecided;
    };
    const auto chunks = scan_chunks<Chunk>(first, last + 1, opts, [&](std::uint64_t lo, std::uint64_t hi) {
        Chunk c;
        for (std::uint64_t n = lo; n < hi; ++n) {
            const RobinReport r = robin_report(to_mpz(n), to_mpz(sig[n]), digits, bound_raw);
            if (r.verdict == Verdict::Violates) c.violations.push_back(n);
            if (r.verdict == Verdict::Undecided) c.undecided.push_back(n);
        }
        return c;
    });
    out.checked = last - first + 1;
    for (const auto& c : chunks) {
        out.violations.insert(out.violations.end(), c.violations.begin(), c.violations.end());
        out.undecided.insert(out.undecided.end(), c.undecided.begin(), c.undecided.end());
    }
    return out;
}

} // namespace detail

/// robin_check over every n in [first, last].
inline ScanSummary robin_scan(std::uint64_t first, std::uint64_t last, int precision_digits = kDefaultPrecisionDigits,
                              const ScanOptions& opts = {})
{
    return detail::robin_range_scan(first, last, precision_digits, opts, detail::robin_bound_raw);
}

/// robin_unconditional_check over every n in [first, last].
inline ScanSummary robin_unconditional_scan(std::uint64_t first, std::uint64_t last,
                                            int precision_digits = kDefaultPrecisionDigits, const ScanOptions& opts = {})
{
    return detail::robin_range_scan(first, last, precision_digits, opts, detail::robin_unconditional_bound_raw);
}

inline constexpr std::uint64_t kExceptionScanLimit = 1'000'000;

/// Every n in [3, threshold) where Robin's inequality is certified to fail.
inline std::vector<std::uint64_t> exceptions_below(std::uint64_t threshold, int precision_digits = kDefaultPrecisionDigits,
                                                   const ScanOptions& opts = {})
{
    if (threshold > kExceptionScanLimit) throw std::invalid_argument("exceptions_below: threshold above 10^6");
    if (threshold <= 3) return {};
    ScanSummary s = robin_scan(3, threshold - 1, precision_digits, opts);
    if (!s.undecided.empty()) {
        throw std::runtime_error("exceptions_below: n=" + std::to_string(s.undecided.front()) +
                                 " undecided at the precision cap");
    }
    return std::move(s.violations);
}

/// Certified enclosure of I(n) / (e^gamma ln ln n).
inline BoundInterval gronwall_ratio(const Factorization& f, int precision_digits = kDefaultPrecisionDigits)
{
    const mpz_class n = f.value();
    detail::require_loglog_defined(n, "gronwall_ratio");
    validate_precision(precision_digits);
    const ExactRatio index = abundancy_index(f);
    return certify(precision_digits, [&](mpfr_prec_t bits) {
        const RawEnclosure b = detail::robin_bound_raw(n, bits);
        RawEnclosure out(bits + 32);
        mpfr_set_q(out.lo.get(), index.mpq().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(out.hi.get(), index.mpq().get_mpq_t(), MPFR_RNDU);
        mpfr_div(out.lo.get(), out.lo.get(), b.hi.get(), MPFR_RNDD);
        mpfr_div(out.hi.get(), out.hi.get(), b.lo.get(), MPFR_RNDU);
        return out;
    });
}

inline BoundInterval gronwall_ratio(std::uint64_t n, int precision_digits = kDefaultPrecisionDigits)
{
    detail::require_loglog_defined(to_mpz(n), "gronwall_ratio");
    return gronwall_ratio(factorize(n), precision_digits);
}

struct AkbaryEntry {
    RobinReport report;
    /// A Violates verdict above 5040 would contradict the Riemann Hypothesis.
    bool rh_counterexample_candidate = false;
};

/// Robin's inequality on the superabundant numbers in (5040, limit] only: if
/// the inequality ever fails past 5040, its least failure is superabundant.
inline std::vector<AkbaryEntry> akbary_scan(const mpz_class& limit, int precision_digits = kDefaultPrecisionDigits)
{
    if (limit < kRobinThreshold) throw std::invalid_argument("akbary_scan: limit must be at least 5041");
    validate_precision(precision_digits);
    std::vector<AkbaryEntry> out;
    for (const auto& rec : superabundant_structured(limit)) {
        if (rec.n < kRobinThreshold) continue;
        RobinReport r = robin_check(rec.factorization, precision_digits);
        const bool candidate = r.verdict == Verdict::Violates;
        out.push_back({std::move(r), candidate});
    }
    return out;
}

namespace detail {

// e^H ln H + H, increasing for H >= 1.
inline RawEnclosure lagarias_bound_from(const RawEnclosure& h, mpfr_prec_t bits)
{
    const mpfr_prec_t w = bits + 32;
    RawEnclosure out(w);
    BigFloat t(w);
    mpfr_exp(out.lo.get(), h.lo.get(), MPFR_RNDD);
    mpfr_log(t.get(), h.lo.get(), MPFR_RNDD);
    mpfr_mul(out.lo.get(), out.lo.get(), t.get(), MPFR_RNDD);
    mpfr_add(out.lo.get(), out.lo.get(), h.lo.get(), MPFR_RNDD);
    mpfr_exp(out.hi.get(), h.hi.get(), MPFR_RNDU);
    mpfr_log(t.get(), h.hi.get(), MPFR_RNDU);
    mpfr_mul(out.hi.get(), out.hi.get(), t.get(), MPFR_RNDU);
    mpfr_add(out.hi.get(), out.hi.get(), h.hi.get(), MPFR_RNDU);
    return out;
}

inline LagariasReport lagarias_report(std::uint64_t n, const mpz_class& sig, int digits)
{
    validate_precision(digits);
    std::optional<ExactRatio> exact;
    if (n <= kExactHarmonicLimit) exact = harmonic_number(n);
    for (int d = digits;; d = std::min(2 * d, kPrecisionCapDigits)) {
        BoundInterval bound = certify(d, [&](mpfr_prec_t bits) {
            const RawEnclosure h = exact ? enclosure_of(*exact, bits + 32) : harmonic_euler_maclaurin(n, bits + 32);
            return lagarias_bound_from(h, bits);
        });
        const Verdict v = compare_non_strict(sig, bound);
        if (v != Verdict::Undecided || d >= kPrecisionCapDigits) return LagariasReport{n, sig, std::move(bound), v, d};
    }
}

} // namespace detail

/// sigma(n) <= e^{H_n} ln H_n + H_n. At n = 1 both sides equal 1: the
/// enclosure collapses to the point 1 and the inequality holds.
inline LagariasReport lagarias_check(std::uint64_t n, int precision_digits = kDefaultPrecisionDigits)
{
    if (n == 0) throw std::invalid_argument("lagarias_check: n must be positive");
    return detail::lagarias_report(n, sigma(factorize(n)), precision_digits);
}

/// lagarias_check over [first, last]. H_n is carried as a running interval sum
/// within each chunk; an item it cannot settle goes through lagarias_check.
inline ScanSummary lagarias_scan(std::uint64_t first, std::uint64_t last, int precision_digits = kDefaultPrecisionDigits,
                                 const ScanOptions& opts = {})
{
    validate_precision(precision_digits);
    first = std::max<std::uint64_t>(first, 1);
    ScanSummary out;
    if (last < first) return out;
    const std::vector<std::uint64_t> sig = sigma_sieve(last);
    const mpfr_prec_t bits = grid_bits(precision_digits) + 64;
    struct Chunk {
        std::vector<std::uint64_t> violations, undecided;
    };
    const auto chunks = scan_chunks<Chunk>(first, last + 1, opts, [&](std::uint64_t lo, std::uint64_t hi) {
        Chunk c;
        RawEnclosure h = harmonic_raw(lo - 1, bits + 32);
        BigFloat inv(bits + 32);
        for (std::uint64_t n = lo; n < hi; ++n) {
            mpfr_set_ui(inv.get(), 1, MPFR_RNDN);
            mpfr_div_ui(inv.get(), inv.get(), n, MPFR_RNDD);
            mpfr_add(h.lo.get(), h.lo.get(), inv.get(), MPFR_RNDD);
            mpfr_set_ui(inv.get(), 1, MPFR_RNDN);
            mpfr_div_ui(inv.get(), inv.get(), n, MPFR_RNDU);
            mpfr_add(h.hi.get(), h.hi.get(), inv.get(), MPFR_RNDU);

            const RawEnclosure b = detail::lagarias_bound_from(h, bits);
            const mpz_class s = to_mpz(sig[n]);
            Verdict v = Verdict::Undecided;
            if (mpfr_cmp_z(b.lo.get(), s.get_mpz_t()) >= 0) {
                v = Verdict::Holds;
            } else if (mpfr_cmp_z(b.hi.get(), s.get_mpz_t()) < 0) {
                v = Verdict::Violates;
            } else {
                v = detail::lagarias_report(n, s, precision_digits).verdict;
            }
            if (v == Verdict::Violates) c.violations.push_back(n);
            if (v == Verdict::Undecided) c.undecided.push_back(n);
        }
        return c;
    });
    out.checked = last - first + 1;
    for (const auto& c : chunks) {
        out.violations.insert(out.violations.end(), c.violations.begin(), c.violations.end());
        out.undecided.insert(out.undecided.end(), c.undecided.begin(), c.undecided.end());
    }
    return out;
}

} // namespace abundancy
