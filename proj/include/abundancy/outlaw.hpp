#pragma once

#include "abundancy/arith.hpp"
#include "abundancy/factorization.hpp"
#include "abundancy/primes.hpp"
#include "abundancy/ratio.hpp"
#include "abundancy/scan.hpp"

#include <gmpxx.h>

#include <atomic>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

namespace abundancy {

enum class OutlawStatus { Index, Outlaw, Unknown };
enum class OutlawRule { WeinerRange, Family2p, FamilyPQ, FamilyEvenPerfect };

inline std::string_view to_string(OutlawStatus s)
{
    switch (s) {
    case OutlawStatus::Index: return "Index";
    case OutlawStatus::Outlaw: return "Outlaw";
    case OutlawStatus::Unknown: return "Unknown";
    }
    return "?";
}

inline std::string_view to_string(OutlawRule r)
{
    switch (r) {
    case OutlawRule::WeinerRange: return "WeinerRange";
    case OutlawRule::Family2p: return "Family2p";
    case OutlawRule::FamilyPQ: return "FamilyPQ";
    case OutlawRule::FamilyEvenPerfect: return "FamilyEvenPerfect";
    }
    return "?";
}

// Preconditions of each outlaw rule, kept so a verdict can be re-checked.

/// k/m in lowest terms with m < k < sigma(m).
struct WeinerCertificate {
    mpz_class k;
    mpz_class m;
    mpz_class sigma_m;
};
/// (sigma(2p) + 1) / 2p with p > 3 prime.
struct Family2pCertificate {
    std::uint64_t p = 0;
};
/// (sigma(pq) + 1) / pq with p < q primes, q > 3, gcd(p, q+2) = gcd(q, p+2) = 1.
struct FamilyPQCertificate {
    std::uint64_t p = 0;
    std::uint64_t q = 0;
};
/// (sigma(2N) + 1) / 2N with N = 2^(e-1) (2^e - 1) an even perfect number.
struct EvenPerfectCertificate {
    mpz_class perfect;
    unsigned long mersenne_exponent = 0;
};

using OutlawCertificate = std::variant<WeinerCertificate, Family2pCertificate, FamilyPQCertificate, EvenPerfectCertificate>;

inline OutlawRule rule_of(const OutlawCertificate& c)
{
    return static_cast<OutlawRule>(c.index());
}

/// Exactly one of witness / certificate / search bound, matching the status.
class OutlawVerdict {
public:
    static OutlawVerdict index(std::uint64_t witness)
    {
        OutlawVerdict v;
        v.status_ = OutlawStatus::Index;
        v.witness_ = witness;
        return v;
    }
    static OutlawVerdict outlaw(OutlawCertificate certificate)
    {
        OutlawVerdict v;
        v.status_ = OutlawStatus::Outlaw;
        v.certificate_ = std::move(certificate);
        return v;
    }
    static OutlawVerdict unknown(std::uint64_t search_bound)
    {
        OutlawVerdict v;
        v.status_ = OutlawStatus::Unknown;
        v.search_bound_ = search_bound;
        return v;
    }

    OutlawStatus status() const { return status_; }
    const std::optional<std::uint64_t>& witness() const { return witness_; }
    const std::optional<OutlawCertificate>& certificate() const { return certificate_; }
    std::optional<OutlawRule> rule() const
    {
        if (!certificate_) return std::nullopt;
        return rule_of(*certificate_);
    }
    const std::optional<std::uint64_t>& search_bound() const { return search_bound_; }

private:
    OutlawVerdict() = default;

    OutlawStatus status_ = OutlawStatus::Unknown;
    std::optional<std::uint64_t> witness_;
    std::optional<OutlawCertificate> certificate_;
    std::optional<std::uint64_t> search_bound_;
};

namespace detail {

inline mpz_class sigma_of(const mpz_class& m)
{
    return sigma(factorize(m));
}

inline void require_above_one(const ExactRatio& q, const char* who)
{
    if (q <= ExactRatio(1)) throw std::domain_error(std::string(who) + ": q must exceed 1, got " + q.to_string());
}

inline void require_prime(std::uint64_t p, const char* who)
{
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
}

} // namespace detail

inline std::optional<WeinerCertificate> weiner_certificate(const ExactRatio& q)
{
    detail::require_above_one(q, "weiner_outlaw_check");
    const mpz_class k = q.numerator(), m = q.denominator();
    mpz_class s = detail::sigma_of(m);
    if (m < k && k < s) return WeinerCertificate{k, m, std::move(s)};
    return std::nullopt;
}

/// k/m (lowest terms) with m < k < sigma(m) is never an abundancy index.
inline bool weiner_outlaw_check(const ExactRatio& q)
{
    return weiner_certificate(q).has_value();
}

struct FamilyMember {
    ExactRatio value;
    OutlawVerdict verdict;
};

/// (sigma(2p) + 1) / 2p: an outlaw for p > 3, I(6) for p = 2, I(18) for p = 3.
inline FamilyMember family_2p(std::uint64_t p)
{
    detail::require_prime(p, "family_2p");
    const mpz_class two_p = to_mpz(p) * 2;
    ExactRatio value(detail::sigma_of(two_p) + 1, two_p);
    if (p == 2) return {std::move(value), OutlawVerdict::index(6)};
    if (p == 3) return {std::move(value), OutlawVerdict::index(18)};
    return {std::move(value), OutlawVerdict::outlaw(Family2pCertificate{p})};
}

inline bool family_pq_applies(std::uint64_t p, std::uint64_t q)
{
    return q > 3 && q > p && std::gcd(p, q + 2) == 1 && std::gcd(q, p + 2) == 1;
}

/// (sigma(pq) + 1) / pq when the family conditions hold; nothing otherwise
/// (twin primes q = p + 2 in particular).
inline std::optional<FamilyMember> family_pq(std::uint64_t p, std::uint64_t q)
{
    detail::require_prime(p, "family_pq");
    detail::require_prime(q, "family_pq");
    if (!family_pq_applies(p, q)) return std::nullopt;
    const mpz_class pz = to_mpz(p), qz = to_mpz(q);
    ExactRatio value((pz + 1) * (qz + 1) + 1, pz * qz);
    return FamilyMember{std::move(value), OutlawVerdict::outlaw(FamilyPQCertificate{p, q})};
}

/// Mersenne exponent e when n = 2^(e-1) (2^e - 1) with 2^e - 1 prime.
inline std::optional<unsigned long> even_perfect_exponent(const mpz_class& n)
{
    if (n < 6) return std::nullopt;
    const unsigned long twos = mpz_scan1(n.get_mpz_t(), 0);
    mpz_class odd;
    mpz_tdiv_q_2exp(odd.get_mpz_t(), n.get_mpz_t(), twos);
    const unsigned long e = twos + 1;
    mpz_class mersenne;
    mpz_ui_pow_ui(mersenne.get_mpz_t(), 2, e);
    mersenne -= 1;
    if (odd != mersenne || !lucas_lehmer(e)) return std::nullopt;
    return e;
}

/// (sigma(2N) + 1) / 2N for an even perfect N.
inline FamilyMember family_even_perfect(const mpz_class& n)
{
    const auto e = even_perfect_exponent(n);
    if (!e) throw std::invalid_argument("family_even_perfect: " + n.get_str() + " is not an even perfect number");
    // 2N = 2^e (2^e - 1), so sigma(2N) = (2^(e+1) - 1)(2^e)
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, *e);
    const mpz_class s = (2 * pow2 - 1) * pow2;
    const mpz_class two_n = 2 * n;
    return {ExactRatio(s + 1, two_n), OutlawVerdict::outlaw(EvenPerfectCertificate{n, *e})};
}

/// True when gcd(sigma(n), n) reduces sigma(n)/n to exactly r/s.
inline bool index_equals(std::uint64_t n, const mpz_class& r, const mpz_class& s)
{
    const mpz_class sig = sigma(factorize(n));
    const mpz_class nz = to_mpz(n);
    return sig * s == r * nz;
}

/// Smallest n <= bound with I(n) = q. Writing q = r/s in lowest terms,
/// s sigma(n) = r n and gcd(r, s) = 1 force s | n, so only multiples of s are
/// tried.
inline std::optional<std::uint64_t> find_index_witness(const ExactRatio& q, std::uint64_t bound, const ScanOptions& opts = {})
{
    if (q < ExactRatio(1)) throw std::domain_error("find_index_witness: q must be at least 1");
    const mpz_class r = q.numerator(), s = q.denominator();
    if (!fits_u64(s) || to_u64(s) > bound) return std::nullopt;
    const std::uint64_t step = to_u64(s);
    const std::uint64_t multiples = bound / step;

    constexpr auto none = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> best{none};
    const auto found = scan_chunks<std::uint64_t>(1, multiples + 1, opts, [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t j = lo; j < hi; ++j) {
            if (j >= best.load(std::memory_order_relaxed)) return none;
            if (index_equals(j * step, r, s)) {
                std::uint64_t cur = best.load();
                while (j < cur && !best.compare_exchange_weak(cur, j)) {
                }
                return j * step;
            }
        }
        return none;
    });
    for (std::uint64_t w : found) {
        if (w != none) return w;
    }
    return std::nullopt;
}

namespace detail {

inline std::optional<Family2pCertificate> match_family_2p(const ExactRatio& q)
{
    const mpz_class r = q.numerator(), s = q.denominator();
    if (!fits_u64(s) || mpz_odd_p(s.get_mpz_t())) return std::nullopt;
    const std::uint64_t p = to_u64(s) / 2;
    if (p <= 3 || !is_prime(p)) return std::nullopt;
    if (r != detail::sigma_of(s) + 1) return std::nullopt;
    return Family2pCertificate{p};
}

inline std::optional<FamilyPQCertificate> match_family_pq(const ExactRatio& q)
{
    const mpz_class r = q.numerator(), s = q.denominator();
    if (!fits_u64(s)) return std::nullopt;
    const Factorization f = factorize(s);
    if (f.size() != 2 || f.pairs()[0].exponent != 1 || f.pairs()[1].exponent != 1) return std::nullopt;
    const std::uint64_t p = f.pairs()[0].prime, qq = f.pairs()[1].prime;
    if (!family_pq_applies(p, qq)) return std::nullopt;
    if (r != (to_mpz(p) + 1) * (to_mpz(qq) + 1) + 1) return std::nullopt;
    return FamilyPQCertificate{p, qq};
}

inline std::optional<EvenPerfectCertificate> match_family_even_perfect(const ExactRatio& q)
{
    const mpz_class s = q.denominator();
    if (mpz_odd_p(s.get_mpz_t())) return std::nullopt;
    const mpz_class n = s / 2;
    const auto e = even_perfect_exponent(n);
    if (!e) return std::nullopt;
    if (family_even_perfect(n).value != q) return std::nullopt;
    return EvenPerfectCertificate{n, *e};
}

} // namespace detail

/// (p+2)/p with p and p+2 both prime. Whether any of these is an abundancy
/// index is open (5/3 would force an odd perfect number), so they are never
/// declared outlaws.
inline bool is_twin_prime_ratio(const ExactRatio& q)
{
    const mpz_class r = q.numerator(), s = q.denominator();
    if (!fits_u64(s) || r != s + 2) return false;
    const std::uint64_t p = to_u64(s);
    return is_prime(p) && p <= std::numeric_limits<std::uint64_t>::max() - 2 && is_prime(p + 2);
}

inline constexpr std::uint64_t kDefaultSearchBound = 1'000'000;

/// Certificates first (Weiner range, then the 2p, pq and even-perfect
/// families), then a witness search up to `bound`; Unknown when all fail.
/// An index r/s always has r >= sigma(s); for q > 1 that test is the Weiner range
/// again (s < r), so it gets no separate rule.
inline OutlawVerdict classify_rational(const ExactRatio& q, std::uint64_t bound = kDefaultSearchBound, const ScanOptions& opts = {})
{
    detail::require_above_one(q, "classify_rational");
    if (!is_twin_prime_ratio(q)) {
        if (auto c = weiner_certificate(q)) return OutlawVerdict::outlaw(std::move(*c));
        if (auto c = detail::match_family_2p(q)) return OutlawVerdict::outlaw(*c);
        if (auto c = detail::match_family_pq(q)) return OutlawVerdict::outlaw(*c);
        if (auto c = detail::match_family_even_perfect(q)) return OutlawVerdict::outlaw(std::move(*c));
    }
    if (auto w = find_index_witness(q, bound, opts)) return OutlawVerdict::index(*w);
    return OutlawVerdict::unknown(bound);
}

/// Re-checks a verdict against q from scratch.
inline bool recheck(const ExactRatio& q, const OutlawVerdict& v)
{
    switch (v.status()) {
    case OutlawStatus::Index:
        return v.witness() && abundancy_index(factorize(*v.witness())) == q;
    case OutlawStatus::Unknown:
        return v.search_bound().has_value() && !v.witness() && !v.certificate();
    case OutlawStatus::Outlaw:
        break;
    }
    if (!v.certificate() || is_twin_prime_ratio(q)) return false;
    return std::visit(
        [&](const auto& c) -> bool {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WeinerCertificate>) {
                return c.k == q.numerator() && c.m == q.denominator() && c.sigma_m == detail::sigma_of(c.m) && c.m < c.k &&
                       c.k < c.sigma_m;
            } else if constexpr (std::is_same_v<T, Family2pCertificate>) {
                return c.p > 3 && family_2p(c.p).value == q;
            } else if constexpr (std::is_same_v<T, FamilyPQCertificate>) {
                const auto m = family_pq(c.p, c.q);
                return m && m->value == q;
            } else {
                return even_perfect_exponent(c.perfect) == c.mersenne_exponent && family_even_perfect(c.perfect).value == q;
            }
        },
        *v.certificate());
}

/// One-line human description of a verdict, e.g. "Outlaw (Weiner: 4 < 5 < σ(4)=7)".
inline std::string describe(const OutlawVerdict& v)
{
    switch (v.status()) {
    case OutlawStatus::Index:
        return "Index (witness n=" + std::to_string(*v.witness()) + ")";
    case OutlawStatus::Unknown:
        return "Unknown (no witness up to " + std::to_string(*v.search_bound()) + ")";
    case OutlawStatus::Outlaw:
        break;
    }
    const std::string detail = std::visit(
        [](const auto& c) -> std::string {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, WeinerCertificate>) {
                return "Weiner: " + c.m.get_str() + " < " + c.k.get_str() + " < σ(" + c.m.get_str() + ")=" + c.sigma_m.get_str();
            } else if constexpr (std::is_same_v<T, Family2pCertificate>) {
                return "(σ(2p)+1)/2p family, p=" + std::to_string(c.p);
            } else if constexpr (std::is_same_v<T, FamilyPQCertificate>) {
                return "(σ(pq)+1)/pq family, p=" + std::to_string(c.p) + ", q=" + std::to_string(c.q);
            } else {
                return "(σ(2N)+1)/2N family, N=" + c.perfect.get_str() + " even perfect";
            }
        },
        *v.certificate());
    return "Outlaw (" + detail + ")";
}

} // namespace abundancy
