#pragma once

#include "abundancy/ratio.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace abundancy {

/// Owning handle for one mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = 64)
    {
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& other)
    {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& other) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    BigFloat& operator=(const BigFloat& other)
    {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& other) noexcept
    {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    /// Fixed notation with `places` fractional digits, rounded in direction `rnd`.
    std::string to_fixed(int places, mpfr_rnd_t rnd) const
    {
        char* buf = nullptr;
        const char* fmt = rnd == MPFR_RNDD ? "%.*RDf" : rnd == MPFR_RNDU ? "%.*RUf" : "%.*RNf";
        if (mpfr_asprintf(&buf, fmt, places, v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

/// Lower and upper bound from one evaluation at a fixed working precision.
struct RawEnclosure {
    BigFloat lo;
    BigFloat hi;

    explicit RawEnclosure(mpfr_prec_t bits) : lo(bits), hi(bits) {}
};

inline constexpr int kMinPrecisionDigits = 10;
inline constexpr int kMaxPrecisionDigits = 1000;

inline void validate_precision(int digits)
{
    if (digits < kMinPrecisionDigits || digits > kMaxPrecisionDigits) {
        throw std::invalid_argument("precision must be in [10, 1000] digits, got " + std::to_string(digits));
    }
}

/// Binary grid exponent b with 2^-b <= 10^-digits.
inline mpfr_prec_t grid_bits(int digits)
{
    // 3.3219281 > log2(10)
    return static_cast<mpfr_prec_t>((static_cast<long>(digits) * 33219281L + 9999999L) / 10000000L);
}

/// Certified enclosure [lo, hi] of a real quantity. The endpoints sit on the
/// grid 2^-grid_bits(precision_digits); an enclosure at higher precision
/// always lies inside one at lower precision.
class BoundInterval {
public:
    BoundInterval(BigFloat lo, BigFloat hi, int precision_digits)
        : lo_(std::move(lo)), hi_(std::move(hi)), digits_(precision_digits)
    {
        if (mpfr_cmp(lo_.get(), hi_.get()) > 0) throw std::logic_error("BoundInterval with lo > hi");
    }

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    int precision_digits() const { return digits_; }

    bool contains(const ExactRatio& q) const
    {
        return mpfr_cmp_q(lo_.get(), q.mpq().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.mpq().get_mpq_t()) >= 0;
    }
    bool contains(const BoundInterval& inner) const
    {
        return mpfr_cmp(lo_.get(), inner.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), inner.hi_.get()) >= 0;
    }
    bool intersects(const BoundInterval& other) const
    {
        return mpfr_cmp(lo_.get(), other.hi_.get()) <= 0 && mpfr_cmp(other.lo_.get(), hi_.get()) <= 0;
    }

    /// Exact: endpoints are dyadic, so the difference is computed without rounding.
    BigFloat width() const
    {
        BigFloat w(std::max(lo_.precision(), hi_.precision()) + 64);
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }

    /// hi - lo <= 10^-(precision_digits - 2).
    bool width_within_tolerance() const
    {
        const BigFloat w = width();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits_ - 2));
        BigFloat scaled(w.precision() + static_cast<mpfr_prec_t>(mpz_sizeinbase(scale.get_mpz_t(), 2)) + 8);
        mpfr_mul_z(scaled.get(), w.get(), scale.get_mpz_t(), MPFR_RNDU);
        return mpfr_cmp_ui(scaled.get(), 1) <= 0;
    }

    // Outward-rounded decimal strings with three guard digits.
    std::string lo_decimal() const { return lo_.to_fixed(digits_ + 3, MPFR_RNDD); }
    std::string hi_decimal() const { return hi_.to_fixed(digits_ + 3, MPFR_RNDU); }

    std::string midpoint_decimal(int places) const
    {
        BigFloat mid(std::max(lo_.precision(), hi_.precision()) + 2);
        mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
        return mid.to_fixed(places, MPFR_RNDN);
    }

private:
    BigFloat lo_;
    BigFloat hi_;
    int digits_;
};

namespace detail {

// floor or ceil of x * 2^b as an exact dyadic at scale 2^-b.
inline BigFloat snap_to_grid(const BigFloat& x, mpfr_prec_t b, bool down)
{
    BigFloat scaled(x.precision());
    mpfr_mul_2si(scaled.get(), x.get(), b, MPFR_RNDN);  // exact
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), scaled.get(), down ? MPFR_RNDD : MPFR_RNDU);
    const auto bits = static_cast<mpfr_prec_t>(std::max<std::size_t>(mpz_sizeinbase(z.get_mpz_t(), 2), 2));
    BigFloat out(bits);
    mpfr_set_z(out.get(), z.get_mpz_t(), MPFR_RNDN);  // exact
    mpfr_div_2si(out.get(), out.get(), b, MPFR_RNDN);  // exact
    return out;
}

} // namespace detail

/// Evaluates `compute(bits)` -> RawEnclosure at increasing working precision
/// until its width is below 2^-(b+20), b = grid_bits(digits), then widens it by
/// 2^-(b+16) and rounds outward to the 2^-b grid.
///
/// With these margins an enclosure at digits q > p always nests inside the one
/// at p: both raw enclosures hold the true value, and the p-margin exceeds the
/// raw width plus margin at q.
template <class Compute>
BoundInterval certify(int digits, Compute&& compute)
{
    const mpfr_prec_t b = grid_bits(digits);
    for (mpfr_prec_t bits = b + 64; bits <= (mpfr_prec_t{1} << 22); bits *= 2) {
        RawEnclosure raw = compute(bits);
        BigFloat w(bits + 16);
        mpfr_sub(w.get(), raw.hi.get(), raw.lo.get(), MPFR_RNDU);
        if (mpfr_cmp_ui_2exp(w.get(), 1, -(b + 20)) > 0) continue;

        if (mpfr_equal_p(raw.lo.get(), raw.hi.get())) {
            // an exactly computed grid point is its own enclosure at every precision
            BigFloat scaled(raw.lo.precision());
            mpfr_mul_2si(scaled.get(), raw.lo.get(), b, MPFR_RNDN);
            if (mpfr_integer_p(scaled.get())) return BoundInterval(raw.lo, raw.hi, digits);
        }

        BigFloat lo(raw.lo.precision() + 32), hi(raw.hi.precision() + 32);
        mpfr_sub_ui(lo.get(), raw.lo.get(), 0, MPFR_RNDD);
        mpfr_add_ui(hi.get(), raw.hi.get(), 0, MPFR_RNDU);
        BigFloat margin(8);
        mpfr_set_ui_2exp(margin.get(), 1, -(b + 16), MPFR_RNDN);
        mpfr_sub(lo.get(), lo.get(), margin.get(), MPFR_RNDD);
        mpfr_add(hi.get(), hi.get(), margin.get(), MPFR_RNDU);
        return BoundInterval(detail::snap_to_grid(lo, b, true), detail::snap_to_grid(hi, b, false), digits);
    }
    throw std::runtime_error("certify: enclosure did not tighten; working precision exhausted");
}

} // namespace abundancy
