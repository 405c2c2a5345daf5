#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace abundancy {

/// Thrown for text that does not parse as the expected number syntax.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline mpz_class to_mpz(std::uint64_t v)
{
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return z;
}

inline bool fits_u64(const mpz_class& z)
{
    return sgn(z) >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const mpz_class& z)
{
    if (!fits_u64(z)) {
        throw std::out_of_range("integer does not fit in 64 bits: " + z.get_str());
    }
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
}

/// Parses a non-negative decimal integer of any length.
inline mpz_class parse_integer(std::string_view text)
{
    if (text.empty()) throw ParseError("empty integer");
    for (char c : text) {
        if (c < '0' || c > '9') throw ParseError("malformed integer: '" + std::string(text) + "'");
    }
    return mpz_class(std::string(text), 10);
}

/// Non-negative rational kept in lowest terms with a positive denominator.
class ExactRatio {
public:
    ExactRatio() = default;
    ExactRatio(std::uint64_t value) : value_(to_mpz(value)) {}
    explicit ExactRatio(const mpz_class& value) : value_(value) { check_sign(); }

    ExactRatio(const mpz_class& num, const mpz_class& den)
    {
        if (den == 0) throw std::invalid_argument("zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
        check_sign();
    }

    /// Accepts "r/s" or a bare integer. The result is reduced.
    static ExactRatio parse(std::string_view text)
    {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos) return ExactRatio(parse_integer(text));
        const mpz_class den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return ExactRatio(parse_integer(text.substr(0, slash)), den);
    }

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& mpq() const { return value_; }

    bool is_integer() const { return value_.get_den() == 1; }

    /// Always "num/den", including integers ("2/1").
    std::string to_string() const
    {
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    /// Rounded to nearest with `places` digits after the point.
    std::string to_decimal(int places) const
    {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
        mpz_class scaled = value_.get_num() * scale * 2 + value_.get_den();
        mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), mpz_class(value_.get_den() * 2).get_mpz_t());
        std::string digits = scaled.get_str();
        if (places == 0) return digits;
        if (digits.size() <= static_cast<std::size_t>(places)) {
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
        return digits;
    }

    friend ExactRatio operator+(const ExactRatio& a, const ExactRatio& b) { return from_mpq(a.value_ + b.value_); }
    friend ExactRatio operator*(const ExactRatio& a, const ExactRatio& b) { return from_mpq(a.value_ * b.value_); }
    friend ExactRatio operator/(const ExactRatio& a, const ExactRatio& b)
    {
        if (sgn(b.value_) == 0) throw std::domain_error("division by zero ratio");
        return from_mpq(a.value_ / b.value_);
    }
    ExactRatio& operator+=(const ExactRatio& other) { value_ += other.value_; return *this; }
    ExactRatio& operator*=(const ExactRatio& other) { value_ *= other.value_; return *this; }

    friend bool operator==(const ExactRatio& a, const ExactRatio& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const ExactRatio& a, const ExactRatio& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    static ExactRatio from_mpq(mpq_class q)
    {
        ExactRatio r;
        r.value_ = std::move(q);
        r.value_.canonicalize();
        return r;
    }

    void check_sign() const
    {
        if (sgn(value_) < 0) throw std::invalid_argument("ExactRatio must be non-negative");
    }

    mpq_class value_{0};
};

} // namespace abundancy
