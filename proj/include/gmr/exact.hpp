#pragma once

#include <gmr/error.hpp>

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace gmr {

using BigInt = mpz_class;

/// Non-negative rational with arbitrary-precision numerator and denominator, always in lowest terms.
/// Subtraction is deliberately absent: every quantity the reductions manipulate (potentials,
/// partition functions, thresholds) lives in the non-negative cone.
class ExactNumber
{
  public:
    ExactNumber() = default;

    ExactNumber(long value) : _value(value) { check_sign(); }
    ExactNumber(int value) : _value(value) { check_sign(); }
    ExactNumber(unsigned long value) : _value(value) {}
    ExactNumber(unsigned value) : _value(value) {}

    explicit ExactNumber(const BigInt & integer) : _value(integer) { check_sign(); }

    static auto fraction(const BigInt & numerator, const BigInt & denominator) -> ExactNumber
    {
        if (denominator == 0)
            throw Error(ErrorKind::InvalidNumber, "zero denominator");
        ExactNumber result;
        result._value = mpq_class(numerator, denominator);
        result._value.canonicalize();
        result.check_sign();
        return result;
    }

    /// Accepts integers (`12`), fractions (`3/8`), and decimals with optional exponent (`0.25`, `1e-3`).
    /// Decimals are converted exactly.
    static auto parse(std::string_view text) -> ExactNumber
    {
        auto fail = [&]() -> ExactNumber {
            throw Error(ErrorKind::InvalidNumber, "cannot parse '" + std::string(text) + "'");
        };
        if (text.empty())
            return fail();
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            auto num = text.substr(0, slash), den = text.substr(slash + 1);
            if (! all_digits(num) || ! all_digits(den))
                return fail();
            return fraction(BigInt(std::string(num), 10), BigInt(std::string(den), 10));
        }

        std::string_view mantissa = text, exponent;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = text.substr(0, e);
            exponent = text.substr(e + 1);
            if (exponent.empty())
                return fail();
        }
        if (! mantissa.empty() && mantissa.front() == '+')
            mantissa.remove_prefix(1);
        std::string digits;
        long scale = 0;
        bool seen_dot = false, seen_digit = false;
        for (char c : mantissa) {
            if (c == '.' && ! seen_dot)
                seen_dot = true;
            else if (std::isdigit(static_cast<unsigned char>(c))) {
                digits.push_back(c);
                seen_digit = true;
                if (seen_dot)
                    --scale;
            }
            else
                return fail();
        }
        if (! seen_digit)
            return fail();
        if (! exponent.empty()) {
            bool negative = false;
            if (exponent.front() == '+' || exponent.front() == '-') {
                negative = exponent.front() == '-';
                exponent.remove_prefix(1);
            }
            if (! all_digits(exponent) || exponent.size() > 6)
                return fail();
            long e = std::stol(std::string(exponent));
            scale += negative ? -e : e;
        }
        BigInt numerator(digits, 10), ten_power;
        mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
        if (scale >= 0)
            return ExactNumber(BigInt(numerator * ten_power));
        return fraction(numerator, ten_power);
    }

    auto numerator() const -> BigInt { return _value.get_num(); }
    auto denominator() const -> BigInt { return _value.get_den(); }
    auto is_zero() const -> bool { return _value == 0; }
    auto is_integer() const -> bool { return _value.get_den() == 1; }

    auto floor() const -> BigInt
    {
        BigInt result;
        mpz_fdiv_q(result.get_mpz_t(), _value.get_num_mpz_t(), _value.get_den_mpz_t());
        return result;
    }

    auto to_double() const -> double { return _value.get_d(); }

    /// `a/b`, or just `a` for integers.
    auto to_string() const -> std::string { return _value.get_str(); }

    auto pow(unsigned long exponent) const -> ExactNumber
    {
        ExactNumber result;
        mpz_pow_ui(result._value.get_num_mpz_t(), _value.get_num_mpz_t(), exponent);
        mpz_pow_ui(result._value.get_den_mpz_t(), _value.get_den_mpz_t(), exponent);
        return result;
    }

    auto raw() const -> const mpq_class & { return _value; }

    auto operator+=(const ExactNumber & other) -> ExactNumber &
    {
        _value += other._value;
        return *this;
    }

    auto operator*=(const ExactNumber & other) -> ExactNumber &
    {
        _value *= other._value;
        return *this;
    }

    auto operator/=(const ExactNumber & other) -> ExactNumber &
    {
        if (other.is_zero())
            throw Error(ErrorKind::InvalidNumber, "division by zero");
        _value /= other._value;
        return *this;
    }

    friend auto operator+(ExactNumber a, const ExactNumber & b) -> ExactNumber { return a += b; }
    friend auto operator*(ExactNumber a, const ExactNumber & b) -> ExactNumber { return a *= b; }
    friend auto operator/(ExactNumber a, const ExactNumber & b) -> ExactNumber { return a /= b; }

    friend auto operator==(const ExactNumber & a, const ExactNumber & b) -> bool { return a._value == b._value; }
    friend auto operator<=>(const ExactNumber & a, const ExactNumber & b) -> std::strong_ordering
    {
        int c = cmp(a._value, b._value);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend auto operator<<(std::ostream & s, const ExactNumber & n) -> std::ostream & { return s << n.to_string(); }

  private:
    static auto all_digits(std::string_view s) -> bool
    {
        if (s.empty())
            return false;
        for (char c : s)
            if (! std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    }

    void check_sign() const
    {
        if (sgn(_value) < 0)
            throw Error(ErrorKind::InvalidNumber, "negative value " + _value.get_str());
    }

    mpq_class _value;
};

} // namespace gmr
