#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include <padyn/arith.hpp>
#include <padyn/errors.hpp>

namespace padyn {

/// A prime p >= 5. Smaller primes are rejected so that v >= 1 always exceeds 1/(p-1).
class Prime {
public:
    explicit Prime(std::uint64_t p);
    unsigned long value() const noexcept { return value_; }
    friend bool operator==(Prime a, Prime b) noexcept { return a.value_ == b.value_; }

private:
    unsigned long value_;
};

struct PrecisionPolicy {
    long working_precision = 32;
    int max_retries = 3;
    long growth_factor = 2;

    void validate() const;
};

/// Runs fn(N) and on PrecisionExhausted retries with N multiplied by the growth factor.
template <class Fn>
auto with_retries(const PrecisionPolicy &policy, Fn &&fn)
{
    policy.validate();
    long n = policy.working_precision;
    for (int attempt = 0;; ++attempt) {
        try {
            return fn(n);
        } catch (const PrecisionExhausted &) {
            if (attempt >= policy.max_retries) {
                throw;
            }
            n *= policy.growth_factor;
        }
    }
}

/// Element of Q_p known to finite precision.
///
/// A nonzero value is p^v * u with u a unit known modulo p^r (r = relative precision),
/// so the value is known modulo p^(v + r). Zeros come in two flavours: the exact zero,
/// and a value only known to be divisible by p^k ("zero to precision k"), which is what
/// cancellation produces. Identically-zero verdicts must only ever rely on the former.
class PadicNumber {
public:
    static constexpr long infinite_precision = std::numeric_limits<long>::max() / 4;

    explicit PadicNumber(Prime p) : prime_(p) {}

    static PadicNumber exact_zero(Prime p);
    static PadicNumber zero_to(Prime p, long abs_precision);
    /// p^v * u known modulo p^(v + rel); strips any p-factors of u.
    static PadicNumber from_parts(Prime p, long v, const Integer &u, long rel);
    /// The class of the integer r modulo p^abs.
    static PadicNumber from_residue(const Integer &r, Prime p, long abs_precision);
    static PadicNumber from_integer(const Integer &a, Prime p, long rel_precision);

    Prime prime() const noexcept { return prime_; }
    bool is_zero() const noexcept { return zero_; }
    bool is_exact_zero() const noexcept { return zero_ && abs_ == infinite_precision; }
    /// Exact valuation for nonzero values; for zeros, the lower bound abs_precision().
    long valuation() const noexcept { return zero_ ? abs_ : val_; }
    long relative_precision() const noexcept { return zero_ ? 0 : rel_; }
    long abs_precision() const noexcept { return zero_ ? abs_ : val_ + rel_; }
    const Integer &unit() const noexcept { return unit_; }

    /// Representative in [0, p^k) of a value with v >= 0; requires k <= abs_precision().
    Integer residue(long k) const;
    /// Same value with precision capped at p^k.
    PadicNumber truncated(long k) const;

    std::string to_string() const;

private:
    Prime prime_;
    bool zero_ = true;
    long val_ = 0;
    long rel_ = 0;
    long abs_ = infinite_precision;
    Integer unit_{0};
};

PadicNumber from_rational(const Integer &a, const Integer &b, Prime p, long precision);
PadicNumber from_rational(const Rational &q, Prime p, long precision);

PadicNumber operator+(const PadicNumber &x, const PadicNumber &y);
PadicNumber operator-(const PadicNumber &x);
PadicNumber operator-(const PadicNumber &x, const PadicNumber &y);
PadicNumber operator*(const PadicNumber &x, const PadicNumber &y);
PadicNumber operator/(const PadicNumber &x, const PadicNumber &y);
PadicNumber &operator+=(PadicNumber &x, const PadicNumber &y);
PadicNumber &operator*=(PadicNumber &x, const PadicNumber &y);

PadicNumber add(const PadicNumber &x, const PadicNumber &y);
PadicNumber mul(const PadicNumber &x, const PadicNumber &y);
PadicNumber neg(const PadicNumber &x);
PadicNumber inv(const PadicNumber &x);

/// Multiplication and division by an exact integer; relative precision is kept.
PadicNumber mul_exact(const PadicNumber &x, const Integer &k);
PadicNumber div_exact(const PadicNumber &x, const Integer &k);

/// True when x and y agree modulo p^k (both must be known to at least k digits).
bool agree_to(const PadicNumber &x, const PadicNumber &y, long k);

/// exp(x) for v(x) >= 1. An exact-zero argument yields 1 to `exact_precision` digits.
PadicNumber padic_exp(const PadicNumber &x, long exact_precision = 32);
/// log(u) for u == 1 (mod p).
PadicNumber padic_log(const PadicNumber &u);
/// t(t-1)...(t-m+1)/m! for t in Z_p.
PadicNumber binom_padic(const PadicNumber &t, std::uint64_t m);

} // namespace padyn
