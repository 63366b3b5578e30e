#include <padyn/padic.hpp>

#include <algorithm>

namespace padyn {

Prime::Prime(std::uint64_t p) : value_(static_cast<unsigned long>(p))
{
    if (p < 5 || !is_prime(p)) {
        throw DomainError("expected a prime p >= 5, got " + std::to_string(p));
    }
}

void PrecisionPolicy::validate() const
{
    if (working_precision < 4) {
        throw DomainError("working precision must be at least 4 digits");
    }
    if (growth_factor < 2) {
        throw DomainError("precision growth factor must be at least 2");
    }
    if (max_retries < 0) {
        throw DomainError("negative retry count");
    }
}

PadicNumber PadicNumber::exact_zero(Prime p)
{
    return PadicNumber{p};
}

PadicNumber PadicNumber::zero_to(Prime p, long abs_precision)
{
    PadicNumber z{p};
    z.abs_ = abs_precision;
    return z;
}

PadicNumber PadicNumber::from_parts(Prime p, long v, const Integer &u, long rel)
{
    if (rel <= 0) {
        return zero_to(p, v + std::max(rel, 0L));
    }
    unsigned long pv = p.value();
    Integer r = mod(u, prime_power(pv, rel));
    if (r == 0) {
        return zero_to(p, v + rel);
    }
    long k = padyn::valuation(r, pv);
    PadicNumber out{p};
    out.zero_ = false;
    out.val_ = v + k;
    out.rel_ = rel - k;
    out.abs_ = out.val_ + out.rel_;
    out.unit_ = r / prime_power(pv, k);
    return out;
}

PadicNumber PadicNumber::from_residue(const Integer &r, Prime p, long abs_precision)
{
    return from_parts(p, 0, r, abs_precision);
}

PadicNumber PadicNumber::from_integer(const Integer &a, Prime p, long rel_precision)
{
    return from_rational(a, Integer{1}, p, rel_precision);
}

Integer PadicNumber::residue(long k) const
{
    if (k > abs_precision()) {
        throw PrecisionExhausted("residue mod p^" + std::to_string(k) + " requested from a value known to p^" +
                                 std::to_string(abs_precision()));
    }
    if (zero_) {
        return Integer{0};
    }
    if (val_ < 0) {
        throw DomainError("residue of a non-integral p-adic number");
    }
    if (val_ >= k) {
        return Integer{0};
    }
    unsigned long p = prime_.value();
    return mod(unit_ * prime_power(p, val_), prime_power(p, k));
}

PadicNumber PadicNumber::truncated(long k) const
{
    if (k >= abs_precision()) {
        return *this;
    }
    if (zero_) {
        return zero_to(prime_, k);
    }
    return from_parts(prime_, val_, unit_, k - val_);
}

std::string PadicNumber::to_string() const
{
    std::string p = std::to_string(prime_.value());
    if (is_exact_zero()) {
        return "0";
    }
    if (zero_) {
        return "O(" + p + "^" + std::to_string(abs_) + ")";
    }
    std::string body;
    if (val_ >= 0) {
        body = residue(abs_precision()).get_str();
    } else {
        body = unit_.get_str() + "*" + p + "^" + std::to_string(val_);
    }
    return body + " + O(" + p + "^" + std::to_string(abs_precision()) + ")";
}

PadicNumber from_rational(const Integer &a, const Integer &b, Prime p, long precision)
{
    if (b == 0) {
        throw DivisionByZero("zero denominator");
    }
    if (a == 0) {
        return PadicNumber::exact_zero(p);
    }
    unsigned long pv = p.value();
    long va = valuation(a, pv);
    long vb = valuation(b, pv);
    const Integer &m = prime_power(pv, precision);
    Integer ua = a / prime_power(pv, va);
    Integer ub = b / prime_power(pv, vb);
    Integer u = mod(ua * mod_inverse(ub, m), m);
    return PadicNumber::from_parts(p, va - vb, u, precision);
}

PadicNumber from_rational(const Rational &q, Prime p, long precision)
{
    return from_rational(Integer{q.get_num()}, Integer{q.get_den()}, p, precision);
}

PadicNumber add(const PadicNumber &x, const PadicNumber &y)
{
    if (!(x.prime() == y.prime())) {
        throw DomainError("mixing p-adic numbers over different primes");
    }
    if (x.is_exact_zero()) {
        return y;
    }
    if (y.is_exact_zero()) {
        return x;
    }
    Prime p = x.prime();
    long abs = std::min(x.abs_precision(), y.abs_precision());
    if (x.is_zero() && y.is_zero()) {
        return PadicNumber::zero_to(p, abs);
    }
    long vmin = abs;
    if (!x.is_zero()) {
        vmin = std::min(vmin, x.valuation());
    }
    if (!y.is_zero()) {
        vmin = std::min(vmin, y.valuation());
    }
    long rel = abs - vmin;
    if (rel <= 0) {
        return PadicNumber::zero_to(p, abs);
    }
    unsigned long pv = p.value();
    Integer s = 0;
    if (!x.is_zero() && x.valuation() < abs) {
        s += x.unit() * prime_power(pv, x.valuation() - vmin);
    }
    if (!y.is_zero() && y.valuation() < abs) {
        s += y.unit() * prime_power(pv, y.valuation() - vmin);
    }
    return PadicNumber::from_parts(p, vmin, s, rel);
}

PadicNumber neg(const PadicNumber &x)
{
    if (x.is_zero()) {
        return x;
    }
    return PadicNumber::from_parts(x.prime(), x.valuation(), -x.unit(), x.relative_precision());
}

PadicNumber mul(const PadicNumber &x, const PadicNumber &y)
{
    if (!(x.prime() == y.prime())) {
        throw DomainError("mixing p-adic numbers over different primes");
    }
    Prime p = x.prime();
    if (x.is_exact_zero() || y.is_exact_zero()) {
        return PadicNumber::exact_zero(p);
    }
    if (x.is_zero() || y.is_zero()) {
        // valuation() is a lower bound for zeros and exact otherwise.
        return PadicNumber::zero_to(p, x.valuation() + y.valuation());
    }
    long rel = std::min(x.relative_precision(), y.relative_precision());
    return PadicNumber::from_parts(p, x.valuation() + y.valuation(), x.unit() * y.unit(), rel);
}

PadicNumber inv(const PadicNumber &x)
{
    if (x.is_exact_zero()) {
        throw DivisionByZero("inverse of zero");
    }
    if (x.is_zero()) {
        throw PrecisionExhausted("inverse of a value indistinguishable from zero at precision " +
                                 std::to_string(x.abs_precision()));
    }
    unsigned long pv = x.prime().value();
    long rel = x.relative_precision();
    Integer u = mod_inverse(x.unit(), prime_power(pv, rel));
    return PadicNumber::from_parts(x.prime(), -x.valuation(), u, rel);
}

PadicNumber operator+(const PadicNumber &x, const PadicNumber &y)
{
    return add(x, y);
}
PadicNumber operator-(const PadicNumber &x)
{
    return neg(x);
}
PadicNumber operator-(const PadicNumber &x, const PadicNumber &y)
{
    return add(x, neg(y));
}
PadicNumber operator*(const PadicNumber &x, const PadicNumber &y)
{
    return mul(x, y);
}
PadicNumber operator/(const PadicNumber &x, const PadicNumber &y)
{
    return mul(x, inv(y));
}
PadicNumber &operator+=(PadicNumber &x, const PadicNumber &y)
{
    x = add(x, y);
    return x;
}
PadicNumber &operator*=(PadicNumber &x, const PadicNumber &y)
{
    x = mul(x, y);
    return x;
}

PadicNumber mul_exact(const PadicNumber &x, const Integer &k)
{
    Prime p = x.prime();
    if (k == 0 || x.is_exact_zero()) {
        return PadicNumber::exact_zero(p);
    }
    long vk = valuation(k, p.value());
    if (x.is_zero()) {
        return PadicNumber::zero_to(p, x.abs_precision() + vk);
    }
    Integer ku = k / prime_power(p.value(), vk);
    return PadicNumber::from_parts(p, x.valuation() + vk, x.unit() * ku, x.relative_precision());
}

PadicNumber div_exact(const PadicNumber &x, const Integer &k)
{
    Prime p = x.prime();
    if (k == 0) {
        throw DivisionByZero("division by the integer zero");
    }
    if (x.is_exact_zero()) {
        return x;
    }
    long vk = valuation(k, p.value());
    if (x.is_zero()) {
        return PadicNumber::zero_to(p, x.abs_precision() - vk);
    }
    long rel = x.relative_precision();
    const Integer &m = prime_power(p.value(), rel);
    Integer ku = k / prime_power(p.value(), vk);
    return PadicNumber::from_parts(p, x.valuation() - vk, x.unit() * mod_inverse(ku, m), rel);
}

bool agree_to(const PadicNumber &x, const PadicNumber &y, long k)
{
    PadicNumber d = x - y;
    if (d.is_zero()) {
        return d.abs_precision() >= k;
    }
    return d.valuation() >= k;
}

PadicNumber padic_exp(const PadicNumber &x, long exact_precision)
{
    Prime p = x.prime();
    long pv = static_cast<long>(p.value());
    if (x.is_exact_zero()) {
        return PadicNumber::from_integer(Integer{1}, p, exact_precision);
    }
    if (x.valuation() < 1) {
        throw DomainError("exp needs v(x) >= 1, got v(x) = " + std::to_string(x.valuation()));
    }
    long a = x.abs_precision();
    if (x.is_zero()) {
        return PadicNumber::from_residue(Integer{1}, p, a);
    }
    long v = x.valuation();
    // Terms x^k/k! have valuation >= k(v - 1/(p-1)); stop once that reaches a.
    long denom = v * (pv - 1) - 1;
    long terms = (a * (pv - 1) + denom - 1) / denom;
    long work = a + factorial_valuation(static_cast<std::uint64_t>(terms), p.value());
    PadicNumber lifted = PadicNumber::from_parts(p, v, x.unit(), work);
    PadicNumber term = PadicNumber::from_integer(Integer{1}, p, work);
    PadicNumber sum = term;
    for (long k = 1; k <= terms; ++k) {
        term = div_exact(term * lifted, Integer{k});
        sum += term;
    }
    return sum.truncated(a);
}

namespace {

long floor_log(long k, long p)
{
    long e = 0;
    while (k >= p) {
        k /= p;
        ++e;
    }
    return e;
}

} // namespace

PadicNumber padic_log(const PadicNumber &u)
{
    Prime p = u.prime();
    long pv = static_cast<long>(p.value());
    if (u.is_zero() || u.valuation() != 0) {
        throw DomainError("log needs a unit congruent to 1 mod p");
    }
    long a = u.abs_precision();
    PadicNumber z = u - PadicNumber::from_integer(Integer{1}, p, a);
    if (z.valuation() < 1) {
        throw DomainError("log needs u == 1 (mod p); u - 1 has valuation " + std::to_string(z.valuation()));
    }
    if (z.is_zero()) {
        return PadicNumber::zero_to(p, a);
    }
    long vz = z.valuation();
    // k*vz - floor(log_p k) is nondecreasing in k, so the first k reaching a bounds the tail.
    long terms = 1;
    while (terms * vz - floor_log(terms, pv) < a) {
        ++terms;
    }
    long work = a + floor_log(terms, pv);
    PadicNumber lifted = PadicNumber::from_parts(p, vz, z.unit(), work);
    PadicNumber power = lifted;
    PadicNumber sum = PadicNumber::exact_zero(p);
    for (long k = 1; k <= terms; ++k) {
        if (k > 1) {
            power = power * lifted;
        }
        PadicNumber term = div_exact(power, Integer{k});
        sum = (k % 2 == 1) ? sum + term : sum - term;
    }
    return sum.truncated(a);
}

PadicNumber binom_padic(const PadicNumber &t, std::uint64_t m)
{
    Prime p = t.prime();
    if (!t.is_zero() && t.valuation() < 0) {
        throw DomainError("binomial needs t in Z_p");
    }
    if (t.is_exact_zero()) {
        if (m == 0) {
            return PadicNumber::from_integer(Integer{1}, p, 32);
        }
        return PadicNumber::exact_zero(p);
    }
    long a = t.abs_precision();
    if (m == 0) {
        return PadicNumber::from_residue(Integer{1}, p, a);
    }
    PadicNumber num = t;
    for (std::uint64_t i = 1; i < m; ++i) {
        Integer shift{std::to_string(i)};
        num = num * (t - PadicNumber::from_integer(shift, p, a + 1));
    }
    PadicNumber out = div_exact(num, factorial(m));
    if (out.abs_precision() <= 0) {
        throw PrecisionExhausted("binomial coefficient lost all digits dividing by " + std::to_string(m) + "!");
    }
    if (!out.is_zero() && out.valuation() < 0) {
        throw PrecisionExhausted("binomial coefficient not resolved in Z_p at this precision");
    }
    return out;
}

} // namespace padyn
