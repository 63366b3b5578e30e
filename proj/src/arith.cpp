#include <padyn/arith.hpp>

#include <map>
#include <stdexcept>

#include <padyn/errors.hpp>

namespace padyn {

long valuation(const Integer &a, unsigned long p)
{
    if (a == 0) {
        throw DomainError("valuation of zero is infinite");
    }
    Integer rest;
    Integer prime{p};
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), prime.get_mpz_t()));
}

long valuation(const Rational &a, unsigned long p)
{
    return valuation(Integer{a.get_num()}, p) - valuation(Integer{a.get_den()}, p);
}

const Integer &prime_power(unsigned long p, long k)
{
    if (k < 0) {
        throw DomainError("negative exponent in prime_power");
    }
    thread_local std::map<unsigned long, std::vector<Integer>> cache;
    auto &powers = cache[p];
    if (powers.empty()) {
        powers.emplace_back(1);
    }
    while (static_cast<long>(powers.size()) <= k) {
        powers.push_back(powers.back() * p);
    }
    return powers[static_cast<std::size_t>(k)];
}

Integer pow_int(const Integer &base, unsigned long exponent)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rational pow_rat(const Rational &base, long exponent)
{
    if (exponent < 0) {
        if (base == 0) {
            throw DivisionByZero("zero to a negative power");
        }
        Rational inv = 1 / base;
        return pow_rat(inv, -exponent);
    }
    Rational out{pow_int(base.get_num(), static_cast<unsigned long>(exponent)),
                 pow_int(base.get_den(), static_cast<unsigned long>(exponent))};
    out.canonicalize();
    return out;
}

Integer mod(const Integer &a, const Integer &m)
{
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer mod_inverse(const Integer &a, const Integer &m)
{
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw DivisionByZero("element is not invertible modulo " + m.get_str());
    }
    return r;
}

bool is_integral_at(const Rational &q, unsigned long p)
{
    return mpz_divisible_ui_p(q.get_den_mpz_t(), p) == 0;
}

Integer reduce_mod(const Rational &q, const Integer &m)
{
    Integer num = mod(q.get_num(), m);
    if (q.get_den() == 1) {
        return num;
    }
    return mod(num * mod_inverse(q.get_den(), m), m);
}

Integer binomial(std::uint64_t n, std::uint64_t k)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Integer factorial(std::uint64_t n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

long factorial_valuation(std::uint64_t n, unsigned long p)
{
    long v = 0;
    while (n > 0) {
        n /= p;
        v += static_cast<long>(n);
    }
    return v;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    Integer z{std::to_string(n)};
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

std::uint64_t next_prime(std::uint64_t n)
{
    std::uint64_t c = n + 1;
    while (!is_prime(c)) {
        ++c;
    }
    return c;
}

namespace {

bool valid_integer_text(std::string_view s)
{
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        i = 1;
    }
    if (i >= s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            return false;
        }
    }
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (!valid_integer_text(s)) {
        throw DomainError("not a decimal integer: '" + std::string(s) + "'");
    }
    if (s[0] == '+') {
        s.remove_prefix(1);
    }
    return Integer{std::string(s)};
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational{parse_integer(text)};
    }
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) {
        throw DomainError("zero denominator in '" + std::string(text) + "'");
    }
    Rational q{num, den};
    q.canonicalize();
    return q;
}

std::string to_string(const Integer &a)
{
    return a.get_str();
}

std::string to_string(const Rational &q)
{
    return q.get_str();
}

std::size_t height_bits(const Rational &q)
{
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

std::pair<std::uint64_t, std::vector<std::uint64_t>> coarsen_classes(const std::vector<bool> &selected)
{
    const std::uint64_t modulus = selected.size();
    for (std::uint64_t d = 1; d <= modulus; ++d) {
        if (modulus % d != 0) {
            continue;
        }
        bool ok = true;
        for (std::uint64_t m = 0; ok && m < modulus; ++m) {
            ok = selected[m] == selected[m % d];
        }
        if (ok) {
            std::vector<std::uint64_t> offsets;
            for (std::uint64_t m = 0; m < d; ++m) {
                if (selected[m]) {
                    offsets.push_back(m);
                }
            }
            return {d, offsets};
        }
    }
    return {modulus, {}};
}

} // namespace padyn
