// Independent reference computations for tests. Deliberately naive: plain big integers,
// direct iteration and brute-force enumeration, sharing no code paths with the library
// beyond the GMP number types and the Polynomial container.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include <padyn/polynomial.hpp>

namespace oracle {

using padyn::Exponent;
using padyn::Polynomial;
using padyn::PolySelfMap;

inline mpz_class pow_mod(const mpz_class &base, unsigned long e, const mpz_class &m)
{
    mpz_class out;
    mpz_powm_ui(out.get_mpz_t(), base.get_mpz_t(), e, m.get_mpz_t());
    return out;
}

inline mpz_class power(unsigned long p, unsigned long k)
{
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), p, k);
    return out;
}

inline mpz_class reduce(const mpq_class &q, const mpz_class &m)
{
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::runtime_error("denominator not invertible");
    }
    mpz_class r = (q.get_num() * inv) % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

/// Value of a polynomial at an integer point, reduced mod m, by expanding every monomial.
inline mpz_class eval_mod(const Polynomial &poly, const std::vector<mpz_class> &x, const mpz_class &m)
{
    mpz_class acc = 0;
    for (const auto &[e, c] : poly.terms()) {
        mpz_class t = reduce(c, m);
        for (std::size_t i = 0; i < e.size(); ++i) {
            t = (t * pow_mod(x[i], e[i], m)) % m;
        }
        acc += t;
    }
    acc %= m;
    if (acc < 0) {
        acc += m;
    }
    return acc;
}

/// f^0(x), ..., f^(count-1)(x) modulo m.
inline std::vector<std::vector<mpz_class>> orbit_mod(const PolySelfMap &f, const std::vector<mpq_class> &x,
                                                     const mpz_class &m, std::size_t count)
{
    std::vector<std::vector<mpz_class>> out;
    std::vector<mpz_class> cur;
    for (const auto &q : x) {
        cur.push_back(reduce(q, m));
    }
    for (std::size_t n = 0; n < count; ++n) {
        out.push_back(cur);
        std::vector<mpz_class> next;
        for (const auto &c : f.components()) {
            next.push_back(eval_mod(c, cur, m));
        }
        cur = std::move(next);
    }
    return out;
}

inline mpq_class eval_exact(const Polynomial &poly, const std::vector<mpq_class> &x)
{
    mpq_class acc = 0;
    for (const auto &[e, c] : poly.terms()) {
        mpq_class t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::uint32_t k = 0; k < e[i]; ++k) {
                t *= x[i];
            }
        }
        acc += t;
    }
    return acc;
}

inline std::vector<mpq_class> step_exact(const PolySelfMap &f, const std::vector<mpq_class> &x)
{
    std::vector<mpq_class> out;
    for (const auto &c : f.components()) {
        out.push_back(eval_exact(c, x));
    }
    return out;
}

/// First repeat in the exact orbit within `limit` steps: (preperiod, period).
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> exact_repeat(const PolySelfMap &f,
                                                                           std::vector<mpq_class> x,
                                                                           std::uint64_t limit)
{
    std::map<std::vector<mpq_class>, std::uint64_t> seen;
    for (std::uint64_t n = 0; n <= limit; ++n) {
        auto [it, fresh] = seen.emplace(x, n);
        if (!fresh) {
            return std::make_pair(it->second, n - it->second);
        }
        x = step_exact(f, x);
    }
    return std::nullopt;
}

/// a_0..a_{count-1} of a_{n+r} = sum c_i a_{n+i}.
inline std::vector<mpq_class> recurrence(const std::vector<mpq_class> &c, const std::vector<mpq_class> &a0,
                                         std::size_t count)
{
    std::vector<mpq_class> a = a0;
    while (a.size() < count) {
        mpq_class next = 0;
        std::size_t base = a.size() - c.size();
        for (std::size_t i = 0; i < c.size(); ++i) {
            next += c[i] * a[base + i];
        }
        a.push_back(next);
    }
    a.resize(count);
    return a;
}

/// Brute-force resonances (target, exponent) with 2 <= |m| <= d, by odometer enumeration.
inline std::vector<std::pair<std::size_t, Exponent>> resonances(const std::vector<mpq_class> &lambda, unsigned d)
{
    std::vector<std::pair<std::size_t, Exponent>> out;
    const std::size_t n = lambda.size();
    Exponent e(n, 0);
    for (;;) {
        std::size_t i = 0;
        while (i < n && e[i] == d) {
            e[i] = 0;
            ++i;
        }
        if (i == n) {
            break;
        }
        ++e[i];
        unsigned total = 0;
        for (auto k : e) {
            total += k;
        }
        if (total < 2 || total > d) {
            continue;
        }
        mpq_class v = 1;
        for (std::size_t k = 0; k < n; ++k) {
            for (std::uint32_t t = 0; t < e[k]; ++t) {
                v *= lambda[k];
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (v == lambda[j]) {
                out.emplace_back(j, e);
            }
        }
    }
    return out;
}

/// Truncated exp(x) = sum x^k / k! and log(1+z) = sum (-1)^(k+1) z^k / k as exact rationals.
inline mpq_class exp_partial(const mpq_class &x, unsigned terms)
{
    mpq_class acc = 0;
    mpq_class t = 1;
    for (unsigned k = 0; k < terms; ++k) {
        acc += t;
        t = t * x / (k + 1);
    }
    return acc;
}

} // namespace oracle
