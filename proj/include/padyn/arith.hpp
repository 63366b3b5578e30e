#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace padyn {

using Integer = mpz_class;
using Rational = mpq_class;

/// Number of times p divides a nonzero integer.
long valuation(const Integer &a, unsigned long p);
long valuation(const Rational &a, unsigned long p);

/// Cached p^k for the calling thread.
const Integer &prime_power(unsigned long p, long k);

Integer pow_int(const Integer &base, unsigned long exponent);
Rational pow_rat(const Rational &base, long exponent);

/// Least non-negative residue.
Integer mod(const Integer &a, const Integer &m);

/// Inverse of a modulo m; throws DivisionByZero when gcd(a, m) != 1.
Integer mod_inverse(const Integer &a, const Integer &m);

/// True when the denominator of q is prime to p.
bool is_integral_at(const Rational &q, unsigned long p);

/// Image of a p-integral rational in Z / m; the denominator must be a unit mod m.
Integer reduce_mod(const Rational &q, const Integer &m);

Integer binomial(std::uint64_t n, std::uint64_t k);
Integer factorial(std::uint64_t n);

/// Legendre's formula for v_p(n!).
long factorial_valuation(std::uint64_t n, unsigned long p);

bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);

/// Parses "a", "-a" or "a/b" with arbitrary-length decimal integers.
Rational parse_rational(std::string_view text);
std::string to_string(const Integer &a);
std::string to_string(const Rational &q);

/// Bit size of numerator plus denominator.
std::size_t height_bits(const Rational &q);

/// Given which residues 0..modulus-1 are selected, the smallest divisor d of modulus such that the
/// selection is a union of classes mod d, and the selected residues mod d.
std::pair<std::uint64_t, std::vector<std::uint64_t>> coarsen_classes(const std::vector<bool> &selected);

} // namespace padyn
