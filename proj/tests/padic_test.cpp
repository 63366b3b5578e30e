#include <random>

#include <gtest/gtest.h>

#include <padyn/padic.hpp>

#include "oracles.hpp"

using namespace padyn;

namespace {

const Prime p5{5};

PadicNumber num(long a, long precision = 20)
{
    return from_rational(Rational{a}, p5, precision);
}

} // namespace

TEST(Prime, RejectsSmallAndComposite)
{
    EXPECT_THROW(Prime{2}, DomainError);
    EXPECT_THROW(Prime{3}, DomainError);
    EXPECT_THROW(Prime{9}, DomainError);
    EXPECT_EQ(Prime{7}.value(), 7u);
}

TEST(Arith, Valuations)
{
    EXPECT_EQ(valuation(Integer{250}, 5), 3);
    EXPECT_EQ(valuation(Rational{2, 25}, 5), -2);
    EXPECT_THROW(valuation(Integer{0}, 5), DomainError);
    EXPECT_EQ(factorial_valuation(25, 5), 6);
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("x"), DomainError);
}

TEST(Padic, FromRationalInvertsDenominator)
{
    PadicNumber third = from_rational(Rational{1, 3}, p5, 10);
    PadicNumber one = mul_exact(third, Integer{3});
    EXPECT_TRUE(agree_to(one, num(1), 10));
    EXPECT_EQ(from_rational(Rational{1, 25}, p5, 10).valuation(), -2);
}

TEST(Padic, CancellationGivesZeroToPrecision)
{
    PadicNumber d = num(5) + num(-5);
    EXPECT_TRUE(d.is_zero());
    EXPECT_FALSE(d.is_exact_zero());
    EXPECT_EQ(d.abs_precision(), 21);
    EXPECT_TRUE((PadicNumber::exact_zero(p5) + PadicNumber::exact_zero(p5)).is_exact_zero());
}

TEST(Padic, PrecisionFollowsValuation)
{
    PadicNumber a = from_rational(Rational{10}, p5, 8);
    PadicNumber b = from_rational(Rational{3}, p5, 8);
    PadicNumber prod = a * b;
    EXPECT_EQ(prod.valuation(), 1);
    EXPECT_EQ(prod.relative_precision(), 8);
    EXPECT_EQ(prod.residue(9), 30);
    EXPECT_THROW(prod.residue(10), PrecisionExhausted);
    EXPECT_EQ(div_exact(a, Integer{5}).valuation(), 0);
    EXPECT_THROW(inv(PadicNumber::exact_zero(p5)), DivisionByZero);
    EXPECT_THROW(inv(PadicNumber::zero_to(p5, 3)), PrecisionExhausted);
}

TEST(Padic, ToString)
{
    EXPECT_EQ(PadicNumber::exact_zero(p5).to_string(), "0");
    EXPECT_EQ(PadicNumber::zero_to(p5, 4).to_string(), "O(5^4)");
    EXPECT_EQ(num(7, 3).to_string(), "7 + O(5^3)");
}

TEST(Padic, RingOperationsMatchIntegerOracle)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-100000, 100000);
    const long k = 12;
    const mpz_class m = oracle::power(5, k);
    for (int i = 0; i < 300; ++i) {
        long a = d(rng);
        long b = d(rng);
        PadicNumber x = num(a, k);
        PadicNumber y = num(b, k);
        PadicNumber s = x + y;
        PadicNumber t = x * y;
        mpz_class es = oracle::reduce(mpq_class(a + b), m);
        mpz_class et = oracle::reduce(mpq_class(a) * b, m);
        if (s.abs_precision() >= k) {
            EXPECT_EQ(s.residue(k), es);
        }
        long tk = std::min(k, t.abs_precision());
        if (!t.is_zero() || tk > 0) {
            EXPECT_EQ(t.residue(tk), et % oracle::power(5, tk));
        }
    }
}

TEST(Padic, ExpLogInverse)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(1, 1000000);
    for (int i = 0; i < 50; ++i) {
        PadicNumber x = mul_exact(num(d(rng), 32), Integer{5});
        PadicNumber back = padic_log(padic_exp(x));
        EXPECT_TRUE(agree_to(back, x, 31)) << x.to_string() << " vs " << back.to_string();
    }
    EXPECT_THROW(padic_exp(num(1)), DomainError);
    EXPECT_THROW(padic_log(num(2)), DomainError);
}

TEST(Padic, ExpMatchesPartialSums)
{
    // exp(5) = sum 5^k / k!; terms with k > 40 vanish mod 5^20.
    mpq_class partial = oracle::exp_partial(mpq_class(5), 60);
    PadicNumber e = padic_exp(num(5, 20));
    EXPECT_EQ(e.residue(20), oracle::reduce(partial, oracle::power(5, 20)));
}

TEST(Padic, BinomialOfIntegerMatchesExact)
{
    for (std::uint64_t t = 0; t < 30; ++t) {
        for (std::uint64_t m = 0; m < 12; ++m) {
            PadicNumber b = binom_padic(num(static_cast<long>(t), 20), m);
            Integer exact = binomial(t, m);
            long k = std::min<long>(b.abs_precision(), 20);
            EXPECT_EQ(b.residue(k), oracle::reduce(mpq_class(exact), oracle::power(5, k)));
        }
    }
}

TEST(Padic, RetriesGrowPrecision)
{
    PrecisionPolicy policy;
    policy.working_precision = 8;
    policy.max_retries = 2;
    std::vector<long> seen;
    long got = with_retries(policy, [&](long n) {
        seen.push_back(n);
        if (n < 32) {
            throw PrecisionExhausted("more");
        }
        return n;
    });
    EXPECT_EQ(got, 32);
    EXPECT_EQ(seen, (std::vector<long>{8, 16, 32}));
    policy.max_retries = 1;
    EXPECT_THROW(with_retries(policy, [](long) -> long { throw PrecisionExhausted("never"); }), PrecisionExhausted);
}

TEST(Padic, SmallCases)
{
    PadicNumber ten = from_rational(Rational{10}, p5, 6);
    EXPECT_EQ(ten.valuation(), 1);
    EXPECT_EQ(ten.unit() % 5, 2);
    EXPECT_EQ(from_rational(Rational{1, 5}, p5, 6).valuation(), -1);

    PadicNumber a = PadicNumber::from_parts(p5, 1, Integer{2}, 6);
    PadicNumber b = PadicNumber::from_parts(p5, 2, Integer{3}, 6);
    PadicNumber ab = a * b;
    EXPECT_EQ(ab.valuation(), 3);
    EXPECT_EQ(ab.unit(), 6);

    EXPECT_EQ(inv(from_rational(Rational{2}, p5, 3)).residue(3), 63);

    EXPECT_TRUE(agree_to(padic_exp(PadicNumber::exact_zero(p5)), num(1, 32), 32));
    PadicNumber six = num(6, 20);
    EXPECT_EQ(padic_log(six).valuation(), 1);
    EXPECT_TRUE(agree_to(padic_exp(padic_log(six)), six, 19));
    EXPECT_TRUE(padic_log(num(1)).is_zero());

    EXPECT_EQ(binom_padic(num(7), 3).residue(10), 35);
    EXPECT_EQ(binom_padic(num(-1), 2).residue(10), 1);
    PadicNumber c55 = binom_padic(num(5), 5);
    EXPECT_EQ(c55.valuation(), 0);
    EXPECT_EQ(c55.residue(10), 1);
}
