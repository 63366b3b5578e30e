#include <random>

#include <gtest/gtest.h>

#include <padyn/sml.hpp>

#include "oracles.hpp"

using namespace padyn;

namespace {

LinearRecurrence rec(std::vector<long> c, std::vector<long> a)
{
    LinearRecurrence r;
    for (long x : c) {
        r.coefficients.emplace_back(x);
    }
    for (long x : a) {
        r.initial.emplace_back(x);
    }
    return r;
}

std::vector<mpq_class> q(const std::vector<Rational> &v)
{
    return {v.begin(), v.end()};
}

} // namespace

TEST(Recurrence, Validation)
{
    EXPECT_THROW(rec({0, 1}, {1, 1}).validate(), BadRecurrence);
    EXPECT_THROW(rec({1, 1}, {1}).validate(), BadRecurrence);
    EXPECT_THROW(rec({}, {}).validate(), BadRecurrence);
    EXPECT_NO_THROW(rec({1, 1}, {0, 1}).validate());
}

TEST(Recurrence, TermsMatchOracle)
{
    LinearRecurrence r = rec({2, -5, 4}, {0, 0, 1});
    auto ref = oracle::recurrence(q(r.coefficients), q(r.initial), 60);
    auto got = recurrence_terms(r, 60);
    for (std::size_t n = 0; n < 60; ++n) {
        EXPECT_EQ(got[n], ref[n]);
        EXPECT_EQ(recurrence_term(r, n), ref[n]);
    }
}

TEST(CompanionOrder, Fibonacci)
{
    EXPECT_EQ(companion_order_mod_p(rec({1, 1}, {0, 1}), Prime{5}), 20u);
    EXPECT_EQ(companion_order_mod_p(rec({1, 1}, {0, 1}), Prime{7}), 16u);
    EXPECT_THROW(companion_order_mod_p(rec({5, 1}, {0, 1}), Prime{5}), BadPrime);
}

TEST(ZeroSet, Fibonacci)
{
    auto cert = zero_set(rec({1, 1}, {0, 1}));
    EXPECT_TRUE(cert.progressions.empty());
    EXPECT_EQ(cert.sporadic, (std::vector<std::uint64_t>{0}));
    EXPECT_TRUE(verify_certificate(rec({1, 1}, {0, 1}), cert, 500));
}

TEST(ZeroSet, Alternating)
{
    auto r = rec({1, 0}, {2, 0});
    auto cert = zero_set(r);
    EXPECT_EQ(cert.modulus, 2u);
    EXPECT_EQ(cert.progressions, (std::vector<std::uint64_t>{1}));
    EXPECT_TRUE(cert.sporadic.empty());
    EXPECT_TRUE(verify_certificate(r, cert, 500));
}

TEST(ZeroSet, CubicWithTwoSporadicZeros)
{
    auto r = rec({2, -5, 4}, {0, 0, 1});
    auto cert = zero_set(r);
    EXPECT_EQ(cert.sporadic, (std::vector<std::uint64_t>{0, 1}));
    EXPECT_TRUE(cert.progressions.empty());
    EXPECT_TRUE(verify_certificate(r, cert, 500));
}

TEST(ZeroSet, ZeroSequence)
{
    auto r = rec({3, 1}, {0, 0});
    auto cert = zero_set(r);
    EXPECT_EQ(cert.modulus, 1u);
    EXPECT_EQ(cert.progressions, (std::vector<std::uint64_t>{0}));
    EXPECT_TRUE(verify_certificate(r, cert, 100));
}

TEST(ZeroSet, TamperedCertificateIsCaught)
{
    auto r = rec({1, 1}, {0, 1});
    auto cert = zero_set(r);
    cert.sporadic.push_back(7);
    EXPECT_EQ(first_mismatch(r, cert, 100), std::optional<std::uint64_t>{7});
}

TEST(ZeroSet, RandomAgainstBruteForce)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t order = 1 + trial % 3;
        LinearRecurrence r;
        for (std::size_t i = 0; i < order; ++i) {
            long c = d(rng);
            r.coefficients.emplace_back(i == 0 && c == 0 ? 1 : c);
            r.initial.emplace_back(d(rng));
        }
        ZeroSetOptions opts;
        opts.horizon = 150;
        auto cert = zero_set(r, opts);
        auto ref = oracle::recurrence(q(r.coefficients), q(r.initial), 151);
        for (std::uint64_t n = 0; n <= 150; ++n) {
            ASSERT_EQ(cert.covers(n), ref[n] == 0) << "trial " << trial << " n = " << n;
        }
    }
}

TEST(CompanionOrder, SmallCases)
{
    // Companion of a_{n+1} = a_n is the identity.
    EXPECT_EQ(companion_order_mod_p(rec({1}, {3}), Prime{5}), 1u);
    // a_{n+2} = -a_n + 2 a_{n+1}: companion [[0,1],[-1,2]] is unipotent.
    EXPECT_EQ(companion_order_mod_p(rec({-1, 2}, {0, 1}), Prime{5}), 5u);
}

TEST(ZeroSet, VerifyRejectsFalseZero)
{
    auto r = rec({1, 1}, {0, 1});
    ZeroSetCertificate cert;
    cert.sporadic = {0, 3};
    EXPECT_FALSE(verify_certificate(r, cert, 10));
}

TEST(ZeroSet, ProgressionsHoldFarOut)
{
    auto r = rec({1, 0, 0}, {0, 1, 1});
    auto cert = zero_set(r);
    EXPECT_EQ(cert.modulus, 3u);
    EXPECT_EQ(cert.progressions, (std::vector<std::uint64_t>{0}));
    for (std::uint64_t k : {201u, 777u, 1500u}) {
        EXPECT_EQ(recurrence_term(r, 3 * k), 0);
        EXPECT_NE(recurrence_term(r, 3 * k + 1), 0);
    }
}
