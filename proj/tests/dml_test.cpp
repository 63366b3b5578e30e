#include <gtest/gtest.h>

#include <padyn/dml.hpp>

#include "oracles.hpp"

using namespace padyn;

namespace {

Polynomial var(std::size_t n, std::size_t i)
{
    return Polynomial::variable(n, i);
}

Polynomial cst(std::size_t n, long c)
{
    return Polynomial::constant(n, Rational{c});
}

std::vector<Rational> pt(std::initializer_list<long> v)
{
    std::vector<Rational> out;
    for (long x : v) {
        out.emplace_back(x);
    }
    return out;
}

// Brute-force membership through the exact oracle.
std::vector<bool> members(const PolySelfMap &f, std::vector<Rational> x, const Subvariety &v, std::size_t count)
{
    std::vector<bool> out;
    std::vector<mpq_class> cur(x.begin(), x.end());
    for (std::size_t n = 0; n < count; ++n) {
        bool in = true;
        for (const auto &eq : v.equations) {
            in = in && oracle::eval_exact(eq, cur) == 0;
        }
        out.push_back(in);
        cur = oracle::step_exact(f, cur);
    }
    return out;
}

} // namespace

TEST(Subvariety, Basics)
{
    Subvariety v{{var(2, 0) - var(2, 1)}};
    EXPECT_NO_THROW(v.validate(2));
    EXPECT_THROW(v.validate(3), DomainError);
    EXPECT_THROW(Subvariety{}.validate(1), DomainError);
    EXPECT_TRUE(v.contains(pt({4, 4})));
    EXPECT_FALSE(v.contains(pt({4, 5})));
    EXPECT_EQ(v.support(), (std::vector<std::size_t>{0, 1}));
}

TEST(ExactOrbit, TracksClosureAndBudget)
{
    PolySelfMap f({var(2, 0) + cst(2, 1), var(2, 1) * var(2, 1)});
    std::vector<Rational> x = pt({0, 2});
    ExactOrbit o(f, x, {0}, 1 << 20);
    EXPECT_EQ(o.coordinates(), (std::vector<std::size_t>{0}));
    EXPECT_EQ(o.at(5)[0], 5);
    ExactOrbit big(f, x, {1}, 64);
    EXPECT_THROW(big.at(10), HeightBudgetExceeded);
}

TEST(ReturnSet, Translation)
{
    PolySelfMap f({var(1, 0) + cst(1, 1)});
    Subvariety v{{var(1, 0) - cst(1, 10)}};
    auto x = pt({0});
    auto cert = return_set(f, x, v);
    EXPECT_TRUE(cert.progressions.empty());
    EXPECT_EQ(cert.sporadic, (std::vector<std::uint64_t>{10}));
    EXPECT_TRUE(check_certificate(f, x, v, cert, 200));
}

TEST(ReturnSet, PeriodTwo)
{
    PolySelfMap f({Rational{-1} * var(1, 0)});
    Subvariety v{{var(1, 0) - cst(1, 3)}};
    auto x = pt({3});
    auto cert = return_set(f, x, v);
    EXPECT_EQ(cert.stride, 2u);
    EXPECT_EQ(cert.progressions, (std::vector<std::uint64_t>{0}));
    EXPECT_TRUE(check_certificate(f, x, v, cert, 200));
}

TEST(ReturnSet, DiagonalScaling)
{
    PolySelfMap f({Rational{2} * var(2, 0), Rational{3} * var(2, 1)});
    Subvariety v{{var(2, 0) - var(2, 1)}};
    auto x = pt({1, 1});
    auto cert = return_set(f, x, v);
    EXPECT_EQ(cert.sporadic, (std::vector<std::uint64_t>{0}));
    EXPECT_TRUE(cert.progressions.empty());
    auto ref = members(f, x, v, 101);
    for (std::uint64_t n = 0; n <= 100; ++n) {
        EXPECT_EQ(cert.covers(n), ref[n]);
    }
}

TEST(ReturnSet, TamperedCertificate)
{
    PolySelfMap f({var(1, 0) + cst(1, 1)});
    Subvariety v{{var(1, 0) - cst(1, 10)}};
    auto x = pt({0});
    auto cert = return_set(f, x, v);
    cert.sporadic = {11};
    EXPECT_EQ(first_mismatch(f, x, v, cert, 50), std::optional<std::uint64_t>{10});
}

TEST(Preperiodicity, Verdicts)
{
    PolySelfMap quad({var(1, 0) * var(1, 0) + cst(1, 1)});
    auto w = not_preperiodic_witness(quad, pt({1}));
    EXPECT_EQ(w.kind, PreperiodicityVerdict::Kind::not_preperiodic);
    EXPECT_EQ(w.prime, 7u);
    EXPECT_GE(w.witness_index, 1u);

    PolySelfMap neg({Rational{-1} * var(1, 0)});
    auto p = not_preperiodic_witness(neg, pt({3}));
    EXPECT_EQ(p.kind, PreperiodicityVerdict::Kind::periodic_detected);
    EXPECT_EQ(p.period, 2u);
    EXPECT_EQ(p.preperiod, 0u);

    auto oracle_repeat = oracle::exact_repeat(neg, {mpq_class(3)}, 10);
    ASSERT_TRUE(oracle_repeat);
    EXPECT_EQ(oracle_repeat->second, p.period);
}

TEST(SubvarietyPeriod, Examples)
{
    PolySelfMap neg({Rational{-1} * var(1, 0)});
    Subvariety line{{var(1, 0) - cst(1, 3)}};
    EXPECT_EQ(subvariety_period(neg, line, {pt({3})}), std::optional<std::uint64_t>{2});

    PolySelfMap id({var(1, 0)});
    EXPECT_EQ(subvariety_period(id, line, {pt({3})}), std::optional<std::uint64_t>{1});

    PolySelfMap shift({var(1, 0) + cst(1, 1)});
    EXPECT_EQ(subvariety_period(shift, line, {pt({3})}), std::nullopt);
}

TEST(SubvarietyPeriod, SwapIsInvariant)
{
    PolySelfMap swap({var(2, 1), var(2, 0)});
    Subvariety diag{{var(2, 0) - var(2, 1)}};
    EXPECT_EQ(subvariety_period(swap, diag, {pt({1, 1})}), std::optional<std::uint64_t>{1});
}

TEST(ReturnSet, MissingProgressionRejected)
{
    PolySelfMap f({Rational{-1} * var(1, 0)});
    Subvariety v{{var(1, 0) - cst(1, 3)}};
    ReturnSetCertificate cert;
    cert.stride = 2;
    EXPECT_FALSE(check_certificate(f, pt({3}), v, cert, 10));
}
