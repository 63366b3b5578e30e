#include <gtest/gtest.h>

#include <padyn/series.hpp>

using namespace padyn;

namespace {

const Prime p5{5};

MahlerFunction scalar(std::vector<long> a, long precision = 20)
{
    MahlerFunction g{p5, 1, {}, Rational{1}};
    for (long x : a) {
        g.coefficients.push_back({from_rational(Rational{x}, p5, precision)});
    }
    return g;
}

PadicNumber num(long a, long precision = 20)
{
    return from_rational(Rational{a}, p5, precision);
}

} // namespace

TEST(Mahler, EvaluatesFiniteDifferences)
{
    MahlerFunction g = scalar({1, 5, 175});
    EXPECT_EQ(mahler_evaluate(g, std::uint64_t{0})[0].residue(20), 1);
    EXPECT_EQ(mahler_evaluate(g, std::uint64_t{2})[0].residue(20), 186);
    // Beyond the stored terms only the tail bound ceil(3c) = 3 digits are claimed.
    EXPECT_EQ(mahler_evaluate(g, std::uint64_t{5})[0].abs_precision(), 3);
    EXPECT_EQ(mahler_evaluate(g, num(2))[0].residue(3), 186 % 125);
}

TEST(Mahler, ZeroFunction)
{
    MahlerFunction g{p5, 1, {{PadicNumber::exact_zero(p5)}, {PadicNumber::exact_zero(p5)}}, Rational{1}};
    EXPECT_TRUE(mahler_evaluate(g, std::uint64_t{1})[0].is_exact_zero());
    EXPECT_TRUE(mahler_evaluate(g, std::uint64_t{9})[0].is_zero());
}

TEST(Mahler, DecayViolation)
{
    EXPECT_NO_THROW(check_decay(scalar({1, 5, 175})));
    EXPECT_THROW(check_decay(scalar({1, 5, 10})), DecayViolation);
}

TEST(Mahler, FromResidues)
{
    std::vector<std::vector<Integer>> orbit = {{Integer{1}}, {Integer{6}}, {Integer{186}}};
    MahlerFunction g = mahler_from_residues(p5, orbit, 10);
    EXPECT_EQ(g.coefficients[1][0].residue(10), 5);
    EXPECT_EQ(g.coefficients[2][0].residue(10), 175);
}

TEST(Stirling, FirstKindRow)
{
    auto s = stirling_first_kind(4);
    EXPECT_EQ(s[4], (std::vector<Integer>{0, -6, 11, -6, 1}));
}

TEST(PowerSeries, BinomialExpansion)
{
    MahlerFunction g = scalar({0, 0, 1});
    PowerSeriesForm ps = mahler_to_powerseries(g);
    auto half = from_rational(Rational{1, 2}, p5, 20);
    EXPECT_TRUE(ps.coefficients[0][0].is_zero());
    EXPECT_TRUE(agree_to(ps.coefficients[1][0], -half, 15));
    EXPECT_TRUE(agree_to(ps.coefficients[2][0], half, 15));

    PowerSeriesForm lin = mahler_to_powerseries(scalar({0, 1}));
    EXPECT_TRUE(agree_to(lin.coefficients[1][0], num(1), 2));

    MahlerFunction slow = scalar({1});
    slow.decay = Rational{1, 4};
    EXPECT_THROW(mahler_to_powerseries(slow), DomainError);
}

TEST(PowerSeries, AgreesWithMahlerAtIntegers)
{
    MahlerFunction g = scalar({3, 10, 75, 250, 625});
    PowerSeriesForm ps = mahler_to_powerseries(g);
    for (long t = 0; t <= 4; ++t) {
        PadicNumber acc = PadicNumber::exact_zero(p5);
        PadicNumber tp = num(1);
        for (const auto &row : ps.coefficients) {
            acc += row[0] * tp;
            tp = tp * num(t);
        }
        PadicNumber direct = mahler_evaluate(g, static_cast<std::uint64_t>(t))[0];
        EXPECT_TRUE(agree_to(acc.truncated(ps.tail_valuation), direct.truncated(ps.tail_valuation),
                             std::min(acc.abs_precision(), ps.tail_valuation)));
    }
}

TEST(Strassmann, Examples)
{
    std::vector<PadicNumber> b = {num(5), num(1), PadicNumber::exact_zero(p5)};
    auto zs = strassmann_zero_structure(b, PadicNumber::infinite_precision);
    EXPECT_EQ(zs.kind, ZeroStructure::Kind::finitely_many);
    EXPECT_EQ(zs.bound, 1u);

    std::vector<PadicNumber> zeros(3, PadicNumber::exact_zero(p5));
    auto z = strassmann_zero_structure(zeros, PadicNumber::infinite_precision);
    EXPECT_EQ(z.kind, ZeroStructure::Kind::identically_zero);
    EXPECT_FALSE(z.needs_confirmation);

    std::vector<PadicNumber> one = {num(1), PadicNumber::exact_zero(p5)};
    EXPECT_EQ(strassmann_zero_structure(one, PadicNumber::infinite_precision).bound, 0u);
}

TEST(Strassmann, ThresholdAndAmbiguity)
{
    std::vector<PadicNumber> small = {PadicNumber::zero_to(p5, 10), PadicNumber::zero_to(p5, 10)};
    auto z = strassmann_zero_structure(small, 12);
    EXPECT_EQ(z.kind, ZeroStructure::Kind::identically_zero);
    EXPECT_TRUE(z.needs_confirmation);
    EXPECT_EQ(z.threshold, 10);

    std::vector<PadicNumber> tiny = {PadicNumber::zero_to(p5, 2)};
    EXPECT_THROW(strassmann_zero_structure(tiny, 12), PrecisionExhausted);

    // v(b_0) = 1 but b_1 is only known to be divisible by 5: the maximal index is undetermined.
    std::vector<PadicNumber> unclear = {num(5), PadicNumber::zero_to(p5, 1)};
    EXPECT_THROW(strassmann_zero_structure(unclear, 12), PrecisionExhausted);
}

TEST(Series, CompositionAndEvaluation)
{
    RationalSeries x = rational_variable(1, 6, 0);
    RationalSeries f = x + x * x;
    RationalSeries g = x.scaled(Rational{2});
    RationalSeries h = series_compose(f, std::vector<RationalSeries>{g});
    EXPECT_EQ(h.coefficient({1}).value(), 2);
    EXPECT_EQ(h.coefficient({2}).value(), 4);
    RationalSeries shifted = x + to_series(Polynomial::constant(1, Rational{1}), 6);
    EXPECT_THROW(series_compose(f, std::vector<RationalSeries>{shifted}), CompositionDomain);

    TruncatedSeries fp = to_padic_series(Polynomial::variable(1, 0), 4, p5, 10);
    std::vector<PadicNumber> good = {num(5)};
    EXPECT_EQ(fp.evaluate(good, PadicNumber::exact_zero(p5)).residue(5), 5);
    std::vector<PadicNumber> bad = {num(1)};
    EXPECT_THROW(fp.evaluate(bad, PadicNumber::exact_zero(p5)), DomainError);
}

TEST(Series, SmallCases)
{
    Polynomial x = Polynomial::variable(1, 0);
    TruncatedSeries f = to_padic_series(x + Rational{5} * x * x, 4, p5, 20);
    TruncatedSeries ff = series_compose(f, std::vector<TruncatedSeries>{f});
    EXPECT_EQ(ff.coefficient({1})->residue(10), 1);
    EXPECT_EQ(ff.coefficient({2})->residue(10), 10);
    EXPECT_EQ(ff.coefficient({3})->residue(10), 50);
    EXPECT_EQ(ff.coefficient({4})->residue(10), 125);

    std::vector<PadicNumber> five = {num(5)};
    EXPECT_EQ(f.evaluate(five, PadicNumber::exact_zero(p5)).residue(5), 130);
    TruncatedSeries seven = to_padic_series(Polynomial::constant(1, Rational{7}), 4, p5, 20);
    EXPECT_EQ(seven.evaluate(five, PadicNumber::exact_zero(p5)).residue(5), 7);

    Polynomial y = Polynomial::variable(2, 1), z = Polynomial::variable(2, 0);
    RationalSeries prod = to_series(z, 3) * to_series(y, 3);
    EXPECT_EQ(prod, to_series(z * y, 3));
}
