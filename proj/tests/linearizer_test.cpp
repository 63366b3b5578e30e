#include <random>

#include <gtest/gtest.h>

#include <padyn/linearizer.hpp>

#include "oracles.hpp"

using namespace padyn;

namespace {

std::vector<Rational> lam(std::initializer_list<long> v)
{
    std::vector<Rational> out;
    for (long x : v) {
        out.emplace_back(x);
    }
    return out;
}

bool all_empty(const std::vector<RationalSeries> &d)
{
    for (const auto &s : d) {
        if (!s.empty()) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(Resonances, DoublingPair)
{
    auto r = find_resonances(lam({2, 4}), 3);
    ASSERT_EQ(r.resonances.size(), 1u);
    EXPECT_EQ(r.resonances[0].target, 1u);
    EXPECT_EQ(r.resonances[0].exponents, (Exponent{2, 0}));
    EXPECT_FALSE(r.fibered_nonresonant.has_value());
}

TEST(Resonances, FiberedFlag)
{
    auto r = find_resonances(lam({1, 1, -2, -2}), 3);
    ASSERT_TRUE(r.fibered_nonresonant.has_value());
    EXPECT_TRUE(*r.fibered_nonresonant);
    EXPECT_FALSE(r.resonances.empty());
    auto none = find_resonances(lam({-2, -2}), 8);
    EXPECT_TRUE(none.resonances.empty());
}

TEST(Resonances, MatchBruteForce)
{
    std::mt19937_64 rng(13);
    const std::vector<Rational> pool = {Rational{2}, Rational{-2}, Rational{3}, Rational{-3}, Rational{4},
                                        Rational{1, 2}, Rational{1}, Rational{-1}, Rational{8}};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> l;
        std::size_t n = 1 + trial % 3;
        for (std::size_t i = 0; i < n; ++i) {
            l.push_back(pool[pick(rng)]);
        }
        auto got = find_resonances(l, 6).resonances;
        auto ref = oracle::resonances({l.begin(), l.end()}, 6);
        ASSERT_EQ(got.size(), ref.size());
        for (const auto &[j, e] : ref) {
            EXPECT_NE(std::find(got.begin(), got.end(), Resonance{j, e}), got.end());
        }
    }
}

TEST(Linearize, QuadraticOneDimensional)
{
    MapGerm f{lam({2}), {to_series(pow(Polynomial::variable(1, 0), 2), 6)}};
    auto res = formal_linearize(f, 6);
    EXPECT_EQ(res.solved_degree, 6u);
    EXPECT_EQ(res.h[0].coefficient({1}).value(), 1);
    EXPECT_EQ(res.h[0].coefficient({2}).value(), Rational(1, 2));
    EXPECT_EQ(res.h[0].coefficient({3}).value(), Rational(1, 6));
    EXPECT_TRUE(all_empty(conjugacy_defect(f, res.h)));
}

TEST(Linearize, ResonanceObstruction)
{
    Polynomial x0 = Polynomial::variable(2, 0);
    MapGerm f{lam({2, 4}), {RationalSeries(2, 4), to_series(x0 * x0, 4)}};
    try {
        formal_linearize(f, 4);
        FAIL() << "expected an obstruction";
    } catch (const ResonanceObstruction &e) {
        EXPECT_EQ(e.target(), 1u);
        EXPECT_EQ(e.exponents(), (std::vector<std::uint32_t>{2, 0}));
    }
    // Without the resonant monomial the same eigenvalues linearize.
    MapGerm g{lam({2, 4}), {to_series(Polynomial::variable(2, 1) * x0, 4), RationalSeries(2, 4)}};
    EXPECT_TRUE(all_empty(conjugacy_defect(g, formal_linearize(g, 4).h)));
}

TEST(Linearize, RandomGermsSatisfyConjugacy)
{
    std::mt19937_64 rng(17);
    const std::vector<Rational> pool = {Rational{2}, Rational{-2}, Rational{3}, Rational{-3}, Rational{5},
                                        Rational{1, 2}};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<long> coef(-3, 3);
    int solved = 0;
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Rational> l{pool[pick(rng)], pool[pick(rng)]};
        Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
        std::vector<RationalSeries> ht;
        for (int c = 0; c < 2; ++c) {
            ht.push_back(to_series(Rational{coef(rng)} * x * x + Rational{coef(rng)} * x * y +
                                       Rational{coef(rng)} * y * y * y,
                                   6));
        }
        MapGerm f{l, ht};
        try {
            auto res = formal_linearize(f, 6);
            EXPECT_TRUE(all_empty(conjugacy_defect(f, res.h)));
            ++solved;
        } catch (const ResonanceObstruction &e) {
            auto ref = oracle::resonances({l.begin(), l.end()}, 6);
            EXPECT_FALSE(ref.empty());
        }
    }
    EXPECT_GT(solved, 5);
}

TEST(Siegel, Report)
{
    auto r = siegel_report(lam({2}), Prime{5}, 6);
    EXPECT_FALSE(r.resonant);
    EXPECT_EQ(r.rows.size(), 5u);
    // 2^5 - 2 = 30 has valuation 1 at 5.
    EXPECT_EQ(r.rows[3].degree, 5u);
    EXPECT_EQ(r.rows[3].max_valuation, std::optional<long>{1});
    EXPECT_EQ(r.rows[3].min_norm, Rational(1, 5));
    EXPECT_THROW(siegel_report(lam({5}), Prime{5}, 3), BadPrime);
    EXPECT_TRUE(siegel_report(lam({2, 4}), Prime{5}, 3).resonant);
}

TEST(Rank, Relations)
{
    auto r = multiplicative_rank(lam({2, 4}));
    EXPECT_EQ(r.rank, 1u);
    ASSERT_EQ(r.relations.size(), 1u);
    EXPECT_EQ(r.relations[0], (std::vector<Integer>{-2, 1}));
    auto m = multiplicative_rank(lam({-1}));
    EXPECT_EQ(m.rank, 0u);
    auto s = multiplicative_rank(std::vector<Rational>{Rational{6}, Rational{2, 3}, Rational{3}});
    EXPECT_EQ(s.rank, 2u);
}
