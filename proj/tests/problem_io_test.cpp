#include <gtest/gtest.h>

#include <padyn/problem_io.hpp>

using namespace padyn;

TEST(Parse, Recurrence)
{
    Problem p = parse_problem(R"({"kind": "recurrence", "coefficients": ["1", "1"], "initial": ["0", "1/2"]})");
    EXPECT_EQ(p.kind, Problem::Kind::recurrence);
    EXPECT_EQ(p.recurrence.initial[1], Rational(1, 2));
}

TEST(Parse, SelfMap)
{
    Problem p = parse_problem(R"({"kind": "selfmap", "vars": 1,
        "map": [[[[1], "1", "1"], [[0], "1", "1"]]], "point": ["0"],
        "subvariety": [[[[1], "1", "1"], [[0], "-10", "1"]]],
        "options": {"prime": 7, "precision": 16}})");
    ASSERT_TRUE(p.map);
    EXPECT_EQ((*p.map)(std::vector<Rational>{Rational{4}})[0], 5);
    ASSERT_TRUE(p.subvariety);
    EXPECT_TRUE(p.subvariety->contains(std::vector<Rational>{Rational{10}}));
    EXPECT_EQ(p.options.prime, std::optional<std::uint64_t>{7});
    EXPECT_EQ(p.options.precision, std::optional<long>{16});
}

TEST(Parse, Germ)
{
    Problem p = parse_problem(R"({"kind": "germ", "eigenvalues": ["2"], "higher_terms": [[[[2], "1", "1"]]]})");
    MapGerm g = p.germ(5);
    EXPECT_EQ(g.higher_terms[0].coefficient({2}).value(), 1);
}

TEST(Parse, ErrorsCarryPositions)
{
    try {
        parse_problem("");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 1u);
    }
    try {
        parse_problem("{\n  \"kind\": \"recurrence\",\n  \"coefficients\": [\"1\" \"1\"]\n}");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    try {
        parse_problem("{\n  \"kind\": \"recurrence\",\n  \"coefficients\": [\"x\"],\n  \"initial\": [\"0\"]\n}");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse_problem(R"({"kind": "banana"})"), ParseError);
}

TEST(Json, ZeroSetRoundTrip)
{
    ZeroSetCertificate c;
    c.prime = 5;
    c.precision = 32;
    c.modulus = 2;
    c.progressions = {1};
    c.sporadic = {0};
    c.verified_bound = 200;
    c.class_bounds = {-1, 3};
    c.complete = true;
    ZeroSetCertificate back = zero_set_from_json(to_json(c));
    EXPECT_EQ(back.modulus, 2u);
    EXPECT_EQ(back.progressions, c.progressions);
    EXPECT_EQ(back.sporadic, c.sporadic);
    EXPECT_EQ(back.class_bounds, c.class_bounds);
    EXPECT_TRUE(back.complete);
}

TEST(Json, ReturnSetAndVerdictRoundTrip)
{
    ReturnSetCertificate c;
    c.prime = 7;
    c.tail = 2;
    c.uniformizer_stride = 6;
    c.stride = 3;
    c.progressions = {2};
    c.sporadic = {0, 1};
    ReturnSetCertificate back = return_set_from_json(to_json(c));
    EXPECT_EQ(back.tail, 2u);
    EXPECT_EQ(back.stride, 3u);
    EXPECT_EQ(back.sporadic, c.sporadic);

    PreperiodicityVerdict v;
    v.kind = PreperiodicityVerdict::Kind::periodic_detected;
    v.period = 2;
    PreperiodicityVerdict vb = verdict_from_json(to_json(v));
    EXPECT_EQ(vb.kind, v.kind);
    EXPECT_EQ(vb.period, 2u);
}

TEST(Json, SeriesRoundTrip)
{
    Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    RationalSeries s = to_series(Rational{3, 2} * x * y + y, 5);
    EXPECT_EQ(series_from_json(series_to_json(s), 2, 5), s);
}
