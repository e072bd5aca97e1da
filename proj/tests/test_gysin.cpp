#include <gtest/gtest.h>

#include "gysin/gysin.hpp"
#include "gysin/oracle.hpp"
#include "gysin/poly_io.hpp"

using namespace gysin;

namespace {

PushforwardResult push_weight(const std::vector<int>& rho, const std::vector<int>& a, int power,
                              std::optional<int> n = std::nullopt) {
    FlagType flag(rho);
    return dp_pushforward(flag, build_ftilde_weight(flag, validate_weight(flag, a), power), n);
}

SparsePoly segre_of(const std::string& text, int n) { return parse_poly(text, VarSet::segre(n)); }
SparsePoly segre_of(long content, const std::string& text, int n) {
    SparsePoly p = segre_of(text, n);
    p *= Rational(content);
    return p;
}
SparsePoly chern_of(const std::string& text, int r) { return parse_poly(text, VarSet::chern(r)); }

std::vector<int> grassmann_weight(int r, int d) {
    std::vector<int> a(r, 0);
    std::fill(a.begin(), a.begin() + d, 1);
    return a;
}

}  // namespace

TEST(BuildFtilde, WeightExamples) {
    auto flag = FlagType::complete(3);
    auto f = build_ftilde_weight(flag, validate_weight(flag, {3, 2, 0}), 6);
    EXPECT_EQ(f, pow(parse_poly("-3*t1 - 2*t2", VarSet::roots(3)), 6));
    EXPECT_TRUE(f.is_homogeneous(6));

    FlagType proj({0, 1, 3});
    EXPECT_EQ(build_ftilde_weight(proj, validate_weight(proj, {1, 1, 0}), 5),
              pow(parse_poly("-t1 - t2", VarSet::roots(3)), 5));
    EXPECT_EQ(build_ftilde_weight(proj, validate_weight(proj, {1, 1, 0}), 0), SparsePoly::one(VarSet::roots(3)));
    EXPECT_THROW(build_ftilde_weight(proj, validate_weight(proj, {1, 0, 0}), 5), ContractViolation);
}

TEST(BuildFtilde, GeneralExamples) {
    auto c2 = FlagType::complete(2);
    EXPECT_EQ(build_ftilde_general(c2, parse_poly("u1", VarSet::formal(2))), parse_poly("-t1", VarSet::roots(2)));
    EXPECT_EQ(build_ftilde_general(c2, parse_poly("u1*u2", VarSet::formal(2))), parse_poly("t1*t2", VarSet::roots(2)));
    FlagType proj({0, 1, 3});
    EXPECT_EQ(build_ftilde_general(proj, parse_poly("u1^5", VarSet::formal(2))),
              build_ftilde_weight(proj, validate_weight(proj, {1, 1, 0}), 5));
    EXPECT_THROW(build_ftilde_general(proj, parse_poly("u1", VarSet::formal(3))), ContractViolation);
    EXPECT_THROW(build_ftilde_general(proj, parse_poly("u1^2 + u2", VarSet::formal(2))), ContractViolation);
}

TEST(BuildFtilde, ConstructorsAgreeOnPowersOfLinearForms) {
    for (int r = 1; r <= 4; ++r)
        for (const auto& flag : all_flags(r)) {
            std::vector<int> a(r);
            std::string text;
            for (int j = 1; j <= flag.blocks(); ++j) {
                const int w = flag.blocks() - j + 2;
                auto [lo, hi] = flag.block_roots(j);
                for (int i = lo; i <= hi; ++i) a[i - 1] = w;
                text += (j > 1 ? " + " : "") + std::to_string(w) + "*u" + std::to_string(j);
            }
            auto linear = parse_poly(text, VarSet::formal(flag.blocks()));
            for (int p = 0; p <= 3; ++p)
                EXPECT_EQ(build_ftilde_general(flag, pow(linear, p)), build_ftilde_weight(flag, validate_weight(flag, a), p))
                    << flag.to_string() << " power " << p;
        }
}

TEST(DpGoldenValues, ProjectiveBundleRankThree) {
    auto res = push_weight({0, 1, 3}, {1, 1, 0}, 5);
    EXPECT_EQ(res.degree, 3);
    EXPECT_EQ(res.segre_form.poly(), segre_of("s3 - 5*s1*s2", 3));
    EXPECT_EQ(res.chern_form.poly(), chern_of("4*c1^3 - 3*c1*c2 - c3", 3));
    EXPECT_EQ(res.provenance, Provenance::DpGeneral);
}

TEST(DpGoldenValues, ProjectiveBundleRankFour) {
    auto res = push_weight({0, 1, 4}, {1, 1, 1, 0}, 6);
    EXPECT_EQ(res.segre_form.poly(), segre_of("s3 - 6*s1*s2 - 5*s1^3", 3));
    EXPECT_EQ(res.chern_form.poly(), chern_of("10*c1^3 - 4*c1*c2 - c3", 4));
}

TEST(DpGoldenValues, GrassmannianTwoPlanesInFour) {
    const std::vector<std::pair<std::string, std::string>> table = {
        {"2", "2"},
        {"5*c1", "-5*s1"},
        {"9*c1^2 - 4*c2", "5*s1^2 + 4*s2"},
        {"14*c1^3 - 14*c1*c2", "-14*s1*s2"},
        {"20*c1^4 - 32*c1^2*c2 - 2*c1*c3 + 6*c2^2 + 8*c4", "14*s1*s3 + 14*s2^2 - 8*s4"},
    };
    for (int N = 4; N <= 8; ++N) {
        const int k = N - 4;
        auto res = push_weight({0, 2, 4}, {1, 1, 0, 0}, N, std::max(k, 1));
        EXPECT_EQ(res.chern_form.poly(), chern_of(table[k].first, 4)) << "N=" << N;
        EXPECT_EQ(res.segre_form.poly(), segre_of(table[k].second, std::max(k, 1))) << "N=" << N;
    }
}

TEST(DpGoldenValues, CompleteFlagRankThree) {
    auto res = push_weight({0, 1, 2, 3}, {3, 2, 0}, 6);
    EXPECT_EQ(res.segre_form.poly(), segre_of(180, "2*s3 - 15*s1*s2", 3));
    EXPECT_EQ(res.schur.coeff(Partition({2, 1, 0})), 2700);
    EXPECT_EQ(res.schur.coeff(Partition({1, 1, 1})), 2340);
    EXPECT_EQ(res.schur.terms.size(), 2u);
    EXPECT_TRUE(res.schur.positive);

    EXPECT_EQ(push_weight({0, 1, 2, 3}, {2, 1, 0}, 6).segre_form.poly(), segre_of("-180*s1*s2", 3));
}

TEST(DpGoldenValues, CompleteFlagRankThreeGeneralWeights) {
    // the k = 0..3 Schur-coefficient tables, checked on a grid of triples
    auto alt = [](long p, long q, long a, long b, long c) {
        auto m = [](long x, long e) {
            long v = 1;
            for (long i = 0; i < e; ++i) v *= x;
            return v;
        };
        return m(a, p) * m(b, q) - m(a, q) * m(b, p) - m(a, p) * m(c, q) + m(a, q) * m(c, p) + m(b, p) * m(c, q) -
               m(b, q) * m(c, p);
    };
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= a; ++b)
            for (int c = 0; c <= b; ++c) {
                auto flag = FlagType::complete(3);
                auto w = validate_weight(flag, {a, b, c});
                auto x = [&](int k) { return dp_pushforward(flag, build_ftilde_weight(flag, w, 3 + k)).schur; };
                const std::string at = "a=(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
                EXPECT_EQ(x(0).coeff(Partition({0, 0, 0})), 3 * alt(2, 1, a, b, c)) << at;
                EXPECT_EQ(x(1).coeff(Partition({1, 0, 0})), 4 * alt(3, 1, a, b, c)) << at;
                EXPECT_EQ(x(2).coeff(Partition({2, 0, 0})), 10 * alt(3, 2, a, b, c)) << at;
                EXPECT_EQ(x(2).coeff(Partition({1, 1, 0})), 5 * alt(4, 1, a, b, c)) << at;
                // a^3b^2c - a^2b^3c - ... = abc * alt(2, 1)
                EXPECT_EQ(x(3).coeff(Partition({3, 0, 0})), 60 * a * b * c * alt(2, 1, a, b, c)) << at;
                EXPECT_EQ(x(3).coeff(Partition({2, 1, 0})), 15 * alt(4, 2, a, b, c)) << at;
                EXPECT_EQ(x(3).coeff(Partition({1, 1, 1})), 6 * alt(5, 1, a, b, c)) << at;
            }
}

TEST(DpGoldenValues, CompleteFlagRankFour) {
    EXPECT_EQ(push_weight({0, 1, 2, 3, 4}, {3, 2, 1, 0}, 9).segre_form.poly(),
              segre_of(90720, "-s1^3 - 2*s1*s2", 3));
    EXPECT_EQ(push_weight({0, 1, 2, 3, 4}, {3, 2, 1, 0}, 10).segre_form.poly(),
              segre_of(5040, "216*s1^2*s2 + 7*s1*s3 + 39*s2^2 - 4*s4", 4));
    EXPECT_EQ(push_weight({0, 1, 2, 3, 4}, {4, 3, 2, 0}, 9).segre_form.poly(),
              segre_of(181440, "-8*s1^3 - 12*s1*s2 + s3", 3));
    EXPECT_EQ(push_weight({0, 1, 2, 3, 4}, {4, 3, 2, 0}, 10).segre_form.poly(),
              segre_of(40320, "648*s1^2*s2 - 124*s1*s3 + 42*s2^2 + 13*s4", 4));
}

TEST(DpGoldenValues, TiedWeightVanishes) {
    for (int k = 0; k <= 4; ++k) EXPECT_TRUE(push_weight({0, 1, 2, 3}, {2, 2, 0}, 3 + k).is_zero()) << "k=" << k;
}

TEST(Dp, ExpandedRouteAgrees) {
    for (int r = 1; r <= 4; ++r)
        for (const auto& flag : all_flags(r)) {
            std::vector<int> a(r);
            for (int j = 1; j <= flag.blocks(); ++j) {
                auto [lo, hi] = flag.block_roots(j);
                for (int i = lo; i <= hi; ++i) a[i - 1] = 2 * (flag.blocks() - j) + 1;
            }
            const int d = flag.relative_dimension();
            for (int k = 0; k <= (r == 4 ? 2 : 3); ++k) {
                const int n = k + 1;
                auto ft = build_ftilde_weight(flag, validate_weight(flag, a), d + k);
                EXPECT_EQ(dp_pushforward(flag, ft, n).segre_form.poly(), dp_pushforward_expanded(flag, ft, n))
                    << flag.to_string() << " k=" << k;
            }
        }
}

TEST(Dp, DegreeLawAndDeficiency) {
    auto res = push_weight({0, 2, 4}, {1, 1, 0, 0}, 3);
    EXPECT_TRUE(res.is_zero());
    EXPECT_EQ(res.degree, -1);
    for (int k = 0; k <= 4; ++k) {
        auto r = push_weight({0, 1, 2, 4}, {5, 5, 3, 1}, 5 + k);
        EXPECT_EQ(r.degree, k);
        EXPECT_TRUE(r.segre_form.poly().is_homogeneous(k));
        EXPECT_TRUE(r.chern_form.poly().is_homogeneous(k));
    }
}

TEST(Dp, Scaling) {
    for (int lambda : {2, 3, -1}) {
        auto base = push_weight({0, 1, 3}, {2, 2, 1}, 4);
        auto scaled = push_weight({0, 1, 3}, {2 * lambda, 2 * lambda, lambda}, 4);
        SparsePoly expected = base.segre_form.poly();
        expected *= Rational(lambda * lambda * lambda * lambda);
        EXPECT_EQ(scaled.segre_form.poly(), expected) << "lambda=" << lambda;
    }
}

TEST(Dp, RepresentationsAreConsistent) {
    auto res = push_weight({0, 1, 2, 3, 4}, {4, 3, 2, 0}, 10);
    EXPECT_EQ(segre_chern_convert(res.segre_form, Basis::Chern, 4, 4), res.chern_form);
    EXPECT_EQ(reconstruct(res.schur), res.chern_form);
    EXPECT_TRUE(res.schur.positive);
}

TEST(Dp, Errors) {
    FlagType proj({0, 1, 3});
    auto ft = build_ftilde_weight(proj, validate_weight(proj, {1, 1, 0}), 5);
    EXPECT_THROW(dp_pushforward(proj, ft, 2), ContractViolation);
    EXPECT_THROW(dp_pushforward(proj, parse_poly("t1^3 + t2", VarSet::roots(3))), ContractViolation);
    EXPECT_THROW(dp_pushforward(proj, parse_poly("t1", VarSet::roots(2))), ContractViolation);
    EXPECT_NO_THROW(dp_pushforward(proj, ft, 7));
}

TEST(Dp, TruncationAboveDegreeOnlyRehomes) {
    auto a = push_weight({0, 1, 3}, {1, 1, 0}, 5, 3);
    auto b = push_weight({0, 1, 3}, {1, 1, 0}, 5, 6);
    EXPECT_EQ(b.segre_form.poly(), segre_of("s3 - 5*s1*s2", 6));
    EXPECT_EQ(a.chern_form, b.chern_form);
}

TEST(Dp, GeneralSource) {
    FlagType flag({0, 1, 3});
    PushforwardRequest req{flag, PolySource{parse_poly("u1^5", VarSet::formal(2))}, std::nullopt};
    EXPECT_EQ(dp_pushforward(req).segre_form.poly(), segre_of("s3 - 5*s1*s2", 3));
    PushforwardRequest wreq{flag, WeightSource{validate_weight(flag, {1, 1, 0}), 5}, 4};
    EXPECT_EQ(dp_pushforward(wreq).segre_form.poly(), segre_of("s3 - 5*s1*s2", 4));
    // mixed classes: u1^2 u2^3 has no weight analogue
    PushforwardRequest mixed{flag, PolySource{parse_poly("u1^2*u2^3", VarSet::formal(2))}, std::nullopt};
    auto res = dp_pushforward(mixed);
    EXPECT_EQ(res.segre_form, oracle_pushforward(flag, build_ftilde_general(flag, parse_poly("u1^2*u2^3", VarSet::formal(2)))));
}

TEST(Grassmannian, GoldenTable) {
    EXPECT_EQ(grassmannian_pushforward(4, 2, 4).segre_form.poly(), segre_of("2", 0));
    EXPECT_EQ(grassmannian_pushforward(4, 2, 8).segre_form.poly(), segre_of("14*s1*s3 + 14*s2^2 - 8*s4", 4));
    EXPECT_EQ(grassmannian_pushforward(4, 2, 8).chern_form.poly(),
              chern_of("20*c1^4 - 32*c1^2*c2 - 2*c1*c3 + 6*c2^2 + 8*c4", 4));
    EXPECT_EQ(grassmannian_pushforward(4, 2, 8).provenance, Provenance::GrassmannianClosedForm);
    EXPECT_TRUE(grassmannian_pushforward(4, 2, 3).is_zero());
    EXPECT_THROW(grassmannian_pushforward(4, 4, 3), ContractViolation);
}

TEST(Grassmannian, ProjectiveCaseIsSignedSegre) {
    for (int r = 2; r <= 6; ++r)
        for (int N = r - 1; N <= r + 4; ++N) {
            const int k = N - r + 1;
            SparsePoly expected = k == 0 ? SparsePoly::one(VarSet::segre(0))
                                         : SparsePoly::variable(VarSet::segre(k), {VarKind::Segre, k});
            if (k % 2) expected = -expected;
            EXPECT_EQ(grassmannian_pushforward(r, 1, N).segre_form.poly(), expected) << "r=" << r << " N=" << N;
        }
}

TEST(Grassmannian, AgreesWithGeneralFormula) {
    for (int r = 2; r <= 5; ++r)
        for (int d = 1; d < r; ++d)
            for (int N = 0; N <= d * (r - d) + 3; ++N) {
                auto closed = grassmannian_pushforward(r, d, N);
                auto general = push_weight({0, r - d, r}, grassmann_weight(r, d), N);
                EXPECT_EQ(closed.segre_form, general.segre_form) << "r=" << r << " d=" << d << " N=" << N;
            }
}

TEST(Positivity, SampledStrictWeights) {
    for (const auto& a : std::vector<std::vector<int>>{{1, 0, 0}, {2, 1, 0}, {3, 1, 0}, {4, 2, 1}})
        for (int k = 0; k <= 3; ++k) {
            auto res = push_weight({0, 1, 2, 3}, a, 3 + k);
            EXPECT_TRUE(res.schur.positive) << "k=" << k;
        }
    auto neg = push_weight({0, 1, 2, 3}, {0, 1, 2}, 6);
    EXPECT_FALSE(neg.schur.positive);
}
