#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "exst/expr.hpp"

using namespace exst;

namespace {

const FiniteAbelianGroup Z2({2});

ProcessWord random_word(std::mt19937& rng, const ExcitationModel& m, int len) {
    std::uniform_int_distribution<int> op(0, m.op_count() - 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    ProcessWord w;
    for (int i = 0; i < len; ++i) w.letters.push_back({op(rng), sgn(rng) ? 1 : -1});
    return w;
}

}  // namespace

TEST_CASE("parse_process grammar") {
    ExcitationModel tri = builtin_model("triangle", Z2);

    ProcessWord w = parse_process(tri, "[U2, U1^2]");
    REQUIRE(w.length() == 6);
    // [a,b] = a^-1 b^-1 a b with a=U2, b=U1^2
    std::vector<std::pair<int, int>> expect = {{1, -1}, {0, -1}, {0, -1},
                                               {1, 1},  {0, 1},  {0, 1}};
    CHECK(w.letters == expect);

    CHECK(parse_process(tri, "U1^0").length() == 0);
    CHECK(parse_process(tri, "[U3,[U2,U1]]").length() == 10);
    CHECK(parse_process(tri, "U1*U2 U3").length() == 3);
    CHECK(parse_process(tri, "U1^-2").letters ==
          std::vector<std::pair<int, int>>{{0, -1}, {0, -1}});
    CHECK(parse_process(tri, "(U1 U2)^-1").letters ==
          std::vector<std::pair<int, int>>{{1, -1}, {0, -1}});
    CHECK(parse_process(tri, "U[0,1] U[1,2]^-1").letters ==
          std::vector<std::pair<int, int>>{{0, 1}, {2, -1}});

    CHECK_THROWS_AS(parse_process(tri, "U7"), ParseError);
    CHECK_THROWS_AS(parse_process(tri, "U1^"), ParseError);
    CHECK_THROWS_AS(parse_process(tri, "(U1"), ParseError);
    CHECK_THROWS_AS(parse_process(tri, "[U1 U2]"), ParseError);
    CHECK_THROWS_AS(parse_process(tri, ""), ParseError);
    CHECK_THROWS_AS(parse_process(tri, "U1)"), ParseError);

    // labels with bracket groups and trailing characters
    ExcitationModel dac = builtin_model("double-arc-chain", Z2);
    ProcessWord arcs = parse_process(dac, "U[0,2]u U[1,3]d^-1");
    CHECK(arcs.letters == std::vector<std::pair<int, int>>{{0, 1}, {3, -1}});
}

TEST_CASE("expand_theta reproduces the four-term commutator expansion") {
    ExcitationModel tri = builtin_model("triangle", Z2);
    int s1 = 0, s2 = 1;
    int a0 = 0;
    int a_s1 = tri.config_apply(0, s1, +1);
    int a_s2 = tri.config_apply(0, s2, +1);
    int a_s12 = tri.config_apply(a_s1, s2, +1);

    // θ([s2,s1],a) = θ(s1,a) + θ(s2,a+∂s1) − θ(s1,a+∂s2) − θ(s2,a)
    ThetaExpansion t = expand_theta(tri, parse_process(tri, "[U2,U1]"), a0);
    Expression want;
    want.add(s1, a0, 1);
    want.add(s2, a_s1, 1);
    want.add(s1, a_s2, -1);
    want.add(s2, a0, -1);
    CHECK(t.expression == want);
    CHECK(t.final_config == a0);

    // θ([s2,s1^2],0) = θ(s1,0)+θ(s1,∂s1)−θ(s1,∂s2)−θ(s1,∂s1+∂s2)
    ThetaExpansion f = expand_theta(tri, parse_process(tri, "[U2,U1^2]"), a0);
    Expression fs;
    fs.add(s1, a0, 1);
    fs.add(s1, a_s1, 1);
    fs.add(s1, a_s2, -1);
    fs.add(s1, a_s12, -1);
    CHECK(f.expression == fs);
    CHECK(norm1(f.expression) == 4);

    CHECK(expand_theta(tri, ProcessWord{}, a0).expression.is_zero());
}

TEST_CASE("theta identities hold on random words") {
    ExcitationModel ct = builtin_model("centered-triangle", Z2);
    std::mt19937 rng(5);
    for (int it = 0; it < 50; ++it) {
        ProcessWord g = random_word(rng, ct, 6);
        int a = std::uniform_int_distribution<int>(0, ct.config_count() - 1)(rng);

        // θ(g g^-1, a) = 0
        ProcessWord gg = g;
        gg *= g.inverse();
        CHECK(expand_theta(ct, gg, a).expression.is_zero());

        // θ(s^-1, a+∂s) = −θ(s, a)
        int s = std::uniform_int_distribution<int>(0, ct.op_count() - 1)(rng);
        ProcessWord inv;
        inv.letters = {{s, -1}};
        Expression lhs =
            expand_theta(ct, inv, ct.config_apply(a, s, +1)).expression;
        Expression rhs;
        rhs.add(s, a, -1);
        CHECK(lhs == rhs);

        // θ([g,hk],a) = θ([g,k],a) + θ([g,h],a+∂k)
        ProcessWord h = random_word(rng, ct, 3), k = random_word(rng, ct, 3);
        auto comm = [&](const ProcessWord& x, const ProcessWord& y) {
            ProcessWord c = x.inverse();
            c *= y.inverse();
            c *= x;
            c *= y;
            return c;
        };
        ProcessWord hk = h;
        hk *= k;
        int a_k = expand_theta(ct, k, a).final_config;
        Expression left = expand_theta(ct, comm(g, hk), a).expression;
        Expression right = expand_theta(ct, comm(g, k), a).expression +
                           expand_theta(ct, comm(g, h), a_k).expression;
        CHECK(left == right);
    }
}

TEST_CASE("boundary_0chain telescopes") {
    ExcitationModel ct = builtin_model("centered-triangle", Z2);
    std::mt19937 rng(6);
    for (int it = 0; it < 30; ++it) {
        ProcessWord g = random_word(rng, ct, 5);
        int a = std::uniform_int_distribution<int>(0, ct.config_count() - 1)(rng);
        ThetaExpansion t = expand_theta(ct, g, a);
        auto b = boundary_0chain(ct, t.expression);
        if (t.final_config == a) {
            CHECK(b.empty());
        } else {
            REQUIRE(b.size() == 2);
            CHECK(b.at(t.final_config) == 1);
            CHECK(b.at(a) == -1);
        }
    }
    Expression single;
    single.add(0, 0, 1);
    auto b = boundary_0chain(ct, single);
    CHECK(b.at(ct.config_apply(0, 0, +1)) == 1);
    CHECK(b.at(0) == -1);
}

TEST_CASE("restrict_expression kills the F-symbol on two edges") {
    ExcitationModel tri = builtin_model("triangle", Z2);
    Expression f = expand_theta(tri, parse_process(tri, "[U2,U1^2]"), 0).expression;

    // V = S: nothing changes (configurations keep their classes)
    std::vector<int> all = {0, 1, 2};
    MappedModel qa = quotient_model(tri, all);
    Expression same = restrict_expression(qa, f);
    CHECK(norm1(same) == norm1(f));

    // V = {s1,s2}: ∂s1+∂s2 ≡ 0 mod ∂s3, so the four terms cancel pairwise
    CHECK(restrict_expression(tri, f, {0, 1}).is_zero());
}

TEST_CASE("restrict factors through larger operator sets") {
    ExcitationModel ct = builtin_model("centered-triangle", Z2);
    std::vector<int> v_big = ct.max_support_sets()[1];  // ops at vertex 1
    std::vector<int> v_small = {v_big[0], v_big[1]};

    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
        Expression e = expand_theta(ct, random_word(rng, ct, 6), 0).expression;

        MappedModel q_small = quotient_model(ct, v_small);
        Expression direct = restrict_expression(q_small, e);

        MappedModel q_big = quotient_model(ct, v_big);
        Expression inner = restrict_expression(q_big, e);
        std::vector<int> v_img;
        for (int s : v_small) v_img.push_back(q_big.op_map[s]);
        MappedModel q2 = quotient_model(q_big.model, v_img);
        Expression composed = restrict_expression(q2, inner);

        // compare through representatives (class numbering may differ)
        Expression mapped;
        for (const auto& [k, c] : composed.coeffs) {
            const GroupElement& rep = q2.model.config_rep(k.second);
            mapped.add(k.first, q_small.model.config_of_element(rep), c);
        }
        CHECK(mapped == direct);
    }
}

TEST_CASE("translate is a group action") {
    ExcitationModel ct = builtin_model("centered-triangle", Z2);
    std::mt19937 rng(8);
    for (int it = 0; it < 20; ++it) {
        Expression e = expand_theta(ct, random_word(rng, ct, 5), 0).expression;
        CHECK(translate(ct, e, 0) == e);
        for (int b = 0; b < ct.config_count(); ++b) {
            Expression shifted = translate(ct, e, b);
            int nb = ct.config_of_element(ct.ambient().neg(ct.config_rep(b)));
            CHECK(translate(ct, shifted, nb) == e);
        }
    }
}

TEST_CASE("configuration and expression text round-trips") {
    ExcitationModel tri = builtin_model("triangle", Z2);
    for (int c = 0; c < tri.config_count(); ++c)
        CHECK(parse_config_text(tri, config_text(tri, c)) == c);
    CHECK(config_text(tri, 0) == "[0,0,0]");
    CHECK_THROWS_AS(parse_config_text(tri, "[1,0,0]"), ParseError);  // not a boundary
    CHECK_THROWS_AS(parse_config_text(tri, "[0,0]"), ParseError);
    CHECK_THROWS_AS(parse_config_text(tri, "0,0,0"), ParseError);

    // grouped form accepted
    ExcitationModel tri22 = builtin_model("triangle", FiniteAbelianGroup({2, 2}));
    int cg = tri22.config_apply(0, 0, +1);
    std::string flat = config_text(tri22, cg);
    CHECK(parse_config_text(tri22, flat) == cg);
    CHECK(parse_config_text(tri22, "[(1,0),(1,0),(0,0)]") ==
          parse_config_text(tri22, "[1,0,1,0,0,0]"));

    Expression f = expand_theta(tri, parse_process(tri, "[U2,U1^2]"), 0).expression;
    std::stringstream ss;
    write_expression(tri, f, ss);
    CHECK(read_expression(tri, ss) == f);

    std::stringstream commented(
        "# a comment line\n"
        "2 U[0,1] @ [0,0,0]   # trailing comment\n"
        "\n"
        "-1 U2 @ [1,1,0]\n");
    Expression e = read_expression(tri, commented);
    CHECK(e.coeffs.size() == 2);
    CHECK(norm1(e) == 3);

    std::stringstream bad("1 U[0,1] [0,0,0]\n");
    CHECK_THROWS_AS(read_expression(tri, bad), ParseError);
}
