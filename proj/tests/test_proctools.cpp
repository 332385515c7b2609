#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exst/proctools.hpp"

using namespace exst;

namespace {

const FiniteAbelianGroup Z2({2});

int count_sub(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (std::size_t p = hay.find(needle); p != std::string::npos;
         p = hay.find(needle, p + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("simplify_randomly finds the norm-4 exchange representative") {
    ExcitationModel tri = builtin_model("triangle", Z2);
    StatisticsEngine eng(tri);
    Expression g = eng.compute_T(true).generators[0];

    SimplifyOptions opts;
    opts.tries = 500;
    opts.restarts = 4;
    opts.seed = 42;
    Expression best = simplify_randomly(eng, g, opts);
    CHECK(norm1(best) == 4);
    CHECK(norm1(best) <= norm1(g));
    CHECK(eng.order_of_expression(best - g) == 1);  // congruent mod identities
    CHECK(eng.order_of_expression(best) == 2);

    // deterministic given the seed
    CHECK(simplify_randomly(eng, g, opts) == best);

    // an identity itself descends to zero
    Expression idcol = from_vector(tri, eng.identity_columns()[0]);
    CHECK(simplify_randomly(eng, idcol, opts).is_zero());
}

TEST_CASE("simplify_randomly stays congruent on the centered triangle") {
    ExcitationModel ct = builtin_model("centered-triangle", Z2);
    StatisticsEngine eng(ct);
    Expression g = eng.compute_T(true).generators[0];
    SimplifyOptions opts;
    opts.tries = 1500;
    opts.restarts = 6;
    opts.seed = 7;
    Expression best = simplify_randomly(eng, g, opts);
    CHECK(norm1(best) <= norm1(g));
    CHECK(eng.order_of_expression(best - g) == 1);
    CHECK(eng.order_of_expression(best) == 4);
}

TEST_CASE("reconstruct_process round-trips expressions") {
    ExcitationModel tri = builtin_model("triangle", Z2);

    CHECK(reconstruct_process(tri, Expression{}).length() == 0);

    Expression f = expand_theta(tri, parse_process(tri, "[U2,U1^2]"), 0).expression;
    ProcessWord w = reconstruct_process(tri, f);
    ThetaExpansion back = expand_theta(tri, w, 0);
    CHECK(back.expression == f);
    CHECK(back.final_config == 0);
    CHECK(w.length() >= 4);

    Expression open;
    open.add(0, 0, 1);
    CHECK_THROWS_AS(reconstruct_process(tri, open), DomainError);
}

TEST_CASE("reconstruct_process joins remote components with connectors") {
    ExcitationModel ct = builtin_model("centered-triangle", Z2);
    Expression f = expand_theta(ct, parse_process(ct, "[U[0,2],U[0,1]^2]"), 0).expression;

    // shift the cycle into the coset not containing the base configuration
    int spoke = ct.op_by_label("U[0,3]");
    int off = ct.config_apply(0, spoke, +1);
    Expression shifted = translate(ct, f, off);
    for (const auto& [k, c] : shifted.coeffs) CHECK(k.second != 0);

    ProcessWord w = reconstruct_process(ct, shifted);
    ThetaExpansion back = expand_theta(ct, w, 0);
    CHECK(back.expression == shifted);
    CHECK(back.final_config == 0);
    CHECK(w.length() > static_cast<int>(norm1(shifted).get_si()));  // connectors add length

    // both components at once
    Expression both = f + shifted;
    ProcessWord w2 = reconstruct_process(ct, both);
    CHECK(expand_theta(ct, w2, 0).expression == both);
}

TEST_CASE("reconstruct_process handles every builtin generator") {
    for (const char* name : {"triangle", "polygon:4", "centered-triangle", "k33"}) {
        ExcitationModel m = builtin_model(name, Z2);
        StatisticsEngine eng(m);
        for (const Expression& g : eng.compute_T(true).generators) {
            ProcessWord w = reconstruct_process(m, g);
            ThetaExpansion back = expand_theta(m, w, 0);
            CHECK(back.expression == g);
            CHECK(back.final_config == 0);
        }
    }
}

TEST_CASE("emit_dot draws the configuration cycle") {
    ExcitationModel tri = builtin_model("triangle", Z2);
    Expression f = expand_theta(tri, parse_process(tri, "[U2,U1^2]"), 0).expression;

    std::string dot = emit_dot(tri, f);
    CHECK(count_sub(dot, "->") == 4);
    CHECK(count_sub(dot, "color=red") == 2);
    CHECK(count_sub(dot, "color=blue") == 2);
    CHECK(count_sub(dot, "[label=") == 8);  // 4 nodes + 4 edges
    CHECK(count_sub(dot, "\"1\"") == 1);    // base configuration labeled by 1

    Expression single;
    single.add(0, 0, 1);
    std::string one = emit_dot(tri, single);
    CHECK(count_sub(one, "->") == 1);
    CHECK(count_sub(one, "color=red") == 1);
    CHECK(count_sub(one, "[label=") == 3);

    CHECK(count_sub(emit_dot(tri, Expression{}), "->") == 0);
}
