#include <doctest.h>

#include "hypersynth/error.hpp"
#include "hypersynth/parser.hpp"
#include "hypersynth/semantics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hypersynth;

namespace {

const std::vector<std::string> kProps{"a", "b"};
const std::vector<std::string> kVars{"p", "q"};

const Lasso kT1{{{"a"}}, {{"b"}}};
const Lasso kT2{{{"a"}, {"a"}}, {{"b"}}};

std::map<std::string, Lasso> random_asg(oracle::Rng& r) {
    return {{"p", oracle::random_lasso(r, kProps, 4, 3)}, {"q", oracle::random_lasso(r, kProps, 4, 3)}};
}

std::vector<Lasso> random_traces(oracle::Rng& r) {
    std::vector<Lasso> t;
    std::size_t n = 1 + r.below(4);
    for (std::size_t i = 0; i < n; ++i) t.push_back(oracle::random_lasso(r, kProps, 3, 2));
    return t;
}

}  // namespace

TEST_CASE("eval_body") {
    Body same = parse_body("G(a[p] <-> a[q])");
    CHECK(eval_body(same, {{"p", kT1}, {"q", kT1}}));
    CHECK_FALSE(eval_body(same, {{"p", kT1}, {"q", kT2}}));
    CHECK_FALSE(eval_body(parse_body("F m[p]"), {{"p", kT2}}));
    CHECK(eval_body(parse_body("X X b[p] & !X b[q] & X X b[q]"), {{"p", kT1}, {"q", kT2}}));
    CHECK_THROWS_AS(eval_body(same, {{"p", kT1}}), UnboundVariable);

    Lasso ab{{}, {{"a"}, {"b"}}};
    CHECK(eval_body(parse_body("G F a[p] & G F b[p]"), {{"p", ab}}));
    CHECK_FALSE(eval_body(parse_body("F G a[p]"), {{"p", ab}}));
    CHECK(eval_body(parse_body("a[p] U b[p]"), {{"p", ab}}));
}

TEST_CASE("horizon guard") {
    Lasso x{{}, std::vector<Letter>(7, Letter{})}, y{{}, std::vector<Letter>(11, Letter{"a"})};
    Body b = parse_body("G(a[p] | !a[q])");
    CHECK_NOTHROW(eval_body(b, {{"p", x}, {"q", y}}, 77));
    CHECK_THROWS_AS(eval_body(b, {{"p", x}, {"q", y}}, 76), HorizonExceeded);
    CHECK_THROWS_AS(eval_quantified(parse("forall p. forall q. G(a[p] | !a[q])"), {x, y}, 50), HorizonExceeded);
}

TEST_CASE("eval_quantified") {
    CHECK(eval_quantified(parse("forall p. forall q. G(a[p] <-> a[q])"), {kT1}));
    CHECK_FALSE(eval_quantified(parse("forall p. forall q. G(a[p] <-> a[q])"), {kT1, kT2}));
    CHECK_FALSE(eval_quantified(parse("exists p. F pos[p]"), {kT1, kT2}));
    CHECK(eval_quantified(parse("exists p. forall q. G(b[q] -> b[p])"), {kT1, kT2}));
}

TEST_CASE("check") {
    Plant p = fixture::small_acyclic();
    auto r = check(p, parse("forall p. forall q. G(a[p] <-> a[q])"));
    CHECK_FALSE(r.holds);
    CHECK(r.exact);
    CHECK(r.definitive);
    CHECK(r.frame == FrameKind::Acyclic);
    CHECK(r.traces == 2);
    CHECK(check(p, parse("exists p. F b[p]")).holds);
    CHECK(check(p, parse("forall p. true")).holds);
    CHECK(check(fixture::two_cycle(), parse("forall p. true")).holds);

    auto g = check(fixture::two_cycle(), parse("forall p. G F b[p]"));
    CHECK(g.holds);
    CHECK_FALSE(g.exact);
    CHECK_FALSE(g.definitive);
    // a counterexample among bounded lassos refutes a universal claim outright
    auto h = check(fixture::two_cycle(), parse("forall p. F G a[p]"));
    CHECK_FALSE(h.holds);
    CHECK(h.definitive);
    // an existential miss at the bound proves nothing
    auto e = check(fixture::two_cycle(), parse("exists p. F G a[p]"));
    CHECK_FALSE(e.holds);
    CHECK_FALSE(e.definitive);
}

TEST_CASE("check ignores duplicate paths with the same labels") {
    Plant p = fixture::small_acyclic();
    Plant q = p;
    auto extra = q.add_state("s4", {"b"});
    q.add_controllable(1, extra);
    q.add_controllable(extra, extra);
    oracle::Rng r(31);
    for (int i = 0; i < 100; ++i) {
        Formula f = oracle::random_formula(r, i % 2 ? "AA" : "EA", 6, kProps);
        CHECK(check(p, f).holds == check(q, f).holds);
        CHECK(check(q, f).holds == oracle::exact_check(q, f));
    }
}

TEST_CASE("property: lasso DP against the unrolling oracles") {
    oracle::Rng r(32);
    std::size_t conclusive = 0;
    for (int i = 0; i < 1000; ++i) {
        Body b = oracle::random_body(r, 8, kVars, kProps);
        auto asg = random_asg(r);
        bool dp = eval_body(b, asg);
        auto u = oracle::unrolled_eval(b, asg, oracle::unrolling_length(b, asg));
        if (u != oracle::Tri::Unknown) {
            ++conclusive;
            CHECK_MESSAGE(dp == (u == oracle::Tri::True), print(b));
        }
        CHECK_MESSAGE(dp == oracle::periodic_eval(b, asg), print(b));
    }
    MESSAGE("conclusive unrollings: " << conclusive);
    CHECK(conclusive > 500);
}

TEST_CASE("property: quantifier duality") {
    oracle::Rng r(33);
    const char* patterns[] = {"A", "E", "AE", "EA", "AA", "EE"};
    for (int i = 0; i < 300; ++i) {
        Formula f = oracle::random_formula(r, patterns[i % 6], 6, kProps);
        auto traces = random_traces(r);
        Formula dual{f.prefix, negate_nnf(f.body)};
        for (auto& [q, v] : dual.prefix) q = q == Quant::Forall ? Quant::Exists : Quant::Forall;
        Formula dual_not{dual.prefix, lnot(f.body)};
        bool v = eval_quantified(f, traces);
        CHECK(v == !eval_quantified(dual, traces));
        CHECK(v == !eval_quantified(dual_not, traces));
        CHECK(v == oracle::quantified(f, traces));
    }
}

TEST_CASE("property: shift coherence") {
    oracle::Rng r(34);
    for (int i = 0; i < 500; ++i) {
        Body b = oracle::random_body(r, 6, kVars, kProps);
        auto asg = random_asg(r);
        CHECK(eval_body(next(b), asg) == eval_body(b, oracle::shift(asg)));
    }
}

TEST_CASE("property: negate_nnf on 200 cases") {
    oracle::Rng r(35);
    for (int i = 0; i < 200; ++i) {
        Body b = desugar(oracle::random_body(r, 8, kVars, kProps));
        auto asg = random_asg(r);
        Body n = negate_nnf(b);
        CHECK(eval_body(n, asg) == !eval_body(b, asg));
        CHECK(oracle::periodic_eval(n, asg) == !oracle::periodic_eval(b, asg));
    }
}

TEST_CASE("property: check agrees with the dfs oracle on acyclic plants") {
    oracle::Rng r(36);
    const char* patterns[] = {"A", "E", "AE", "EA", "AA", "EE", "AEA"};
    for (int i = 0; i < 300; ++i) {
        Plant p = oracle::random_acyclic(r, 8, 6, kProps);
        Formula f = oracle::random_formula(r, patterns[i % 7], 6, kProps);
        auto c = check(p, f);
        CHECK(c.exact);
        CHECK(c.holds == oracle::exact_check(p, f));
    }
}
