#include <doctest.h>

#include <set>

#include "hypersynth/error.hpp"
#include "hypersynth/plant.hpp"
#include "hypersynth/plant_io.hpp"
#include "hypersynth/reductions.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hypersynth;

namespace {

std::set<Lasso> canon_set(const std::vector<Lasso>& xs) {
    std::set<Lasso> s;
    for (const auto& x : xs) s.insert(canonical(x));
    return s;
}

int rank(FrameKind k) { return k == FrameKind::Tree ? 0 : k == FrameKind::Acyclic ? 1 : 2; }

const std::vector<std::string> kProps{"a", "b"};

}  // namespace

TEST_CASE("validate") {
    CHECK_NOTHROW(validate(fixture::small_acyclic()));
    CHECK_NOTHROW(validate(fixture::single()));

    Plant dead;
    auto s0 = dead.add_state("s0"), s1 = dead.add_state("s1");
    dead.add_controllable(s0, s1);
    CHECK_THROWS_AS(validate(dead), DeadlockState);

    Plant both = fixture::single();
    both.add_uncontrollable(0, 0);
    CHECK_THROWS_AS(validate(both), OverlappingEdge);

    Plant dangling = fixture::single();
    dangling.add_controllable(0, 7);
    CHECK_THROWS_AS(validate(dangling), DanglingReference);
}

TEST_CASE("classify_frame") {
    CHECK(classify_frame(fixture::small_acyclic()) == FrameKind::Acyclic);
    CHECK(classify_frame(fixture::single()) == FrameKind::Tree);
    CHECK(classify_frame(fixture::two_cycle()) == FrameKind::General);

    // self-loop on a state with another successor is a real cycle
    Plant p = fixture::small_acyclic();
    p.add_controllable(1, 1);
    CHECK(classify_frame(p) == FrameKind::General);

    Plant tree;
    auto r = tree.add_state("r"), x = tree.add_state("x"), y = tree.add_state("y");
    tree.add_uncontrollable(r, x);
    tree.add_controllable(r, y);
    tree.add_controllable(x, x);
    tree.add_uncontrollable(y, y);
    CHECK(classify_frame(tree) == FrameKind::Tree);
}

TEST_CASE("enumerate_traces") {
    auto t = enumerate_traces(fixture::small_acyclic());
    REQUIRE(t.size() == 2);
    CHECK(enumerate_paths(fixture::small_acyclic()).size() == 3);
    std::set<Lasso> want{Lasso{{{"a"}}, {{"b"}}}, Lasso{{{"a"}, {"a"}}, {{"b"}}}};
    CHECK(canon_set(t) == want);

    auto one = enumerate_traces(fixture::single());
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Lasso{{}, {{"a"}}});

    auto two = threesat_to_instance(fixture::two_clause_cnf()).plant;
    CHECK(enumerate_paths(two).size() == 6);
    CHECK(enumerate_traces(two).size() == 6);

    CHECK_THROWS_AS(enumerate_traces(fixture::two_cycle()), NotAcyclic);
}

TEST_CASE("enumerate_lassos") {
    CHECK(canon_set(enumerate_lassos(fixture::small_acyclic(), 4, 1)) == canon_set(enumerate_traces(fixture::small_acyclic())));

    auto c = canon_set(enumerate_lassos(fixture::two_cycle(), 2, 2));
    CHECK(c.count(Lasso{{}, {{"a"}, {"b"}}}) == 1);

    CHECK(enumerate_lassos(fixture::small_acyclic(), 0, 1).empty());
    CHECK(enumerate_lassos(fixture::two_cycle(), 0, 1).empty());
}

TEST_CASE("lasso_equal") {
    CHECK(lasso_equal(Lasso{{}, {{"a"}}}, Lasso{{{"a"}}, {{"a"}, {"a"}}}));
    CHECK_FALSE(lasso_equal(Lasso{{{"a"}}, {{"b"}}}, Lasso{{{"a"}, {"a"}}, {{"b"}}}));
    Lasso x{{{"a"}, {}}, {{"b"}, {"a", "b"}}};
    CHECK(lasso_equal(x, x));
    CHECK(lasso_equal(x, canonical(x)));
    CHECK(lasso_equal(Lasso{{{"b"}}, {{"a"}, {"b"}}}, Lasso{{}, {{"b"}, {"a"}}}));
}

TEST_CASE("plant json") {
    Plant p = fixture::small_acyclic();
    auto j = plant_to_json(p);
    Plant q = plant_from_json(j);
    CHECK(plant_to_json(q) == j);
    CHECK(plant_hash(p) == plant_hash(q));
    CHECK(plant_hash(p).size() == 16);
    CHECK(plant_hash(p) != plant_hash(fixture::single()));

    auto bad = j;
    bad["extra"] = 1;
    CHECK_THROWS_AS(plant_from_json(bad), FormatError);
    auto dangling = j;
    dangling["controllable"].push_back({"s1", "nowhere"});
    CHECK_THROWS_AS(plant_from_json(dangling), DanglingReference);
    auto dead = j;
    dead["controllable"] = nlohmann::json::array();
    CHECK_THROWS_AS(plant_from_json(dead), DeadlockState);

    auto dot = to_dot(p);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("dashed") != std::string::npos);
}

TEST_CASE("property: frame monotonicity under added edges") {
    oracle::Rng r(11);
    for (int i = 0; i < 400; ++i) {
        Plant p = i % 2 ? oracle::random_tree(r, 10, 6, kProps) : oracle::random_acyclic(r, 10, 6, kProps);
        FrameKind before = classify_frame(p);
        StateId a = r.below(p.size()), b = r.below(p.size());
        if (p.is_controllable({a, b})) continue;
        p.add_uncontrollable(a, b);
        CHECK(rank(classify_frame(p)) >= rank(before));
    }
}

TEST_CASE("property: tree traces bounded by leaves, one-letter loops on terminal labels") {
    oracle::Rng r(12);
    for (int i = 0; i < 300; ++i) {
        Plant p = oracle::random_tree(r, 12, 8, kProps);
        REQUIRE(classify_frame(p) == FrameKind::Tree);
        auto term = terminal_states(p);
        std::set<Letter> leaf_labels;
        std::size_t leaves = 0;
        for (StateId s = 0; s < p.size(); ++s)
            if (term[s]) {
                ++leaves;
                leaf_labels.insert(p.label(s));
            }
        auto t = enumerate_traces(p);
        CHECK(t.size() <= leaves);
        for (const auto& x : t) {
            CHECK(x.loop.size() == 1);
            CHECK(leaf_labels.count(x.loop[0]) == 1);
        }
    }
}

TEST_CASE("property: traces agree with the dfs oracle") {
    oracle::Rng r(13);
    for (int i = 0; i < 300; ++i) {
        Plant p = oracle::random_acyclic(r, 10, 6, kProps);
        CHECK(canon_set(enumerate_traces(p)) == canon_set(oracle::dfs_traces(p)));
        CHECK(canon_set(enumerate_lassos(p, p.size(), 1)) == canon_set(enumerate_traces(p)));
    }
}

TEST_CASE("property: enumerate_lassos monotone in both bounds") {
    oracle::Rng r(14);
    for (int i = 0; i < 150; ++i) {
        Plant p = oracle::random_general(r, 6, 4, kProps);
        std::size_t s = r.below(4), l = 1 + r.below(3);
        auto base = canon_set(enumerate_lassos(p, s, l));
        auto more_stem = canon_set(enumerate_lassos(p, s + 1, l));
        auto more_loop = canon_set(enumerate_lassos(p, s, l + 1));
        for (const auto& x : base) {
            CHECK(more_stem.count(x) == 1);
            CHECK(more_loop.count(x) == 1);
        }
    }
}
