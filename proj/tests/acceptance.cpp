// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "hypersynth/nrp.hpp"
#include "hypersynth/parser.hpp"
#include "hypersynth/reductions.hpp"
#include "hypersynth/semantics.hpp"
#include "hypersynth/synthesis.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hypersynth;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) note << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

bool realizable(const SynthesisResult& r) { return r.verdict == Verdict::Realizable; }

// 1. small acyclic plant
void small_plant(Outcome& o) {
    Plant p = fixture::small_acyclic();
    o.require(classify_frame(p) == FrameKind::Acyclic, "frame");
    o.require(enumerate_traces(p).size() == 2, "trace count");
    o.require(check(p, parse("exists p. F b[p]")).holds, "exists p. F b[p]");
    o.require(!check(p, parse("forall p. forall q. G(a[p] <-> a[q])")).holds, "forall-forall agreement");
}

// 2. 3SAT sweep: 3 variables, clauses are multisets of 3 literals, 1..3 distinct clauses
void threesat(Outcome& o) {
    std::vector<int> lits{1, -1, 2, -2, 3, -3};
    std::vector<std::vector<int>> clauses;
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a; b < 6; ++b)
            for (std::size_t c = b; c < 6; ++c) clauses.push_back({lits[a], lits[b], lits[c]});
    std::size_t n = 0, sat = 0;
    auto run = [&](const CnfInput& in) {
        ++n;
        auto inst = threesat_to_instance(in);
        auto r = dispatch(inst.plant, inst.formula);
        bool want = oracle::sat(in);
        sat += want;
        o.require(realizable(r) == want, "verdict vs brute force");
        if (r.solution) o.require(oracle::satisfies(in, decode_assignment(inst, *r.solution)), "decoded assignment");
    };
    const std::size_t m = clauses.size();
    for (std::size_t a = 0; a < m; ++a) {
        run({3, {clauses[a]}});
        for (std::size_t b = a + 1; b < m; ++b) {
            run({3, {clauses[a], clauses[b]}});
            for (std::size_t c = b + 1; c < m; ++c) run({3, {clauses[a], clauses[b], clauses[c]}});
        }
    }
    auto inst = threesat_to_instance(fixture::two_clause_cnf());
    auto r = dispatch(inst.plant, inst.formula);
    o.require(realizable(r), "two-clause CNF realizable");
    if (r.solution) o.require(oracle::satisfies(fixture::two_clause_cnf(), decode_assignment(inst, *r.solution)), "two-clause witness");
    std::map<int, bool> reference{{1, true}, {2, false}, {3, false}, {4, false}};
    auto sol = fixture::threesat_pruning(inst, reference);
    o.require(oracle::exact_check(apply_solution(inst.plant, sol), inst.formula), "reference pruning passes");
    o.require(decode_assignment(inst, sol) == reference, "reference pruning decodes back");
    o.note << n << " formulas, " << sat << " satisfiable";
}

// 3. Horn sweep: 4 variables, 48 Horn clauses, 1..4 distinct clauses
void horn(Outcome& o) {
    std::vector<std::vector<int>> cl;
    for (int m = 0; m < 16; ++m) {
        std::vector<int> neg;
        for (int v = 0; v < 4; ++v)
            if (m >> v & 1) neg.push_back(-(v + 1));
        cl.push_back(neg);
        for (int v = 0; v < 4; ++v)
            if (!(m >> v & 1)) {
                auto c = neg;
                c.push_back(v + 1);
                cl.push_back(c);
            }
    }
    o.require(normalize_horn(fixture::horn_example()).to_string() ==
                  "(!x1 | !x2 | f) & (!x3 | !f | x4) & (!x2 | !x2 | x4) & (!x1 | !x1 | bot)",
              "normalization example");
    std::size_t n = 0, sat = 0;
    auto run = [&](const CnfInput& in) {
        ++n;
        auto h = normalize_horn(in);
        auto inst = horn_to_instance(h);
        auto r = dispatch(inst.plant, inst.formula);
        bool want = oracle::sat(in);
        sat += want;
        o.require(oracle::horn_min_model(h) == want, "normalized side conditions");
        o.require(realizable(r) == want, "verdict vs brute force");
        if (r.solution) o.require(oracle::satisfies(in, decode_assignment(inst, *r.solution)), "decoded assignment");
    };
    const std::size_t m = cl.size();
    for (std::size_t a = 0; a < m; ++a) {
        run({4, {cl[a]}});
        for (std::size_t b = a + 1; b < m; ++b) {
            run({4, {cl[a], cl[b]}});
            for (std::size_t c = b + 1; c < m; ++c) {
                run({4, {cl[a], cl[b], cl[c]}});
                for (std::size_t d = c + 1; d < m; ++d) run({4, {cl[a], cl[b], cl[c], cl[d]}});
            }
        }
    }
    o.note << n << " formulas, " << sat << " satisfiable";
}

// 4. exists-leading QBFs, 3..5 variables, 1..3 clauses, 1 or 2 alternations
void qbf(Outcome& o) {
    oracle::Rng r(4);
    std::size_t n = 0, yes = 0;
    auto run = [&](const QbfInput& q) {
        ++n;
        auto inst = qbf_to_instance(q);
        bool want = oracle::qbf_true(q);
        yes += want;
        o.require(realizable(dispatch(inst.plant, inst.formula)) == want, "verdict vs brute force");
    };
    run(fixture::three_var_qbf());
    o.require(realizable(dispatch(qbf_to_instance(fixture::three_var_qbf()).plant, qbf_to_instance(fixture::three_var_qbf()).formula)),
              "three-variable QBF realizable");
    for (int i = 0; i < 240; ++i) {
        QbfInput q;
        q.num_vars = 3 + r.below(3);
        std::size_t k = 1 + i % 2;
        // k+1 nonempty blocks over variables in order, outermost existential
        std::vector<std::size_t> cuts;
        while (cuts.size() < k) {
            std::size_t c = 1 + r.below(q.num_vars - 1);
            if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
        }
        std::size_t block = 0;
        for (std::size_t v = 1; v <= q.num_vars; ++v) {
            if (std::find(cuts.begin(), cuts.end(), v - 1) != cuts.end()) ++block;
            q.prefix.push_back({block % 2 ? Quant::Forall : Quant::Exists, static_cast<int>(v)});
        }
        std::size_t m = 1 + r.below(3);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<int> vars;
            for (std::size_t v = 1; v <= q.num_vars; ++v) vars.push_back(static_cast<int>(v));
            std::shuffle(vars.begin(), vars.end(), r.gen);
            q.clauses.push_back({});
            for (int t = 0; t < 3; ++t) q.clauses.back().push_back(r.coin() ? vars[t] : -vars[t]);
        }
        run(q);
    }
    o.note << n << " formulas, " << yes << " true";
}

// 5. tree algorithms vs exhaustive search
void trees(Outcome& o) {
    oracle::Rng r(5);
    const std::vector<std::string> props{"a", "b"};
    const char* ef[] = {"A", "EA", "EEA"};
    const char* ae[] = {"AE", "AEE"};
    std::size_t cases = 0, real = 0, bad = 0;
    for (int i = 0; i < 500; ++i) {
        Plant p = oracle::random_tree(r, 10, 8, props);
        Formula f = oracle::random_formula(r, ef[i % 3], 6, props);
        Formula g = oracle::random_formula(r, ae[i % 2], 6, props);
        for (auto [formula, specialized] :
             {std::pair{f, &synth_tree_exists_forall}, std::pair{g, &synth_tree_marking}}) {
            ++cases;
            bool want = oracle::brute_force_realizable(p, formula);
            auto got = specialized(p, formula, {});
            real += want;
            if (realizable(got) != want) ++bad;
            if (got.solution && !oracle::exact_check(apply_solution(p, *got.solution), formula)) ++bad;
        }
    }
    o.require(bad == 0, "disagreement");
    o.note << cases << " cases, " << real << " realizable, " << bad << " disagreements";
}

// 6. E* on acyclic plants keeps the full plant; no controllable edges means model checking
void identities(Outcome& o) {
    oracle::Rng r(6);
    const std::vector<std::string> props{"a", "b"};
    const char* es[] = {"E", "EE", "EEE"};
    std::size_t real = 0;
    for (int i = 0; i < 200; ++i) {
        Plant p = oracle::random_acyclic(r, 10, 8, props);
        Formula f = oracle::random_formula(r, es[i % 3], 6, props);
        auto d = dispatch(p, f);
        bool holds = check(p, f).holds;
        real += holds;
        o.require(holds == oracle::exact_check(p, f), "check vs oracle");
        o.require(realizable(d) == holds, "E* verdict");
        if (d.solution) o.require(d.solution->retained == p.controllable(), "E* witness is the full plant");
    }
    const char* any[] = {"A", "E", "AE", "EA", "AA", "AEA"};
    for (int i = 0; i < 200; ++i) {
        Plant p = i % 3 == 0   ? oracle::random_general(r, 6, 0, props)
                  : i % 3 == 1 ? oracle::random_acyclic(r, 10, 0, props)
                               : oracle::random_tree(r, 10, 0, props);
        Formula f = oracle::random_formula(r, any[i % 6], 6, props);
        auto c = check(p, f);
        auto d = dispatch(p, f);
        Verdict want = c.holds ? Verdict::Realizable : c.definitive ? Verdict::Unrealizable : Verdict::BoundedUnknown;
        o.require(d.verdict == want, "c = {} verdict");
    }
    o.note << real << "/200 E* instances realizable";
}

// 7. case study
void casestudy(Outcome& o) {
    Plant p = nrp::build_plant(nrp::curated_config());
    Formula phi = nrp::effectiveness_fairness_formula(), cons = nrp::consistency_formula();
    auto pruned = [&](const nrp::Strategy& s) { return apply_solution(p, nrp::encode_strategy(p, s)); };
    o.require(check(pruned(nrp::t_correct()), phi).holds, "T_correct passes phi");
    o.require(!check(pruned(nrp::t_incorrect()), phi).holds, "T_incorrect fails phi");
    o.require(check(pruned(nrp::t_strange()), phi).holds, "T_strange passes phi");
    o.require(!check(pruned(nrp::t_strange()), cons).holds, "T_strange fails consistency");
    auto r = dispatch(p, phi);
    o.require(realizable(r), "dispatch realizable");
    if (r.solution) o.require(check(apply_solution(p, *r.solution), phi).holds, "witness re-checks");
    o.note << p.size() << " states, " << r.algorithm;
}

// 8. lasso DP vs unrolling, duality, negation normal form
void semantics(Outcome& o) {
    oracle::Rng r(8);
    const std::vector<std::string> props{"a", "b"}, vars{"p", "q"};
    std::size_t conclusive = 0;
    for (int i = 0; i < 1000; ++i) {
        Body b = oracle::random_body(r, 8, vars, props);
        std::map<std::string, Lasso> asg{{"p", oracle::random_lasso(r, props, 4, 3)},
                                         {"q", oracle::random_lasso(r, props, 4, 3)}};
        bool dp = eval_body(b, asg);
        auto u = oracle::unrolled_eval(b, asg, oracle::unrolling_length(b, asg));
        if (u != oracle::Tri::Unknown) {
            ++conclusive;
            o.require(dp == (u == oracle::Tri::True), "DP vs unrolling");
        }
        o.require(eval_body(negate_nnf(desugar(b)), asg) == !dp, "negate_nnf");

        std::vector<Lasso> traces;
        for (std::size_t k = 0; k < 1 + r.below(3); ++k) traces.push_back(oracle::random_lasso(r, props, 3, 2));
        Formula all{{{Quant::Forall, "p"}, {Quant::Forall, "q"}}, b};
        Formula dual{{{Quant::Exists, "p"}, {Quant::Exists, "q"}}, lnot(b)};
        o.require(eval_quantified(all, traces) == !eval_quantified(dual, traces), "duality");
    }
    o.note << conclusive << "/1000 unrollings conclusive";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> all{
        {1, "small acyclic plant regression", 1, small_plant},
        {2, "3SAT reduction sweep", 300, threesat},
        {3, "Horn reduction sweep", 300, horn},
        {4, "QBF reduction sweep", 600, qbf},
        {5, "tree algorithms vs exhaustive search", 600, trees},
        {6, "E* and uncontrollable-only identities", 300, identities},
        {7, "non-repudiation case study", 600, casestudy},
        {8, "semantics oracles", 120, semantics},
    };
    bool all_ok = true;
    for (const auto& c : all) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.note << "exception: " << e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = s < c.limit_s;
        if (!in_time) o.note << "; over the " << c.limit_s << " s limit";
        bool ok = o.ok && in_time;
        all_ok = all_ok && ok;
        std::printf("criterion %d: %s  %s (%.2f s / %.0f s) %s\n", c.id, ok ? "PASS" : "FAIL", c.name, s, c.limit_s,
                    o.note.str().c_str());
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
