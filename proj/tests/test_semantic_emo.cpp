#include <doctest.h>

#include <limits>
#include <set>

#include "semgp/semantic_emo.hpp"
#include "support.hpp"

using namespace semgp;

namespace {

auto const inf = std::numeric_limits<double>::infinity();

auto member(std::string const& text, ObjectiveVector objectives, Semantics semantics) -> Individual
{
    Individual ind;
    ind.tree = Program::parse(text);
    ind.objectives = std::move(objectives);
    ind.semantics = std::move(semantics);
    return ind;
}

auto tiny_dataset() -> Dataset
{
    std::vector<FitnessCase> cases { { { 0.0, 1.0 }, Label::Positive }, { { 1.0, 2.0 }, Label::Negative },
        { { 2.0, 0.5 }, Label::Negative }, { { 3.0, -1.0 }, Label::Negative } };
    return Dataset(std::move(cases), "p", "n");
}

auto evaluated(std::string const& text, Dataset const& ds) -> Individual
{
    auto ind = member(text, {}, {});
    ind.semantics = evaluate_semantics(ind.tree, ds);
    return ind;
}

auto fixed_points(SwapPoints pts) -> SwapPointPicker
{
    return [pts](Program const&, Program const&, Rng&) { return std::optional<SwapPoints>(pts); };
}

auto small_params() -> EngineParams
{
    EngineParams p;
    p.pop_size = 30;
    return p;
}

} // namespace

TEST_CASE("identical parents exhaust every trial when lbss is positive")
{
    auto const ds = tiny_dataset();
    auto const a = evaluated("(+ x0 x1)", ds);
    SemanticConfig cfg;
    cfg.bounds = { 0.01, 0.5 };
    cfg.ssc_max_trials = 7;
    Rng rng(51);
    std::size_t calls = 0;
    SwapPointPicker const picker = [&](Program const&, Program const&, Rng&) {
        ++calls;
        return std::optional<SwapPoints>({ 1, 1 });
    };
    auto const out = ssc_crossover(a, a, cfg, ds, {}, picker, rng);
    CHECK(out.trials == 7);
    CHECK(calls == 7);
    CHECK_FALSE(out.accepted);
    CHECK(out.distance == 0.0);
    CHECK(out.first == a.tree);
}

TEST_CASE("vacuous bounds accept the first trial")
{
    auto const ds = tiny_dataset();
    SemanticConfig cfg;
    cfg.bounds = { 0.0, inf };
    Rng rng(52);
    CrossoverParams const cp;
    SwapPointPicker const picker = [cp](Program const& x, Program const& y, Rng& r) { return select_swap_points(x, y, cp, r); };
    for (int i = 0; i < 50; ++i) {
        auto const out = ssc_crossover(evaluated("(* x0 (- x1 0.5))", ds), evaluated("(/ x1 x0)", ds), cfg, ds, {}, picker, rng);
        CHECK(out.trials == 1);
        CHECK(out.accepted);
    }
}

TEST_CASE("stub swap with distance 0.3 is accepted at once")
{
    auto const ds = tiny_dataset();
    // subtrees x0 and (+ x0 0.3) differ by exactly 0.3 everywhere
    auto const a = evaluated("(* x0 x1)", ds);
    auto const b = evaluated("(- (+ x0 0.3) x1)", ds);
    SemanticConfig cfg;
    cfg.bounds = { 0.1, 0.5 };
    Rng rng(53);
    auto const out = ssc_crossover(a, b, cfg, ds, {}, fixed_points({ 1, 1 }), rng);
    CHECK(out.accepted);
    CHECK(out.trials == 1);
    CHECK(out.distance == doctest::Approx(0.3));
    CHECK(out.first.to_string() == "(* (+ x0 0.3) x1)");
    CHECK(out.second.to_string() == "(- x0 x1)");
}

TEST_CASE("whole-parent comparison and case subsets")
{
    auto const ds = tiny_dataset();
    auto const a = evaluated("x0", ds);
    auto const b = evaluated("(+ x0 (* x0 x0))", ds);
    SemanticConfig cfg;
    cfg.bounds = { 0.0, 0.5 };
    cfg.ssc_whole_parent = true;
    cfg.ssc_max_trials = 3;
    Rng rng(54);
    // whole parents differ by x0^2: mean 3.5, but 0 on case 0 alone
    CHECK_FALSE(ssc_crossover(a, b, cfg, ds, {}, fixed_points({ 0, 0 }), rng).accepted);
    std::vector<std::size_t> const first_case { 0 };
    CHECK(ssc_crossover(a, b, cfg, ds, first_case, fixed_points({ 0, 0 }), rng).accepted);
}

TEST_CASE("subset sampling")
{
    Rng rng(55);
    auto const s = sample_case_subset(200, 0.25, rng);
    CHECK(s.size() == 50);
    CHECK(std::set<std::size_t>(s.begin(), s.end()).size() == 50);
    CHECK(sample_case_subset(10, 0.01, rng).size() == 1);
}

TEST_CASE("semantic crowding counts")
{
    SemanticConfig cfg;
    cfg.bounds = { 0.01, 0.5 };
    Pivot const pivot { { 0.0, 0.0, 0.0 }, 0 };
    cfg.distance_rule = DistanceRule::AboveUpper;
    CHECK(scd_assign(std::vector<Semantics> { pivot.semantics }, pivot, cfg) == std::vector { 0.0 });

    std::vector<Semantics> const members {
        { 0.0, 0.0, 0.0 }, { 0.6, 0.0, 0.0 }, { 0.6, -0.7, 0.0 }, { 1.0, 1.0, 1.0 }, { 0.5, 0.2, -0.51 }
    };
    CHECK(scd_assign(members, pivot, cfg) == std::vector { 0.0, 1.0, 2.0, 3.0, 1.0 });

    cfg.distance_rule = DistanceRule::Band;
    std::vector<Semantics> const same(4, pivot.semantics);
    CHECK(scd_assign(same, pivot, cfg) == std::vector(4, 0.0));
}

TEST_CASE("semantic objective values")
{
    SemanticConfig cfg;
    cfg.bounds = { 0.01, 0.5 };
    Pivot const pivot { { 0.0, 0.0, 0.0, 0.0 }, 0 };
    CHECK(sdo_criterion({ 0.1, 0.2, 0.3, 0.4 }, pivot, cfg) == -1.0);
    CHECK(sdo_criterion({ 0.0, 0.0, 0.0, 0.0 }, pivot, cfg) == 0.0);
    CHECK(sdo_criterion({ 0.2, 0.0, 0.0, 0.0 }, pivot, cfg) == -0.25);

    Population pop { member("x0", { 0.3, 0.4, 9.0 }, { 0.2, 0.0, 0.0, 0.0 }) };
    sdo_extend(pop, pivot, cfg);
    CHECK(pop[0].objectives == ObjectiveVector { 0.3, 0.4, -0.25 });
}

TEST_CASE("semantic crowding survival on a ten-member toy population")
{
    // front 0: A B C; front 1: D E F H; deeper: G I J
    Population merged {
        member("x0", { 0.0, 1.0 }, { 5.0, 5.0, 5.0, 5.0 }), // A
        member("x0", { 0.5, 0.5 }, { 0.0, 0.0, 0.0, 0.0 }), // B, pivot (only finite crowding)
        member("x0", { 1.0, 0.0 }, { 9.0, 9.0, 9.0, 9.0 }), // C
        member("x0", { 0.6, 0.6 }, { 0.1, 0.1, 0.1, 0.1 }), // D: 4 in band
        member("x0", { 0.2, 1.0 }, { 0.1, 0.0, 0.0, 0.0 }), // E: 1
        member("x0", { 1.0, 0.2 }, { 1.0, 1.0, 1.0, 0.2 }), // F: 1
        member("x0", { 0.7, 0.7 }, { 0.1, 0.1, 0.1, 0.1 }), // G
        member("x0", { 0.55, 0.9 }, { 0.3, 0.3, 0.0, 0.0 }), // H: 2
        member("x0", { 0.8, 0.8 }, { 0.2, 0.2, 0.2, 0.2 }), // I
        member("x0", { 1.0, 1.0 }, { 0.2, 0.2, 0.2, 0.2 }), // J
    };
    SemanticConfig cfg;
    cfg.approach = Approach::Scd;
    ScdHook hook(cfg);
    Rng rng(56);
    auto const next = nsga2_survival(merged, 5, hook, rng);
    REQUIRE(hook.pivot());
    CHECK(hook.pivot()->semantics == merged[1].semantics);
    std::set<ObjectiveVector> got;
    for (auto const& ind : next) {
        got.insert(ind.objectives);
    }
    CHECK(got == std::set<ObjectiveVector> { { 0.0, 1.0 }, { 0.5, 0.5 }, { 1.0, 0.0 }, { 0.6, 0.6 }, { 0.55, 0.9 } });
}

TEST_CASE("canonical runs match the bare engines")
{
    auto const ds = load_csv(testing::synthetic_path());
    PrimitiveSet ps;
    ps.n_features = 2;
    RunOptions opts;
    opts.generations = 6;
    for (auto kind : { EngineKind::Nsga2, EngineKind::Spea2, EngineKind::Moead }) {
        auto const v = run_variant(kind, {}, small_params(), ps, ds, nullptr, 57, opts);
        auto const raw = testing::raw_engine_front(kind, small_params(), ds, 57, 6);
        REQUIRE(v.front.size() == raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            CHECK(v.front[i].program == raw[i].tree);
            CHECK(v.front[i].objectives == raw[i].objectives);
        }
        CHECK(v.stats.size() == 6);
    }
}

TEST_CASE("semantic objective runs report two-entry fronts")
{
    auto const ds = load_csv(testing::synthetic_path());
    PrimitiveSet ps;
    ps.n_features = 2;
    SemanticConfig cfg;
    cfg.approach = Approach::Sdo;
    for (auto kind : { EngineKind::Nsga2, EngineKind::Spea2, EngineKind::Moead }) {
        for (std::size_t gens : { 1u, 5u }) {
            RunOptions opts;
            opts.generations = gens;
            auto const v = run_variant(kind, cfg, small_params(), ps, ds, nullptr, 58, opts);
            REQUIRE_FALSE(v.front.empty());
            for (auto const& m : v.front) {
                CHECK(m.objectives.size() == 2);
            }
        }
    }
}

TEST_CASE("every approach runs on every supported engine")
{
    auto const ds = load_csv(testing::synthetic_path());
    PrimitiveSet ps;
    ps.n_features = 2;
    RunOptions opts;
    opts.generations = 4;
    for (auto kind : { EngineKind::Nsga2, EngineKind::Spea2, EngineKind::Moead }) {
        for (auto a : { Approach::Canonical, Approach::Ssc, Approach::Scd, Approach::Sdo }) {
            SemanticConfig cfg;
            cfg.approach = a;
            if (a == Approach::Scd && kind == EngineKind::Moead) {
                CHECK_THROWS_WITH_AS(run_variant(kind, cfg, small_params(), ps, ds, nullptr, 59, opts),
                    doctest::Contains("moead"), Error);
                cfg.allow_limitation_combos = true;
            }
            auto const v = run_variant(kind, cfg, small_params(), ps, ds, nullptr, 59, opts);
            CHECK(v.stats.size() == 4);
            if (a == Approach::Ssc) {
                CHECK(v.ssc_attempted > 0);
                CHECK(v.ssc_accepted <= v.ssc_attempted);
            }
        }
    }
}

TEST_CASE("name parsing")
{
    CHECK(parse_approach("sdo") == Approach::Sdo);
    CHECK(parse_engine("spea2") == EngineKind::Spea2);
    CHECK(parse_distance_rule("eq1") == DistanceRule::AboveUpper);
    CHECK_THROWS_AS(parse_approach("nope"), Error);
    CHECK_THROWS_AS(parse_engine("nsga3"), Error);
    CHECK_THROWS_AS(parse_distance_rule("eq3"), Error);
}
