#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ms4lab/constructions.hpp"
#include "ms4lab/semantics.hpp"

#include <random>

using namespace ms4lab;
using F = Formula;

namespace {

MS4Frame arrow_frame() {
    return MS4Frame(Relation::from_pairs(2, {{0, 0}, {1, 1}, {0, 1}}), Relation::total(2));
}

// Pointwise truth straight from the satisfaction clauses.
bool holds(const MS4Frame& f, const Valuation& v, const F& phi, int x) {
    switch (phi.op()) {
        case Op::Var: return v.at(phi.name()).contains(x);
        case Op::Top: return true;
        case Op::Bot: return false;
        case Op::Not: return !holds(f, v, phi.left(), x);
        case Op::And: return holds(f, v, phi.left(), x) && holds(f, v, phi.right(), x);
        case Op::Or: return holds(f, v, phi.left(), x) || holds(f, v, phi.right(), x);
        case Op::Imp: return !holds(f, v, phi.left(), x) || holds(f, v, phi.right(), x);
        case Op::Dia:
        case Op::Ex: {
            const Relation& rel = phi.op() == Op::Dia ? f.r() : f.e();
            for (int y = 0; y < f.size(); ++y)
                if (rel.test(x, y) && holds(f, v, phi.left(), y)) return true;
            return false;
        }
    }
    return false;
}

F random_formula(std::mt19937& rng, int depth) {
    const int k = depth <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 8);
    switch (k) {
        case 0: return F::var(rng() % 2 ? "p" : "q");
        case 1: return F::var("p");
        case 2: return F::neg(random_formula(rng, depth - 1));
        case 3: return F::conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 4: return F::imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 5: return F::dia(random_formula(rng, depth - 1));
        case 6: return F::ex(random_formula(rng, depth - 1));
        default: return F::box(random_formula(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("eval matches pointwise clauses") {
    std::mt19937 rng(5);
    const auto frames = enumerate_frames(3);
    for (int i = 0; i < 400; ++i) {
        const auto& f = frames[rng() % frames.size()];
        const F phi = random_formula(rng, 4);
        const Valuation v{{"p", WorldSet(rng() % 8)}, {"q", WorldSet(rng() % 8)}};
        const WorldSet got = eval(f, v, phi);
        for (int x = 0; x < 3; ++x) CHECK(got.contains(x) == holds(f, v, phi, x));
    }
}

TEST_CASE("eval examples") {
    const auto a = arrow_frame();
    CHECK(eval(a, {{"p", WorldSet::single(1)}}, parse("E<>p -> <>E p")) == a.worlds());
    CHECK_THROWS_AS(eval(a, {}, parse("p")), UnboundVariable);
}

TEST_CASE("valid agrees with exhaustive pointwise search") {
    std::mt19937 rng(9);
    const auto frames = enumerate_frames(3);
    for (int i = 0; i < 150; ++i) {
        const auto& f = frames[rng() % frames.size()];
        const F phi = random_formula(rng, 4);
        const auto res = valid(f, phi);
        // Same enumeration order as documented: first sorted variable most significant.
        std::optional<Countermodel> first;
        const auto vars = variables(phi);
        const std::uint64_t per = 8, total = vars.size() == 2 ? 64 : vars.size() == 1 ? 8 : 1;
        for (std::uint64_t idx = 0; idx < total && !first; ++idx) {
            Valuation v;
            std::uint64_t rest = idx;
            for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
                v[*it] = WorldSet(rest % per);
                rest /= per;
            }
            for (int x = 0; x < 3; ++x)
                if (!holds(f, v, phi, x)) {
                    first = Countermodel{v, x};
                    break;
                }
        }
        REQUIRE((res.verdict == Verdict::Invalid) == first.has_value());
        if (first) {
            CHECK(res.countermodel->valuation == first->valuation);
            CHECK(res.countermodel->world == first->world);
        }
    }
}

TEST_CASE("valid examples") {
    CHECK(valid(arrow_frame(), build_axiom({AxiomName::Kind::MCasPlus, 0})).verdict == Verdict::Invalid);
    for (const auto& f : enumerate_frames(3))
        CHECK(valid(f, build_axiom({AxiomName::Kind::MS4Ax, 0})).verdict == Verdict::Valid);
}

TEST_CASE("countermodel does not depend on the thread count") {
    const auto f = grid_frame(2, 3).ms4;
    const F phi = build_axiom({AxiomName::Kind::Rp, 1});
    const auto one = valid(f, phi, {kDefaultValuationBudget, 1});
    const auto four = valid(f, phi, {kDefaultValuationBudget, 4});
    REQUIRE(one.verdict == Verdict::Invalid);
    REQUIRE(four.verdict == Verdict::Invalid);
    CHECK(one.countermodel->valuation == four.countermodel->valuation);
    CHECK(one.countermodel->world == four.countermodel->world);
}

TEST_CASE("budget") {
    const auto f = grid_frame(2, 3).ms4;
    const auto r = valid(f, build_axiom({AxiomName::Kind::P, 3}), {1000, 1});
    CHECK(r.verdict == Verdict::BudgetExceeded);
    CHECK(to_string(r.verdict) == "budget-exceeded");
}

TEST_CASE("valid_over") {
    std::vector<MS4Frame> chains;
    for (int n = 1; n <= 4; ++n) chains.push_back(chain_frame(n));
    const auto grz = valid_over(chains, build_axiom({AxiomName::Kind::Grz, 0}));
    CHECK(grz.aggregate == Verdict::Valid);
    CHECK(grz.valid_count == 4);
    const auto p2 = valid_over(chains, build_axiom({AxiomName::Kind::P, 2}));
    REQUIRE(p2.items.size() == 4);
    CHECK(p2.items[0].verdict == Verdict::Valid);
    CHECK(p2.items[1].verdict == Verdict::Valid);
    CHECK(p2.items[2].verdict == Verdict::Invalid);
    CHECK(p2.items[3].verdict == Verdict::Invalid);
    CHECK(p2.aggregate == Verdict::Invalid);
    const auto none = valid_over(std::span<const MS4Frame>{}, parse("p"));
    CHECK(none.aggregate == Verdict::Valid);
    CHECK(none.items.empty());
}
