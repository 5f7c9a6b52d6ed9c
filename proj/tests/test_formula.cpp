#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ms4lab/formula.hpp"

#include <random>
#include <set>

using namespace ms4lab;
using F = Formula;

namespace {

F random_formula(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 13);
    static const char* names[] = {"p", "q", "r1", "x_2"};
    switch (pick(rng)) {
        case 0:
        case 1: return F::var(names[rng() % 4]);
        case 2: return rng() % 2 ? F::top() : F::bot();
        case 3: return F::neg(random_formula(rng, depth - 1));
        case 4: return F::conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 5: return F::disj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 6: return F::imp(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 7: return F::dia(random_formula(rng, depth - 1));
        case 8: return F::ex(random_formula(rng, depth - 1));
        case 9: return F::box(random_formula(rng, depth - 1));
        case 10: return F::all(random_formula(rng, depth - 1));
        case 11: return F::bdia(random_formula(rng, depth - 1));
        case 12: return F::bbox(random_formula(rng, depth - 1));
        default: return F::sdia(random_formula(rng, depth - 1));
    }
}

// Naive recursion over the primitive tree, deduplicated by printed form.
void collect(const F& f, std::set<std::string>& out) {
    out.insert(print(f));
    if (f.is_unary()) collect(f.left(), out);
    if (f.is_binary()) {
        collect(f.left(), out);
        collect(f.right(), out);
    }
}

}  // namespace

TEST_CASE("parse examples") {
    const F q1 = F::var("q1");
    CHECK(parse("<>[]q1 -> []q1") == F::imp(F::dia(F::box(q1)), F::box(q1)));
    CHECK(parse("p") == F::var("p"));
    CHECK(parse("p").op() == Op::Var);
    CHECK(parse("[#]([](([]p -> [#]p)) -> [#]p) -> [#]p") == build_axiom({AxiomName::Kind::MCasPlus, 0}));
}

TEST_CASE("precedence and associativity") {
    const F p = F::var("p"), q = F::var("q"), r = F::var("r");
    CHECK(parse("p -> q -> r") == F::imp(p, F::imp(q, r)));
    CHECK(parse("p | q & r") == F::disj(p, F::conj(q, r)));
    CHECK(parse("~p & q") == F::conj(F::neg(p), q));
    CHECK(parse("<>p & q") == F::conj(F::dia(p), q));
    CHECK(parse("E A p") == F::ex(F::all(p)));
    CHECK(parse("<#>p") == F::dia(F::ex(p)));
    CHECK(parse("<+>p") == F::disj(F::dia(p), F::ex(p)));
    CHECK(parse("  (p)  ") == p);
    CHECK(parse("\xe2\x97\x8a p \xe2\x86\x92 \xe2\x88\x83 p") == F::imp(F::dia(p), F::ex(p)));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse("p &"), ParseError);
    CHECK_THROWS_AS(parse("(p"), ParseError);
    CHECK_THROWS_AS(parse("p q"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("p & & q");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("parse . print is the identity on random trees") {
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const F f = random_formula(rng, 5);
        const std::string s = print(f);
        INFO(s);
        CHECK(parse(s) == f);
    }
}

TEST_CASE("axioms") {
    using K = AxiomName::Kind;
    const F q1 = F::var("q1");
    const F p = F::var("p");
    CHECK(build_axiom({K::P, 1}) == F::imp(F::dia(F::box(q1)), F::box(q1)));
    CHECK(build_axiom({K::Ed, 0}) == F::imp(F::ex(p), F::dia(p)));
    CHECK(build_axiom({K::MS4Ax, 0}) == parse("E<>p -> <>E p"));
    CHECK(build_axiom({K::Bar, 0}) == parse("<>E p -> E<>p"));
    CHECK(build_axiom({K::Grz, 0}) == parse("[]([](p -> []p) -> p) -> p"));

    // p0 & <+>(p1 & <+>p2) -> (p0&p1) | (p0&p2) | <+>(p1&p2) | (p0 & <+>p2)
    const F rp1 = parse("p0 & <+>(p1 & <+>p2) -> (p0 & p1) | (p0 & p2) | <+>(p1 & p2) | (p0 & <+>p2)");
    CHECK(build_axiom({K::Rp, 1}) == rp1);

    CHECK(build_axiom({K::P, 2}) == parse("<>([]q2 & ~(<>[]q1 -> []q1)) -> []q2"));
    for (int n = 1; n <= 5; ++n) {
        const auto vars = variables(build_axiom({K::P, n}));
        REQUIRE(vars.size() == static_cast<std::size_t>(n));
        std::set<std::string> want;
        for (int k = 1; k <= n; ++k) want.insert("q" + std::to_string(k));
        CHECK(std::set<std::string>(vars.begin(), vars.end()) == want);
        CHECK(build_axiom({K::P0, n}) == zero_transform(build_axiom({K::P, n})));
    }
    CHECK_THROWS_AS(build_axiom({K::P, 0}), std::invalid_argument);
    CHECK_THROWS_AS(build_axiom({K::Rp, 0}), std::invalid_argument);
}

TEST_CASE("axiom names") {
    using K = AxiomName::Kind;
    CHECK(parse_axiom_name("P3") == AxiomName{K::P, 3});
    CHECK(parse_axiom_name("p0_2") == AxiomName{K::P0, 2});
    CHECK(parse_axiom_name("rp1") == AxiomName{K::Rp, 1});
    CHECK(parse_axiom_name("MCAS") == AxiomName{K::MCasPlus, 0});
    CHECK(parse_axiom_name(to_string(AxiomName{K::P0, 4})) == AxiomName{K::P0, 4});
    CHECK_THROWS(parse_axiom_name("nonsense"));
}

TEST_CASE("zero_transform") {
    const F p = F::var("p"), q = F::var("q");
    CHECK(zero_transform(F::dia(p)) == F::dia(F::ex(p)));
    CHECK(zero_transform(p) == p);
    CHECK(zero_transform(F::box(q)) == F::neg(F::dia(F::ex(F::neg(q)))));
    CHECK(zero_transform(zero_transform(F::dia(p))) != zero_transform(F::dia(p)));

    // Commutes with substituting modality-free formulas.
    std::mt19937 rng(11);
    const std::map<std::string, F> sub{{"p", F::conj(q, F::neg(F::var("r")))}, {"q", F::top()}};
    for (int i = 0; i < 200; ++i) {
        const F f = random_formula(rng, 4);
        CHECK(zero_transform(substitute(f, sub)) == substitute(zero_transform(f), sub));
    }
}

TEST_CASE("subterms") {
    const F p = F::var("p");
    CHECK(subterms(F::dia(p)) == std::vector<F>{p, F::dia(p)});
    CHECK(subterms(F::conj(p, p)) == std::vector<F>{p, F::conj(p, p)});

    const F ms4 = parse("E<>p -> <>E p");
    const auto st = subterms(ms4);
    CHECK(st.size() == 6);
    CHECK(st.back() == ms4);

    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
        const F f = random_formula(rng, 5);
        std::set<std::string> naive;
        collect(f, naive);
        const auto got = subterms(f);
        CHECK(got.size() == naive.size());
        CHECK(got.back() == f);
        // Post-order: children precede parents.
        for (std::size_t k = 0; k < got.size(); ++k) {
            if (got[k].is_unary() || got[k].is_binary())
                CHECK(std::find(got.begin(), got.begin() + k, got[k].left()) != got.begin() + k);
        }
    }
}
