#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ms4lab/constructions.hpp"
#include "ms4lab/frame.hpp"

using namespace ms4lab;

namespace {

// a = 0 sees b = 1; one E-class.
MS4Frame arrow_frame() {
    return MS4Frame(Relation::from_pairs(2, {{0, 0}, {1, 1}, {0, 1}}), Relation::total(2));
}

// Commutation by exhaustion over triples.
bool commutes_by_triples(const Relation& r, const Relation& e) {
    const int n = r.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int y2 = 0; y2 < n; ++y2) {
                if (!e.test(x, y) || !r.test(y, y2)) continue;
                bool found = false;
                for (int x2 = 0; x2 < n; ++x2) found = found || (r.test(x, x2) && e.test(x2, y2));
                if (!found) return false;
            }
    return true;
}

Relation compose(const Relation& a, const Relation& b) {
    const int n = a.size();
    Relation out(n);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z)
            for (int y = 0; y < n; ++y)
                if (a.test(x, z) && b.test(z, y)) out.set(x, y);
    return out;
}

}  // namespace

TEST_CASE("validate") {
    CHECK_NOTHROW(MS4Frame(Relation::identity(1), Relation::identity(1)));
    const auto r = Relation::from_pairs(2, {{0, 0}, {1, 1}, {0, 1}});
    CHECK(commutes_by_triples(r, Relation::total(2)));
    CHECK_NOTHROW(MS4Frame(r, Relation::total(2)));
    CHECK_NOTHROW(MS4Frame(Relation::identity(2), Relation::total(2)));

    // Three worlds: 0 E 1, 1 R 2, nothing else; 0 cannot reach E(2).
    const auto bad_r = Relation::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {1, 2}});
    const auto bad_e = Relation::from_pairs(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}});
    CHECK_FALSE(commutes_by_triples(bad_r, bad_e));
    try {
        MS4Frame f(bad_r, bad_e);
        FAIL("accepted");
    } catch (const FrameError& e) {
        CHECK(e.violation.kind == FrameViolation::Kind::CommutationFails);
        CHECK(e.violation.witness == std::vector<int>{0, 1, 2});
    }
    CHECK_THROWS_AS(MS4Frame(Relation(2), Relation::total(2)), FrameError);
    CHECK_THROWS_AS(MS4Frame(Relation::identity(2), Relation::from_pairs(2, {{0, 0}, {1, 1}, {0, 1}})), FrameError);
    CHECK_NOTHROW(validate(Relation::from_pairs(3, {{0, 1}, {1, 2}}), Relation(3), true, true));
}

TEST_CASE("derived relations") {
    const auto f = arrow_frame();
    CHECK(q_relation(f) == Relation::total(2));
    CHECK(eq_relation(f) == Relation::total(2));
    CHECK(er_relation(f) == Relation::identity(2));
    CHECK(s_relation(f) == Relation::total(2));

    for (const auto& g : enumerate_frames(3)) {
        CHECK(q_relation(g) == compose(g.r(), g.e()));
        CHECK(er_relation(g) == (g.r() & g.r().converse()));
        CHECK(s_relation(g) == (g.r() | g.e()));
    }
}

TEST_CASE("qmax") {
    CHECK(qmax(chain_frame(3), WorldSet::full(3)) == WorldSet::single(0));
    CHECK(qmax(chain_frame(3), WorldSet()).empty());
    CHECK(qmax(arrow_frame(), WorldSet::full(2)) == WorldSet::single(1));
}

TEST_CASE("layers and depth") {
    for (int n = 1; n <= 6; ++n) {
        const auto f = chain_frame(n);
        const auto d = layers(f);
        REQUIRE(d.layers.size() == static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) CHECK(d.layers[k] == WorldSet::single(k));
        CHECK(depth(f) == n);
        CHECK(point_depth(f, n - 1) == n);
    }
    const auto cluster = MS4Frame(Relation::total(4), Relation::identity(4));
    CHECK(depth(cluster) == 1);
    const auto a = arrow_frame();
    CHECK(depth(a) == 2);
    CHECK(layers(a).layers == std::vector<WorldSet>{WorldSet::single(1), WorldSet::single(0)});
}

TEST_CASE("quotient") {
    const auto l3 = chain_frame(3);
    CHECK(quotient_frame(l3).frame == l3);
    CHECK(quotient_frame(arrow_frame()).frame.size() == 1);
    CHECK(q_depth(arrow_frame()) == 1);
    const auto grid = grid_frame(2, 2).ms4;
    const auto q = quotient_frame(grid);
    CHECK(q.frame.size() == 2);
    CHECK(q.frame.r() == Relation::total(2));
    CHECK(q_depth(grid) == 1);
}

TEST_CASE("restrict") {
    const auto l3 = chain_frame(3);
    const auto top = restrict(l3, layers(l3).layers[0]);
    CHECK(top.worlds == std::vector<int>{0});
    CHECK(top.r == Relation::identity(1));
    const auto a = restrict(arrow_frame(), WorldSet::single(0));
    CHECK(a.r.size() == 1);
    CHECK(a.r_quasi_order);

    const auto p = product_frame(chain_frame(2).r(), 2);
    const auto d1 = restrict(p, layers(p).layers[0]);
    CHECK(d1.r_equivalence);
    CHECK(d1.e_equivalence);
    CHECK(d1.relations_commute);
}

TEST_CASE("q_roots and SI") {
    for (int n = 1; n <= 4; ++n) {
        CHECK(q_roots(chain_frame(n)) == WorldSet::single(n - 1));
        CHECK(classify_si(chain_frame(n)) == (n == 1 ? SIClass::Simple : SIClass::SI));
    }
    for (int k = 2; k <= 4; ++k) {
        const auto g = grid_frame(k, k).ms4;
        CHECK(q_roots(g) == g.worlds());
        CHECK(classify_si(g) == SIClass::Simple);
    }
    const auto two = MS4Frame(Relation::identity(2), Relation::identity(2));
    CHECK(q_roots(two).empty());
    CHECK(classify_si(two) == SIClass::NotSI);
}

TEST_CASE("flat, saturated, passive") {
    const auto a = arrow_frame();
    CHECK_FALSE(flat(a, a.e().row(0)));
    CHECK(flat(a, WorldSet::single(1)));
    CHECK(e_saturated(a, WorldSet::full(2)));
    CHECK_FALSE(e_saturated(a, WorldSet::single(0)));

    // In L3, {0, 2} has 2 active: 2 R 1 R 0 with 1 outside.
    const auto l3 = chain_frame(3);
    CHECK(passive_points(l3, WorldSet(0b101)) == WorldSet::single(0));
    CHECK(passive_points(l3, l3.worlds()) == l3.worlds());
}
