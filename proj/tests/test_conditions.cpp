#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ms4lab/conditions.hpp"
#include "ms4lab/constructions.hpp"

#include <algorithm>

using namespace ms4lab;

namespace {

MS4Frame arrow_frame() {
    return MS4Frame(Relation::from_pairs(2, {{0, 0}, {1, 1}, {0, 1}}), Relation::total(2));
}

bool has(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

bool barcan_oracle(const MS4Frame& f) {
    const int n = f.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (!f.r().test(x, y) || !f.e().test(y, z)) continue;
                bool ok = false;
                for (int w = 0; w < n; ++w) ok = ok || (f.e().test(x, w) && f.r().test(w, z));
                if (!ok) return false;
            }
    return true;
}

bool sc_oracle(const MS4Frame& f) {
    const int n = f.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (f.r().test(x, y) && f.r().test(x, z) && !f.r().test(y, z) && !f.r().test(z, y)) return false;
    return true;
}

// Every union of E-classes, qmax and flatness straight from the definitions.
bool mcas_oracle(const MS4Frame& f) {
    const auto cls = f.e().classes();
    const int n = f.size();
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << cls.size()); ++pick) {
        std::vector<bool> in(n, false);
        for (std::size_t c = 0; c < cls.size(); ++c)
            if ((pick >> c) & 1U) cls[c].for_each([&](int x) { in[x] = true; });
        for (int x = 0; x < n; ++x) {
            if (!in[x]) continue;
            bool quasi_max = true;
            for (int y = 0; y < n; ++y)
                if (in[y] && f.r().test(x, y) && !f.r().test(y, x)) quasi_max = false;
            if (!quasi_max) continue;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (f.e().test(x, a) && f.e().test(x, b) && f.r().test(a, b) && !f.r().test(b, a)) return false;
        }
    }
    return true;
}

bool s(const MS4Frame& f, int a, int b) { return f.r().test(a, b) || f.e().test(a, b); }

// Longest irreducible path by extending every sequence of distinct worlds.
int path_oracle(const MS4Frame& f, bool proper, std::vector<int>& seq, std::vector<bool>& used) {
    int best = static_cast<int>(seq.size()) - 1;
    const int last = seq.back();
    for (int y = 0; y < f.size(); ++y) {
        if (used[y] || !s(f, last, y)) continue;
        if (proper && f.r().test(last, y) && f.e().test(last, y)) continue;
        bool shortcut = false;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) shortcut = shortcut || s(f, seq[i], y);
        if (shortcut) continue;
        used[y] = true;
        seq.push_back(y);
        best = std::max(best, path_oracle(f, proper, seq, used));
        seq.pop_back();
        used[y] = false;
    }
    return best;
}

int path_oracle(const MS4Frame& f, bool proper) {
    int best = 0;
    for (int x = 0; x < f.size(); ++x) {
        std::vector<int> seq{x};
        std::vector<bool> used(f.size(), false);
        used[x] = true;
        best = std::max(best, path_oracle(f, proper, seq, used));
    }
    return best;
}

}  // namespace

TEST_CASE("first-order checkers against triple loops") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& f : enumerate_frames(n)) {
            CHECK(check_barcan(f).holds == barcan_oracle(f));
            CHECK(check_sc(f).holds == sc_oracle(f));
            CHECK(check_ed(f).holds == f.e().subset_of(f.r()));
            CHECK(check_grz_finite(f).holds == f.r().antisymmetric());
            CHECK(check_mcas_semantic(f).holds == mcas_oracle(f));
        }
}

TEST_CASE("checker examples") {
    const auto a = arrow_frame();
    CHECK(check_barcan(a).holds);
    const auto ed = check_ed(a);
    CHECK_FALSE(ed.holds);
    CHECK(ed.witness == std::vector<int>{1, 0});
    CHECK(check_sc(a).holds);
    CHECK(check_grz_finite(a).holds);

    const auto m = check_mcas_semantic(a);
    CHECK_FALSE(m.holds);
    CHECK(m.witness_set == WorldSet::full(2));
    CHECK(m.witness == std::vector<int>{1});
    CHECK(check_mcas_semantic(chain_frame(4)).holds);
    CHECK(check_mcas_semantic(product_frame(chain_frame(2).r(), 2)).holds);
}

TEST_CASE("mcas cluster cap") {
    const auto big = MS4Frame(Relation::identity(6), Relation::identity(6));
    const auto r = check_mcas_semantic(big, 3);
    CHECK(r.budget_exceeded);
}

TEST_CASE("longest irreducible path") {
    for (int n = 1; n <= 5; ++n) CHECK(longest_irreducible_path(chain_frame(n), false, 64).length == (n > 1 ? 1 : 0));

    const auto g2 = grid_frame(2, 2).ms4;
    const auto p2 = longest_irreducible_path(g2, false, 64);
    CHECK(p2.length == 2);
    CHECK(is_irreducible_path(g2, p2.witness.worlds, false));

    for (int n = 1; n <= 3; ++n)
        for (const auto& f : enumerate_frames(n))
            for (bool proper : {false, true}) {
                const auto got = longest_irreducible_path(f, proper, 64);
                CHECK(got.length == path_oracle(f, proper));
                CHECK(got.witness.worlds.size() == static_cast<std::size_t>(got.length) + 1);
                CHECK(is_irreducible_path(f, got.witness.worlds, proper));
            }

    const auto g3 = grid_frame(3, 3).ms4;
    const auto p3 = longest_irreducible_path(g3, false, 64);
    CHECK(p3.length == path_oracle(g3, false));
    const auto capped = longest_irreducible_path(g3, false, 2);
    CHECK(capped.capped);
    CHECK(capped.length == 2);
}

TEST_CASE("is_irreducible_path") {
    const auto g = grid_frame(2, 2).ms4;  // world i*2+j
    CHECK(is_irreducible_path(g, {0, 1, 3}, false));
    CHECK_FALSE(is_irreducible_path(g, {0, 1, 0}, false));
    CHECK_FALSE(is_irreducible_path(g, {0, 3}, false));
    const auto l2 = chain_frame(3);
    CHECK_FALSE(is_irreducible_path(l2, {2, 1, 0}, false));
}

TEST_CASE("check_rp") {
    CHECK(check_rp(chain_frame(4), 1).holds);
    const auto g = grid_frame(2, 2).ms4;
    const auto r = check_rp(g, 1);
    CHECK_FALSE(r.holds);
    CHECK(is_irreducible_path(g, r.witness, false));
    CHECK(r.witness.size() == 3);
    CHECK(check_rp(g, 2).holds);
}

TEST_CASE("classify") {
    const auto l2 = classify(chain_frame(2)).classes;
    for (const char* c : {"MS4", "MS4B", "M+S4", "grz", "sc", "ed", "depth 2", "q-depth 2"}) CHECK(has(l2, c));
    CHECK_FALSE(has(l2, "MS4_S"));

    const auto g = classify(grid_frame(2, 2).ms4).classes;
    for (const char* c : {"MS4", "MS4B", "M+S4", "MS4_S", "depth 1"}) CHECK(has(g, c));
    CHECK_FALSE(has(g, "grz"));

    const auto a = classify(arrow_frame()).classes;
    for (const char* c : {"MS4", "MS4B", "MS4_S", "depth 2", "q-depth 1"}) CHECK(has(a, c));
    CHECK_FALSE(has(a, "M+S4"));
}

TEST_CASE("depth countermodel") {
    const auto phi = [](int n) { return build_axiom({AxiomName::Kind::P, n}); };
    for (int d = 1; d <= 5; ++d)
        for (int n = 1; n <= 4; ++n) {
            const auto f = chain_frame(d);
            const auto cm = depth_countermodel(f, n);
            CHECK(cm.has_value() == (d > n));
            if (cm) CHECK_FALSE(eval(f, cm->valuation, phi(n)).contains(cm->world));
        }
}
