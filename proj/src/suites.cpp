#include "ms4lab/suites.hpp"

#include "ms4lab/algebra.hpp"
#include "ms4lab/conditions.hpp"
#include "ms4lab/constructions.hpp"
#include "ms4lab/io.hpp"
#include "ms4lab/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace ms4lab {

namespace {

constexpr std::size_t kSamples = 20;

/// Outcome of one work item; merged in item order so reports do not depend on scheduling.
struct Tally {
    long long checks = 0;
    std::vector<std::string> failures;
    std::map<std::string, long long> counters;

    void expect(bool ok, const std::function<std::string()>& what) {
        ++checks;
        if (!ok) failures.push_back(what());
    }
};

std::vector<Tally> parallel_items(int count, int threads, const std::function<Tally(int)>& item) {
    std::vector<Tally> out(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i; (i = next.fetch_add(1)) < count;) {
            try {
                out[i] = item(i);
            } catch (const std::exception& e) {
                out[i].checks += 1;
                out[i].failures.push_back("item " + std::to_string(i) + " threw: " + e.what());
            }
        }
    };
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

void merge(SuiteReport& rep, const std::vector<Tally>& items) {
    for (const auto& t : items) {
        rep.checks += t.checks;
        rep.failures += static_cast<long long>(t.failures.size());
        for (const auto& f : t.failures)
            if (rep.failure_samples.size() < kSamples) rep.failure_samples.push_back(f);
        for (const auto& [k, v] : t.counters) rep.counters[k] += v;
    }
}

std::string show(const MS4Frame& f) { return frame_to_json(f).dump(); }

AxiomName ax(AxiomName::Kind k, int i = 0) { return AxiomName{k, i}; }

ValidityOptions budget(const SuiteOptions& o) { return ValidityOptions{o.max_valuations, 1}; }

/// Relational side of each named axiom.
bool predicted(const MS4Frame& f, const AxiomName& a, int cluster_cap) {
    using K = AxiomName::Kind;
    switch (a.kind) {
        case K::MS4Ax: return true;
        case K::Bar: return check_barcan(f).holds;
        case K::Ed: return check_ed(f).holds;
        case K::Sc: return check_sc(f).holds;
        case K::Grz: return check_grz_finite(f).holds;
        case K::MCasPlus: {
            const auto r = check_mcas_semantic(f, cluster_cap);
            if (r.budget_exceeded) throw std::runtime_error("cluster cap exceeded");
            return r.holds;
        }
        case K::P: return depth(f) <= a.index;
        case K::P0: return q_depth(f) <= a.index;
        case K::Rp: return check_rp(f, a.index).holds;
    }
    return false;
}

std::vector<AxiomName> correspondence_axioms() {
    using K = AxiomName::Kind;
    std::vector<AxiomName> out{ax(K::MS4Ax), ax(K::Bar), ax(K::Ed), ax(K::Sc), ax(K::Grz), ax(K::MCasPlus)};
    for (int n = 1; n <= 3; ++n) out.push_back(ax(K::P, n));
    for (int n = 1; n <= 3; ++n) out.push_back(ax(K::P0, n));
    for (int m = 1; m <= 3; ++m) out.push_back(ax(K::Rp, m));
    return out;
}

SuiteReport correspondence(const SuiteOptions& opts) {
    SuiteReport rep;
    const auto frames = corpus_frames(opts);
    const auto axioms = correspondence_axioms();
    std::vector<Formula> formulas;
    for (const auto& a : axioms) formulas.push_back(build_axiom(a));

    merge(rep, parallel_items(static_cast<int>(frames.size()), opts.threads, [&](int i) {
        Tally t;
        const MS4Frame& f = frames[i];
        for (std::size_t k = 0; k < axioms.size(); ++k) {
            const bool expect = predicted(f, axioms[k], opts.cluster_cap);
            const ValidityResult v = valid(f, formulas[k], budget(opts));
            if (v.verdict == Verdict::BudgetExceeded) {
                ++t.counters["relational_only:" + to_string(axioms[k])];
                continue;
            }
            const bool got = v.verdict == Verdict::Valid;
            t.expect(got == expect, [&] {
                return to_string(axioms[k]) + ": validity " + (got ? "true" : "false") + " but condition " +
                       (expect ? "true" : "false") + " on frame " + std::to_string(i) + " " + show(f);
            });
            if (v.countermodel) {
                const auto& cm = *v.countermodel;
                t.expect(!eval(f, cm.valuation, formulas[k]).contains(cm.world),
                         [&] { return to_string(axioms[k]) + ": countermodel does not falsify"; });
            }
        }
        return t;
    }));
    rep.counters["frames"] = static_cast<long long>(frames.size());
    return rep;
}

SuiteReport structure(const SuiteOptions& opts) {
    SuiteReport rep;
    const auto frames = corpus_frames(opts);
    merge(rep, parallel_items(static_cast<int>(frames.size()), opts.threads, [&](int i) {
        Tally t;
        const MS4Frame& f = frames[i];
        const auto where = [&](const std::string& what) { return what + " on frame " + std::to_string(i) + " " + show(f); };
        const Relation q = q_relation(f);
        const auto clusters = f.e().classes();

        // Flat-cluster lemmas, valid on every MS4-frame.
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << clusters.size()); ++mask) {
            WorldSet a;
            for (std::size_t c = 0; c < clusters.size(); ++c)
                if ((mask >> c) & 1U) a |= clusters[c];
            const WorldSet top = qmax(f, a);
            for (int m : top.members()) {
                if (flat(f, f.e().row(m)))
                    t.expect(f.e().row(m).subset_of(top), [&] { return where("flat E(m) not inside qmax A"); });
                bool q_max = true;
                for (int x : (q.row(m) & a).members())
                    if (!q.test(x, m)) q_max = false;
                t.expect(q_max, [&] { return where("qmax point not Q-quasimaximal"); });
            }
        }
        // Clusters all flat implies the Casari condition.
        bool all_flat = true;
        for (WorldSet c : clusters) all_flat = all_flat && flat(f, c);
        const auto mcas = check_mcas_semantic(f, opts.cluster_cap);
        if (all_flat) t.expect(mcas.holds, [&] { return where("all clusters flat but M+Cas fails"); });
        if (!mcas.holds || mcas.budget_exceeded) return t;

        ++t.counters["mcas_frames"];
        const auto d = layers(f).layers;
        for (std::size_t k = 0; k < d.size(); ++k) {
            t.expect(e_saturated(f, d[k]), [&] { return where("layer " + std::to_string(k + 1) + " not E-saturated"); });
            const RestrictedFrame rf = restrict(f, d[k]);
            t.expect(rf.r_equivalence && rf.e_equivalence && rf.relations_commute,
                     [&] { return where("layer " + std::to_string(k + 1) + " is not an S5_2 frame with commuting relations"); });
        }
        for (WorldSet c : clusters) t.expect(flat(f, c), [&] { return where("cluster " + to_string(c) + " not flat"); });
        t.expect(depth(f) == q_depth(f), [&] { return where("depth differs from q-depth"); });
        if (classify_si(f) != SIClass::NotSI)
            t.expect(q_roots(f) == d.back(), [&] { return where("Q-roots differ from the deepest layer"); });
        return t;
    }));
    rep.counters["frames"] = static_cast<long long>(frames.size());
    return rep;
}

SuiteReport translation(const SuiteOptions& opts) {
    SuiteReport rep;
    const int count = opts.count > 0 ? opts.count : 100;
    const Formula p2 = build_axiom(ax(AxiomName::Kind::P, 2));
    const Formula p3 = build_axiom(ax(AxiomName::Kind::P, 3));
    merge(rep, parallel_items(count, opts.threads, [&](int i) {
        Tally t;
        const int n = 1 + i % 6;
        const S52Frame s = random_s52(n, opts.seed + static_cast<std::uint64_t>(i));
        const MS4Frame g = translate(s);  // validates
        const auto where = [&](const std::string& what) {
            return what + " for S5_2 frame " + std::to_string(i) + " " + s52_to_json(s).dump();
        };
        t.expect(check_barcan(g).holds, [&] { return where("Barcan fails"); });
        t.expect(classify_si(g) == SIClass::Simple, [&] { return where("not simple"); });
        t.expect(depth(g) == 3, [&] { return where("depth is not 3"); });
        t.expect(g.size() == n + 2 * static_cast<int>(s.e2().classes().size()), [&] { return where("wrong size"); });
        const auto d = layers(g).layers;
        WorldSet top_rail;
        WorldSet bottom_rail;
        const int l = (g.size() - n) / 2;
        for (int a = 0; a < l; ++a) {
            top_rail.insert(n + a);
            bottom_rail.insert(n + l + a);
        }
        t.expect(d.size() == 3 && d[0] == top_rail && d[2] == bottom_rail, [&] { return where("rails are not the outer layers"); });
        const Relation total = Relation::total(g.size());
        t.expect(q_relation(g) == total && g.r().then(g.e()) == g.e().then(g.r()), [&] { return where("ER = RE = Y^2 fails"); });

        // P2 must fail: by brute force when affordable, always by the explicit chain countermodel.
        const auto cm = depth_countermodel(g, 2);
        t.expect(cm && !eval(g, cm->valuation, p2).contains(cm->world), [&] { return where("chain countermodel does not falsify P2"); });
        const ValidityResult v2 = valid(g, p2, budget(opts));
        if (v2.verdict == Verdict::BudgetExceeded)
            ++t.counters["p2_by_countermodel_only"];
        else
            t.expect(v2.verdict == Verdict::Invalid, [&] { return where("P2 valid"); });
        const ValidityResult v3 = valid(g, p3, budget(opts));
        if (v3.verdict == Verdict::BudgetExceeded)
            ++t.counters["p3_by_depth_only"];
        else
            t.expect(v3.verdict == Verdict::Valid, [&] { return where("P3 invalid"); });
        return t;
    }));
    return rep;
}

SuiteReport fmp(const SuiteOptions& opts) {
    using K = AxiomName::Kind;
    SuiteReport rep;
    const int want = opts.count > 0 ? opts.count : 50;
    const std::vector<AxiomName> axioms{ax(K::P, 1), ax(K::P, 2), ax(K::P0, 1), ax(K::Grz), ax(K::Sc),
                                        ax(K::Ed),   ax(K::Bar),  ax(K::MCasPlus), ax(K::Rp, 1)};
    // Pairs are drawn in a fixed order: frame i, then axiom (i + j) mod |axioms|.
    std::vector<std::pair<MS4Frame, AxiomName>> pairs;
    for (int i = 0; static_cast<int>(pairs.size()) < want && i < 10000; ++i) {
        const int n = 2 + i % 4;
        const MS4Frame f = random_frame(n, {}, opts.seed + 7919 * static_cast<std::uint64_t>(i));
        for (std::size_t j = 0; j < axioms.size(); ++j) {
            const AxiomName& a = axioms[(i + j) % axioms.size()];
            if (valid(f, build_axiom(a), budget(opts)).verdict == Verdict::Invalid) {
                pairs.emplace_back(f, a);
                break;
            }
        }
    }
    merge(rep, parallel_items(static_cast<int>(pairs.size()), opts.threads, [&](int i) {
        Tally t;
        const auto& [f, a] = pairs[i];
        const Formula phi = build_axiom(a);
        const auto where = [&](const std::string& what) { return to_string(a) + ": " + what + " on " + show(f); };
        const FmpResult r = fmp_countermodel(f, phi, budget(opts));
        t.expect(r.identity_failures.empty(), [&] { return where("approximate exists breaks an identity"); });
        t.expect(!eval(r.frame, r.valuation, phi).contains(r.world), [&] { return where("image world satisfies the formula"); });
        t.expect(valid(r.frame, phi, budget(opts)).verdict == Verdict::Invalid, [&] { return where("finite frame validates the formula"); });
        t.expect(depth(r.frame) <= depth(f), [&] { return where("finite frame is deeper"); });
        t.expect(r.frame.size() <= f.size(), [&] { return where("more atoms than worlds"); });
        // The identity table again, from scratch.
        const CompiledFormula code(phi);
        std::vector<WorldSet> vals;
        for (const auto& v : code.variables()) vals.push_back(r.source.valuation.at(v));
        std::vector<WorldSet> ext;
        code.run(f, vals, ext);
        const FiniteBAO approx = approximate_exists(generated_subalgebra(f, ext, Signature::of({Operator::Dia})));
        t.expect(check_ms4_identities(approx).empty(), [&] { return where("identity table check fails"); });
        for (std::size_t s = 0; s < ext.size(); ++s) {
            const WorldSet ex = f.e().image(ext[s]);
            if (approx.contains(ex))
                t.expect(approx.apply(Operator::ExApprox, ext[s]) == ex, [&] { return where("ex' differs from ex on a closed element"); });
        }
        return t;
    }));
    rep.counters["pairs"] = static_cast<long long>(pairs.size());
    if (static_cast<int>(pairs.size()) < want) {
        rep.failures += 1;
        rep.failure_samples.push_back("only " + std::to_string(pairs.size()) + " failing pairs found");
    }
    return rep;
}

SuiteReport paths(const SuiteOptions& opts) {
    SuiteReport rep;
    const int count = opts.count > 0 ? opts.count : 200;
    merge(rep, parallel_items(count, opts.threads, [&](int i) {
        Tally t;
        const int m = 1 + i % 2;
        SimpleBarcanParams p;
        p.min_columns = m + 1;
        p.max_columns = m + 2;
        p.min_rows = 2 * m + 1;
        p.max_rows = 2 * m + 2;
        p.max_multiplicity = 2;
        p.max_worlds = 40;
        const MS4Frame f = random_simple_barcan(p, opts.seed + static_cast<std::uint64_t>(i));
        const auto where = [&](const std::string& what) { return what + " (m=" + std::to_string(m) + ") on " + show(f); };
        // The generator's claims, rechecked independently.
        t.expect(classify_si(f) == SIClass::Simple, [&] { return where("not simple"); });
        t.expect(check_barcan(f).holds, [&] { return where("not Barcan"); });
        t.expect(depth(f) <= 2, [&] { return where("deeper than 2"); });
        t.expect(static_cast<int>(f.e().classes().size()) > m, [&] { return where("too few E-clusters"); });
        t.expect(static_cast<int>(er_relation(f).classes().size()) > 2 * m, [&] { return where("too few R-clusters"); });
        const PathResult r = longest_irreducible_path(f, true, m + 1);
        t.expect(r.length > m, [&] { return where("no proper irreducible path longer than m"); });
        t.expect(is_irreducible_path(f, r.witness.worlds, true) && r.witness.proper,
                 [&] { return where("witness is not a proper irreducible path"); });
        return t;
    }));
    return rep;
}

/// Does some grid symmetry (row and column permutations, optional transpose,
/// optional reversal) carry `prefix` onto the first cells of `path`?
bool matches_up_to_symmetry(const std::vector<std::pair<int, int>>& prefix, const std::vector<std::pair<int, int>>& path) {
    if (path.size() < prefix.size()) return false;
    auto try_map = [&](const std::vector<std::pair<int, int>>& target) {
        for (int transpose = 0; transpose < 2; ++transpose) {
            std::map<int, int> rows;
            std::map<int, int> cols;
            bool ok = true;
            for (std::size_t i = 0; i < prefix.size() && ok; ++i) {
                auto [r, c] = target[i];
                if (transpose) std::swap(r, c);
                auto bind = [&ok](std::map<int, int>& m, int from, int to) {
                    auto [it, fresh] = m.emplace(from, to);
                    if (!fresh && it->second != to) ok = false;
                };
                bind(rows, prefix[i].first, r);
                bind(cols, prefix[i].second, c);
            }
            // Injectivity: distinct prefix rows (columns) go to distinct rows (columns).
            auto injective = [](const std::map<int, int>& m) {
                std::vector<int> v;
                for (auto [k, x] : m) v.push_back(x);
                std::sort(v.begin(), v.end());
                return std::adjacent_find(v.begin(), v.end()) == v.end();
            };
            if (ok && injective(rows) && injective(cols)) return true;
        }
        return false;
    };
    std::vector<std::pair<int, int>> reversed(path.rbegin(), path.rend());
    return try_map(path) || try_map(reversed);
}

SuiteReport grid(const SuiteOptions& opts) {
    SuiteReport rep;
    Tally t;
    const int k_max = opts.count > 0 ? opts.count : 4;
    int prev = -1;
    for (int k = 2; k <= k_max; ++k) {
        const MS4Frame g = grid_frame(k, k).ms4;
        const PathResult r = longest_irreducible_path(g, false, g.size());
        rep.counters["longest_k" + std::to_string(k)] = r.length;
        t.expect(is_irreducible_path(g, r.witness.worlds, false), [&] { return "k=" + std::to_string(k) + " witness not irreducible"; });
        t.expect(r.length > prev, [&] { return "longest path not increasing at k=" + std::to_string(k); });
        prev = r.length;
        if (k == 3) {
            std::vector<std::pair<int, int>> cells;
            for (int x : r.witness.worlds) cells.emplace_back(x / k, x % k);
            t.expect(matches_up_to_symmetry({{0, 0}, {1, 0}, {1, 1}, {2, 1}}, cells),
                     [] { return std::string("k=3 witness does not extend (0,0) S (1,0) S (1,1) S (2,1) up to symmetry"); });
        }
    }
    merge(rep, {t});
    return rep;
}

SuiteReport filtration(const SuiteOptions& opts) {
    using K = AxiomName::Kind;
    SuiteReport rep;
    const auto frames = corpus_frames(opts);
    const std::vector<AxiomName> axioms{ax(K::P, 1),  ax(K::P, 2),   ax(K::P, 3),        ax(K::P0, 1), ax(K::P0, 2),
                                        ax(K::Grz),   ax(K::Sc),     ax(K::Ed),          ax(K::Bar),   ax(K::MCasPlus),
                                        ax(K::Rp, 1), ax(K::Rp, 2)};
    merge(rep, parallel_items(static_cast<int>(frames.size()), opts.threads, [&](int i) {
        Tally t;
        const MS4Frame& f = frames[i];
        if (!check_grz_finite(f).holds || !check_sc(f).holds || !check_ed(f).holds) return t;
        ++t.counters["chain_frames"];
        for (const auto& a : axioms) {
            const Formula phi = build_axiom(a);
            const ValidityResult v = valid(f, phi, budget(opts));
            if (v.verdict != Verdict::Invalid) continue;
            ++t.counters["pairs"];
            const auto where = [&](const std::string& what) { return to_string(a) + ": " + what + " on " + show(f); };
            const FiltrationResult r = selective_filtration(f, phi, v.countermodel->valuation);
            const int m = r.chain.size();
            t.expect(r.chain == chain_frame(m), [&] { return where("result is not a chain"); });
            t.expect(m <= depth(f), [&] { return where("chain longer than the depth"); });
            t.expect(r.disagreements.empty(), [&] { return where("subterm disagreement " + r.disagreements.front()); });
            t.expect(!eval(r.chain, r.valuation, phi).contains(r.world), [&] { return where("chain satisfies the formula"); });
            t.expect(valid(r.chain, phi, budget(opts)).verdict == Verdict::Invalid, [&] { return where("chain validates the formula"); });
        }
        return t;
    }));
    return rep;
}

SuiteReport minimal(const SuiteOptions&) {
    using K = AxiomName::Kind;
    SuiteReport rep;
    Tally t;
    std::vector<MS4Frame> chains;
    for (int n = 1; n <= 6; ++n) chains.push_back(chain_frame(n));
    const std::vector<AxiomName> axioms{ax(K::P, 1), ax(K::P, 2), ax(K::P, 3), ax(K::Grz), ax(K::Ed)};
    for (const auto& a : axioms) {
        const ValidOverReport r = valid_over(chains, build_axiom(a));
        for (int n = 1; n <= 6; ++n) {
            const bool expect = a.kind == K::P ? n <= a.index : true;
            const Verdict got = r.items[n - 1].verdict;
            t.expect(got == (expect ? Verdict::Valid : Verdict::Invalid),
                     [&] { return to_string(a) + " on L" + std::to_string(n) + ": " + to_string(got); });
        }
    }
    merge(rep, {t});
    return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"correspondence", "structure", "translation", "fmp", "paths", "grid", "filtration", "minimal"};
}

std::vector<MS4Frame> corpus_frames(const SuiteOptions& opts) {
    std::vector<MS4Frame> out;
    for (int n = 1; n <= opts.max_worlds; ++n) {
        auto all = enumerate_frames(n);
        out.insert(out.end(), all.begin(), all.end());
    }
    const int span = std::max(1, opts.random_max_worlds - 1);
    for (int i = 0; i < opts.random_frames; ++i) {
        const int n = 2 + i % span;
        out.push_back(random_frame(n, {}, opts.seed + static_cast<std::uint64_t>(i)));
    }
    return out;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
    static const std::map<std::string, SuiteReport (*)(const SuiteOptions&)> table{
        {"correspondence", correspondence}, {"structure", structure}, {"translation", translation},
        {"fmp", fmp},                       {"paths", paths},         {"grid", grid},
        {"filtration", filtration},         {"minimal", minimal}};
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown suite '" + name + "'");
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep = it->second(opts);
    rep.name = name;
    rep.passed = rep.failures == 0;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace ms4lab
