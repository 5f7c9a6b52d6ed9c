#include "ms4lab/conditions.hpp"

#include <functional>

namespace ms4lab {

ConditionReport check_barcan(const MS4Frame& f) {
    ConditionReport rep;
    rep.name = "bar";
    for (int x = 0; x < f.size(); ++x) {
        // Everything reachable by E then R from x.
        const WorldSet reach = f.r().image(f.e().row(x));
        for (int y : f.r().row(x).members()) {
            const WorldSet missing = f.e().row(y) - reach;
            if (!missing.empty()) {
                rep.holds = false;
                rep.witness = {x, y, missing.first()};
                return rep;
            }
        }
    }
    return rep;
}

ConditionReport check_ed(const MS4Frame& f) {
    ConditionReport rep;
    rep.name = "ed";
    for (int x = 0; x < f.size(); ++x) {
        const WorldSet missing = f.e().row(x) - f.r().row(x);
        if (!missing.empty()) {
            rep.holds = false;
            rep.witness = {x, missing.first()};
            return rep;
        }
    }
    return rep;
}

ConditionReport check_sc(const MS4Frame& f) {
    ConditionReport rep;
    rep.name = "sc";
    for (int x = 0; x < f.size(); ++x)
        for (int y : f.r().row(x).members())
            for (int z : f.r().row(x).members())
                if (!f.r().test(y, z) && !f.r().test(z, y)) {
                    rep.holds = false;
                    rep.witness = {x, y, z};
                    return rep;
                }
    return rep;
}

ConditionReport check_grz_finite(const MS4Frame& f) {
    ConditionReport rep;
    rep.name = "grz";
    for (int x = 0; x < f.size(); ++x) {
        WorldSet both = f.r().row(x) & f.r_converse().row(x);
        both.erase(x);
        if (!both.empty()) {
            rep.holds = false;
            rep.witness = {x, both.first()};
            return rep;
        }
    }
    return rep;
}

ConditionReport check_mcas_semantic(const MS4Frame& f, int cluster_cap) {
    ConditionReport rep;
    rep.name = "M+Cas";
    const auto clusters = f.e().classes();
    const int c = static_cast<int>(clusters.size());
    if (c > cluster_cap || c >= 63) {
        rep.budget_exceeded = true;
        return rep;
    }
    std::vector<bool> cluster_flat(static_cast<std::size_t>(c));
    std::vector<int> cluster_of(static_cast<std::size_t>(f.size()));
    for (int i = 0; i < c; ++i) {
        cluster_flat[i] = flat(f, clusters[i]);
        clusters[i].for_each([&](int x) { cluster_of[x] = i; });
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << c); ++mask) {
        WorldSet u;
        for (int i = 0; i < c; ++i)
            if ((mask >> i) & 1U) u |= clusters[i];
        const WorldSet top = qmax(f, u);
        for (int x : top.members())
            if (!cluster_flat[cluster_of[x]]) {
                rep.holds = false;
                rep.witness = {x};
                rep.witness_set = u;
                return rep;
            }
    }
    return rep;
}

std::string to_string(StepTag t) {
    switch (t) {
        case StepTag::R: return "R";
        case StepTag::E: return "E";
        case StepTag::Both: return "RE";
    }
    return "?";
}

namespace {

StepTag tag_of(const MS4Frame& f, int x, int y) {
    const bool r = f.r().test(x, y);
    const bool e = f.e().test(x, y);
    return r && e ? StepTag::Both : (r ? StepTag::R : StepTag::E);
}

PathWitness make_witness(const MS4Frame& f, const std::vector<int>& worlds) {
    PathWitness w;
    w.worlds = worlds;
    w.proper = true;
    for (std::size_t i = 0; i + 1 < worlds.size(); ++i) {
        w.steps.push_back(tag_of(f, worlds[i], worlds[i + 1]));
        if (w.steps.back() == StepTag::Both) w.proper = false;
    }
    return w;
}

}  // namespace

PathResult longest_irreducible_path(const MS4Frame& f, bool proper, int cap) {
    if (cap < 1) throw std::invalid_argument("path cap must be positive");
    const Relation s = s_relation(f);
    Relation step = s;
    if (proper) {
        const Relation both = f.r() & f.e();
        for (int x = 0; x < f.size(); ++x)
            for (int y : both.row(x).members()) step.reset(x, y);
    }

    PathResult best;
    std::vector<int> path;
    std::vector<int> best_path;
    bool done = false;

    // `forbidden`: S-successors of every path point except the last, so the new
    // point cannot be reached by a shortcut.
    std::function<void(WorldSet, WorldSet)> dfs = [&](WorldSet on_path, WorldSet forbidden) {
        const int len = static_cast<int>(path.size()) - 1;
        if (len > best.length || best_path.empty()) {
            best.length = len;
            best_path = path;
            if (len >= cap) {
                best.capped = true;
                done = true;
            }
        }
        if (done) return;
        const int last = path.back();
        const WorldSet next = step.row(last) - on_path - forbidden;
        const WorldSet forbid_next = forbidden | s.row(last);
        for (int y : next.members()) {
            path.push_back(y);
            on_path.insert(y);
            dfs(on_path, forbid_next);
            on_path.erase(y);
            path.pop_back();
            if (done) return;
        }
    };

    for (int x0 = 0; x0 < f.size() && !done; ++x0) {
        path.assign(1, x0);
        dfs(WorldSet::single(x0), WorldSet{});
    }
    best.witness = make_witness(f, best_path);
    return best;
}

bool is_irreducible_path(const MS4Frame& f, const std::vector<int>& worlds, bool proper) {
    const Relation s = s_relation(f);
    const std::size_t len = worlds.size();
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j)
            if (worlds[i] == worlds[j]) return false;
    for (std::size_t i = 0; i + 1 < len; ++i) {
        if (!s.test(worlds[i], worlds[i + 1])) return false;
        if (proper && f.r().test(worlds[i], worlds[i + 1]) && f.e().test(worlds[i], worlds[i + 1]))
            return false;
        for (std::size_t k = i + 2; k < len; ++k)
            if (s.test(worlds[i], worlds[k])) return false;
    }
    return true;
}

ConditionReport check_rp(const MS4Frame& f, int m) {
    if (m < 1) throw std::invalid_argument("rp index must be positive");
    ConditionReport rep;
    rep.name = "RP" + std::to_string(m);
    const PathResult p = longest_irreducible_path(f, false, m + 1);
    if (p.length > m) {
        rep.holds = false;
        rep.witness = p.witness.worlds;
    }
    return rep;
}

Classification classify(const MS4Frame& f, int cluster_cap) {
    Classification out;
    out.classes.push_back("MS4");
    if (check_barcan(f).holds) out.classes.push_back("MS4B");
    const auto mcas = check_mcas_semantic(f, cluster_cap);
    if (mcas.budget_exceeded)
        out.undetermined.push_back("M+S4");
    else if (mcas.holds)
        out.classes.push_back("M+S4");
    const int qd = q_depth(f);
    if (qd == 1) out.classes.push_back("MS4_S");
    if (check_grz_finite(f).holds) out.classes.push_back("grz");
    if (check_sc(f).holds) out.classes.push_back("sc");
    if (check_ed(f).holds) out.classes.push_back("ed");
    out.classes.push_back("depth " + std::to_string(depth(f)));
    out.classes.push_back("q-depth " + std::to_string(qd));
    return out;
}

std::optional<Countermodel> depth_countermodel(const MS4Frame& f, int n) {
    if (n < 1) throw std::invalid_argument("depth bound must be positive");
    const auto d = layers(f);
    if (static_cast<int>(d.layers.size()) <= n) return std::nullopt;

    // z[n] in D_{n+1}, and z[i] in D_{i+1} strictly above z[i+1].
    std::vector<int> z(static_cast<std::size_t>(n) + 1);
    z[n] = d.layers[n].first();
    for (int i = n - 1; i >= 0; --i) {
        const int below = z[i + 1];
        const WorldSet strict = f.r().row(below) - f.r_converse().row(below);
        z[i] = (strict & d.layers[i]).first();
    }
    Countermodel cm;
    for (int i = 1; i <= n; ++i) cm.valuation["q" + std::to_string(i)] = f.r().row(z[i - 1]);
    cm.world = z[n];
    return cm;
}

}  // namespace ms4lab
