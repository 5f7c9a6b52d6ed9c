#include "ms4lab/algebra.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ms4lab {

std::string to_string(Operator o) {
    switch (o) {
        case Operator::Dia: return "dia";
        case Operator::Ex: return "ex";
        case Operator::BDia: return "bdia";
        case Operator::ExApprox: return "ex'";
    }
    return "?";
}

bool Signature::has(Operator o) const {
    switch (o) {
        case Operator::Dia: return dia;
        case Operator::Ex: return ex;
        case Operator::BDia: return bdia;
        case Operator::ExApprox: return ex_approx;
    }
    return false;
}

std::vector<Operator> Signature::operators() const {
    std::vector<Operator> out;
    for (Operator o : {Operator::Dia, Operator::Ex, Operator::BDia, Operator::ExApprox})
        if (has(o)) out.push_back(o);
    return out;
}

Signature Signature::of(std::initializer_list<Operator> ops) {
    Signature s;
    for (Operator o : ops) {
        switch (o) {
            case Operator::Dia: s.dia = true; break;
            case Operator::Ex: s.ex = true; break;
            case Operator::BDia: s.bdia = true; break;
            case Operator::ExApprox: s.ex_approx = true; break;
        }
    }
    return s;
}

FiniteBAO::FiniteBAO(MS4Frame base, std::vector<WorldSet> atoms, Signature sig)
    : base_(std::move(base)), atoms_(std::move(atoms)), sig_(sig) {
    std::sort(atoms_.begin(), atoms_.end(), [](WorldSet a, WorldSet b) { return a.first() < b.first(); });
    WorldSet seen;
    for (WorldSet a : atoms_) {
        if (a.empty() || a.intersects(seen)) throw std::invalid_argument("atoms must be disjoint and nonempty");
        seen |= a;
    }
    if (seen != base_.worlds()) throw std::invalid_argument("atoms must cover the frame");
    atom_of_.assign(static_cast<std::size_t>(base_.size()), -1);
    for (int i = 0; i < atom_count(); ++i) atoms_[i].for_each([&](int x) { atom_of_[x] = i; });
}

std::optional<std::uint64_t> FiniteBAO::size() const {
    if (atom_count() >= 64) return std::nullopt;
    return std::uint64_t{1} << atom_count();
}

bool FiniteBAO::contains(WorldSet a) const {
    if (!a.subset_of(base_.worlds())) return false;
    for (WorldSet at : atoms_)
        if (at.intersects(a) && !at.subset_of(a)) return false;
    return true;
}

WorldSet FiniteBAO::element(std::uint64_t mask) const {
    WorldSet out;
    for (int i = 0; i < atom_count(); ++i)
        if ((mask >> i) & 1U) out |= atoms_[i];
    return out;
}

std::uint64_t FiniteBAO::mask_of(WorldSet a) const {
    if (!contains(a)) throw NotSubalgebra(to_string(a) + " is not in the carrier");
    std::uint64_t mask = 0;
    for (int i = 0; i < atom_count(); ++i)
        if (atoms_[i].subset_of(a)) mask |= std::uint64_t{1} << i;
    return mask;
}

int FiniteBAO::atom_of(int x) const { return atom_of_.at(static_cast<std::size_t>(x)); }

std::vector<WorldSet> FiniteBAO::carrier() const {
    if (atom_count() > 20) throw std::length_error("carrier too large to list");
    std::vector<WorldSet> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << atom_count()); ++m) out.push_back(element(m));
    std::sort(out.begin(), out.end());
    return out;
}

WorldSet FiniteBAO::apply(Operator o, WorldSet a) const {
    switch (o) {
        case Operator::Dia: return base_.r_converse().image(a);
        case Operator::Ex: return base_.e().image(a);
        case Operator::BDia: return base_.r_converse().image(base_.e().image(a));
        case Operator::ExApprox: {
            // Grow by every atom meeting the E-saturation until E-saturated.
            WorldSet s = a;
            for (;;) {
                const WorldSet sat = base_.e().image(s);
                WorldSet next;
                for (WorldSet at : atoms_)
                    if (at.intersects(sat)) next |= at;
                if (next == s) return s;
                s = next;
            }
        }
    }
    return a;
}

std::vector<std::uint64_t> FiniteBAO::table(Operator o) const {
    if (atom_count() > 20) throw std::length_error("operator table too large");
    std::vector<std::uint64_t> out(std::size_t{1} << atom_count());
    for (std::uint64_t m = 0; m < out.size(); ++m) out[m] = mask_of(apply(o, element(m)));
    return out;
}

std::vector<WorldSet> FiniteBAO::fixpoints(Operator o) const {
    std::vector<WorldSet> out;
    for (WorldSet a : carrier())
        if (apply(o, a) == a) out.push_back(a);
    return out;
}

FiniteBAO dual_algebra(const MS4Frame& f) {
    std::vector<WorldSet> atoms;
    for (int x = 0; x < f.size(); ++x) atoms.push_back(WorldSet::single(x));
    return FiniteBAO(f, std::move(atoms), Signature::of({Operator::Dia, Operator::Ex, Operator::BDia}));
}

namespace {

bool refine(std::vector<WorldSet>& atoms, WorldSet s) {
    bool changed = false;
    std::vector<WorldSet> out;
    out.reserve(atoms.size() * 2);
    for (WorldSet a : atoms) {
        const WorldSet in = a & s;
        const WorldSet out_part = a - s;
        if (!in.empty() && !out_part.empty()) {
            out.push_back(in);
            out.push_back(out_part);
            changed = true;
        } else {
            out.push_back(a);
        }
    }
    atoms = std::move(out);
    return changed;
}

}  // namespace

FiniteBAO generated_subalgebra(const MS4Frame& f, const std::vector<WorldSet>& gens, Signature sig) {
    if (sig.ex_approx) throw std::invalid_argument("ex' is not a generating operator");
    // Operators only, so the throwaway BAO can evaluate them before the atoms exist.
    const FiniteBAO full = dual_algebra(f);
    std::vector<WorldSet> atoms;
    if (f.size() > 0) atoms.push_back(f.worlds());
    for (WorldSet g : gens) {
        if (!g.subset_of(f.worlds())) throw std::invalid_argument("generator exceeds the frame");
        refine(atoms, g);
    }
    const auto ops = sig.operators();
    for (bool changed = true; changed;) {
        changed = false;
        for (Operator o : ops) {
            const std::vector<WorldSet> snapshot = atoms;
            for (WorldSet a : snapshot) changed |= refine(atoms, full.apply(o, a));
        }
    }
    return FiniteBAO(f, std::move(atoms), sig);
}

FiniteBAO approximate_exists(const FiniteBAO& b) {
    if (!b.signature().dia) throw NotSubalgebra("subalgebra must carry the diamond");
    for (WorldSet a : b.atoms()) {
        const WorldSet d = b.apply(Operator::Dia, a);
        if (!b.contains(d)) throw NotSubalgebra("not closed under the diamond: " + to_string(d));
    }
    return FiniteBAO(b.base(), b.atoms(), Signature::of({Operator::Dia, Operator::ExApprox}));
}

std::vector<std::string> check_ms4_identities(const FiniteBAO& b) {
    if (b.atom_count() > 16) throw std::length_error("too many atoms for the identity table");
    std::vector<std::string> bad;
    auto fail = [&](const std::string& what, WorldSet a) {
        if (bad.size() < 10) bad.push_back(what + " at " + to_string(a));
    };
    const int n = b.base().size();
    const bool has_ex = b.signature().ex || b.signature().ex_approx;
    const Operator x_op = b.signature().ex_approx ? Operator::ExApprox : Operator::Ex;
    std::vector<Operator> ops{Operator::Dia};
    if (has_ex) ops.push_back(x_op);

    std::vector<WorldSet> on_atom[2];
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (WorldSet a : b.atoms()) on_atom[i].push_back(b.apply(ops[i], a));

    const std::uint64_t count = std::uint64_t{1} << b.atom_count();
    for (std::uint64_t m = 0; m < count; ++m) {
        const WorldSet a = b.element(m);
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const Operator o = ops[i];
            const std::string name = to_string(o);
            const WorldSet oa = b.apply(o, a);
            if (!b.contains(oa)) fail(name + " leaves the carrier", a);
            WorldSet joined;
            for (int k = 0; k < b.atom_count(); ++k)
                if ((m >> k) & 1U) joined |= on_atom[i][k];
            if (oa != joined) fail(name + " is not join-preserving", a);
            if (!a.subset_of(oa)) fail(name + " is not extensive", a);
            if (!b.apply(o, oa).subset_of(oa)) fail(name + " is not idempotent", a);
        }
        if (!has_ex) continue;
        const WorldSet xa = b.apply(x_op, a);
        if (!b.apply(x_op, xa.complement(n)).subset_of(xa.complement(n))) fail(to_string(x_op) + " is not S5", a);
        const WorldSet da = b.apply(Operator::Dia, a);
        if (!b.apply(x_op, da).subset_of(b.apply(Operator::Dia, xa)))
            fail("left commutativity fails", a);
        const WorldSet dxa = b.apply(Operator::Dia, xa);
        if (b.apply(x_op, dxa) != dxa) fail(to_string(x_op) + " does not fix dia " + to_string(x_op), a);
    }
    return bad;
}

MS4Frame dual_frame_of_subalgebra(const FiniteBAO& b) {
    const Signature& sig = b.signature();
    if (!sig.dia || !(sig.ex || sig.ex_approx))
        throw std::invalid_argument("dual frame needs the diamond and an S5 operator");
    const Operator x_op = sig.ex_approx ? Operator::ExApprox : Operator::Ex;
    const int k = b.atom_count();
    Relation r(k);
    Relation e(k);
    std::vector<std::string> labels;
    for (int j = 0; j < k; ++j) {
        const WorldSet d = b.apply(Operator::Dia, b.atoms()[j]);
        const WorldSet x = b.apply(x_op, b.atoms()[j]);
        for (int i = 0; i < k; ++i) {
            if (b.atoms()[i].subset_of(d)) r.set(i, j);
            if (b.atoms()[i].subset_of(x)) e.set(i, j);
        }
        labels.push_back(to_string(b.atoms()[j]));
    }
    return MS4Frame(std::move(r), std::move(e), std::move(labels));
}

FmpResult fmp_countermodel(const MS4Frame& f, const Formula& phi, const ValidityOptions& opts) {
    const ValidityResult v = valid(f, phi, opts);
    if (v.verdict == Verdict::Valid) throw AlreadyValid();
    if (v.verdict == Verdict::BudgetExceeded) throw std::runtime_error("validity check exceeded the valuation budget");
    const Countermodel& cm = *v.countermodel;

    const CompiledFormula code(phi);
    std::vector<WorldSet> vals;
    for (const auto& name : code.variables()) vals.push_back(cm.valuation.at(name));
    std::vector<WorldSet> ext;
    code.run(f, vals, ext);

    const FiniteBAO sub = generated_subalgebra(f, ext, Signature::of({Operator::Dia}));
    const FiniteBAO approx = approximate_exists(sub);
    std::vector<std::string> failures;
    if (approx.atom_count() <= 16) failures = check_ms4_identities(approx);
    if (!failures.empty()) throw std::logic_error("approximate exists broke an identity: " + failures.front());

    MS4Frame g = dual_frame_of_subalgebra(approx);
    Valuation nu;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        WorldSet img;
        for (int a = 0; a < approx.atom_count(); ++a)
            if (approx.atoms()[a].subset_of(vals[i])) img.insert(a);
        nu[code.variables()[i]] = img;
    }
    const int world = approx.atom_of(cm.world);
    if (ms4lab::eval(g, nu, phi).contains(world))
        throw std::logic_error("formula holds at the image world of the finite countermodel");
    if (depth(g) > depth(f)) throw std::logic_error("finite countermodel is deeper than its source");

    return FmpResult{std::move(g), std::move(nu), world, cm, approx.atoms(),
                     static_cast<std::uint64_t>(approx.atom_count()), {}};
}

std::vector<GrowthPoint> growth_probe(const std::vector<MS4Frame>& family, int k_max, int trials,
                                      std::uint64_t seed) {
    if (family.empty()) throw std::invalid_argument("empty frame family");
    if (k_max < 1 || trials < 1) throw std::invalid_argument("k_max and trials must be positive");
    std::vector<GrowthPoint> curve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) curve[k - 1] = GrowthPoint{k, 0, trials};
    std::mt19937_64 rng(seed);
    const Signature sig = Signature::of({Operator::Dia, Operator::Ex});
    for (int t = 0; t < trials; ++t) {
        const MS4Frame& f = family[static_cast<std::size_t>(t) % family.size()];
        const std::uint64_t mask = f.worlds().bits();
        std::vector<WorldSet> gens;
        // Nested tuples: the k-tuple extends the (k-1)-tuple, so each trial is monotone.
        for (int k = 1; k <= k_max; ++k) {
            gens.push_back(WorldSet(rng() & mask));
            const int atoms = generated_subalgebra(f, gens, sig).atom_count();
            curve[k - 1].max_atoms = std::max(curve[k - 1].max_atoms, atoms);
        }
    }
    return curve;
}

std::string pow2_string(int atoms) {
    unsigned __int128 v = 1;
    v <<= atoms;
    std::string s;
    do {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    } while (v != 0);
    std::reverse(s.begin(), s.end());
    return s;
}

std::string growth_csv(const std::vector<GrowthPoint>& curve) {
    std::ostringstream out;
    out << "k,max_size,trials\n";
    for (const auto& p : curve) out << p.k << ',' << pow2_string(p.max_atoms) << ',' << p.trials << '\n';
    return out.str();
}

}  // namespace ms4lab
