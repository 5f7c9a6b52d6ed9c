#include "ms4lab/frame.hpp"

namespace ms4lab {

std::string FrameViolation::describe() const {
    auto tuple = [this] {
        std::string s = "(";
        for (std::size_t i = 0; i < witness.size(); ++i) s += (i ? "," : "") + std::to_string(witness[i]);
        return s + ")";
    };
    switch (kind) {
        case Kind::SizeMismatch: return "R and E have different sizes";
        case Kind::NotQuasiOrder: return "R is not a quasi-order, witness " + tuple();
        case Kind::NotEquivalence: return "E is not an equivalence, witness " + tuple();
        case Kind::CommutationFails: return "commutation fails (xEy, yRy' without x'), witness " + tuple();
    }
    return "invalid frame";
}

namespace {

std::optional<std::vector<int>> reflexivity_witness(const Relation& r) {
    for (int x = 0; x < r.size(); ++x)
        if (!r.test(x, x)) return std::vector<int>{x, x};
    return std::nullopt;
}

std::optional<std::vector<int>> transitivity_witness(const Relation& r) {
    for (int x = 0; x < r.size(); ++x)
        for (int y : r.row(x).members())
            for (int z : r.row(y).members())
                if (!r.test(x, z)) return std::vector<int>{x, y, z};
    return std::nullopt;
}

}  // namespace

std::optional<FrameViolation> check_frame(const Relation& r, const Relation& e) {
    using K = FrameViolation::Kind;
    if (r.size() != e.size()) return FrameViolation{K::SizeMismatch, {}};
    if (auto w = reflexivity_witness(r)) return FrameViolation{K::NotQuasiOrder, *w};
    if (auto w = transitivity_witness(r)) return FrameViolation{K::NotQuasiOrder, *w};
    if (auto w = reflexivity_witness(e)) return FrameViolation{K::NotEquivalence, *w};
    for (int x = 0; x < e.size(); ++x)
        for (int y : e.row(x).members())
            if (!e.test(y, x)) return FrameViolation{K::NotEquivalence, {x, y}};
    if (auto w = transitivity_witness(e)) return FrameViolation{K::NotEquivalence, *w};
    for (int x = 0; x < r.size(); ++x) {
        const WorldSet reach = e.image(r.row(x));
        for (int y : e.row(x).members()) {
            const WorldSet missing = r.row(y) - reach;
            if (!missing.empty()) return FrameViolation{K::CommutationFails, {x, y, missing.first()}};
        }
    }
    return std::nullopt;
}

MS4Frame::MS4Frame(Relation r, Relation e, std::vector<std::string> labels)
    : r_(std::move(r)), e_(std::move(e)), labels_(std::move(labels)) {
    if (auto v = check_frame(r_, e_)) throw FrameError(*v);
    if (!labels_.empty() && static_cast<int>(labels_.size()) != r_.size())
        throw std::invalid_argument("label count does not match world count");
    r_inv_ = r_.converse();
}

std::string MS4Frame::label(int x) const {
    return labels_.empty() ? std::to_string(x) : labels_[static_cast<std::size_t>(x)];
}

S52Frame::S52Frame(Relation e1, Relation e2) : e1_(std::move(e1)), e2_(std::move(e2)) {
    if (e1_.size() != e2_.size()) throw std::invalid_argument("S5_2 relations differ in size");
    if (!e1_.is_equivalence() || !e2_.is_equivalence())
        throw std::invalid_argument("S5_2 relations must be equivalences");
}

MS4Frame validate(const Relation& r, const Relation& e, bool close_r, bool close_e,
                  std::vector<std::string> labels) {
    return MS4Frame(close_r ? r.reflexive_transitive_closure() : r, close_e ? e.equivalence_closure() : e,
                    std::move(labels));
}

Relation q_relation(const MS4Frame& f) { return f.r().then(f.e()); }
Relation s_relation(const MS4Frame& f) { return f.r() | f.e(); }
Relation er_relation(const MS4Frame& f) { return f.r() & f.r_converse(); }

Relation eq_relation(const MS4Frame& f) {
    const Relation q = q_relation(f);
    return q & q.converse();
}

WorldSet qmax(const MS4Frame& f, WorldSet a) {
    WorldSet out;
    a.for_each([&](int x) {
        // Every R-successor of x inside A must see x back.
        if ((f.r().row(x) & a).subset_of(f.r_converse().row(x))) out.insert(x);
    });
    return out;
}

LayerDecomposition layers(const MS4Frame& f) {
    LayerDecomposition out;
    WorldSet rest = f.worlds();
    while (!rest.empty()) {
        const WorldSet layer = qmax(f, rest);
        if (layer.empty()) break;  // unreachable on finite quasi-orders
        out.layers.push_back(layer);
        rest -= layer;
    }
    out.residue = rest;
    return out;
}

int depth(const MS4Frame& f) { return static_cast<int>(layers(f).layers.size()); }

int point_depth(const MS4Frame& f, int x) {
    const auto d = layers(f);
    for (std::size_t i = 0; i < d.layers.size(); ++i)
        if (d.layers[i].contains(x)) return static_cast<int>(i) + 1;
    throw std::out_of_range("world " + std::to_string(x) + " not in frame");
}

QuotientFrame quotient_frame(const MS4Frame& f) {
    const auto classes = f.e().classes();
    const int k = static_cast<int>(classes.size());
    std::vector<int> class_of(static_cast<std::size_t>(f.size()), -1);
    for (int c = 0; c < k; ++c) classes[c].for_each([&](int x) { class_of[x] = c; });

    Relation lifted(k);
    for (int a = 0; a < k; ++a) {
        const WorldSet succ = f.r().image(classes[a]);
        for (int b = 0; b < k; ++b)
            if (succ.intersects(classes[b])) lifted.set(a, b);
    }
    return QuotientFrame{MS4Frame(std::move(lifted), Relation::identity(k)), std::move(class_of), classes};
}

int q_depth(const MS4Frame& f) { return depth(quotient_frame(f).frame); }

RestrictedFrame restrict(const MS4Frame& f, WorldSet u) {
    RestrictedFrame out;
    out.worlds = u.members();
    out.r = f.r().restrict(u);
    out.e = f.e().restrict(u);
    out.r_quasi_order = out.r.is_quasi_order();
    out.r_equivalence = out.r.is_equivalence();
    out.e_equivalence = out.e.is_equivalence();
    const Relation er = out.e.then(out.r);
    const Relation re = out.r.then(out.e);
    out.ms4_commutation = er.subset_of(re);
    out.relations_commute = er == re;
    return out;
}

WorldSet q_roots(const MS4Frame& f) {
    const Relation q = q_relation(f);
    WorldSet out;
    for (int x = 0; x < f.size(); ++x)
        if (q.row(x) == f.worlds()) out.insert(x);
    return out;
}

SIClass classify_si(const MS4Frame& f) {
    const WorldSet t = q_roots(f);
    if (t == f.worlds()) return SIClass::Simple;
    return t.empty() ? SIClass::NotSI : SIClass::SI;
}

std::string to_string(SIClass c) {
    switch (c) {
        case SIClass::Simple: return "simple";
        case SIClass::SI: return "si";
        case SIClass::NotSI: return "not-si";
    }
    return "?";
}

bool flat(const MS4Frame& f, WorldSet a) {
    bool ok = true;
    a.for_each([&](int x) {
        if (!(f.r().row(x) & a).subset_of(f.r_converse().row(x))) ok = false;
    });
    return ok;
}

bool e_saturated(const MS4Frame& f, WorldSet a) { return f.e().image(a).subset_of(a); }

WorldSet passive_points(const MS4Frame& f, WorldSet u) {
    const WorldSet sees_u = f.r().preimage(u);
    WorldSet out;
    u.for_each([&](int x) {
        if (!((f.r().row(x) - u) & sees_u).empty()) return;
        out.insert(x);
    });
    return out;
}

}  // namespace ms4lab
