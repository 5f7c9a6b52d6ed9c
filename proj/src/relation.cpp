#include "ms4lab/relation.hpp"

namespace ms4lab {

std::string to_string(WorldSet s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int x) {
        if (!first) out += ',';
        out += std::to_string(x);
        first = false;
    });
    return out + "}";
}

Relation::Relation(int n) : n_(n), rows_(static_cast<std::size_t>(n)) {
    if (n < 0 || n > kMaxWorlds)
        throw std::invalid_argument("relation size out of range: " + std::to_string(n));
}

Relation Relation::identity(int n) {
    Relation r(n);
    for (int x = 0; x < n; ++x) r.set(x, x);
    return r;
}

Relation Relation::total(int n) {
    Relation r(n);
    for (int x = 0; x < n; ++x) r.rows_[x] = WorldSet::full(n);
    return r;
}

Relation Relation::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    Relation r(n);
    for (auto [x, y] : pairs) {
        if (x < 0 || y < 0 || x >= n || y >= n)
            throw std::out_of_range("pair (" + std::to_string(x) + "," + std::to_string(y) +
                                    ") outside 0.." + std::to_string(n - 1));
        r.set(x, y);
    }
    return r;
}

WorldSet Relation::image(WorldSet a) const {
    WorldSet out;
    a.for_each([&](int x) { out |= rows_[x]; });
    return out;
}

WorldSet Relation::preimage(WorldSet a) const {
    WorldSet out;
    for (int x = 0; x < n_; ++x)
        if (rows_[x].intersects(a)) out.insert(x);
    return out;
}

Relation Relation::converse() const {
    Relation r(n_);
    for (int x = 0; x < n_; ++x) rows_[x].for_each([&](int y) { r.set(y, x); });
    return r;
}

Relation Relation::then(const Relation& o) const {
    Relation r(n_);
    for (int x = 0; x < n_; ++x) r.rows_[x] = o.image(rows_[x]);
    return r;
}

Relation Relation::operator|(const Relation& o) const {
    Relation r(n_);
    for (int x = 0; x < n_; ++x) r.rows_[x] = rows_[x] | o.rows_[x];
    return r;
}

Relation Relation::operator&(const Relation& o) const {
    Relation r(n_);
    for (int x = 0; x < n_; ++x) r.rows_[x] = rows_[x] & o.rows_[x];
    return r;
}

bool Relation::subset_of(const Relation& o) const {
    for (int x = 0; x < n_; ++x)
        if (!rows_[x].subset_of(o.rows_[x])) return false;
    return true;
}

bool Relation::reflexive() const {
    for (int x = 0; x < n_; ++x)
        if (!test(x, x)) return false;
    return true;
}

bool Relation::symmetric() const { return converse() == *this; }

bool Relation::transitive() const {
    for (int x = 0; x < n_; ++x)
        if (!image(rows_[x]).subset_of(rows_[x])) return false;
    return true;
}

bool Relation::antisymmetric() const {
    for (int x = 0; x < n_; ++x)
        for (int y = x + 1; y < n_; ++y)
            if (test(x, y) && test(y, x)) return false;
    return true;
}

Relation Relation::reflexive_transitive_closure() const {
    Relation r = *this;
    for (int x = 0; x < n_; ++x) r.set(x, x);
    // Warshall over bit rows.
    for (int k = 0; k < n_; ++k)
        for (int x = 0; x < n_; ++x)
            if (r.test(x, k)) r.rows_[x] |= r.rows_[k];
    return r;
}

Relation Relation::equivalence_closure() const {
    return (*this | converse()).reflexive_transitive_closure();
}

Relation Relation::restrict(WorldSet u) const {
    const auto members = u.members();
    Relation r(static_cast<int>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j)
            if (test(members[i], members[j])) r.set(static_cast<int>(i), static_cast<int>(j));
    return r;
}

std::vector<WorldSet> Relation::classes() const {
    std::vector<WorldSet> out;
    WorldSet seen;
    for (int x = 0; x < n_; ++x) {
        if (seen.contains(x)) continue;
        out.push_back(rows_[x]);
        seen |= rows_[x];
    }
    return out;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x) rows_[x].for_each([&](int y) { out.emplace_back(x, y); });
    return out;
}

}  // namespace ms4lab
