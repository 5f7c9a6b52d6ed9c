#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ms4lab {

/// Hard upper bound on frame size; world sets are single 64-bit words.
inline constexpr int kMaxWorlds = 64;

/// A set of worlds of one fixed frame, stored as a bitset (bit i = world i).
class WorldSet {
public:
    constexpr WorldSet() = default;
    constexpr explicit WorldSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr WorldSet full(int n) {
        return WorldSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    static constexpr WorldSet single(int x) { return WorldSet(std::uint64_t{1} << x); }

    [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }
    [[nodiscard]] constexpr bool contains(int x) const { return (bits_ >> x) & 1U; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr int size() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr bool subset_of(WorldSet o) const { return (bits_ & ~o.bits_) == 0; }
    [[nodiscard]] constexpr bool intersects(WorldSet o) const { return (bits_ & o.bits_) != 0; }
    /// Least member, or -1 when empty.
    [[nodiscard]] constexpr int first() const { return bits_ ? std::countr_zero(bits_) : -1; }

    constexpr void insert(int x) { bits_ |= std::uint64_t{1} << x; }
    constexpr void erase(int x) { bits_ &= ~(std::uint64_t{1} << x); }

    constexpr WorldSet operator|(WorldSet o) const { return WorldSet(bits_ | o.bits_); }
    constexpr WorldSet operator&(WorldSet o) const { return WorldSet(bits_ & o.bits_); }
    constexpr WorldSet operator-(WorldSet o) const { return WorldSet(bits_ & ~o.bits_); }
    constexpr WorldSet& operator|=(WorldSet o) { bits_ |= o.bits_; return *this; }
    constexpr WorldSet& operator&=(WorldSet o) { bits_ &= o.bits_; return *this; }
    constexpr WorldSet& operator-=(WorldSet o) { bits_ &= ~o.bits_; return *this; }
    /// Complement relative to a frame of `n` worlds.
    [[nodiscard]] constexpr WorldSet complement(int n) const { return full(n) - *this; }

    constexpr auto operator<=>(const WorldSet&) const = default;

    [[nodiscard]] std::vector<int> members() const {
        std::vector<int> out;
        for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint64_t b = bits_; b; b &= b - 1) f(std::countr_zero(b));
    }

private:
    std::uint64_t bits_ = 0;
};

/// "{0,2,5}" style rendering.
std::string to_string(WorldSet s);

/// Dense square boolean matrix over `n` worlds; row x holds the successors of x.
class Relation {
public:
    Relation() = default;
    explicit Relation(int n);

    static Relation identity(int n);
    static Relation total(int n);
    static Relation from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] bool test(int x, int y) const { return rows_[x].contains(y); }
    [[nodiscard]] WorldSet row(int x) const { return rows_[x]; }
    void set(int x, int y) { rows_[x].insert(y); }
    void reset(int x, int y) { rows_[x].erase(y); }

    /// Image R(A) = { y : x R y for some x in A }.
    [[nodiscard]] WorldSet image(WorldSet a) const;
    /// Preimage R^{-1}(A) = { x : x R y for some y in A }.
    [[nodiscard]] WorldSet preimage(WorldSet a) const;

    [[nodiscard]] Relation converse() const;
    /// Relational composition in diagrammatic order: x (this;o) y iff x this z o y.
    [[nodiscard]] Relation then(const Relation& o) const;
    [[nodiscard]] Relation operator|(const Relation& o) const;
    [[nodiscard]] Relation operator&(const Relation& o) const;
    [[nodiscard]] bool subset_of(const Relation& o) const;

    [[nodiscard]] bool reflexive() const;
    [[nodiscard]] bool symmetric() const;
    [[nodiscard]] bool transitive() const;
    [[nodiscard]] bool antisymmetric() const;
    [[nodiscard]] bool is_quasi_order() const { return reflexive() && transitive(); }
    [[nodiscard]] bool is_equivalence() const { return reflexive() && symmetric() && transitive(); }

    [[nodiscard]] Relation reflexive_transitive_closure() const;
    [[nodiscard]] Relation equivalence_closure() const;
    /// Restriction to the worlds of `u`, renumbered in increasing order.
    [[nodiscard]] Relation restrict(WorldSet u) const;

    /// Classes of an equivalence relation, ordered by least member.
    [[nodiscard]] std::vector<WorldSet> classes() const;
    [[nodiscard]] std::vector<std::pair<int, int>> pairs() const;

    bool operator==(const Relation& o) const = default;

private:
    int n_ = 0;
    std::vector<WorldSet> rows_;
};

}  // namespace ms4lab
