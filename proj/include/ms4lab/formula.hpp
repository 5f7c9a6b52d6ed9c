#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ms4lab {

/// Primitive connectives. Derived modalities (box, all, the Q-diamond, ...) are
/// expanded on construction, so a Formula only ever holds these.
enum class Op : unsigned char { Var, Top, Bot, Not, And, Or, Imp, Dia, Ex };

/// Immutable bimodal formula over the S4 diamond (Dia) and the S5 diamond (Ex).
/// Value type; nodes are shared and hashed structurally.
class Formula {
public:
    static Formula var(std::string name);
    static Formula top();
    static Formula bot();
    static Formula neg(Formula a);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula imp(Formula a, Formula b);
    static Formula dia(Formula a);
    static Formula ex(Formula a);

    // Derived modalities, expanded to primitives.
    static Formula box(Formula a);    // ~<>~a
    static Formula all(Formula a);    // ~E~a
    static Formula bdia(Formula a);   // <>E a
    static Formula bbox(Formula a);   // ~<>E~a
    static Formula sdia(Formula a);   // <>a | E a
    /// `times`-fold sdia; zero applications is the formula itself.
    static Formula sdia_power(Formula a, int times);

    [[nodiscard]] Op op() const;
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const Formula& left() const;   // unary child or left operand
    [[nodiscard]] const Formula& right() const;
    [[nodiscard]] std::size_t hash() const;
    [[nodiscard]] std::size_t node_count() const;
    [[nodiscard]] bool is_unary() const;
    [[nodiscard]] bool is_binary() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    struct Node;
    Formula() = default;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

/// Parses the ASCII surface syntax (`<> [] E A <#> [#] <+>`, `~ & | ->`,
/// `true false`); the usual Unicode symbols are accepted as aliases.
Formula parse(std::string_view text);

/// Renders in the ASCII syntax; derived patterns are folded back for legibility.
/// parse(print(f)) == f.
std::string print(const Formula& f);

/// Sorted, distinct variable names.
std::vector<std::string> variables(const Formula& f);

/// Every subformula of the primitive tree, deduplicated, post-order by first occurrence.
std::vector<Formula> subterms(const Formula& f);

/// Replaces each Dia node by Dia(Ex(.)). Applied exactly once; not idempotent.
Formula zero_transform(const Formula& f);

Formula substitute(const Formula& f, const std::map<std::string, Formula>& sub);

/// Named axiom schemas.
struct AxiomName {
    enum class Kind { MS4Ax, Bar, MCasPlus, Grz, Sc, Ed, P, P0, Rp };
    Kind kind = Kind::MS4Ax;
    int index = 0;  // n for P/P0, m for Rp

    bool operator==(const AxiomName&) const = default;
};

/// Accepts `ms4`, `bar`, `mcas`, `grz`, `sc`, `ed`, `P<n>`, `P0_<n>`, `rp<m>`
/// (case-insensitive).
AxiomName parse_axiom_name(std::string_view text);
std::string to_string(const AxiomName& a);

/// Instance of the schema over canonical variables (p, q; q1..qn; p0..p{m+1}).
/// Throws std::invalid_argument for a zero index.
Formula build_axiom(const AxiomName& a);

}  // namespace ms4lab
