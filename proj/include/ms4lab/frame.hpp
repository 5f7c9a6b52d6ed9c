#pragma once

#include "ms4lab/relation.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ms4lab {

/// Why a pair of relations is not an MS4-frame.
struct FrameViolation {
    enum class Kind { SizeMismatch, NotQuasiOrder, NotEquivalence, CommutationFails };
    Kind kind;
    /// For CommutationFails: (x, y, y') with xEy, yRy' and no x' with xRx', x'Ey'.
    /// For the order checks: the offending pair or triple.
    std::vector<int> witness;

    [[nodiscard]] std::string describe() const;
};

struct FrameError : std::runtime_error {
    explicit FrameError(FrameViolation v) : std::runtime_error(v.describe()), violation(std::move(v)) {}
    FrameViolation violation;
};

/// Returns the first violated frame condition, if any.
std::optional<FrameViolation> check_frame(const Relation& r, const Relation& e);

/// Finite MS4-frame: quasi-order R, equivalence E, with E;R contained in R;E.
/// Immutable once constructed; construction validates.
class MS4Frame {
public:
    /// Throws FrameError.
    MS4Frame(Relation r, Relation e, std::vector<std::string> labels = {});

    [[nodiscard]] int size() const { return r_.size(); }
    [[nodiscard]] WorldSet worlds() const { return WorldSet::full(size()); }
    [[nodiscard]] const Relation& r() const { return r_; }
    [[nodiscard]] const Relation& e() const { return e_; }
    /// Converse of R, cached: row y lists the R-predecessors of y.
    [[nodiscard]] const Relation& r_converse() const { return r_inv_; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] std::string label(int x) const;

    bool operator==(const MS4Frame& o) const { return r_ == o.r_ && e_ == o.e_; }

private:
    Relation r_;
    Relation e_;
    Relation r_inv_;
    std::vector<std::string> labels_;
};

/// Pair of equivalence relations with no commutation requirement.
class S52Frame {
public:
    S52Frame(Relation e1, Relation e2);

    [[nodiscard]] int size() const { return e1_.size(); }
    [[nodiscard]] const Relation& e1() const { return e1_; }
    [[nodiscard]] const Relation& e2() const { return e2_; }

private:
    Relation e1_;
    Relation e2_;
};

/// Builds a frame from generator pairs, optionally closing R reflexive-transitively
/// and E to an equivalence first. Throws FrameError on failure.
MS4Frame validate(const Relation& r, const Relation& e, bool close_r = false, bool close_e = false,
                  std::vector<std::string> labels = {});

// Derived relations.
/// x Q y iff x R z and z E y for some z (R first, then E).
Relation q_relation(const MS4Frame& f);
Relation s_relation(const MS4Frame& f);
/// R-clusters: R intersected with its converse.
Relation er_relation(const MS4Frame& f);
/// Q-clusters: Q intersected with its converse.
Relation eq_relation(const MS4Frame& f);

/// Quasi-maximal points of A: x in A such that xRy, y in A imply yRx.
WorldSet qmax(const MS4Frame& f, WorldSet a);

struct LayerDecomposition {
    std::vector<WorldSet> layers;  // D_1 .. D_k, all nonempty
    WorldSet residue;              // always empty for finite frames
};

LayerDecomposition layers(const MS4Frame& f);
int depth(const MS4Frame& f);
/// 1-based index of the layer holding x.
int point_depth(const MS4Frame& f, int x);

/// F^0: E-classes with the existential lift of R. `class_of[x]` is the class index of x.
struct QuotientFrame {
    MS4Frame frame;
    std::vector<int> class_of;
    std::vector<WorldSet> classes;
};

QuotientFrame quotient_frame(const MS4Frame& f);
int q_depth(const MS4Frame& f);

/// F|_U, unvalidated, with a report of which frame conditions survive.
struct RestrictedFrame {
    std::vector<int> worlds;  // original indices, increasing
    Relation r;
    Relation e;
    bool r_quasi_order = false;
    bool r_equivalence = false;
    bool e_equivalence = false;
    bool ms4_commutation = false;  // E;R within R;E
    bool relations_commute = false;  // R;E == E;R
};

RestrictedFrame restrict(const MS4Frame& f, WorldSet u);

/// Q-roots: points whose Q-image is everything.
WorldSet q_roots(const MS4Frame& f);

enum class SIClass { Simple, SI, NotSI };
SIClass classify_si(const MS4Frame& f);
std::string to_string(SIClass c);

bool flat(const MS4Frame& f, WorldSet a);
bool e_saturated(const MS4Frame& f, WorldSet a);
/// U minus its active points (x active iff xRyRz for some y outside U, z in U).
WorldSet passive_points(const MS4Frame& f, WorldSet u);

}  // namespace ms4lab
