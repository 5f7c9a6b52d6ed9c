#pragma once

#include "ms4lab/formula.hpp"
#include "ms4lab/frame.hpp"
#include "ms4lab/semantics.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ms4lab {

/// Operators a finite subalgebra may be closed under. ExApprox is the
/// approximate S5 diamond: least E-saturated element of the carrier above a.
enum class Operator { Dia, Ex, BDia, ExApprox };
std::string to_string(Operator o);

struct Signature {
    bool dia = false;
    bool ex = false;
    bool bdia = false;
    bool ex_approx = false;

    [[nodiscard]] bool has(Operator o) const;
    [[nodiscard]] std::vector<Operator> operators() const;
    static Signature of(std::initializer_list<Operator> ops);
};

struct NotSubalgebra : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite Boolean subalgebra of the powerset of a frame, with operators.
/// The carrier is held as its atom partition: an element is a union of atoms,
/// addressed by the bitmask of the atoms it contains (atom order = least member).
class FiniteBAO {
public:
    FiniteBAO(MS4Frame base, std::vector<WorldSet> atoms, Signature sig);

    [[nodiscard]] const MS4Frame& base() const { return base_; }
    [[nodiscard]] const std::vector<WorldSet>& atoms() const { return atoms_; }
    [[nodiscard]] int atom_count() const { return static_cast<int>(atoms_.size()); }
    [[nodiscard]] const Signature& signature() const { return sig_; }
    /// 2^atoms; nullopt when it does not fit in 64 bits.
    [[nodiscard]] std::optional<std::uint64_t> size() const;

    [[nodiscard]] bool contains(WorldSet a) const;
    [[nodiscard]] WorldSet element(std::uint64_t mask) const;
    /// Throws NotSubalgebra if `a` is not a union of atoms.
    [[nodiscard]] std::uint64_t mask_of(WorldSet a) const;
    /// Index of the atom holding world x.
    [[nodiscard]] int atom_of(int x) const;

    /// Carrier sorted by bitset value. Requires at most 20 atoms.
    [[nodiscard]] std::vector<WorldSet> carrier() const;

    /// Operator value. The operator need not be in the signature; Ex and
    /// ExApprox differ unless the carrier is closed under Ex.
    [[nodiscard]] WorldSet apply(Operator o, WorldSet a) const;
    /// Table over the carrier as atom masks, indexed by atom mask. Requires at most 20 atoms.
    [[nodiscard]] std::vector<std::uint64_t> table(Operator o) const;

    /// Elements fixed by Ex (E-saturated members of the carrier).
    [[nodiscard]] std::vector<WorldSet> fixpoints(Operator o) const;

private:
    MS4Frame base_;
    std::vector<WorldSet> atoms_;
    std::vector<int> atom_of_;
    Signature sig_;
};

/// Full powerset with Dia, Ex and BDia.
FiniteBAO dual_algebra(const MS4Frame& f);

/// Least subalgebra containing `gens` closed under the signature. Computed by
/// refining the atom partition by the operator image of every atom until stable
/// (all operators are join-preserving, so atoms determine them).
FiniteBAO generated_subalgebra(const MS4Frame& f, const std::vector<WorldSet>& gens, Signature sig);

/// Replaces Ex by ExApprox on a Dia-closed subalgebra. Throws NotSubalgebra.
FiniteBAO approximate_exists(const FiniteBAO& b);

/// Violations of the MS4-algebra identities for the signature's Dia and
/// (Ex or ExApprox), each as a short message. Empty when all hold.
/// Checks every element, so at most 16 atoms (throws std::length_error beyond).
std::vector<std::string> check_ms4_identities(const FiniteBAO& b);

/// Atoms as worlds: x R y iff atom_x within Dia(atom_y), x E y iff atom_x within
/// Ex(atom_y) (ExApprox if present). Throws FrameError on an invalid result.
MS4Frame dual_frame_of_subalgebra(const FiniteBAO& b);

struct AlreadyValid : std::runtime_error {
    AlreadyValid() : std::runtime_error("formula is valid on the frame") {}
};

struct FmpResult {
    MS4Frame frame;
    Valuation valuation;
    int world = -1;
    Countermodel source;                  // countermodel on the input frame
    std::vector<WorldSet> atoms;          // atom i of the subalgebra is world i
    std::uint64_t subalgebra_atoms = 0;
    std::vector<std::string> identity_failures;  // always empty unless something is broken
};

/// Finite countermodel through the generated Dia-subalgebra of the subterm
/// extensions and the approximate S5 diamond. Throws AlreadyValid, or
/// std::runtime_error when validity is beyond the budget, and std::logic_error
/// if the construction's own assertions fail.
FmpResult fmp_countermodel(const MS4Frame& f, const Formula& phi, const ValidityOptions& opts = {});

struct GrowthPoint {
    int k = 0;
    int max_atoms = 0;  // max subalgebra size is 2^max_atoms
    int trials = 0;
};

/// Max generated subalgebra size (signature Dia, Ex) over `trials` random
/// k-tuples of generators, drawn from the family in round-robin, for k = 1..k_max.
std::vector<GrowthPoint> growth_probe(const std::vector<MS4Frame>& family, int k_max, int trials,
                                      std::uint64_t seed);

/// 2^atoms in decimal.
std::string pow2_string(int atoms);
/// CSV with header `k,max_size,trials`.
std::string growth_csv(const std::vector<GrowthPoint>& curve);

}  // namespace ms4lab
