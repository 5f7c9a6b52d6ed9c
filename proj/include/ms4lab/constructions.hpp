#pragma once

#include "ms4lab/formula.hpp"
#include "ms4lab/frame.hpp"
#include "ms4lab/semantics.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ms4lab {

/// L_n: worlds 0..n-1, x R y iff x >= y, E the identity. World 0 is the top.
MS4Frame chain_frame(int n);

struct GridFrames {
    S52Frame s52;  // E1 rows, E2 columns
    MS4Frame ms4;  // R rows, E columns
};

/// r x c grid; cell (i, j) is world i * c + j.
GridFrames grid_frame(int rows, int cols);

/// Lower staircase {(i, j) : j <= i} of an r x c grid.
WorldSet staircase(int rows, int cols);

/// X x {0..k-1}: (x, y) R (x', y') iff x R x' and y = y', (x, y) E (x', y') iff x = x'.
/// World (x, y) is x * k + y. `s4` must be a quasi-order.
MS4Frame product_frame(const Relation& s4, int k);

struct EmptyFrame : std::invalid_argument {
    EmptyFrame() : std::invalid_argument("frame has no worlds") {}
};

/// Depth-3 frame from an S5_2 frame: X, then the top rail (one point per
/// E2-class, worlds n..n+L-1), then the bottom rail (n+L..n+2L-1).
/// R = E1 + (bottom x Y) + (X x top) + (top x top); each E2-class is merged
/// with its two rail points.
MS4Frame translate(const S52Frame& f);

struct PreconditionFailed : std::invalid_argument {
    explicit PreconditionFailed(std::vector<std::string> failed);
    std::vector<std::string> failed;
};

struct NotFalsified : std::invalid_argument {
    NotFalsified() : std::invalid_argument("formula holds everywhere under the valuation") {}
};

struct FiltrationResult {
    MS4Frame chain;               // L_m
    Valuation valuation;          // on the chain
    std::vector<int> selected;    // selected[i] = source world of chain point i
    int world = -1;               // chain point falsifying the formula
    /// Subterms whose truth differs between a selected point and its chain
    /// image; empty when the agreement check passes.
    std::vector<std::string> disagreements;
};

/// Selective filtration on a frame satisfying grz, sc and ed (so E is the
/// identity and every R-cone is a chain): seed with the least max point of the
/// falsifying set, then add for each selected x and each subterm <>psi true but
/// with psi false at x the top psi-point above x, until stable.
FiltrationResult selective_filtration(const MS4Frame& f, const Formula& phi, const Valuation& v);

struct GiveUp : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RandomFrameParams {
    double r_density = 0.25;
    double e_density = 0.25;
    int max_attempts = 100000;
};

/// Rejection sampler: random generator pairs, closures, keep if commutation holds.
/// Deterministic in (n, params, seed). Throws GiveUp.
MS4Frame random_frame(int n, const RandomFrameParams& params, std::uint64_t seed);

/// Every labeled MS4-frame on n worlds, ordered by R's then E's row bitmasks.
std::vector<MS4Frame> enumerate_frames(int n);

/// S5_2 frame on n worlds with independently random partitions.
S52Frame random_s52(int n, std::uint64_t seed);

struct SimpleBarcanParams {
    int min_columns = 1;
    int max_columns = 4;
    int min_rows = 1;       // rows over both layers together
    int max_rows = 5;
    int max_multiplicity = 2;
    int max_worlds = 24;
};

/// Random simple Barcan frame of depth at most 2: a top grid of rows x columns
/// cells (each cell 1..max_multiplicity worlds), an optional bottom grid over the
/// same columns whose rows see a nonempty set of top rows, R-clusters = rows,
/// E-classes = columns. Worlds are randomly relabeled.
MS4Frame random_simple_barcan(const SimpleBarcanParams& params, std::uint64_t seed);

}  // namespace ms4lab
