#pragma once

#include "ms4lab/frame.hpp"
#include "ms4lab/semantics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ms4lab {

/// Outcome of a first-order (or semantic) frame condition.
/// When `holds` is false, `witness` (and `witness_set` where relevant) point at
/// the violation so it can be rechecked from the definition.
struct ConditionReport {
    std::string name;
    bool holds = true;
    bool budget_exceeded = false;
    std::vector<int> witness;
    std::optional<WorldSet> witness_set;
};

/// R;E contained in E;R. Witness (x, y, z): x R y, y E z, no w with x E w R z.
ConditionReport check_barcan(const MS4Frame& f);
/// E contained in R. Witness (x, y).
ConditionReport check_ed(const MS4Frame& f);
/// xRy and xRz imply yRz or zRy. Witness (x, y, z).
ConditionReport check_sc(const MS4Frame& f);
/// R antisymmetric. Witness (x, y) in a proper cluster.
ConditionReport check_grz_finite(const MS4Frame& f);

inline constexpr int kDefaultClusterCap = 20;

/// For every union U of E-clusters, each x in qmax U has a flat E(x).
/// Witness: witness_set = U, witness = {x}. Budget exceeded beyond `cluster_cap` clusters.
ConditionReport check_mcas_semantic(const MS4Frame& f, int cluster_cap = kDefaultClusterCap);

enum class StepTag { R, E, Both };
std::string to_string(StepTag t);

struct PathWitness {
    std::vector<int> worlds;
    std::vector<StepTag> steps;  // steps[i] labels worlds[i] -> worlds[i+1]
    bool proper = false;
};

struct PathResult {
    int length = 0;  // number of steps
    bool capped = false;  // search stopped at the cap; true length is at least `length`
    PathWitness witness;
};

/// Longest irreducible S-path: distinct worlds, consecutive pairs S-related, and
/// no shortcut x_i S x_k for k >= i + 2. With `proper`, steps inside R and E are
/// excluded. Exact by DFS; first maximal path in index order is the witness.
PathResult longest_irreducible_path(const MS4Frame& f, bool proper, int cap);

/// Definitional recheck of a path witness.
bool is_irreducible_path(const MS4Frame& f, const std::vector<int>& worlds, bool proper);

/// RP_m: no irreducible path of m + 1 steps.
ConditionReport check_rp(const MS4Frame& f, int m);

struct Classification {
    std::vector<std::string> classes;
    std::vector<std::string> undetermined;  // checks that ran out of budget
};

/// Named classes from the checkers and depth functions (never from validity).
Classification classify(const MS4Frame& f, int cluster_cap = kDefaultClusterCap);

/// For depth(f) > n: a valuation of q1..qn falsifying P_n and the failing world,
/// built from a strict chain through the layers. Empty when depth(f) <= n.
std::optional<Countermodel> depth_countermodel(const MS4Frame& f, int n);

}  // namespace ms4lab
