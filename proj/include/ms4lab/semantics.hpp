#pragma once

#include "ms4lab/formula.hpp"
#include "ms4lab/frame.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ms4lab {

using Valuation = std::map<std::string, WorldSet>;

struct UnboundVariable : std::runtime_error {
    explicit UnboundVariable(const std::string& n)
        : std::runtime_error("unbound variable '" + n + "'"), name(n) {}
    std::string name;
};

/// Extension of f under v: Dia is the R-preimage, Ex the E-saturation.
WorldSet eval(const MS4Frame& f, const Valuation& v, const Formula& phi);

/// A formula flattened to its subterm list so that one valuation is a single
/// linear pass. Variable slots follow variables(phi) (sorted).
class CompiledFormula {
public:
    explicit CompiledFormula(const Formula& phi);

    [[nodiscard]] const Formula& formula() const { return formula_; }
    [[nodiscard]] const std::vector<std::string>& variables() const { return vars_; }
    [[nodiscard]] const std::vector<Formula>& subterms() const { return terms_; }
    [[nodiscard]] std::size_t root() const { return terms_.size() - 1; }

    /// Fills `ext[i]` with the extension of subterms()[i].
    void run(const MS4Frame& f, std::span<const WorldSet> var_values, std::vector<WorldSet>& ext) const;
    /// Recomputes only the subterms depending on a variable in `changed` (bit i = slot i).
    void rerun(const MS4Frame& f, std::span<const WorldSet> var_values, std::uint64_t changed,
               std::vector<WorldSet>& ext) const;

    [[nodiscard]] WorldSet eval(const MS4Frame& f, std::span<const WorldSet> var_values) const;

private:
    struct Instr {
        Op op;
        int a = -1;
        int b = -1;
        std::uint64_t deps = 0;  // variable slots this subterm depends on
    };
    WorldSet step(const MS4Frame& f, const Instr& in, std::span<const WorldSet> vars,
                  const std::vector<WorldSet>& ext) const;

    Formula formula_;
    std::vector<std::string> vars_;
    std::vector<Formula> terms_;
    std::vector<Instr> code_;
};

struct Countermodel {
    Valuation valuation;
    int world = -1;
};

enum class Verdict { Valid, Invalid, BudgetExceeded };
std::string to_string(Verdict v);

struct ValidityResult {
    Verdict verdict = Verdict::Valid;
    std::optional<Countermodel> countermodel;
    std::uint64_t valuations_checked = 0;
};

/// 2^30 valuations.
inline constexpr std::uint64_t kDefaultValuationBudget = std::uint64_t{1} << 30;

struct ValidityOptions {
    std::uint64_t max_valuations = kDefaultValuationBudget;
    int threads = 1;
};

/// Worker count from MS4LAB_THREADS, else the hardware concurrency.
int default_thread_count();

/// Exhaustive validity over all valuations of the formula's variables.
/// Valuations are enumerated with the first sorted variable most significant and
/// each set in increasing binary order; the reported countermodel is the first in
/// that order (and its least failing world), independent of the thread count.
ValidityResult valid(const MS4Frame& f, const Formula& phi, const ValidityOptions& opts = {});

struct ValidOverReport {
    std::vector<ValidityResult> items;
    Verdict aggregate = Verdict::Valid;
    int valid_count = 0;
    int invalid_count = 0;
    int budget_count = 0;
};

ValidOverReport valid_over(std::span<const MS4Frame> frames, const Formula& phi,
                           const ValidityOptions& opts = {});

}  // namespace ms4lab
