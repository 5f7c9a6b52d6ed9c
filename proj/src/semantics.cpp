#include "ms4lab/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace ms4lab {

WorldSet eval(const MS4Frame& f, const Valuation& v, const Formula& phi) {
    CompiledFormula c(phi);
    std::vector<WorldSet> values;
    values.reserve(c.variables().size());
    for (const auto& name : c.variables()) {
        auto it = v.find(name);
        if (it == v.end()) throw UnboundVariable(name);
        if (!it->second.subset_of(f.worlds()))
            throw std::invalid_argument("valuation of '" + name + "' exceeds the frame");
        values.push_back(it->second);
    }
    return c.eval(f, values);
}

CompiledFormula::CompiledFormula(const Formula& phi)
    : formula_(phi), vars_(ms4lab::variables(phi)), terms_(ms4lab::subterms(phi)) {
    if (vars_.size() > 64) throw std::invalid_argument("more than 64 variables");
    std::unordered_map<Formula, int, FormulaHash> index;
    code_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Formula& t = terms_[i];
        Instr in{t.op()};
        if (t.op() == Op::Var) {
            const auto slot = std::lower_bound(vars_.begin(), vars_.end(), t.name()) - vars_.begin();
            in.a = static_cast<int>(slot);
            in.deps = std::uint64_t{1} << slot;
        }
        if (t.is_unary() || t.is_binary()) {
            in.a = index.at(t.left());
            in.deps |= code_[in.a].deps;
        }
        if (t.is_binary()) {
            in.b = index.at(t.right());
            in.deps |= code_[in.b].deps;
        }
        index.emplace(t, static_cast<int>(i));
        code_.push_back(in);
    }
}

WorldSet CompiledFormula::step(const MS4Frame& f, const Instr& in, std::span<const WorldSet> vars,
                               const std::vector<WorldSet>& ext) const {
    const WorldSet all = f.worlds();
    switch (in.op) {
        case Op::Var: return vars[in.a];
        case Op::Top: return all;
        case Op::Bot: return WorldSet{};
        case Op::Not: return ext[in.a].complement(f.size());
        case Op::And: return ext[in.a] & ext[in.b];
        case Op::Or: return ext[in.a] | ext[in.b];
        case Op::Imp: return ext[in.a].complement(f.size()) | ext[in.b];
        case Op::Dia: return f.r_converse().image(ext[in.a]);
        case Op::Ex: return f.e().image(ext[in.a]);
    }
    return {};
}

void CompiledFormula::run(const MS4Frame& f, std::span<const WorldSet> vars, std::vector<WorldSet>& ext) const {
    ext.resize(code_.size());
    for (std::size_t i = 0; i < code_.size(); ++i) ext[i] = step(f, code_[i], vars, ext);
}

void CompiledFormula::rerun(const MS4Frame& f, std::span<const WorldSet> vars, std::uint64_t changed,
                            std::vector<WorldSet>& ext) const {
    for (std::size_t i = 0; i < code_.size(); ++i)
        if (code_[i].deps & changed) ext[i] = step(f, code_[i], vars, ext);
}

WorldSet CompiledFormula::eval(const MS4Frame& f, std::span<const WorldSet> vars) const {
    std::vector<WorldSet> ext;
    run(f, vars, ext);
    return ext[root()];
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Valid: return "valid";
        case Verdict::Invalid: return "invalid";
        case Verdict::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

int default_thread_count() {
    if (const char* env = std::getenv("MS4LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

constexpr std::uint64_t kChunk = std::uint64_t{1} << 14;

struct Sweep {
    const MS4Frame& frame;
    const CompiledFormula& code;
    int n;
    int k;
    std::uint64_t total;

    void decode(std::uint64_t idx, std::vector<WorldSet>& vals) const {
        const std::uint64_t mask = WorldSet::full(n).bits();
        for (int i = 0; i < k; ++i)
            vals[i] = WorldSet((idx >> (static_cast<std::uint64_t>(k - 1 - i) * n)) & mask);
    }

    /// First failing index in [lo, hi), or `hi` if none.
    std::uint64_t scan(std::uint64_t lo, std::uint64_t hi) const {
        const WorldSet all = frame.worlds();
        std::vector<WorldSet> vals(static_cast<std::size_t>(k));
        std::vector<WorldSet> ext;
        decode(lo, vals);
        code.run(frame, vals, ext);
        const std::size_t root = code.root();
        for (std::uint64_t idx = lo;;) {
            if (ext[root] != all) return idx;
            if (++idx == hi) return hi;
            // Slots whose digit changed: the trailing zeros of idx in base 2^n.
            std::uint64_t changed = 0;
            for (int i = k - 1; i >= 0; --i) {
                changed |= std::uint64_t{1} << i;
                const std::uint64_t digit =
                    (idx >> (static_cast<std::uint64_t>(k - 1 - i) * n)) & WorldSet::full(n).bits();
                vals[i] = WorldSet(digit);
                if (digit != 0) break;
            }
            code.rerun(frame, vals, changed, ext);
        }
    }
};

}  // namespace

ValidityResult valid(const MS4Frame& f, const Formula& phi, const ValidityOptions& opts) {
    const CompiledFormula code(phi);
    const int n = f.size();
    const int k = static_cast<int>(code.variables().size());
    ValidityResult out;

    const int bits = k * n;
    if (bits >= 63 || (std::uint64_t{1} << bits) > opts.max_valuations) {
        out.verdict = Verdict::BudgetExceeded;
        return out;
    }
    const std::uint64_t total = std::uint64_t{1} << bits;
    const Sweep sweep{f, code, n, k, total};

    std::atomic<std::uint64_t> best{total};
    std::atomic<std::uint64_t> next_chunk{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t lo = next_chunk.fetch_add(kChunk);
            if (lo >= total || lo >= best.load()) return;
            const std::uint64_t hi = std::min(total, lo + kChunk);
            const std::uint64_t hit = sweep.scan(lo, hi);
            if (hit < hi) {
                std::uint64_t cur = best.load();
                while (hit < cur && !best.compare_exchange_weak(cur, hit)) {
                }
                return;
            }
        }
    };

    const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>((total + kChunk - 1) / kChunk)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const std::uint64_t hit = best.load();
    if (hit == total) {
        out.verdict = Verdict::Valid;
        out.valuations_checked = total;
        return out;
    }
    std::vector<WorldSet> vals(static_cast<std::size_t>(k));
    sweep.decode(hit, vals);
    const WorldSet failing = code.eval(f, vals).complement(n);
    Countermodel cm;
    for (int i = 0; i < k; ++i) cm.valuation[code.variables()[i]] = vals[i];
    cm.world = failing.first();
    out.verdict = Verdict::Invalid;
    out.countermodel = std::move(cm);
    out.valuations_checked = hit + 1;
    return out;
}

ValidOverReport valid_over(std::span<const MS4Frame> frames, const Formula& phi, const ValidityOptions& opts) {
    ValidOverReport rep;
    for (const auto& f : frames) {
        rep.items.push_back(valid(f, phi, opts));
        switch (rep.items.back().verdict) {
            case Verdict::Valid: ++rep.valid_count; break;
            case Verdict::Invalid: ++rep.invalid_count; break;
            case Verdict::BudgetExceeded: ++rep.budget_count; break;
        }
    }
    if (rep.invalid_count > 0)
        rep.aggregate = Verdict::Invalid;
    else if (rep.budget_count > 0)
        rep.aggregate = Verdict::BudgetExceeded;
    return rep;
}

}  // namespace ms4lab
