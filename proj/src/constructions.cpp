#include "ms4lab/constructions.hpp"

#include "ms4lab/conditions.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ms4lab {

MS4Frame chain_frame(int n) {
    if (n < 1 || n > kMaxWorlds) throw std::invalid_argument("chain length must be in 1..64");
    Relation r(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y <= x; ++y) r.set(x, y);
    return MS4Frame(std::move(r), Relation::identity(n));
}

GridFrames grid_frame(int rows, int cols) {
    if (rows < 1 || cols < 1 || rows * cols > kMaxWorlds) throw std::invalid_argument("grid must have 1..64 cells");
    const int n = rows * cols;
    Relation same_row(n);
    Relation same_col(n);
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) {
        labels.push_back("(" + std::to_string(a / cols) + "," + std::to_string(a % cols) + ")");
        for (int b = 0; b < n; ++b) {
            if (a / cols == b / cols) same_row.set(a, b);
            if (a % cols == b % cols) same_col.set(a, b);
        }
    }
    return GridFrames{S52Frame(same_row, same_col), MS4Frame(same_row, same_col, std::move(labels))};
}

WorldSet staircase(int rows, int cols) {
    WorldSet s;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j <= i && j < cols; ++j) s.insert(i * cols + j);
    return s;
}

MS4Frame product_frame(const Relation& s4, int k) {
    if (!s4.is_quasi_order()) throw std::invalid_argument("product base must be a quasi-order");
    if (k < 1) throw std::invalid_argument("cluster size must be positive");
    const int m = s4.size();
    const int n = m * k;
    if (n > kMaxWorlds) throw std::invalid_argument("product exceeds 64 worlds");
    Relation r(n);
    Relation e(n);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < k; ++y)
            for (int x2 = 0; x2 < m; ++x2)
                for (int y2 = 0; y2 < k; ++y2) {
                    if (s4.test(x, x2) && y == y2) r.set(x * k + y, x2 * k + y2);
                    if (x == x2) e.set(x * k + y, x2 * k + y2);
                }
    return MS4Frame(std::move(r), std::move(e));
}

MS4Frame translate(const S52Frame& f) {
    const int n = f.size();
    if (n == 0) throw EmptyFrame();
    const auto alphas = f.e2().classes();
    const int l = static_cast<int>(alphas.size());
    const int size = n + 2 * l;
    if (size > kMaxWorlds) throw std::invalid_argument("translation exceeds 64 worlds");
    auto top = [n](int a) { return n + a; };
    auto bottom = [n, l](int a) { return n + l + a; };

    Relation r(size);
    Relation e(size);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (f.e1().test(x, y)) r.set(x, y);
            if (f.e2().test(x, y)) e.set(x, y);
        }
    for (int a = 0; a < l; ++a) {
        for (int y = 0; y < size; ++y) r.set(bottom(a), y);
        for (int x = 0; x < n; ++x) r.set(x, top(a));
        for (int b = 0; b < l; ++b) r.set(top(a), top(b));
        alphas[a].for_each([&](int x) {
            e.set(x, top(a));
            e.set(x, bottom(a));
        });
    }
    std::vector<std::string> labels;
    for (int x = 0; x < n; ++x) labels.push_back(std::to_string(x));
    for (int a = 0; a < l; ++a) labels.push_back("T" + std::to_string(a));
    for (int a = 0; a < l; ++a) labels.push_back("B" + std::to_string(a));
    return MS4Frame(r, e.equivalence_closure(), std::move(labels));
}

PreconditionFailed::PreconditionFailed(std::vector<std::string> f)
    : std::invalid_argument([&] {
          std::string s = "frame fails";
          for (const auto& c : f) s += " " + c;
          return s;
      }()),
      failed(std::move(f)) {}

FiltrationResult selective_filtration(const MS4Frame& f, const Formula& phi, const Valuation& v) {
    std::vector<std::string> failed;
    if (!check_grz_finite(f).holds) failed.push_back("grz");
    if (!check_sc(f).holds) failed.push_back("sc");
    if (!check_ed(f).holds) failed.push_back("ed");
    if (!failed.empty()) throw PreconditionFailed(std::move(failed));

    const CompiledFormula code(phi);
    std::vector<WorldSet> vals;
    for (const auto& name : code.variables()) {
        auto it = v.find(name);
        if (it == v.end()) throw UnboundVariable(name);
        vals.push_back(it->second & f.worlds());
    }
    std::vector<WorldSet> ext;
    code.run(f, vals, ext);

    // Top points of A: nothing else of A lies above them (R is antisymmetric).
    auto top_of = [&f](WorldSet a) {
        WorldSet out;
        a.for_each([&](int x) {
            if ((f.r().row(x) & a) == WorldSet::single(x)) out.insert(x);
        });
        return out;
    };

    const WorldSet falsifying = ext[code.root()].complement(f.size());
    if (falsifying.empty()) throw NotFalsified();
    const int x0 = top_of(falsifying).first();

    WorldSet selected = WorldSet::single(x0);
    std::vector<int> work{x0};
    const auto& terms = code.subterms();
    std::vector<int> child(terms.size(), -1);
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i].op() == Op::Dia)
            child[i] = static_cast<int>(std::find(terms.begin(), terms.end(), terms[i].left()) - terms.begin());
    while (!work.empty()) {
        const int x = work.back();
        work.pop_back();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (child[i] < 0 || !ext[i].contains(x) || ext[child[i]].contains(x)) continue;
            const int y = top_of(ext[child[i]] & f.r().row(x)).first();
            if (!selected.contains(y)) {
                selected.insert(y);
                work.push_back(y);
            }
        }
    }

    const int m = selected.size();
    std::vector<int> index(static_cast<std::size_t>(f.size()), -1);
    std::vector<int> source(static_cast<std::size_t>(m), -1);
    for (int s : selected.members()) {
        const int i = (f.r().row(s) & selected).size() - 1;
        if (source[i] != -1) throw std::logic_error("selected points do not form a chain");
        index[s] = i;
        source[i] = s;
    }

    MS4Frame chain = chain_frame(m);
    Valuation nu;
    std::vector<WorldSet> chain_vals;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        WorldSet img;
        (vals[k] & selected).for_each([&](int s) { img.insert(index[s]); });
        nu[code.variables()[k]] = img;
        chain_vals.push_back(img);
    }
    std::vector<WorldSet> chain_ext;
    code.run(chain, chain_vals, chain_ext);

    std::vector<std::string> disagreements;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (int s : selected.members())
            if (ext[i].contains(s) != chain_ext[i].contains(index[s]))
                disagreements.push_back(print(terms[i]) + " at " + std::to_string(s));

    FiltrationResult out{std::move(chain), std::move(nu), std::move(source), index[x0], std::move(disagreements)};
    return out;
}

namespace {

/// Uniform double in [0, 1) from the top 53 bits, independent of the standard
/// library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
    return std::mt19937_64(seq);
}

Relation from_labels(const std::vector<int>& label) {
    const int n = static_cast<int>(label.size());
    Relation r(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (label[x] == label[y]) r.set(x, y);
    return r;
}

/// All relations on n worlds with the diagonal set and off-diagonal bits from
/// `mask` (row-major, least significant first) that pass `keep`.
template <typename Keep>
std::vector<Relation> reflexive_relations(int n, Keep keep) {
    std::vector<Relation> out;
    const int bits = n * (n - 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        Relation r = Relation::identity(n);
        int b = 0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y) continue;
                if ((mask >> b) & 1U) r.set(x, y);
                ++b;
            }
        if (keep(r)) out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

MS4Frame random_frame(int n, const RandomFrameParams& params, std::uint64_t seed) {
    if (n < 1 || n > kMaxWorlds) throw std::invalid_argument("world count must be in 1..64");
    auto rng = seeded(seed, static_cast<std::uint64_t>(n));
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        Relation r(n);
        Relation e(n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y) continue;
                if (unit(rng) < params.r_density) r.set(x, y);
                if (x < y && unit(rng) < params.e_density) e.set(x, y);
            }
        r = r.reflexive_transitive_closure();
        e = e.equivalence_closure();
        if (!check_frame(r, e)) return MS4Frame(std::move(r), std::move(e));
    }
    throw GiveUp("no valid frame after " + std::to_string(params.max_attempts) + " attempts");
}

std::vector<MS4Frame> enumerate_frames(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("enumeration supports 1..5 worlds");
    const auto orders = reflexive_relations(n, [](const Relation& r) { return r.transitive(); });
    const auto equivs = reflexive_relations(n, [](const Relation& r) { return r.symmetric() && r.transitive(); });
    std::vector<MS4Frame> out;
    for (const auto& r : orders)
        for (const auto& e : equivs)
            if (!check_frame(r, e)) out.emplace_back(r, e);
    return out;
}

S52Frame random_s52(int n, std::uint64_t seed) {
    if (n < 1 || n > kMaxWorlds) throw std::invalid_argument("world count must be in 1..64");
    auto rng = seeded(seed, 0x5352u + static_cast<std::uint64_t>(n));
    std::vector<int> l1(static_cast<std::size_t>(n));
    std::vector<int> l2(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        l1[x] = static_cast<int>(below(rng, static_cast<std::uint64_t>(n)));
        l2[x] = static_cast<int>(below(rng, static_cast<std::uint64_t>(n)));
    }
    return S52Frame(from_labels(l1), from_labels(l2));
}

MS4Frame random_simple_barcan(const SimpleBarcanParams& p, std::uint64_t seed) {
    if (p.min_columns < 1 || p.min_rows < 1 || p.max_columns < p.min_columns || p.max_rows < p.min_rows ||
        p.max_multiplicity < 1)
        throw std::invalid_argument("bad simple Barcan parameters");
    if (p.max_rows * p.max_columns > p.max_worlds || p.max_worlds > kMaxWorlds)
        throw std::invalid_argument("grid does not fit the world budget");
    auto rng = seeded(seed, 0xba4cau);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(below(rng, static_cast<std::uint64_t>(hi - lo + 1))); };

    const int cols = pick(p.min_columns, p.max_columns);
    const int rows = pick(p.min_rows, p.max_rows);
    const int top_rows = pick(1, rows);

    // Worlds as (row, column); each cell gets at least one, spare budget spread randomly.
    std::vector<int> row_of;
    std::vector<int> col_of;
    int spare = p.max_worlds - rows * cols;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            int mult = pick(1, p.max_multiplicity);
            mult = std::min(mult, 1 + spare);
            spare -= mult - 1;
            for (int c = 0; c < mult; ++c) {
                row_of.push_back(i);
                col_of.push_back(j);
            }
        }
    std::vector<std::uint64_t> sees(static_cast<std::size_t>(rows), 0);
    for (int i = top_rows; i < rows; ++i) sees[i] = 1 + below(rng, (std::uint64_t{1} << top_rows) - 1);

    const int n = static_cast<int>(row_of.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[below(rng, static_cast<std::uint64_t>(i) + 1)]);

    Relation r(n);
    Relation e(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const bool same_row = row_of[a] == row_of[b];
            const bool up = row_of[a] >= top_rows && row_of[b] < top_rows && ((sees[row_of[a]] >> row_of[b]) & 1U);
            if (same_row || up) r.set(perm[a], perm[b]);
            if (col_of[a] == col_of[b]) e.set(perm[a], perm[b]);
        }
    return MS4Frame(std::move(r), std::move(e));
}

}  // namespace ms4lab
