#include "chocoq/nullspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "chocoq/rational.hpp"

namespace chocoq {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form over the rationals. Returns pivot column per
// row; the matrix is modified in place and zero rows are dropped.
std::vector<int> rref(RMatrix& m) {
    std::vector<int> pivot_cols;
    size_t row = 0;
    const size_t ncols = m.empty() ? 0 : m[0].size();
    for (size_t col = 0; col < ncols && row < m.size(); ++col) {
        size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rational inv = Rational(1) / m[row][col];
        for (size_t c = col; c < ncols; ++c) m[row][c] *= inv;
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            Rational factor = m[r][col];
            for (size_t c = col; c < ncols; ++c) m[r][c] -= factor * m[row][c];
        }
        pivot_cols.push_back(static_cast<int>(col));
        ++row;
    }
    m.resize(row);
    return pivot_cols;
}

RMatrix to_rational_matrix(const ConstraintSystem& cs, int n) {
    RMatrix m;
    m.reserve(cs.num_rows());
    for (const auto& row : cs.rows()) {
        std::vector<Rational> r(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)] = Rational(row.coeffs[static_cast<size_t>(i)]);
        m.push_back(std::move(r));
    }
    return m;
}

bool dot_is_zero(const ConstraintRow& row, const std::vector<int8_t>& u) {
    long long sum = 0;
    for (size_t i = 0; i < u.size(); ++i) sum += row.coeffs[i] * u[i];
    return sum == 0;
}

void canonicalize_sign(std::vector<int8_t>& u) {
    for (int8_t e : u) {
        if (e == 0) continue;
        if (e < 0)
            for (auto& v : u) v = static_cast<int8_t>(-v);
        return;
    }
}

// Incremental rational independence tracker (Gaussian echelon).
class IndependenceTracker {
public:
    explicit IndependenceTracker(size_t n) : n_(n) {}

    bool try_add(const std::vector<int8_t>& u) {
        std::vector<Rational> v(n_);
        for (size_t i = 0; i < n_; ++i) v[i] = Rational(u[i]);
        for (const auto& [lead, row] : echelon_) {
            if (v[static_cast<size_t>(lead)].is_zero()) continue;
            Rational factor = v[static_cast<size_t>(lead)];
            for (size_t c = 0; c < n_; ++c) v[c] -= factor * row[c];
        }
        for (size_t c = 0; c < n_; ++c) {
            if (v[c].is_zero()) continue;
            Rational inv = Rational(1) / v[c];
            for (size_t k = 0; k < n_; ++k) v[k] *= inv;
            echelon_.emplace(static_cast<int>(c), std::move(v));
            return true;
        }
        return false;
    }

private:
    size_t n_;
    std::map<int, std::vector<Rational>> echelon_;
};

} // namespace

int system_rank(const ConstraintSystem& cs, int n) {
    RMatrix m = to_rational_matrix(cs, n);
    return static_cast<int>(rref(m).size());
}

void validate_basis(const ConstraintSystem& cs, int n, const ConstraintBasis& basis) {
    const int nullity = n - system_rank(cs, n);
    if (static_cast<int>(basis.vectors.size()) != nullity)
        throw std::logic_error("basis size does not equal the null-space dimension");
    IndependenceTracker tracker(static_cast<size_t>(n));
    for (const auto& u : basis.vectors) {
        if (static_cast<int>(u.size()) != n) throw std::logic_error("basis vector length mismatch");
        for (int8_t e : u)
            if (e < -1 || e > 1) throw std::logic_error("basis entry outside {-1,0,1}");
        for (const auto& row : cs.rows())
            if (!dot_is_zero(row, u)) throw std::logic_error("basis vector violates C u = 0");
        if (!tracker.try_add(u)) throw std::logic_error("basis vectors are linearly dependent");
    }
}

ConstraintBasis solve_general(const ConstraintSystem& cs, int n, long long budget) {
    RMatrix m = to_rational_matrix(cs, n);
    const std::vector<int> pivots = rref(m);
    const int rank = static_cast<int>(pivots.size());
    const int nullity = n - rank;

    std::vector<int> free_cols;
    {
        std::vector<bool> is_pivot(static_cast<size_t>(n), false);
        for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
        for (int c = 0; c < n; ++c)
            if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    }

    ConstraintBasis basis;
    basis.num_vars = n;
    if (nullity == 0) {
        validate_basis(cs, n, basis);
        return basis;
    }

    // Standard free-variable basis: u[free_f] = 1, pivot entries read off the
    // RREF. Usable directly when all entries are ternary.
    bool standard_ok = true;
    std::vector<std::vector<int8_t>> standard;
    for (int f : free_cols) {
        std::vector<int8_t> u(static_cast<size_t>(n), 0);
        u[static_cast<size_t>(f)] = 1;
        for (int r = 0; r < rank && standard_ok; ++r) {
            Rational entry = -m[static_cast<size_t>(r)][static_cast<size_t>(f)];
            if (!entry.is_integer() || entry.num() < -1 || entry.num() > 1) {
                standard_ok = false;
                break;
            }
            u[static_cast<size_t>(pivots[static_cast<size_t>(r)])] = static_cast<int8_t>(entry.num());
        }
        if (!standard_ok) break;
        canonicalize_sign(u);
        standard.push_back(std::move(u));
    }
    if (standard_ok) {
        basis.vectors = std::move(standard);
        validate_basis(cs, n, basis);
        return basis;
    }

    // Bounded search over ternary assignments of the free variables,
    // enumerated by increasing support so small-support vectors are
    // preferred (they decompose into shallower circuit blocks).
    IndependenceTracker tracker(static_cast<size_t>(n));
    const int F = static_cast<int>(free_cols.size());
    long long nodes = 0;

    std::vector<int> subset;
    std::vector<std::vector<int8_t>> collected;

    auto try_candidate = [&](const std::vector<int8_t>& free_vals) -> bool {
        std::vector<int8_t> u(static_cast<size_t>(n), 0);
        for (int f = 0; f < F; ++f) u[static_cast<size_t>(free_cols[static_cast<size_t>(f)])] = free_vals[static_cast<size_t>(f)];
        for (int r = 0; r < rank; ++r) {
            Rational forced;
            for (int f = 0; f < F; ++f) {
                int8_t val = free_vals[static_cast<size_t>(f)];
                if (val == 0) continue;
                const Rational& coeff = m[static_cast<size_t>(r)][static_cast<size_t>(free_cols[static_cast<size_t>(f)])];
                forced -= val > 0 ? coeff : -coeff;
            }
            if (!forced.is_integer() || forced.num() < -1 || forced.num() > 1) return false;
            u[static_cast<size_t>(pivots[static_cast<size_t>(r)])] = static_cast<int8_t>(forced.num());
        }
        canonicalize_sign(u);
        if (!tracker.try_add(u)) return false;
        collected.push_back(std::move(u));
        return true;
    };

    std::function<bool(int, int)> enumerate_subsets = [&](int start, int remaining) -> bool {
        if (remaining == 0) {
            // Sign patterns over the chosen support; the leading free
            // variable is fixed to +1 since u and -u coincide as drivers.
            const size_t s = subset.size();
            for (uint64_t mask = 0; mask < (1ULL << (s - 1)); ++mask) {
                if (++nodes > budget) return false;
                std::vector<int8_t> vals(static_cast<size_t>(F), 0);
                vals[static_cast<size_t>(subset[0])] = 1;
                for (size_t b = 1; b < s; ++b)
                    vals[static_cast<size_t>(subset[b])] = (mask >> (b - 1)) & 1 ? -1 : 1;
                if (try_candidate(vals) && static_cast<int>(collected.size()) == nullity) return false;
            }
            return true;
        }
        for (int f = start; f <= F - remaining; ++f) {
            subset.push_back(f);
            bool keep_going = enumerate_subsets(f + 1, remaining - 1);
            subset.pop_back();
            if (!keep_going) return false;
        }
        return true;
    };

    for (int support = 1; support <= F && static_cast<int>(collected.size()) < nullity; ++support) {
        if (!enumerate_subsets(0, support)) break;
    }

    if (static_cast<int>(collected.size()) != nullity)
        throw BasisNotFound(static_cast<int>(collected.size()), nullity);
    basis.vectors = std::move(collected);
    validate_basis(cs, n, basis);
    return basis;
}

std::optional<ConstraintBasis> solve_onehot_pattern(const ConstraintSystem& cs, int n) {
    // Union-find over variables, driven by substitution rows u_a = u_b.
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    };

    struct SumRow {
        std::vector<int> support;
    };
    std::vector<SumRow> sum_rows;

    for (const auto& row : cs.rows()) {
        std::vector<int> pos, neg;
        for (int i = 0; i < n; ++i) {
            long long c = row.coeffs[static_cast<size_t>(i)];
            if (c == 0) continue;
            if (c == 1) pos.push_back(i);
            else if (c == -1) neg.push_back(i);
            else return std::nullopt; // non-unit coefficient
        }
        if (pos.size() == 1 && neg.size() == 1) {
            unite(pos[0], neg[0]);
        } else if (neg.empty() && !pos.empty()) {
            sum_rows.push_back({std::move(pos)});
        } else if (pos.empty() && !neg.empty()) {
            sum_rows.push_back({std::move(neg)}); // same null space up to row sign
        } else {
            return std::nullopt; // mixed signs beyond a substitution pair
        }
    }

    // Collapse sum rows onto class representatives; reject coefficient
    // collisions, deduplicate identical rows, then require the remaining
    // rows to be pairwise disjoint (adjacent differences are only a valid
    // basis under that condition).
    std::vector<std::vector<int>> class_rows;
    for (const auto& row : sum_rows) {
        std::vector<int> reps;
        for (int v : row.support) reps.push_back(find(v));
        std::sort(reps.begin(), reps.end());
        if (std::adjacent_find(reps.begin(), reps.end()) != reps.end()) return std::nullopt;
        class_rows.push_back(std::move(reps));
    }
    std::sort(class_rows.begin(), class_rows.end());
    class_rows.erase(std::unique(class_rows.begin(), class_rows.end()), class_rows.end());
    {
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (const auto& row : class_rows)
            for (int rep : row) {
                if (seen[static_cast<size_t>(rep)]) return std::nullopt;
                seen[static_cast<size_t>(rep)] = true;
            }
    }

    // Class members, keyed by representative.
    std::map<int, std::vector<int>> members;
    for (int v = 0; v < n; ++v) members[find(v)].push_back(v);

    ConstraintBasis basis;
    basis.num_vars = n;
    auto emit = [&](const std::vector<int>& plus_class, const std::vector<int>& minus_class) {
        std::vector<int8_t> u(static_cast<size_t>(n), 0);
        for (int v : plus_class) u[static_cast<size_t>(v)] = 1;
        for (int v : minus_class) u[static_cast<size_t>(v)] = -1;
        canonicalize_sign(u);
        basis.vectors.push_back(std::move(u));
    };

    std::vector<bool> in_sum(static_cast<size_t>(n), false);
    for (const auto& row : class_rows) {
        for (int rep : row) in_sum[static_cast<size_t>(rep)] = true;
        for (size_t t = 0; t + 1 < row.size(); ++t)
            emit(members.at(row[t]), members.at(row[t + 1]));
    }
    // Classes outside every sum row are unconstrained: one all-ones vector
    // per class keeps the substitution rows satisfied.
    for (const auto& [rep, mem] : members) {
        if (in_sum[static_cast<size_t>(rep)]) continue;
        std::vector<int8_t> u(static_cast<size_t>(n), 0);
        for (int v : mem) u[static_cast<size_t>(v)] = 1;
        basis.vectors.push_back(std::move(u));
    }

    validate_basis(cs, n, basis);
    return basis;
}

} // namespace chocoq
