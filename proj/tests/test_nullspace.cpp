#include <doctest.h>

#include "chocoq/nullspace.hpp"
#include "support/fixtures.hpp"

using namespace chocoq;

namespace {

// Span membership over the rationals: v is in span(basis) iff appending it
// does not raise the Bareiss rank.
bool in_span(const std::vector<std::vector<int8_t>>& basis, const std::vector<int8_t>& v) {
    std::vector<std::vector<long long>> m;
    for (const auto& u : basis) m.emplace_back(u.begin(), u.end());
    int r0 = test::bareiss_rank(m);
    m.emplace_back(v.begin(), v.end());
    return test::bareiss_rank(m) == r0;
}

bool same_span(const ConstraintBasis& a, const ConstraintBasis& b) {
    if (a.vectors.size() != b.vectors.size()) return false;
    for (const auto& v : b.vectors)
        if (!in_span(a.vectors, v)) return false;
    return true;
}

void check_contract(const ConstraintSystem& cs, int n, const ConstraintBasis& basis) {
    // Count against an independent rank route.
    auto m = test::coeff_matrix(cs);
    if (m.empty()) m.push_back(std::vector<long long>(static_cast<size_t>(n), 0));
    CHECK(static_cast<int>(basis.vectors.size()) == n - test::bareiss_rank(m));
    for (const auto& u : basis.vectors) {
        for (const auto& row : cs.rows()) {
            long long dot = 0;
            for (int i = 0; i < n; ++i) dot += row.coeffs[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
            CHECK(dot == 0);
        }
        for (int8_t e : u) CHECK((e >= -1 && e <= 1));
        // Sign canonicalization: leading nonzero is +1.
        for (int8_t e : u) {
            if (e == 0) continue;
            CHECK(e == 1);
            break;
        }
    }
}

} // namespace

TEST_CASE("general solver recovers the documented pair for the demo system") {
    ConstraintSystem cs({{{1, 0, -1, 0}, 0}, {{1, 1, 0, 1}, 1}}, 4);
    ConstraintBasis basis = solve_general(cs, 4);
    check_contract(cs, 4, basis);
    REQUIRE(basis.size() == 2);
    // Equivalent, up to sign and combination, to {[-1,1,-1,0], [0,-1,0,1]}.
    CHECK(in_span(basis.vectors, {-1, 1, -1, 0}));
    CHECK(in_span(basis.vectors, {0, -1, 0, 1}));
}

TEST_CASE("full-rank systems have an empty basis") {
    ConstraintSystem cs({{{1, 0}, 0}, {{0, 1}, 0}}, 2);
    ConstraintBasis basis = solve_general(cs, 2);
    CHECK(basis.empty());
    check_contract(cs, 2, basis);
}

TEST_CASE("two-variable sum row yields the difference vector") {
    ConstraintSystem cs({{{1, 1}, 1}}, 2);
    ConstraintBasis basis = solve_general(cs, 2);
    REQUIRE(basis.size() == 1);
    CHECK(basis.vectors[0] == std::vector<int8_t>{1, -1});

    // Independent route: all nine ternary candidates, exactly [1,-1] and
    // [-1,1] solve u1 + u2 = 0 nontrivially.
    int solutions = 0;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            if ((a || b) && a + b == 0) ++solutions;
    CHECK(solutions == 2);
}

TEST_CASE("ternary search recovers range violations of the echelon basis") {
    // The echelon vector for free u3 in u1 + u2 + 2 u3 = 0 is [-2, 0, 1],
    // out of range; the search must find [1, 1, -1] instead.
    ConstraintSystem cs({{{1, 1, 2}, 0}}, 3);
    ConstraintBasis basis = solve_general(cs, 3);
    check_contract(cs, 3, basis);
    REQUIRE(basis.size() == 2);
    CHECK(basis.vectors[0] == std::vector<int8_t>{1, -1, 0});
    CHECK(basis.vectors[1] == std::vector<int8_t>{1, 1, -1});
}

TEST_CASE("missing ternary basis is a hard diagnosable error") {
    // u1 = 2 u2 has no nonzero ternary solutions at all.
    ConstraintSystem cs({{{1, -2}, 0}}, 2);
    try {
        solve_general(cs, 2);
        FAIL("expected BasisNotFound");
    } catch (const BasisNotFound& e) {
        CHECK(e.rank_needed == 1);
        CHECK(e.rank_achieved == 0);
    }
}

TEST_CASE("ternary search finds small-support vectors first") {
    // Echelon basis for the single row u1 + u2 + u3 - 3 u4 = 0 assigns
    // u4 = 1 a pivot value of 3; the searched basis must stay ternary.
    ConstraintSystem cs({{{1, 1, 1, -3}, 0}}, 4);
    ConstraintBasis basis = solve_general(cs, 4);
    check_contract(cs, 4, basis);
    REQUIRE(basis.size() == 3);
    // Smallest supports first: difference vectors have support 2, the
    // all-ones-with-u4 vector has support 4.
    CHECK(basis.vectors[0] == std::vector<int8_t>{1, -1, 0, 0});
    CHECK(basis.vectors[1] == std::vector<int8_t>{1, 0, -1, 0});
    CHECK(basis.vectors[2] == std::vector<int8_t>{1, 1, 1, 1});
}

TEST_CASE("pattern solver emits adjacent differences for a one-hot row") {
    ConstraintSystem cs({{{1, 1, 1}, 1}}, 3);
    auto basis = solve_onehot_pattern(cs, 3);
    REQUIRE(basis);
    check_contract(cs, 3, *basis);
    REQUIRE(basis->size() == 2);
    CHECK(basis->vectors[0] == std::vector<int8_t>{1, -1, 0});
    CHECK(basis->vectors[1] == std::vector<int8_t>{0, 1, -1});
}

TEST_CASE("pattern solver chases substitution classes") {
    // Rows: sum_j y_ij = 0 for i in {1,2} plus x_j = y_ij links; classes
    // {x_j, y_1j, y_2j} collapse both sum rows into one, giving n-1 = 2
    // basis vectors. Variable order: x1..x3, y11..y13, y21..y23.
    std::vector<ConstraintRow> rows;
    rows.push_back({{0, 0, 0, 1, 1, 1, 0, 0, 0}, 0});
    rows.push_back({{0, 0, 0, 0, 0, 0, 1, 1, 1}, 0});
    for (int j = 0; j < 3; ++j) {
        ConstraintRow r1{{0, 0, 0, 0, 0, 0, 0, 0, 0}, 0};
        r1.coeffs[static_cast<size_t>(j)] = 1;
        r1.coeffs[static_cast<size_t>(3 + j)] = -1;
        rows.push_back(r1);
        ConstraintRow r2{{0, 0, 0, 0, 0, 0, 0, 0, 0}, 0};
        r2.coeffs[static_cast<size_t>(j)] = 1;
        r2.coeffs[static_cast<size_t>(6 + j)] = -1;
        rows.push_back(r2);
    }
    ConstraintSystem cs(std::move(rows), 9);
    auto basis = solve_onehot_pattern(cs, 9);
    REQUIRE(basis);
    check_contract(cs, 9, *basis);
    CHECK(basis->size() == 2);
    CHECK(same_span(*basis, solve_general(cs, 9)));
}

TEST_CASE("pattern solver declines non-unit and entangled rows") {
    CHECK_FALSE(solve_onehot_pattern(ConstraintSystem({{{2, 1}, 0}}, 2), 2));
    CHECK_FALSE(solve_onehot_pattern(ConstraintSystem({{{1, 1, -1}, 0}}, 3), 3));
    // Two sum rows sharing a variable: adjacent differences of one row
    // break the other, so the pattern must refuse.
    CHECK_FALSE(solve_onehot_pattern(ConstraintSystem({{{1, 1, 0}, 1}, {{0, 1, 1}, 1}}, 3), 3));
}

TEST_CASE("pattern solver spans the same space as the general solver") {
    // One-hot vertex rows with disjoint supports plus substitution links.
    std::vector<ConstraintRow> rows;
    rows.push_back({{1, 1, 1, 0, 0, 0, 0}, 1});
    rows.push_back({{0, 0, 0, 1, 1, 0, 0}, 1});
    rows.push_back({{0, 0, 0, 0, 0, 1, -1}, 0});
    ConstraintSystem cs(std::move(rows), 7);
    auto pattern = solve_onehot_pattern(cs, 7);
    REQUIRE(pattern);
    check_contract(cs, 7, *pattern);
    ConstraintBasis general = solve_general(cs, 7);
    check_contract(cs, 7, general);
    CHECK(same_span(*pattern, general));
}

TEST_CASE("solvers are deterministic") {
    ConstraintSystem cs({{{1, 0, -1, 0}, 0}, {{1, 1, 0, 1}, 1}}, 4);
    ConstraintBasis a = solve_general(cs, 4);
    ConstraintBasis b = solve_general(cs, 4);
    CHECK(a.vectors == b.vectors);
}

TEST_CASE("benchmark systems produce validated bases") {
    // Representative generated systems; validate_basis runs inside the
    // solver, so reaching here means every contract held.
    Graph g{4, {{1, 2}, {2, 3}, {3, 4}}};
    Problem gcp = generate_gcp(g, 3);
    ConstraintBasis gcp_basis = solve_general(gcp.constraints, gcp.num_vars);
    CHECK(gcp_basis.size() ==
          static_cast<size_t>(gcp.num_vars - system_rank(gcp.constraints, gcp.num_vars)));

    Problem kpp = generate_kpp(g, {Rational(1), Rational(1), Rational(1)}, {2, 2});
    ConstraintBasis kpp_basis = solve_general(kpp.constraints, kpp.num_vars);
    CHECK_FALSE(kpp_basis.empty());

    Problem flp = generate_flp(2, 2, {Rational(1), Rational(1)},
                               {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}});
    ConstraintBasis flp_basis = solve_general(flp.constraints, flp.num_vars);
    CHECK(flp_basis.size() == 4);
}
