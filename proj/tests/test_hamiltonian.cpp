#include <doctest.h>

#include <cmath>

#include "chocoq/dense.hpp"
#include "chocoq/hamiltonian.hpp"
#include "support/fixtures.hpp"

using namespace chocoq;
using test::demo_problem;

TEST_CASE("objective diagonal is the sign-adjusted objective") {
    Problem p = demo_problem(); // maximize x1 + x3
    ObjectiveDiagonal diag = build_objective_diagonal(p, ExecPolicy::Serial);
    REQUIRE(diag.values.size() == 16);
    for (size_t idx = 0; idx < 16; ++idx) {
        Bits x = index_to_bits(idx, 4);
        CHECK(diag.values[idx] == -static_cast<double>(x[0] + x[2]));
    }
    CHECK(diag.values[bits_to_index(bits_from_string("1010"))] == -2.0);

    SUBCASE("zero objective") {
        Problem q = make_problem(3, Objective{}, ConstraintSystem({}, 3));
        for (double v : build_objective_diagonal(q, ExecPolicy::Serial).values) CHECK(v == 0.0);
    }
    SUBCASE("single-variable minimize") {
        Objective obj;
        obj.add_linear(1, Rational(1));
        Problem q = make_problem(1, std::move(obj), ConstraintSystem({}, 1));
        ObjectiveDiagonal d = build_objective_diagonal(q, ExecPolicy::Serial);
        CHECK(d.values == std::vector<double>{0.0, 1.0});
    }
    SUBCASE("parallel build matches serial bitwise") {
        ObjectiveDiagonal par = build_objective_diagonal(p, ExecPolicy::Parallel);
        CHECK(par.values == diag.values);
    }
}

TEST_CASE("driver terms read support and pattern off the vector") {
    DriverTerm t1 = make_driver_term({-1, 1, -1, 0});
    CHECK(t1.support == std::vector<int>{1, 2, 3});
    CHECK(t1.v == std::vector<uint8_t>{0, 1, 0});

    DriverTerm t2 = make_driver_term({0, -1, 0, 1});
    CHECK(t2.support == std::vector<int>{2, 4});
    CHECK(t2.v == std::vector<uint8_t>{0, 1});

    CHECK_THROWS_AS(make_driver_term({0, 0}), std::invalid_argument);

    SUBCASE("single-qubit term is the flip operator") {
        dense::CMatrix h = dense::driver_term_dense({1});
        CHECK(h.at(0, 1) == dense::cplx(1));
        CHECK(h.at(1, 0) == dense::cplx(1));
        CHECK(h.at(0, 0) == dense::cplx(0));
        CHECK(h.at(1, 1) == dense::cplx(0));
    }
}

TEST_CASE("dense driver term: hermitian, sign symmetric, paired spectrum") {
    for (const std::vector<int8_t>& u :
         {std::vector<int8_t>{-1, 1, -1, 0}, std::vector<int8_t>{0, -1, 0, 1},
          std::vector<int8_t>{1, 1}, std::vector<int8_t>{1, -1, 1, -1, 1}}) {
        dense::CMatrix h = dense::driver_term_dense(u);
        CHECK(dense::max_abs_diff(h, dense::dagger(h)) == 0.0);

        std::vector<int8_t> neg(u.size());
        for (size_t i = 0; i < u.size(); ++i) neg[i] = static_cast<int8_t>(-u[i]);
        CHECK(dense::max_abs_diff(h, dense::driver_term_dense(neg)) == 0.0);

        // Eigen-action: (|v> +- |vbar>)/sqrt(2) with eigenvalues +-1, every
        // other basis state annihilated (checked on the support register).
        DriverTerm term = test::restrict_to_support(make_driver_term(u));
        dense::CMatrix hs = dense::driver_term_dense(term.u);
        const size_t dim = hs.dim;
        const size_t iv = bits_to_index(Bits(term.v.begin(), term.v.end()));
        const size_t ivb = dim - 1 - iv;
        for (int sign : {+1, -1}) {
            std::vector<dense::cplx> state(dim);
            state[iv] = M_SQRT1_2;
            state[ivb] = sign * M_SQRT1_2;
            std::vector<dense::cplx> mapped = dense::mul_vec(hs, state);
            for (size_t i = 0; i < dim; ++i)
                CHECK(std::abs(mapped[i] - static_cast<double>(sign) * state[i]) < 1e-15);
        }
        for (size_t w = 0; w < dim; ++w) {
            if (w == iv || w == ivb) continue;
            std::vector<dense::cplx> basis_state(dim);
            basis_state[w] = 1.0;
            for (const dense::cplx& a : dense::mul_vec(hs, basis_state)) CHECK(std::abs(a) == 0.0);
        }
    }
}

TEST_CASE("driver terms commute with every row operator of their system") {
    Problem p = demo_problem();
    ConstraintBasis basis = solve_general(p.constraints, p.num_vars);
    for (const auto& u : basis.vectors)
        for (const auto& row : p.constraints.rows())
            CHECK(commutator_norm(make_driver_term(u), row, p.num_vars) <= 1e-12);

    SUBCASE("a vector outside the null space does not commute") {
        DriverTerm bad = make_driver_term({1, 0, 0, 0});
        CHECK(commutator_norm(bad, p.constraints.rows()[1], p.num_vars) > 0.5);
    }
}

TEST_CASE("penalty diagonal adds exactly lambda times the squared residual") {
    Problem p = demo_problem();
    const double lambda = 10.0;
    ObjectiveDiagonal plain = build_objective_diagonal(p, ExecPolicy::Serial);
    ObjectiveDiagonal penalty = build_penalty_objective(p, lambda, ExecPolicy::Serial);
    for (size_t idx = 0; idx < 16; ++idx) {
        Bits x = index_to_bits(idx, 4);
        double r1 = x[0] - x[2];
        double r2 = x[0] + x[1] + x[3] - 1.0;
        CHECK(penalty.values[idx] ==
              doctest::Approx(plain.values[idx] + lambda * (r1 * r1 + r2 * r2)).epsilon(1e-14));
        if (check_feasible(p, x)) CHECK(penalty.values[idx] == plain.values[idx]);
    }
    CHECK(penalty.values[0] - plain.values[0] == lambda); // all-zeros: residual (0, -1)
    CHECK_THROWS_AS(build_penalty_objective(p, 0.0), std::invalid_argument);
}

TEST_CASE("cyclic chains pair consecutive involved variables") {
    Problem p = demo_problem();
    std::vector<CyclicChain> chains = build_cyclic_driver(p);
    REQUIRE(chains.size() == 2);
    CHECK(chains[0].pairs == std::vector<std::pair<int, int>>{{1, 3}});
    CHECK(chains[1].pairs == std::vector<std::pair<int, int>>{{1, 2}, {2, 4}});

    SUBCASE("single-variable constraint has no pairs") {
        Problem q = make_problem(2, Objective{}, ConstraintSystem({{{1, 0}, 1}}, 2));
        CHECK(build_cyclic_driver(q)[0].pairs.empty());
    }
    SUBCASE("two-variable constraint has one pair") {
        Problem q = make_problem(3, Objective{}, ConstraintSystem({{{0, 1, 1}, 1}}, 3));
        CHECK(build_cyclic_driver(q)[0].pairs == std::vector<std::pair<int, int>>{{2, 3}});
    }
}

TEST_CASE("row operator diagonal entries") {
    ConstraintRow row{{1, 1, 0, 1}, 1};
    // On any basis state: sum_i c_i (1 - 2 x_i); at 1010 this is -1+1+1 = 1,
    // which also equals sum(c) - 2 rhs since 1010 is feasible for the row.
    CHECK(row_operator_entry(row, bits_to_index(bits_from_string("1010")), 4) == 1.0);
    CHECK(row_operator_entry(row, bits_to_index(bits_from_string("0000")), 4) == 3.0);
    CHECK(row_operator_entry(row, bits_to_index(bits_from_string("1111")), 4) == -3.0);
}

TEST_CASE("hermitian eigensolver diagonalizes the driver term") {
    dense::CMatrix h = dense::driver_term_dense({-1, 1, -1});
    dense::HermitianEigen eig = dense::hermitian_eigen(h);

    // Reconstruct V diag V^dagger and compare.
    dense::CMatrix d = dense::CMatrix::zero(h.dim);
    for (size_t i = 0; i < h.dim; ++i) d.at(i, i) = eig.values[i];
    dense::CMatrix rebuilt = dense::mul(dense::mul(eig.vectors, d), dense::dagger(eig.vectors));
    CHECK(dense::max_abs_diff(rebuilt, h) < 1e-12);

    // Unitarity of the eigenvector matrix.
    dense::CMatrix vhv = dense::mul(dense::dagger(eig.vectors), eig.vectors);
    CHECK(dense::max_abs_diff(vhv, dense::CMatrix::identity(h.dim)) < 1e-12);

    // Spectrum {+1, -1, 0^(2^k - 2)}.
    int plus = 0, minus = 0, zero = 0;
    for (double v : eig.values) {
        if (std::abs(v - 1) < 1e-10) ++plus;
        else if (std::abs(v + 1) < 1e-10) ++minus;
        else if (std::abs(v) < 1e-10) ++zero;
    }
    CHECK(plus == 1);
    CHECK(minus == 1);
    CHECK(zero == static_cast<int>(h.dim) - 2);
}
