#include <doflab/linalg.hpp>
#include <doflab/matrix.hpp>
#include <doflab/rational.hpp>
#include <doflab/rng.hpp>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace doflab;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(den(make_rational(-4, -8)) == 1 * 2);
    CHECK(make_rational(-4, -8) == make_rational(1, 2));
    CHECK(make_rational(4, -8) == make_rational(-1, 2));
    CHECK(num(make_rational(4, -8)) == -1);
    CHECK(den(make_rational(4, -8)) == 2);
    CHECK(to_fraction_string(make_rational(9, 4)) == "9/4");
    CHECK(to_fraction_string(Rational(3)) == "3");
    CHECK(rational_from_string("18/11") == make_rational(18, 11));
    CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("rank on hand-checked inputs") {
    CHECK(rank_of(Matrix::identity(3)) == 3);
    CHECK(rank_of(Matrix(2, 3, {1, 2, 3, 2, 4, 6})) == 1);
    CHECK(rank_of(Matrix()) == 0);
    CHECK(rank_of(Matrix(0, 4)) == 0);
    CHECK(rank_of(Matrix(4, 0)) == 0);
    CHECK(rank_of(Matrix(2, 2, {0, 0, 0, 0})) == 0);
}

TEST_CASE("rank of a seeded random matrix matches the minor-expansion oracle") {
    Rng rng(1);
    const Matrix m = oracles::random_int_matrix(rng, 4, 6, 9);
    CHECK(rank_of(m) == oracles::rank_by_minors(m));
}

TEST_CASE("rank agrees with the oracle on random integer and rational matrices") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Rng rng(Rng::derive(99, seed));
        const std::size_t r = 1 + seed % 4, c = 1 + (seed / 4) % 5;
        const Matrix a = oracles::random_int_matrix(rng, r, c, 4);
        INFO("seed " << seed);
        CHECK(rank_of(a) == oracles::rank_by_minors(a));
        const Matrix b = oracles::random_rational_matrix(rng, r, c);
        CHECK(rank_of(b) == oracles::rank_by_minors(b));
    }
}

TEST_CASE("rank is invariant under row and column permutations") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix m = oracles::random_int_matrix(rng, 3, 4, 9);
        std::vector<std::size_t> rows = {2, 0, 1}, cols = {3, 1, 0, 2};
        CHECK(rank_of(m.select_rows(rows).columns(cols)) == rank_of(m));
    }
}

TEST_CASE("hstack shapes and identities") {
    const Matrix a(2, 1, {1, 2});
    const Matrix b(2, 2, {3, 4, 5, 6});
    const Matrix ab = hstack(a, b);
    CHECK(ab.rows() == 2);
    CHECK(ab.cols() == 3);
    CHECK(ab(1, 2) == 6);
    CHECK(hstack(a, Matrix(2, 0)) == a);
    CHECK_THROWS_AS(hstack(Matrix(2, 1), Matrix(3, 1)), std::invalid_argument);

    Rng rng(2);
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix x = oracles::random_int_matrix(rng, 3, 2, 9);
        const Matrix y = oracles::random_int_matrix(rng, 3, 3, 9);
        CHECK(rank_of(hstack(x, y)) >= oracles::rank_by_minors(x));
    }
}

TEST_CASE("vstack shapes and rank bounds") {
    CHECK(vstack(Matrix(1, 3), Matrix(2, 3)).rows() == 3);
    const Matrix a(2, 3, {1, 2, 3, 0, 1, 1});
    CHECK(rank_of(vstack(a, a)) == rank_of(a));
    CHECK_THROWS_AS(vstack(Matrix(1, 3), Matrix(1, 4)), std::invalid_argument);

    Rng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix x = oracles::random_int_matrix(rng, 2, 4, 9);
        const Matrix y = oracles::random_int_matrix(rng, 3, 4, 9);
        CHECK(rank_of(vstack(x, y)) <= oracles::rank_by_minors(x) + oracles::rank_by_minors(y));
    }
}

TEST_CASE("orthogonal complement postconditions") {
    SECTION("coordinate vector") {
        const Matrix m(1, 3, {1, 0, 0});
        const Matrix n = orthogonal_complement(m);
        REQUIRE(n.rows() == 2);
        CHECK(is_zero(m * n.transpose()));
        CHECK(rank_of(vstack(m, n)) == 3);
    }
    SECTION("full space leaves nothing") {
        CHECK(orthogonal_complement(Matrix::identity(3)).rows() == 0);
    }
    SECTION("seeded full-row-rank input") {
        Rng rng(4);
        Matrix m = oracles::random_int_matrix(rng, 2, 4, 9);
        while (rank_of(m) != 2) m = oracles::random_int_matrix(rng, 2, 4, 9);
        const Matrix n = orthogonal_complement(m);
        REQUIRE(n.rows() == 2);
        REQUIRE(n.cols() == 4);
        CHECK(is_zero(m * n.transpose()));
        CHECK(rank_of(vstack(m, n)) == 4);
        CHECK(rank_of(n) == 2);
    }
    SECTION("degenerate input is rejected") {
        CHECK_THROWS_AS(orthogonal_complement(Matrix(2, 3, {1, 2, 3, 2, 4, 6})),
                        std::domain_error);
    }
}

TEST_CASE("conditional rank") {
    const Matrix a(2, 5, {1, 0, 2, 0, 1, 0, 1, 1, 1, 0});
    CHECK(conditional_rank(a, a) == 0);
    CHECK(conditional_rank(a, Matrix(0, 5)) == rank_of(a));
    CHECK_THROWS_AS(conditional_rank(Matrix(1, 2), Matrix(1, 3)), std::invalid_argument);

    SECTION("shrinks when the conditioning rows grow, and is subadditive") {
        Rng rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            const Matrix x = oracles::random_int_matrix(rng, 2, 5, 9);
            const Matrix y = oracles::random_int_matrix(rng, 3, 5, 9);
            const Matrix z = oracles::random_int_matrix(rng, 2, 5, 9);
            CHECK(conditional_rank(x, y) >= conditional_rank(x, vstack(y, z)));
            CHECK(conditional_rank(vstack(x, z), y) <=
                  conditional_rank(x, y) + conditional_rank(z, y));
        }
    }
}

TEST_CASE("coordinate intersection dimension") {
    CHECK(coordinate_intersection_dim(Matrix::identity(3), {2}) == 2);

    SECTION("containment when the columns are already zero") {
        const Matrix m(3, 4, {1, 2, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0});
        CHECK(coordinate_intersection_dim(m, {2, 3}) == rank_of(m));
    }
    SECTION("matches the rank difference identity on seeded blocks") {
        Rng rng(6);
        for (int trial = 0; trial < 40; ++trial) {
            const Matrix a = oracles::random_int_matrix(rng, 3, 2, 9);
            const Matrix b = oracles::random_int_matrix(rng, 3, 3, 9);
            const Matrix ab = hstack(a, b);
            CHECK(coordinate_intersection_dim(ab, {2, 3, 4}) ==
                  rank_of(ab) - oracles::rank_by_minors(b));
        }
    }
    SECTION("bad column index") {
        CHECK_THROWS_AS(coordinate_intersection_dim(Matrix::identity(2), {5}),
                        std::invalid_argument);
    }
}

TEST_CASE("rank sub-modularity over random column and row pairs") {
    Rng rng(7);
    int checked = 0;
    while (checked < 120) {
        const Matrix m = oracles::random_int_matrix(rng, 4, 5, 6);
        std::vector<std::size_t> s1, s2;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (rng.uniform_int(0, 1)) s1.push_back(c);
            if (rng.uniform_int(0, 1)) s2.push_back(c);
        }
        std::vector<std::size_t> inter, uni;
        std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                              std::back_inserter(inter));
        std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(uni));
        CHECK(rank_of(m.columns(s1)) + rank_of(m.columns(s2)) >=
              rank_of(m.columns(inter)) + rank_of(m.columns(uni)));
        // row-wise analogue
        std::vector<std::size_t> r1, r2;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (rng.uniform_int(0, 1)) r1.push_back(r);
            if (rng.uniform_int(0, 1)) r2.push_back(r);
        }
        std::vector<std::size_t> rinter, runi;
        std::set_intersection(r1.begin(), r1.end(), r2.begin(), r2.end(),
                              std::back_inserter(rinter));
        std::set_union(r1.begin(), r1.end(), r2.begin(), r2.end(), std::back_inserter(runi));
        CHECK(rank_of(m.select_rows(r1)) + rank_of(m.select_rows(r2)) >=
              rank_of(m.select_rows(rinter)) + rank_of(m.select_rows(runi)));
        ++checked;
    }
}

TEST_CASE("determinant matches Laplace expansion") {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const Matrix m = oracles::random_int_matrix(rng, n, n, 6);
        CHECK(determinant(m) == oracles::laplace_det(m));
    }
    CHECK_THROWS_AS(determinant(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("square solve recovers known solutions") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = oracles::random_int_matrix(rng, 3, 3, 5);
        while (determinant(a) == 0) a = oracles::random_int_matrix(rng, 3, 3, 5);
        const Matrix x = oracles::random_rational_matrix(rng, 3, 1);
        const Matrix b = a * x;
        const auto sol = solve_square(a, {b(0, 0), b(1, 0), b(2, 0)});
        REQUIRE(sol.has_value());
        for (int i = 0; i < 3; ++i) CHECK((*sol)[i] == x(i, 0));
    }
    // singular systems have no unique solution
    CHECK_FALSE(solve_square(Matrix(2, 2, {1, 2, 2, 4}), {Rational(1), Rational(2)}).has_value());
    CHECK_FALSE(solve_square(Matrix(2, 2, {1, 2, 2, 4}), {Rational(1), Rational(5)}).has_value());
}
