#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spt/matrix.hpp"
#include "spt/matrix_io.hpp"
#include "spt/rng.hpp"

using namespace spt;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7/2") == rat(-7, 2));
    CHECK(parse_rational("4/8") == rat(1, 2));
    CHECK(to_string(rat(-7, 2)) == "-7/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("1/-2"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational(""));
}

TEST_CASE("matrix arithmetic") {
    RMatrix a{{1, 2}, {3, 4}};
    RMatrix b{{0, 1}, {1, 0}};
    CHECK(a + b == RMatrix{{1, 3}, {4, 4}});
    CHECK(a - a == RMatrix::zero(2, 2));
    CHECK(a * b == RMatrix{{2, 1}, {4, 3}});
    CHECK(a * RMatrix::identity(2) == a);
    CHECK(a.transpose() == RMatrix{{1, 3}, {2, 4}});
    CHECK((-a) + a == RMatrix::zero(2, 2));
    CHECK((a * Rational(2)) == RMatrix{{2, 4}, {6, 8}});
    CHECK_THROWS(a * RMatrix::identity(3));
    CHECK_THROWS(a + RMatrix::identity(3));
}

TEST_CASE("rank determinant inverse nullspace") {
    RMatrix a{{1, 2}, {3, 4}};
    CHECK(rank(a) == 2);
    CHECK(determinant(a) == Rational(-2));
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(*inv * a == RMatrix::identity(2));

    RMatrix s{{1, 2}, {2, 4}};
    CHECK(rank(s) == 1);
    CHECK(determinant(s) == Rational(0));
    CHECK(!inverse(s).has_value());
    RMatrix ns = nullspace(s);
    CHECK(ns.cols() == 1);
    CHECK((s * ns).is_zero());

    CHECK(rank(RMatrix::zero(3, 3)) == 0);
    CHECK(nullspace(RMatrix::identity(3)).cols() == 0);
}

TEST_CASE("vec convention: vec(A)[j*m+i] = A(i,j)") {
    RMatrix a{{1, 2, 3}, {4, 5, 6}};
    RMatrix v = vec(a);
    REQUIRE(v.rows() == 6);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(v(j * 2 + i, 0) == a(i, j));
    CHECK(unvec(v, 2, 3) == a);
}

TEST_CASE("vec/unvec bijection up to 6x6") {
    Rng rng(11);
    for (std::size_t m = 1; m <= 6; ++m)
        for (std::size_t n = 1; n <= 6; ++n) {
            RMatrix a = rng.next_matrix(m, n);
            CHECK(unvec(vec(a), m, n) == a);
        }
}

TEST_CASE("kron identities") {
    Rng rng(5);
    RMatrix x = rng.next_matrix(2, 2), a = rng.next_matrix(2, 3), y = rng.next_matrix(3, 3);
    // the identity everything downstream leans on
    CHECK(kron(y.transpose(), x) * vec(a) == vec(x * a * y));
    // mixed product
    RMatrix p = rng.next_matrix(2, 2), q = rng.next_matrix(3, 3);
    CHECK(kron(p, q) * kron(x, y) == kron(p * x, q * y));
    CHECK(kron(RMatrix::identity(2), RMatrix::identity(3)) == RMatrix::identity(6));
}

TEST_CASE("submatrix hcat vcat") {
    RMatrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    CHECK(a.submatrix({0, 2}, {1}) == RMatrix{{2}, {8}});
    CHECK(RMatrix::hcat(a.col(0), a.col(2)) == a.submatrix({0, 1, 2}, {0, 2}));
    CHECK(RMatrix::vcat(a.row(0), a.row(1)) == a.submatrix({0, 1}, {0, 1, 2}));
}

TEST_CASE("matrix io round trip") {
    RMatrix a{{1, -2}, {3, 4}};
    a(0, 0) = rat(1, 3);
    RMatrix b = parse_matrix(format_matrix(a));
    CHECK(a == b);

    RMatrix c = parse_matrix("# comment\n1/2 -3\n\n 0 7/9 \n");
    CHECK(c == RMatrix(2, 2, {rat(1, 2), Rational(-3), Rational(0), rat(7, 9)}));

    CHECK_THROWS(parse_matrix("1 2\n3\n"));   // ragged
    CHECK_THROWS(parse_matrix("1 x\n"));      // junk entry
    CHECK_THROWS(parse_matrix(""));           // empty
    CHECK_THROWS(parse_matrix("1/0\n"));      // zero denominator
}

TEST_CASE("rng determinism") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(Rng(1).next_u64() != Rng(2).next_u64());
    CHECK(Rng::derive(3, 0) != Rng::derive(3, 1));
    // bounds
    Rng r(7);
    for (int i = 0; i < 200; ++i) {
        long v = r.next_int(-4, 4);
        CHECK(v >= -4);
        CHECK(v <= 4);
        Rational p = r.next_positive_rational();
        CHECK(sgn(p) > 0);
    }
}

TEST_CASE("serial and parallel multiply agree") {
    Rng rng(9);
    for (std::size_t n : {3, 17, 40}) {
        RMatrix a = rng.next_matrix(n, n), b = rng.next_matrix(n, n);
        CHECK(mul_serial(a, b) == mul_parallel(a, b));
        CHECK(mul_serial(a, b) == a * b);
    }
    // non-square shapes
    RMatrix a = rng.next_matrix(5, 31), b = rng.next_matrix(31, 7);
    CHECK(mul_serial(a, b) == mul_parallel(a, b));
}
