#include <doctest.h>

#include "rackhom/smith.hpp"

using namespace rackhom;

namespace {

IMat make(int r, int c, std::initializer_list<long long> vals) {
    IMat A(ZRing{}, r, c);
    auto it = vals.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) A.at(i, j) = Int(*it++);
    return A;
}

void check_full(const IMat& A) {
    SmithOptions o;
    o.want_Uinv = o.want_Vinv = true;
    auto s = smith_normal_form(A, o);
    CHECK(s.reconstructs(A));
    CHECK(mul(s.U, s.Uinv).is_identity());
    CHECK(mul(s.V, s.Vinv).is_identity());
    auto d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
        else CHECK(d[i + 1] == 0);
    }
}

}  // namespace

TEST_CASE("SNF of worked examples") {
    // oracle: diag(2,3) -> diag(1,6)
    auto s = smith_normal_form(make(2, 2, {2, 0, 0, 3}));
    CHECK(s.diagonal() == std::vector<Int>{Int(1), Int(6)});
    // hand check: zero matrix
    auto z = smith_normal_form(make(2, 3, {0, 0, 0, 0, 0, 0}));
    CHECK(z.rank == 0);
    CHECK(z.U.is_identity());
    CHECK(z.V.is_identity());
    // hand check: diag(1,0)
    auto e = smith_normal_form(make(2, 2, {1, 0, 0, 0}));
    CHECK(e.diagonal() == std::vector<Int>{Int(1), Int(0)});
}

TEST_CASE("SNF invariant factors of a known presentation") {
    // oracle: independent oracle gives diag(2,2,156)
    auto A = make(3, 3, {2, 4, 4, -6, 6, 12, 10, 4, 16});
    auto s = smith_normal_form(A);
    CHECK(s.diagonal() == std::vector<Int>{Int(2), Int(2), Int(156)});
    check_full(A);
}

TEST_CASE("SNF reconstruction on assorted shapes") {
    check_full(make(2, 2, {2, 4, 6, 8}));
    check_full(make(3, 2, {1, 2, 3, 4, 5, 6}));
    check_full(make(2, 4, {0, 3, 0, 6, 9, 0, 12, 0}));
    check_full(make(1, 1, {-7}));
    check_full(make(2, 3, {0, 0, 0, 0, 5, 0}));
}

TEST_CASE("SNF determinism") {
    auto A = make(3, 3, {3, 1, 4, 1, 5, 9, 2, 6, 5});
    auto s1 = smith_normal_form(A);
    auto s2 = smith_normal_form(A);
    CHECK(s1.U == s2.U);
    CHECK(s1.V == s2.V);
    CHECK(s1.D == s2.D);
    // |det| = 90; SNF must have product of diagonal = 90
    Int prod = 1;
    for (const auto& d : s1.diagonal()) prod *= d;
    CHECK(prod == 90);
}

TEST_CASE("integer_rank") {
    CHECK(integer_rank(make(2, 3, {1, 2, 3, 2, 4, 6})) == 1);
    CHECK(integer_rank(make(2, 2, {2, 0, 0, 3})) == 2);
}

TEST_CASE("solve_integer") {
    auto A = make(2, 2, {2, 0, 0, 3});
    auto x = solve_integer(A, {Int(4), Int(9)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    // no integral solution: 2x = 3
    CHECK_FALSE(solve_integer(make(1, 1, {2}), {Int(3)}).has_value());
    // underdetermined: deterministic particular solution, verified by check
    auto B = make(1, 2, {2, 4});
    auto y = solve_integer(B, {Int(6)});
    REQUIRE(y.has_value());
    CHECK(2 * (*y)[0] + 4 * (*y)[1] == 6);
}
