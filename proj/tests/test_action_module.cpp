#include <doctest.h>

#include "rackhom/fixtures.hpp"

using namespace rackhom;

TEST_CASE("trivial modules validate") {
    for (auto* X : all_fixtures()) {
        auto M = trivial_module(*X, 1, ZRing{});
        CHECK_FALSE(validate_action(M).has_value());
        auto Mq = trivial_module(*X, 2, QRing{});
        CHECK_FALSE(validate_action(Mq).has_value());
    }
    // rank 0 module
    auto M0 = trivial_module(fx_R3(), 0, ZRing{});
    CHECK_FALSE(validate_action(M0).has_value());
}

TEST_CASE("commuting vs non-commuting matrices on T2 (worked examples)") {
    // identity + swap commute -> valid
    auto M = swap_module_T2(fx_T2(), ZRing{});
    CHECK_FALSE(validate_action(M).has_value());
    // the two shear matrices do not commute -> invalid
    ZRing z;
    auto N = trivial_module(fx_T2(), 2, z);
    N.action[0][0] = IMat(z, 2, 2);
    N.action[0][0].at(0, 0) = 1;
    N.action[0][0].at(0, 1) = 1;
    N.action[0][0].at(1, 1) = 1;
    N.action[0][1] = IMat(z, 2, 2);
    N.action[0][1].at(0, 0) = 1;
    N.action[0][1].at(1, 0) = 1;
    N.action[0][1].at(1, 1) = 1;
    auto w = validate_action(N);
    REQUIRE(w.has_value());
    CHECK_FALSE(w->invertibility);
}

TEST_CASE("quandle level requires invertible actions") {
    ZRing z;
    auto M = trivial_module(fx_T1(), 1, z);
    M.action[0][0].at(0, 0) = 2;  // [2] is not invertible over Z
    auto w = validate_action(M);
    REQUIRE(w.has_value());
    CHECK(w->invertibility);
    // but [2] is invertible over Q
    auto Mq = trivial_module(fx_T1(), 1, QRing{});
    Mq.action[0][0].at(0, 0) = 2;
    CHECK_FALSE(validate_action(Mq).has_value());
}

TEST_CASE("compound action") {
    QRing q;
    auto M = trivial_module(fx_R3a(), 1, q);
    auto w = rack_weights(q, fx_R3a());
    for (int y = 0; y < 3; ++y) CHECK(compound_action(M, w, y).is_zero());
    CHECK(has_vanishing_compound_action(M, w));
    auto w1 = one_term_weights(q, fx_R3a(), 0);
    CHECK_FALSE(has_vanishing_compound_action(M, w1));
    // hand check: rank-1 on T1 with action [3], weight (2) -> [6]
    ZRing z;
    auto M3 = trivial_module(fx_T1(), 1, z);
    M3.action[0][0].at(0, 0) = 3;
    Weights<ZRing> w2{Int(2)};
    CHECK(compound_action(M3, w2, 0).at(0, 0) == 6);
}

TEST_CASE("compatibility of the compound action with the weights") {
    // action[i][y] * compound(w, x) == compound(w, x |>_i y) * action[i][y]
    QRing q;
    auto M = swap_module_T2(fx_T2a(), q);
    Weights<QRing> w{q.from_int(2), q.from_int(-5)};
    const auto& X = fx_T2a();
    for (int i = 0; i < X.num_ops(); ++i)
        for (int x = 0; x < X.size; ++x)
            for (int y = 0; y < X.size; ++y)
                CHECK(mul(M.act(i, y), compound_action(M, w, x)) ==
                      mul(compound_action(M, w, X.op(i, x, y)), M.act(i, y)));
}

TEST_CASE("pullback along a hom") {
    auto& r3 = fx_R3();
    auto& t1 = fx_T1();
    ShelfHom constant{&r3, &t1, {0, 0, 0}};
    ZRing z;
    auto M = trivial_module(t1, 1, z);
    M.action[0][0].at(0, 0) = -1;
    auto P = pullback_module(M, constant);
    CHECK(P.structure == &r3);
    for (int x = 0; x < 3; ++x) CHECK(P.act(0, x).at(0, 0) == -1);
    CHECK_FALSE(validate_action(P).has_value());
}
