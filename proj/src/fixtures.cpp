#include "rackhom/fixtures.hpp"

namespace rackhom {

const Multishelf& fx_T1() {
    static const Multishelf x = standard_family("trivial", 1);
    return x;
}
const Multishelf& fx_T2() {
    static const Multishelf x = standard_family("trivial", 2);
    return x;
}
const Multishelf& fx_T3() {
    static const Multishelf x = standard_family("trivial", 3);
    return x;
}
const Multishelf& fx_R3() {
    static const Multishelf x = standard_family("dihedral", 3);
    return x;
}
const Multishelf& fx_P2() {
    static const Multishelf x = standard_family("right_projection", 2);
    return x;
}
const Multishelf& fx_TP2() {
    static const Multishelf x = standard_family("trivial_pair", 2);
    return x;
}
const Multishelf& fx_T1a() {
    static const Multishelf x = adjoin_trivial_op(fx_T1());
    return x;
}
const Multishelf& fx_T2a() {
    static const Multishelf x = adjoin_trivial_op(fx_T2());
    return x;
}
const Multishelf& fx_T3a() {
    static const Multishelf x = adjoin_trivial_op(fx_T3());
    return x;
}
const Multishelf& fx_R3a() {
    static const Multishelf x = adjoin_trivial_op(fx_R3());
    return x;
}
const Multishelf& fx_P2a() {
    static const Multishelf x = adjoin_trivial_op(fx_P2());
    return x;
}

std::vector<const Multishelf*> base_fixtures() {
    return {&fx_T1(), &fx_T2(), &fx_T3(), &fx_R3(), &fx_P2()};
}
std::vector<const Multishelf*> adjoined_fixtures() {
    return {&fx_T1a(), &fx_T2a(), &fx_T3a(), &fx_R3a(), &fx_P2a()};
}
std::vector<const Multishelf*> all_fixtures() {
    auto v = base_fixtures();
    for (auto* p : adjoined_fixtures()) v.push_back(p);
    v.push_back(&fx_TP2());
    return v;
}

}  // namespace rackhom
