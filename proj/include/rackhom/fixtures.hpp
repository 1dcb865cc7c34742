#pragma once

#include <stdexcept>
#include <vector>

#include "rackhom/action_module.hpp"
#include "rackhom/multishelf.hpp"

namespace rackhom {

// Built-in fixtures. References stay valid for the program lifetime, so
// ActionModules and chain complexes may safely keep pointers to them.
const Multishelf& fx_T1();
const Multishelf& fx_T2();
const Multishelf& fx_T3();
const Multishelf& fx_R3();
const Multishelf& fx_P2();  // right_projection(2)
const Multishelf& fx_TP2();  // trivial_pair(2)
// same five with the trivial operation |> adjoined as op 1
const Multishelf& fx_T1a();
const Multishelf& fx_T2a();
const Multishelf& fx_T3a();
const Multishelf& fx_R3a();
const Multishelf& fx_P2a();

std::vector<const Multishelf*> base_fixtures();      // T1 T2 T3 R3 P2
std::vector<const Multishelf*> adjoined_fixtures();  // the +triv versions
std::vector<const Multishelf*> all_fixtures();       // both lists + TP2

// One-term weights: 1 on operation k, 0 elsewhere.
template <class R>
Weights<R> one_term_weights(R rg, const Multishelf& X, int k = 0) {
    Weights<R> w(X.num_ops(), rg.zero());
    w.at(k) = rg.one();
    return w;
}

// Rack weights for a 2-op multishelf (op 0 the structure operation |>,
// op 1 the trivial operation): the rack differential is d^|>triv - d^|>,
// i.e. weights (-1, +1).
template <class R>
Weights<R> rack_weights(R rg, const Multishelf& X) {
    if (X.num_ops() != 2)
        throw std::invalid_argument("rack_weights: need the 2-op (adjoined) structure");
    return {rg.neg(rg.one()), rg.one()};
}

// The nontrivial commuting-matrix module on T2 (+adjoined variant):
// element 0 acts by the identity, element 1 by the swap.
template <class R>
ActionModule<R> swap_module_T2(const Multishelf& X, R rg) {
    if (X.size != 2) throw std::invalid_argument("swap_module_T2: carrier size must be 2");
    ActionModule<R> M = trivial_module(X, 2, rg);
    Mat<R> swap(rg, 2, 2);
    swap.at(0, 1) = rg.one();
    swap.at(1, 0) = rg.one();
    M.action[0][1] = swap;
    if (validate_action(M)) throw std::logic_error("swap_module_T2: action invalid");
    return M;
}

}  // namespace rackhom
