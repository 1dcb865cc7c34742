#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rackhom/matrix.hpp"
#include "rackhom/multishelf.hpp"
#include "rackhom/smith.hpp"

namespace rackhom {

template <class R>
using Weights = std::vector<typename R::Elem>;

struct ActionWitness {
    // either a mixed-distributivity witness (i,j,x,y) or an
    // invertibility witness (op k, y) with i = k, j = -1, x = y
    int i = -1, j = -1, x = -1, y = -1;
    bool invertibility = false;
};

// Finitely generated free module with one action matrix per (op, element).
// action[k][y] is the matrix of m -> m |>_k y; matrices act on column
// vectors, "A then B" is B*A.
template <class R>
struct ActionModule {
    const Multishelf* structure = nullptr;
    R ring{};
    int rank = 0;
    std::vector<std::vector<Mat<R>>> action;  // [op][element]

    const Mat<R>& act(int k, int y) const { return action[k][y]; }
};

template <class R>
ActionModule<R> trivial_module(const Multishelf& X, int rank, R ring) {
    if (rank < 0) throw std::invalid_argument("trivial_module: negative rank");
    ActionModule<R> M{&X, ring, rank, {}};
    M.action.assign(X.num_ops(), std::vector<Mat<R>>(X.size, Mat<R>::identity(ring, rank)));
    return M;
}

template <class R>
bool invertible_over(const ActionModule<R>&, const Mat<R>& A) {
    if (A.rows != A.cols) return false;
    if constexpr (R::is_field) {
        return rank(A) == A.rows;
    } else {
        SmithOptions o;
        o.want_U = o.want_V = false;
        auto s = smith_normal_form(A, o);
        if (s.rank != A.rows) return false;
        for (const auto& d : s.diagonal())
            if (d != 1) return false;
        return true;
    }
}

// Mixed distributivity (m |>_i x) |>_j y = (m |>_j y) |>_i (x |>_j y) as the
// matrix identity act(j,y)*act(i,x) = act(i, x |>_j y)*act(j,y), plus
// invertibility where the structure claims quandle level.
template <class R>
std::optional<ActionWitness> validate_action(const ActionModule<R>& M) {
    const Multishelf& X = *M.structure;
    for (int k = 0; k < X.num_ops(); ++k)
        for (int y = 0; y < X.size; ++y)
            if (M.act(k, y).rows != M.rank || M.act(k, y).cols != M.rank)
                throw std::invalid_argument("validate_action: matrix dimension mismatch");
    for (int i = 0; i < X.num_ops(); ++i)
        for (int j = 0; j < X.num_ops(); ++j)
            for (int x = 0; x < X.size; ++x)
                for (int y = 0; y < X.size; ++y) {
                    auto lhs = mul(M.act(j, y), M.act(i, x));
                    auto rhs = mul(M.act(i, X.op(j, x, y)), M.act(j, y));
                    if (!(lhs == rhs)) return ActionWitness{i, j, x, y, false};
                }
    for (int k = 0; k < X.num_ops(); ++k) {
        if (X.levels[k] != Level::Quandle && X.levels[k] != Level::Rack) continue;
        for (int y = 0; y < X.size; ++y)
            if (!invertible_over(M, M.act(k, y))) return ActionWitness{k, -1, y, y, true};
    }
    return std::nullopt;
}

template <class R>
Mat<R> compound_action(const ActionModule<R>& M, const Weights<R>& w, int y) {
    if (static_cast<int>(w.size()) != M.structure->num_ops())
        throw std::invalid_argument("compound_action: weight count mismatch");
    Mat<R> S(M.ring, M.rank, M.rank);
    for (size_t k = 0; k < w.size(); ++k) S = add(S, scale(w[k], M.act(static_cast<int>(k), y)));
    return S;
}

template <class R>
bool has_vanishing_compound_action(const ActionModule<R>& M, const Weights<R>& w) {
    for (int y = 0; y < M.structure->size; ++y)
        if (!compound_action(M, w, y).is_zero()) return false;
    return true;
}

template <class R>
ActionModule<R> pullback_module(const ActionModule<R>& M, const ShelfHom& h) {
    if (M.structure != h.target) throw std::invalid_argument("pullback_module: structure mismatch");
    ActionModule<R> P{h.source, M.ring, M.rank, {}};
    P.action.assign(h.source->num_ops(), {});
    for (int k = 0; k < h.source->num_ops(); ++k) {
        P.action[k].reserve(h.source->size);
        for (int x = 0; x < h.source->size; ++x) P.action[k].push_back(M.act(k, h.map[x]));
    }
    return P;
}

}  // namespace rackhom
