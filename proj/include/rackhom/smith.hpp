#pragma once

#include <optional>
#include <vector>

#include "rackhom/matrix.hpp"
#include "rackhom/ring.hpp"

namespace rackhom {

using IMat = Mat<ZRing>;

// U*A*V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
// Vinv/Uinv are tracked on request so kernel coordinates and integer
// solving do not need a separate inversion.
struct SmithDecomposition {
    IMat U, V, D;
    IMat Uinv, Vinv;  // empty unless requested
    int rank = 0;

    std::vector<Int> diagonal() const {
        std::vector<Int> d;
        int n = std::min(D.rows, D.cols);
        for (int i = 0; i < n; ++i) d.push_back(D.at(i, i));
        return d;
    }
    std::vector<Int> invariant_factors() const {
        std::vector<Int> f;
        for (const auto& d : diagonal())
            if (d > 1) f.push_back(d);
        return f;
    }
    bool reconstructs(const IMat& A) const;
};

struct SmithOptions {
    bool want_U = true;
    bool want_V = true;
    bool want_Uinv = false;
    bool want_Vinv = false;
};

// Deterministic: smallest-magnitude nonzero pivot, ties broken by lowest
// row index then lowest column index.
SmithDecomposition smith_normal_form(const IMat& A, const SmithOptions& opts = {});

int integer_rank(const IMat& A);

// One solution of A*x = b, or nullopt if none exists over the integers.
// Deterministic: free Smith coordinates are set to zero.
std::optional<std::vector<Int>> solve_integer(const IMat& A, const std::vector<Int>& b);

}  // namespace rackhom
