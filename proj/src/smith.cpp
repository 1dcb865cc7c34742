#include "rackhom/smith.hpp"

#include <cstdlib>

namespace rackhom {

namespace {

struct Worker {
    IMat M;
    IMat U, V, Uinv, Vinv;
    SmithOptions opts;

    explicit Worker(const IMat& A, const SmithOptions& o) : M(A), opts(o) {
        ZRing z;
        if (opts.want_U) U = IMat::identity(z, A.rows);
        if (opts.want_V) V = IMat::identity(z, A.cols);
        if (opts.want_Uinv) Uinv = IMat::identity(z, A.rows);
        if (opts.want_Vinv) Vinv = IMat::identity(z, A.cols);
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
        if (opts.want_U)
            for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
        if (opts.want_Uinv)
            for (int r = 0; r < Uinv.rows; ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
    }

    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
        if (opts.want_V)
            for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
        if (opts.want_Vinv)
            for (int c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }

    // row j += q * row i
    void add_row(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < M.cols; ++c)
            if (M.at(i, c) != 0) M.at(j, c) += q * M.at(i, c);
        if (opts.want_U)
            for (int c = 0; c < U.cols; ++c)
                if (U.at(i, c) != 0) U.at(j, c) += q * U.at(i, c);
        if (opts.want_Uinv)
            for (int r = 0; r < Uinv.rows; ++r)
                if (Uinv.at(r, j) != 0) Uinv.at(r, i) -= q * Uinv.at(r, j);
    }

    // col j += q * col i
    void add_col(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < M.rows; ++r)
            if (M.at(r, i) != 0) M.at(r, j) += q * M.at(r, i);
        if (opts.want_V)
            for (int r = 0; r < V.rows; ++r)
                if (V.at(r, i) != 0) V.at(r, j) += q * V.at(r, i);
        if (opts.want_Vinv)
            for (int c = 0; c < Vinv.cols; ++c)
                if (Vinv.at(j, c) != 0) Vinv.at(i, c) -= q * Vinv.at(j, c);
    }

    void negate_row(int i) {
        for (int c = 0; c < M.cols; ++c) M.at(i, c) = -M.at(i, c);
        if (opts.want_U)
            for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
        if (opts.want_Uinv)
            for (int r = 0; r < Uinv.rows; ++r) Uinv.at(r, i) = -Uinv.at(r, i);
    }

    // Smallest-magnitude nonzero entry of the trailing submatrix, ties by
    // lowest row then lowest column.
    bool find_pivot(int t, int& pr, int& pc) const {
        bool found = false;
        Int best = 0;
        for (int r = t; r < M.rows; ++r)
            for (int c = t; c < M.cols; ++c) {
                const Int& x = M.at(r, c);
                if (x == 0) continue;
                Int ax = abs(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pr = r;
                    pc = c;
                }
            }
        return found;
    }

    int run() {
        int t = 0;
        int n = std::min(M.rows, M.cols);
        while (t < n) {
            int pr, pc;
            if (!find_pivot(t, pr, pc)) break;
            swap_rows(t, pr);
            swap_cols(t, pc);
            bool clean = false;
            while (!clean) {
                // clear column t below the pivot
                bool changed = false;
                for (int r = t + 1; r < M.rows; ++r) {
                    if (M.at(r, t) == 0) continue;
                    Int q = M.at(r, t) / M.at(t, t);
                    add_row(t, r, -q);
                    if (M.at(r, t) != 0) {
                        // remainder is strictly smaller; promote it
                        swap_rows(t, r);
                        changed = true;
                    }
                }
                for (int c = t + 1; c < M.cols; ++c) {
                    if (M.at(t, c) == 0) continue;
                    Int q = M.at(t, c) / M.at(t, t);
                    add_col(t, c, -q);
                    if (M.at(t, c) != 0) {
                        swap_cols(t, c);
                        changed = true;
                    }
                }
                if (changed) continue;
                // divisibility of the trailing block
                clean = true;
                for (int r = t + 1; r < M.rows && clean; ++r)
                    for (int c = t + 1; c < M.cols; ++c)
                        if (M.at(r, c) % M.at(t, t) != 0) {
                            add_row(r, t, 1);
                            clean = false;
                            break;
                        }
            }
            if (M.at(t, t) < 0) negate_row(t);
            ++t;
        }
        return t;
    }
};

}  // namespace

bool SmithDecomposition::reconstructs(const IMat& A) const {
    return mul(mul(U, A), V) == D;
}

SmithDecomposition smith_normal_form(const IMat& A, const SmithOptions& opts) {
    Worker w(A, opts);
    SmithDecomposition s;
    s.rank = w.run();
    s.D = std::move(w.M);
    s.U = std::move(w.U);
    s.V = std::move(w.V);
    s.Uinv = std::move(w.Uinv);
    s.Vinv = std::move(w.Vinv);
    return s;
}

int integer_rank(const IMat& A) {
    SmithOptions o;
    o.want_U = o.want_V = false;
    return smith_normal_form(A, o).rank;
}

std::optional<std::vector<Int>> solve_integer(const IMat& A, const std::vector<Int>& b) {
    SmithOptions o;
    o.want_U = o.want_V = true;
    auto s = smith_normal_form(A, o);
    std::vector<Int> ub = mul_vec(s.U, b);
    std::vector<Int> z(A.cols, Int(0));
    for (int i = 0; i < s.rank; ++i) {
        const Int& d = s.D.at(i, i);
        if (ub[i] % d != 0) return std::nullopt;
        z[i] = ub[i] / d;
    }
    for (int i = s.rank; i < static_cast<int>(ub.size()); ++i)
        if (ub[i] != 0) return std::nullopt;
    return mul_vec(s.V, z);
}

}  // namespace rackhom
