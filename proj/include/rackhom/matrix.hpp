#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <sstream>
#include <vector>

#include "rackhom/ring.hpp"

namespace rackhom {

// Dense exact matrix over a coefficient ring. Matrices act on column
// vectors; "A then B" composes as B*A. Row-major storage.
template <class R>
struct Mat {
    using Elem = typename R::Elem;

    R ring{};
    int rows = 0;
    int cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(R rg, int r, int c) : ring(rg), rows(r), cols(c), a(static_cast<size_t>(r) * c, rg.zero()) {}

    Elem& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Elem& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(R rg, int n) {
        Mat m(rg, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = rg.one();
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!ring.is_zero(x)) return false;
        return true;
    }

    bool is_identity() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!ring.eq(at(i, j), i == j ? ring.one() : ring.zero())) return false;
        return true;
    }

    std::vector<Elem> column(int c) const {
        std::vector<Elem> v(rows, ring.zero());
        for (int i = 0; i < rows; ++i) v[i] = at(i, c);
        return v;
    }

    // (row, col, value) triples in row-major order, zeros skipped.
    std::string triples() const {
        std::ostringstream os;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!ring.is_zero(at(i, j))) os << i << " " << j << " " << ring.str(at(i, j)) << "\n";
        return os.str();
    }

    bool operator==(const Mat& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!ring.eq(a[i], o.a[i])) return false;
        return true;
    }
};

template <class R>
Mat<R> mul(const Mat<R>& A, const Mat<R>& B) {
    assert(A.cols == B.rows);
    Mat<R> C(A.ring, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const auto& aik = A.at(i, k);
            if (A.ring.is_zero(aik)) continue;
            for (int j = 0; j < B.cols; ++j) {
                const auto& bkj = B.at(k, j);
                if (A.ring.is_zero(bkj)) continue;
                C.at(i, j) = A.ring.add(C.at(i, j), A.ring.mul(aik, bkj));
            }
        }
    return C;
}

template <class R>
std::vector<typename R::Elem> mul_vec(const Mat<R>& A, const std::vector<typename R::Elem>& v) {
    assert(static_cast<int>(v.size()) == A.cols);
    std::vector<typename R::Elem> w(A.rows, A.ring.zero());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            if (!A.ring.is_zero(A.at(i, j)) && !A.ring.is_zero(v[j]))
                w[i] = A.ring.add(w[i], A.ring.mul(A.at(i, j), v[j]));
    return w;
}

template <class R>
Mat<R> add(const Mat<R>& A, const Mat<R>& B) {
    assert(A.rows == B.rows && A.cols == B.cols);
    Mat<R> C(A.ring, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.ring.add(A.a[i], B.a[i]);
    return C;
}

template <class R>
Mat<R> sub(const Mat<R>& A, const Mat<R>& B) {
    assert(A.rows == B.rows && A.cols == B.cols);
    Mat<R> C(A.ring, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.ring.sub(A.a[i], B.a[i]);
    return C;
}

template <class R>
Mat<R> scale(const typename R::Elem& c, const Mat<R>& A) {
    Mat<R> C(A.ring, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.ring.mul(c, A.a[i]);
    return C;
}

template <class R>
Mat<R> neg(const Mat<R>& A) {
    Mat<R> C(A.ring, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.ring.neg(A.a[i]);
    return C;
}

// ---------------------------------------------------------------------------
// Gaussian elimination over a field.

// Reduce A to row echelon form in place; returns pivot column per pivot row.
template <class F>
std::vector<int> row_echelon(Mat<F>& A) {
    const F& rg = A.ring;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
        int pr = -1;
        for (int i = r; i < A.rows; ++i)
            if (!rg.is_zero(A.at(i, c))) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(pr, j), A.at(r, j));
        auto piv_inv = rg.inv(A.at(r, c));
        for (int j = c; j < A.cols; ++j) A.at(r, j) = rg.mul(piv_inv, A.at(r, j));
        for (int i = 0; i < A.rows; ++i) {
            if (i == r || rg.is_zero(A.at(i, c))) continue;
            auto f = A.at(i, c);
            for (int j = c; j < A.cols; ++j)
                A.at(i, j) = rg.sub(A.at(i, j), rg.mul(f, A.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
int rank(Mat<F> A) {
    return static_cast<int>(row_echelon(A).size());
}

// Basis of the right nullspace, as matrix columns.
template <class F>
Mat<F> nullspace(Mat<F> A) {
    const F rg = A.ring;
    auto pivots = row_echelon(A);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    int nfree = A.cols - static_cast<int>(pivots.size());
    Mat<F> K(rg, A.cols, nfree);
    int k = 0;
    for (int c = 0; c < A.cols; ++c) {
        if (is_pivot[c]) continue;
        K.at(c, k) = rg.one();
        for (size_t r = 0; r < pivots.size(); ++r)
            K.at(pivots[r], k) = rg.neg(A.at(static_cast<int>(r), c));
        ++k;
    }
    return K;
}

// Inverse of a square matrix over a field, or nullopt if singular.
template <class F>
std::optional<Mat<F>> inverse(const Mat<F>& A) {
    if (A.rows != A.cols) return std::nullopt;
    const F& rg = A.ring;
    Mat<F> W(rg, A.rows, 2 * A.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) W.at(i, j) = A.at(i, j);
        W.at(i, A.cols + i) = rg.one();
    }
    auto pivots = row_echelon(W);
    if (static_cast<int>(pivots.size()) != A.rows) return std::nullopt;
    for (int r = 0; r < A.rows; ++r)
        if (pivots[r] != r) return std::nullopt;
    Mat<F> Inv(rg, A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) Inv.at(i, j) = W.at(i, A.cols + j);
    return Inv;
}

// Incremental echelon basis of a span; tracks expressions of the echelon
// rows in terms of tagged inserted vectors, so quotient coordinates of a
// vector modulo the untagged part can be read off.
template <class F>
class SpanReducer {
  public:
    using Elem = typename F::Elem;

    explicit SpanReducer(F rg, int ambient_dim) : rg_(rg), dim_(ambient_dim) {}

    // Inserts v; tag < 0 means "modded out". Returns true if v enlarged
    // the span.
    bool insert(const std::vector<Elem>& v, int tag) {
        std::vector<Elem> w = v;
        std::vector<Elem> expr(ntags_, rg_.zero());
        if (tag >= 0) {
            if (tag >= ntags_) {
                ntags_ = tag + 1;
                for (auto& e : exprs_) e.resize(ntags_, rg_.zero());
                expr.resize(ntags_, rg_.zero());
            }
            expr[tag] = rg_.one();
        }
        reduce_against(w, expr);
        int p = first_nonzero(w);
        if (p < 0) return false;
        auto piv_inv = rg_.inv(w[p]);
        for (auto& x : w) x = rg_.mul(piv_inv, x);
        for (auto& x : expr) x = rg_.mul(piv_inv, x);
        rows_.push_back(std::move(w));
        exprs_.push_back(std::move(expr));
        pivot_.push_back(p);
        return true;
    }

    // Coordinates of v on the tagged generators, modulo the untagged span.
    // Returns nullopt if v is not in the total span.
    std::optional<std::vector<Elem>> coords(const std::vector<Elem>& v) const {
        std::vector<Elem> w = v;
        std::vector<Elem> expr(ntags_, rg_.zero());
        reduce_against(w, expr);
        if (first_nonzero(w) >= 0) return std::nullopt;
        for (auto& x : expr) x = rg_.neg(x);
        return expr;
    }

    bool contains(const std::vector<Elem>& v) const {
        std::vector<Elem> w = v;
        std::vector<Elem> expr(ntags_, rg_.zero());
        reduce_against(w, expr);
        return first_nonzero(w) < 0;
    }

    int span_dim() const { return static_cast<int>(rows_.size()); }
    int ambient_dim() const { return dim_; }

  private:
    void reduce_against(std::vector<Elem>& w, std::vector<Elem>& expr) const {
        if (static_cast<int>(expr.size()) < ntags_) expr.resize(ntags_, rg_.zero());
        for (size_t r = 0; r < rows_.size(); ++r) {
            const Elem& c = w[pivot_[r]];
            if (rg_.is_zero(c)) continue;
            Elem f = c;
            for (int j = 0; j < dim_; ++j)
                if (!rg_.is_zero(rows_[r][j])) w[j] = rg_.sub(w[j], rg_.mul(f, rows_[r][j]));
            for (int j = 0; j < static_cast<int>(exprs_[r].size()); ++j)
                if (!rg_.is_zero(exprs_[r][j])) expr[j] = rg_.sub(expr[j], rg_.mul(f, exprs_[r][j]));
        }
    }

    int first_nonzero(const std::vector<Elem>& w) const {
        for (int i = 0; i < dim_; ++i)
            if (!rg_.is_zero(w[i])) return i;
        return -1;
    }

    F rg_;
    int dim_;
    int ntags_ = 0;
    std::vector<std::vector<Elem>> rows_;
    std::vector<std::vector<Elem>> exprs_;
    std::vector<int> pivot_;
};

}  // namespace rackhom
