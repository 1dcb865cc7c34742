#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

#include "rackhom/action_module.hpp"
#include "rackhom/matrix.hpp"
#include "rackhom/multishelf.hpp"
#include "rackhom/sequences.hpp"

namespace rackhom {

struct MemoryBudgetError : std::runtime_error {
    std::size_t required;
    explicit MemoryBudgetError(std::size_t req)
        : std::runtime_error("memory budget exceeded; required about " + std::to_string(req) +
                             " bytes"),
          required(req) {}
};

struct PartClosureError : std::runtime_error {
    explicit PartClosureError(const std::string& witness)
        : std::runtime_error("differential leaves the part; witness generator " + witness) {}
};

// Chain complex presented by explicit bases and exact differential
// matrices. Basis order: sequences ascending by code, module index minor.
// Degree -1 (augmented complexes) is the bare coefficient module.
template <class R>
struct ChainComplex {
    R ring{};
    const Multishelf* X = nullptr;
    ActionModule<R> M;
    Weights<R> weights;
    PartSelector part = PartSelector::full();
    bool augmented = false;
    int lo = 0, hi = 0;

    std::vector<std::vector<SeqCode>> bases;  // index = degree, degrees 0..hi
    std::vector<Mat<R>> diffs;                // diffs[d - (lo+1)] = del_d

    // metadata for the late-part precondition
    bool late_weight_sum_zero = false;
    bool late_compound_vanishes = false;

    int dim(int d) const {
        if (d == -1) return augmented ? M.rank : 0;
        if (d < -1 || d > hi) return 0;
        return static_cast<int>(bases[d].size()) * M.rank;
    }

    const Mat<R>& diff(int d) const { return diffs[d - (lo + 1)]; }
    bool has_diff(int d) const { return d >= lo + 1 && d <= hi; }

    // Position of (sequence code, module index) in the degree-d basis,
    // or -1 if the code is not in the part basis.
    int index_of(int d, SeqCode code, int t) const {
        const auto& b = bases[d];
        auto it = std::lower_bound(b.begin(), b.end(), code);
        if (it == b.end() || *it != code) return -1;
        return static_cast<int>(it - b.begin()) * M.rank + t;
    }
};

namespace detail {

// Image of face d_i^{op_k} on one sequence: acted sequence plus the index
// of the acting element (whose action matrix hits the coefficient).
inline std::vector<int> face_sequence(const Multishelf& X, int k, int i,
                                      const std::vector<int>& x) {
    std::vector<int> y(x.size() - 1);
    int xi = x[i];
    for (int j = 0; j < i; ++j) y[j] = x[j];
    for (int j = i + 1; j < static_cast<int>(x.size()); ++j) y[j - 1] = X.op(k, x[j], xi);
    return y;
}

inline std::size_t matrix_cells(std::size_t rows, std::size_t cols) { return rows * cols; }

}  // namespace detail

// Matrix of the single face d_i^{op_k}: C_d(M;X) -> C_{d-1}(M;X) on full
// bases.
template <class R>
Mat<R> face_matrix(const Multishelf& X, const ActionModule<R>& M, int k, int i, int d) {
    if (i < 0 || i > d) throw std::out_of_range("face_matrix: position out of range");
    auto dom = part_basis(X.size, d, PartSelector::full());
    auto cod = part_basis(X.size, d - 1, PartSelector::full());
    const int m = M.rank;
    Mat<R> F(M.ring, static_cast<int>(cod.size()) * m, static_cast<int>(dom.size()) * m);
    for (std::size_t s = 0; s < dom.size(); ++s) {
        auto x = decode_seq(dom[s], X.size, d);
        auto y = detail::face_sequence(X, k, i, x);
        SeqCode yc = encode_seq(y, X.size);
        const Mat<R>& A = M.act(k, x[i]);
        for (int t = 0; t < m; ++t)
            for (int tp = 0; tp < m; ++tp)
                if (!M.ring.is_zero(A.at(tp, t)))
                    F.at(static_cast<int>(yc) * m + tp, static_cast<int>(s) * m + t) = A.at(tp, t);
    }
    return F;
}

// Weighted differential on part bases. `quotient` drops image terms
// outside the codomain basis (normalized complexes); otherwise any image
// term outside the codomain basis raises PartClosureError.
template <class R>
Mat<R> differential_on_bases(const Multishelf& X, const ActionModule<R>& M, const Weights<R>& w,
                             int d, const std::vector<SeqCode>& dom,
                             const ChainComplex<R>& lookup_helper, int cod_degree, bool quotient) {
    const int m = M.rank;
    const int rows = static_cast<int>(lookup_helper.bases[cod_degree].size()) * m;
    Mat<R> D(M.ring, rows, static_cast<int>(dom.size()) * m);
    // Accumulate the full image of each generator before checking part
    // closure: individual face terms may leave the part basis yet cancel
    // in the alternating sum (e.g. the rack differential on (x,x)).
    std::map<SeqCode, Mat<R>> image;
    for (std::size_t s = 0; s < dom.size(); ++s) {
        image.clear();
        auto x = decode_seq(dom[s], X.size, d);
        for (int k = 0; k < X.num_ops(); ++k) {
            if (M.ring.is_zero(w[k])) continue;
            for (int i = 0; i <= d; ++i) {
                auto y = detail::face_sequence(X, k, i, x);
                SeqCode yc = encode_seq(y, X.size);
                bool odd = (d - i) % 2 != 0;
                auto coeff = odd ? M.ring.neg(w[k]) : w[k];
                const Mat<R>& A = M.act(k, x[i]);
                auto it = image.find(yc);
                if (it == image.end()) it = image.emplace(yc, Mat<R>(M.ring, m, m)).first;
                Mat<R>& block = it->second;
                for (int t = 0; t < m; ++t)
                    for (int tp = 0; tp < m; ++tp) {
                        const auto& a = A.at(tp, t);
                        if (M.ring.is_zero(a)) continue;
                        block.at(tp, t) = M.ring.add(block.at(tp, t), M.ring.mul(coeff, a));
                    }
            }
        }
        for (const auto& [yc, block] : image) {
            if (block.is_zero()) continue;
            int row0 = lookup_helper.index_of(cod_degree, yc, 0);
            if (row0 < 0) {
                if (quotient) continue;
                throw PartClosureError(seq_to_string(x));
            }
            for (int t = 0; t < m; ++t)
                for (int tp = 0; tp < m; ++tp)
                    if (!M.ring.is_zero(block.at(tp, t)))
                        D.at(row0 + tp, static_cast<int>(s) * m + t) = block.at(tp, t);
        }
    }
    return D;
}

// Full-basis weighted differential at degree d (sign rule:
// exponent d - i).
template <class R>
Mat<R> differential_matrix(const Multishelf& X, const ActionModule<R>& M, const Weights<R>& w,
                           int d) {
    if (d < 1) throw std::invalid_argument("differential_matrix: degree must be >= 1");
    ChainComplex<R> helper;
    helper.ring = M.ring;
    helper.X = &X;
    helper.M = M;
    helper.hi = d;
    helper.bases.resize(d + 1);
    helper.bases[d] = part_basis(X.size, d, PartSelector::full());
    helper.bases[d - 1] = part_basis(X.size, d - 1, PartSelector::full());
    return differential_on_bases(X, M, w, d, helper.bases[d], helper, d - 1, false);
}

struct BuildOptions {
    std::size_t memory_budget_bytes = std::size_t(2) << 30;
    bool check_d_squared = true;
};

template <class R>
ChainComplex<R> build_complex(const Multishelf& X, const ActionModule<R>& M, const Weights<R>& w,
                              PartSelector part, int N, bool augmented = false,
                              const BuildOptions& opts = {}) {
    if (static_cast<int>(w.size()) != X.num_ops())
        throw std::invalid_argument("build_complex: weight count mismatch");
    ChainComplex<R> C;
    C.ring = M.ring;
    C.X = &X;
    C.M = M;
    C.weights = w;
    C.part = part;
    C.augmented = augmented;
    C.lo = augmented ? -1 : 0;
    C.hi = N;

    // late-part precondition bookkeeping
    {
        auto s = M.ring.zero();
        for (const auto& a : w) s = M.ring.add(s, a);
        C.late_weight_sum_zero = M.ring.is_zero(s);
        C.late_compound_vanishes = has_vanishing_compound_action(M, w);
    }
    if (part.kind == PartKind::Late && !C.late_weight_sum_zero && !C.late_compound_vanishes)
        throw std::invalid_argument(
            "build_complex: late part needs zero weight sum or vanishing compound action");

    C.bases.resize(N + 1);
    std::size_t cells = 0;
    for (int d = 0; d <= N; ++d) {
        C.bases[d] = part_basis(X.size, d, part);
        if (d > 0)
            cells += detail::matrix_cells(C.bases[d - 1].size() * M.rank, C.bases[d].size() * M.rank);
    }
    if (cells * 32 > opts.memory_budget_bytes) throw MemoryBudgetError(cells * 32);

    bool quotient = part.kind == PartKind::Normalized;
    for (int d = C.lo + 1; d <= N; ++d) {
        if (d == 0) {
            // augmented boundary: m (x) (x) |-> compound_action(x) * m
            Mat<R> D0(M.ring, M.rank, C.dim(0));
            for (std::size_t s = 0; s < C.bases[0].size(); ++s) {
                int x = static_cast<int>(C.bases[0][s]);
                auto A = compound_action(M, w, x);
                for (int t = 0; t < M.rank; ++t)
                    for (int tp = 0; tp < M.rank; ++tp)
                        D0.at(tp, static_cast<int>(s) * M.rank + t) = A.at(tp, t);
            }
            C.diffs.push_back(std::move(D0));
            continue;
        }
        C.diffs.push_back(differential_on_bases(X, M, w, d, C.bases[d], C, d - 1, quotient));
    }
    if (opts.check_d_squared) {
        for (int d = C.lo + 2; d <= N; ++d)
            if (!mul(C.diff(d - 1), C.diff(d)).is_zero())
                throw std::logic_error("build_complex: differential does not square to zero at degree " +
                                       std::to_string(d));
    }
    return C;
}

// Restriction of a full-basis matrix to part bases: rows/cols are code
// lists into the full bases of the respective degrees, m the module rank.
template <class R>
Mat<R> restrict_matrix(const Mat<R>& A, const std::vector<SeqCode>& rows,
                       const std::vector<SeqCode>& cols, int m) {
    Mat<R> B(A.ring, static_cast<int>(rows.size()) * m, static_cast<int>(cols.size()) * m);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (int ti = 0; ti < m; ++ti)
                for (int tj = 0; tj < m; ++tj)
                    B.at(static_cast<int>(i) * m + ti, static_cast<int>(j) * m + tj) =
                        A.at(static_cast<int>(rows[i]) * m + ti, static_cast<int>(cols[j]) * m + tj);
    return B;
}

template <class R>
Mat<R> doubling_map_unchecked(const Multishelf& X, const ActionModule<R>& M, int d);

// s: C_d(M;X) -> C_{d+1}(M;X), m (x) (x_d..x_0) |-> (-1)^d m (x)
// (x_d,x_d,...,x_0), on full bases. Hypothesis: the compound
// action of (M, w) vanishes.
template <class R>
Mat<R> doubling_map(const Multishelf& X, const ActionModule<R>& M, const Weights<R>& w, int d) {
    if (!has_vanishing_compound_action(M, w))
        throw std::invalid_argument("doubling_map: compound action does not vanish");
    return doubling_map_unchecked(X, M, d);
}

template <class R>
Mat<R> doubling_map_unchecked(const Multishelf& X, const ActionModule<R>& M, int d) {
    auto dom = part_basis(X.size, d, PartSelector::full());
    auto cod_size = dom.size() * static_cast<std::size_t>(X.size);
    const int m = M.rank;
    Mat<R> S(M.ring, static_cast<int>(cod_size) * m, static_cast<int>(dom.size()) * m);
    auto sign = d % 2 == 0 ? M.ring.one() : M.ring.neg(M.ring.one());
    for (std::size_t s = 0; s < dom.size(); ++s) {
        auto x = decode_seq(dom[s], X.size, d);
        std::vector<int> y(x.size() + 1);
        std::copy(x.begin(), x.end(), y.begin());
        y[x.size()] = x.back();  // duplicate the leftmost entry
        SeqCode yc = encode_seq(y, X.size);
        for (int t = 0; t < m; ++t) S.at(static_cast<int>(yc) * m + t, static_cast<int>(s) * m + t) = sign;
    }
    return S;
}

// h^w: C_d -> C_{d+1}, appending wit at position 0 with sign (-1)^{d+1}.
// With sign (-1)^d the identity below acquires a global minus; the sign
// here is chosen so that del h^w + h^w del equals the compound action by
// wit exactly.
template <class R>
Mat<R> homotopy_hw(const Multishelf& X, const ActionModule<R>& M, int d, int wit) {
    auto dom = part_basis(X.size, d, PartSelector::full());
    const int m = M.rank;
    std::size_t cod_size = dom.size() * static_cast<std::size_t>(X.size);
    Mat<R> H(M.ring, static_cast<int>(cod_size) * m, static_cast<int>(dom.size()) * m);
    auto sign = d % 2 == 0 ? M.ring.neg(M.ring.one()) : M.ring.one();
    for (std::size_t s = 0; s < dom.size(); ++s) {
        auto x = decode_seq(dom[s], X.size, d);
        std::vector<int> y(x.size() + 1);
        y[0] = wit;
        std::copy(x.begin(), x.end(), y.begin() + 1);
        SeqCode yc = encode_seq(y, X.size);
        for (int t = 0; t < m; ++t) H.at(static_cast<int>(yc) * m + t, static_cast<int>(s) * m + t) = sign;
    }
    return H;
}

// The compound action of element `elem` on chains: entrywise action on the
// sequence together with the action on the coefficient, weighted sum over
// operations.
template <class R>
Mat<R> compound_action_on_chains(const Multishelf& X, const ActionModule<R>& M, const Weights<R>& w,
                                 int d, int elem) {
    auto dom = part_basis(X.size, d, PartSelector::full());
    const int m = M.rank;
    Mat<R> A(M.ring, static_cast<int>(dom.size()) * m, static_cast<int>(dom.size()) * m);
    for (std::size_t s = 0; s < dom.size(); ++s) {
        auto x = decode_seq(dom[s], X.size, d);
        for (int k = 0; k < X.num_ops(); ++k) {
            if (M.ring.is_zero(w[k])) continue;
            std::vector<int> y(x.size());
            for (std::size_t j = 0; j < x.size(); ++j) y[j] = X.op(k, x[j], elem);
            SeqCode yc = encode_seq(y, X.size);
            const Mat<R>& B = M.act(k, elem);
            for (int t = 0; t < m; ++t)
                for (int tp = 0; tp < m; ++tp) {
                    const auto& b = B.at(tp, t);
                    if (M.ring.is_zero(b)) continue;
                    auto& cell = A.at(static_cast<int>(yc) * m + tp, static_cast<int>(s) * m + t);
                    cell = M.ring.add(cell, M.ring.mul(w[k], b));
                }
        }
    }
    return A;
}

// ---------------------------------------------------------------------------
// Chain maps

template <class R>
struct ChainMap {
    const ChainComplex<R>* from = nullptr;
    const ChainComplex<R>* to = nullptr;
    std::vector<Mat<R>> mats;  // mats[d - from->lo] : from C_d to C'_d

    const Mat<R>& at(int d) const { return mats[d - from->lo]; }

    bool is_chain_map() const {
        for (int d = from->lo + 1; d <= from->hi; ++d) {
            if (!to->has_diff(d)) continue;
            if (!(mul(at(d - 1), from->diff(d)) == mul(to->diff(d), at(d)))) return false;
        }
        return true;
    }
};

// phi_*: C(M^phi; X) -> C(M; X'), entrywise application of phi. `from` must
// be built over pullback_module(M, h) and `to` over M, same part/weights.
template <class R>
ChainMap<R> induced_chain_map(const ShelfHom& h, const ChainComplex<R>& from,
                              const ChainComplex<R>& to) {
    if (from.part.kind != to.part.kind)
        throw std::invalid_argument("induced_chain_map: part mismatch");
    ChainMap<R> f{&from, &to, {}};
    const int m = from.M.rank;
    bool quotient = from.part.kind == PartKind::Normalized;
    for (int d = from.lo; d <= from.hi; ++d) {
        if (d == -1) {
            f.mats.push_back(Mat<R>::identity(from.ring, m));
            continue;
        }
        Mat<R> F(from.ring, to.dim(d), from.dim(d));
        for (std::size_t s = 0; s < from.bases[d].size(); ++s) {
            auto x = decode_seq(from.bases[d][s], h.source->size, d);
            std::vector<int> y(x.size());
            for (std::size_t j = 0; j < x.size(); ++j) y[j] = h.map[x[j]];
            int row0 = to.index_of(d, encode_seq(y, h.target->size), 0);
            if (row0 < 0) {
                if (quotient) continue;
                throw PartClosureError(seq_to_string(x));
            }
            for (int t = 0; t < m; ++t) F.at(row0 + t, static_cast<int>(s) * m + t) = from.ring.one();
        }
        f.mats.push_back(std::move(F));
    }
    if (!f.is_chain_map()) throw std::logic_error("induced_chain_map: not a chain map");
    return f;
}

// ---------------------------------------------------------------------------
// Graded quotient gr_p = F^p/F^{p-1} and the bijection with
// hatC_{n-p-2} (x) CN_p.

struct GradedPairing {
    SeqCode gr_code;   // degree-n sequence, first repetition exactly at p
    SeqCode aug_code;  // (x_n..x_{p+2}) as a degree-(n-p-2) sequence, or -1 when n = p+1
    SeqCode cn_code;   // (x_p..x_0), repetition-free of degree p
};

// Pure combinatorial bijection for carrier size n_elems, level p, total
// degree n. Ordered by ascending gr_code.
inline std::vector<GradedPairing> graded_quotient_pairs(int n_elems, int p, int n) {
    if (p < 0 || p >= n) throw std::invalid_argument("graded_quotient_pairs: need 0 <= p < n");
    std::vector<GradedPairing> out;
    for (SeqCode c : part_basis(n_elems, n, PartSelector::filtration(p))) {
        auto x = decode_seq(c, n_elems, n);
        if (*filtration_level(x) != p) continue;
        std::vector<int> top(x.begin() + p + 2, x.end());  // x_{p+2}..x_n
        std::vector<int> bot(x.begin(), x.begin() + p + 1);  // x_0..x_p
        out.push_back({c, top.empty() ? SeqCode(-1) : encode_seq(top, n_elems),
                       encode_seq(bot, n_elems)});
    }
    return out;
}

// Verifies that under the bijection the differential induced on gr_p at
// degree n equals (augmented differential) (x) identity. `aug` must be the
// augmented full complex of (X, M, w) built to degree >= n-p-2.
template <class R>
bool verify_graded_quotient_iso(const Multishelf& X, const ActionModule<R>& M, const Weights<R>& w,
                                const ChainComplex<R>& aug, int p, int n) {
    const int m = M.rank;
    auto pairs_n = graded_quotient_pairs(X.size, p, n);
    std::vector<GradedPairing> pairs_n1;  // empty when n-1 == p (no level-p sequence there)
    if (n - 1 > p) pairs_n1 = graded_quotient_pairs(X.size, p, n - 1);

    // induced gr differential: full differential restricted to level-p rows
    // and columns (rows of lower level are killed in the quotient)
    auto full = differential_matrix(X, M, w, n);
    std::vector<SeqCode> dom, cod;
    for (const auto& pr : pairs_n) dom.push_back(pr.gr_code);
    for (const auto& pr : pairs_n1) cod.push_back(pr.gr_code);
    auto gr_diff = restrict_matrix(full, cod, dom, m);

    // expected: aug differential at degree n-p-2 tensor identity on cn
    int q = n - p - 2;
    Mat<R> expected(M.ring, gr_diff.rows, gr_diff.cols);
    if (q >= aug.lo + 1) {
        const Mat<R>& A = aug.diff(q);
        std::map<std::pair<SeqCode, SeqCode>, int> row_of;
        for (std::size_t i = 0; i < pairs_n1.size(); ++i)
            row_of[{pairs_n1[i].aug_code, pairs_n1[i].cn_code}] = static_cast<int>(i);
        const int aug_rows = A.rows / std::max(m, 1);
        for (std::size_t j = 0; j < pairs_n.size(); ++j) {
            int acol = static_cast<int>(pairs_n[j].aug_code);
            for (int arow = 0; arow < aug_rows; ++arow) {
                // degree -1 of the augmented complex is the bare module
                SeqCode arow_code = (q == 0) ? SeqCode(-1) : SeqCode(arow);
                auto it = row_of.find({arow_code, pairs_n[j].cn_code});
                for (int t = 0; t < m; ++t)
                    for (int tp = 0; tp < m; ++tp) {
                        const auto& v = A.at(arow * m + tp, acol * m + t);
                        if (M.ring.is_zero(v)) continue;
                        if (it == row_of.end()) return false;
                        expected.at(it->second * m + tp, static_cast<int>(j) * m + t) = v;
                    }
            }
        }
    }
    return gr_diff == expected;
}

// ---------------------------------------------------------------------------
// Two-term bicomplex B_pq = hatC_{q-2}(M;X) (x) CN_p(X) and its total
// complex. Vertical differential from the augmented complex, horizontal
// from the normalized trivial-coefficient complex, sign (-1)^q on the
// horizontal part.

template <class R>
struct Bicomplex {
    const Multishelf* X = nullptr;
    R ring{};
    int N = 0;
    ChainComplex<R> vertical;    // augmented full complex of M, degrees -1..N-2
    ChainComplex<R> horizontal;  // CN(X) with trivial rank-1 coefficients, degrees 0..N-1

    int vdim(int q) const { return vertical.dim(q - 2); }
    int hdim(int p) const { return horizontal.dim(p); }
    int dim(int p, int q) const { return vdim(q) * hdim(p); }
};

template <class R>
struct TotalComplex {
    struct Block {
        int p, q, offset, vdim, hdim;  // basis index = offset + a*hdim + b
    };
    R ring{};
    int N = 0;
    std::vector<int> dims;                  // degree 0..N
    std::vector<Mat<R>> diffs;              // diffs[n-1]: Tot_n -> Tot_{n-1}, n >= 1
    std::vector<std::vector<Block>> blocks;  // per degree, p ascending

    int dim(int n) const { return (n < 0 || n > N) ? 0 : dims[n]; }
    const Mat<R>& diff(int n) const { return diffs[n - 1]; }
    const Block* block(int n, int p) const {
        for (const auto& b : blocks[n])
            if (b.p == p) return &b;
        return nullptr;
    }
};

template <class R>
Bicomplex<R> bicomplex(const Multishelf& X, const ActionModule<R>& M, const Weights<R>& w, int N,
                       const BuildOptions& opts = {}) {
    Bicomplex<R> B;
    B.X = &X;
    B.ring = M.ring;
    B.N = N;
    B.vertical = build_complex(X, M, w, PartSelector::full(), std::max(N - 2, 0), true, opts);
    auto triv = trivial_module(X, 1, M.ring);
    B.horizontal = build_complex(X, triv, w, PartSelector::normalized(), std::max(N - 1, 0), false, opts);
    return B;
}

template <class R>
TotalComplex<R> total_complex(const Bicomplex<R>& B) {
    TotalComplex<R> T;
    T.ring = B.ring;
    T.N = B.N;
    T.dims.assign(B.N + 1, 0);
    T.blocks.assign(B.N + 1, {});
    for (int n = 0; n <= B.N; ++n) {
        int off = 0;
        for (int p = 0; p <= n - 1; ++p) {
            int q = n - p;  // q >= 1
            int vd = B.vdim(q), hd = B.hdim(p);
            if (vd * hd == 0) continue;
            T.blocks[n].push_back({p, q, off, vd, hd});
            off += vd * hd;
        }
        T.dims[n] = off;
    }
    const R& rg = B.ring;
    for (int n = 1; n <= B.N; ++n) {
        Mat<R> D(rg, T.dims[n - 1], T.dims[n]);
        for (const auto& blk : T.blocks[n]) {
            int p = blk.p, q = blk.q;
            // vertical: (hat-del a) (x) b into (p, q-1)
            if (const auto* tgt = T.block(n - 1, p); tgt && B.vertical.has_diff(q - 2)) {
                const Mat<R>& V = B.vertical.diff(q - 2);
                for (int a = 0; a < blk.vdim; ++a)
                    for (int b = 0; b < blk.hdim; ++b)
                        for (int ap = 0; ap < tgt->vdim; ++ap) {
                            const auto& v = V.at(ap, a);
                            if (rg.is_zero(v)) continue;
                            D.at(tgt->offset + ap * tgt->hdim + b, blk.offset + a * blk.hdim + b) = v;
                        }
            }
            // horizontal: (-1)^q a (x) (bar-del b) into (p-1, q)
            if (const auto* tgt = T.block(n - 1, p - 1); tgt && B.horizontal.has_diff(p)) {
                const Mat<R>& H = B.horizontal.diff(p);
                bool odd = q % 2 != 0;
                for (int a = 0; a < blk.vdim; ++a)
                    for (int b = 0; b < blk.hdim; ++b)
                        for (int bp = 0; bp < tgt->hdim; ++bp) {
                            auto v = H.at(bp, b);
                            if (rg.is_zero(v)) continue;
                            if (odd) v = rg.neg(v);
                            auto& cell = D.at(tgt->offset + a * tgt->hdim + bp,
                                              blk.offset + a * blk.hdim + b);
                            cell = rg.add(cell, v);
                        }
            }
        }
        T.diffs.push_back(std::move(D));
    }
    for (int n = 2; n <= B.N; ++n)
        if (!mul(T.diff(n - 1), T.diff(n)).is_zero())
            throw std::logic_error("total_complex: differential does not square to zero");
    return T;
}

}  // namespace rackhom
