#pragma once

#include <optional>
#include <vector>

#include "rackhom/abelian_group.hpp"
#include "rackhom/chain_complex.hpp"
#include "rackhom/matrix.hpp"
#include "rackhom/smith.hpp"

namespace rackhom {

// ---------------------------------------------------------------------------
// Homology over Z: ker(d_out) / im(d_in), with enough data retained to
// evaluate the class of an arbitrary cycle in canonical coordinates.

struct ZHomology {
    AbelianGroup group;
    IMat kernel_basis;   // ambient_dim x k, columns span ker(d_out)
    IMat kernel_coords;  // k x ambient_dim, kernel_coords * z = coords of a cycle
    IMat U_P;            // k x k change to canonical generator coordinates
    std::vector<Int> rel;  // length k: canonical relation orders (0 free, 1 killed)

    int ambient_dim() const { return kernel_basis.rows; }
    // Indices i with rel[i] != 1, i.e. coordinates that survive in H.
    std::vector<int> live_coords() const;
    // Canonical class coordinates of a cycle (length = live_coords().size()),
    // reduced mod rel on torsion coordinates. Throws if z is not a cycle.
    std::vector<Int> cycle_class(const std::vector<Int>& z) const;
};

// d_out: C_d -> C_{d-1}; d_in: C_{d+1} -> C_d. Pass zero-row / zero-column
// matrices at the ends of a complex.
ZHomology homology_Z(const IMat& d_out, const IMat& d_in);

// Matrix of the induced map on homology in canonical live coordinates,
// together with the isomorphism verdict (groups isomorphic and map
// surjective, which for finitely generated abelian groups forces an
// isomorphism).
struct ZInducedMap {
    IMat mat;  // |live(target)| x |live(source)|
    bool is_iso = false;
};
ZInducedMap induced_on_homology_Z(const ZHomology& Hs, const ZHomology& Ht, const IMat& f);

// ---------------------------------------------------------------------------
// Homology over a field.

template <class F>
struct FieldHomology {
    int dim = 0;
    Mat<F> kernel_basis;  // ambient_dim x dim, representatives of a basis of H
    SpanReducer<F> reducer;  // boundaries untagged, representatives tagged

    int ambient_dim() const { return kernel_basis.rows; }
    std::vector<typename F::Elem> cycle_class(const std::vector<typename F::Elem>& z) const {
        auto c = reducer.coords(z);
        if (!c) throw std::invalid_argument("cycle_class: vector is not a cycle");
        c->resize(dim, reducer_zero());
        return *c;
    }

  private:
    typename F::Elem reducer_zero() const { return kernel_basis.ring.zero(); }
};

template <class F>
FieldHomology<F> homology_field(const Mat<F>& d_out, const Mat<F>& d_in) {
    const F rg = d_out.ring;
    Mat<F> K = nullspace(d_out);
    SpanReducer<F> red(rg, d_out.cols);
    for (int j = 0; j < d_in.cols; ++j) red.insert(d_in.column(j), -1);
    int boundary_dim = red.span_dim();
    Mat<F> gens(rg, d_out.cols, K.cols - boundary_dim);
    int g = 0, tag = 0;
    for (int j = 0; j < K.cols; ++j) {
        auto v = K.column(j);
        if (!red.insert(v, tag)) continue;
        for (int i = 0; i < d_out.cols; ++i) gens.at(i, g) = v[i];
        ++g;
        ++tag;
    }
    return FieldHomology<F>{g, std::move(gens), std::move(red)};
}

template <class F>
struct FieldInducedMap {
    Mat<F> mat;
    bool is_iso = false;
};

template <class F>
FieldInducedMap<F> induced_on_homology_field(const FieldHomology<F>& Hs, const FieldHomology<F>& Ht,
                                             const Mat<F>& f) {
    const F rg = f.ring;
    Mat<F> M(rg, Ht.dim, Hs.dim);
    for (int j = 0; j < Hs.dim; ++j) {
        auto img = mul_vec(f, Hs.kernel_basis.column(j));
        auto c = Ht.cycle_class(img);
        for (int i = 0; i < Ht.dim; ++i) M.at(i, j) = c[i];
    }
    bool iso = Hs.dim == Ht.dim && rank(M) == Hs.dim;
    return {std::move(M), iso};
}

// ---------------------------------------------------------------------------
// Ring-generic entry points on chain complexes.

template <class R>
Mat<R> boundary_or_zero(const ChainComplex<R>& C, int d) {
    if (C.has_diff(d)) return C.diff(d);
    if (d == C.hi + 1) return Mat<R>(C.ring, C.dim(C.hi), 0);
    return Mat<R>(C.ring, 0, C.dim(d));
}

template <class R>
auto homology_at(const ChainComplex<R>& C, int d) {
    auto out = boundary_or_zero(C, d);
    auto in = boundary_or_zero(C, d + 1);
    if constexpr (R::is_field)
        return homology_field(out, in);
    else
        return homology_Z(out, in);
}

// The canonical-form group either way; over a field the dimension is
// reported as the free rank.
template <class R>
AbelianGroup homology_group(const ChainComplex<R>& C, int d) {
    auto H = homology_at(C, d);
    if constexpr (R::is_field)
        return AbelianGroup::free(H.dim);
    else
        return H.group;
}

// ---------------------------------------------------------------------------
// Induced module structure on homology (field coefficients): X acts on
// chains entrywise and on the coefficient; the action descends to H_d.

// Chain-level action of element y via operation k on degree d (full
// basis); degree -1 of an augmented complex is the coefficient module.
template <class F>
Mat<F> chain_action_matrix(const Multishelf& X, const ActionModule<F>& M, int k, int y, int d) {
    Weights<F> unit(X.num_ops(), M.ring.zero());
    unit[k] = M.ring.one();
    if (d == -1) return M.act(k, y);
    return compound_action_on_chains(X, M, unit, d, y);
}

// The ActionModule structure on H_d(C) for a full-part complex C over a
// field. Representatives are the kernel_basis columns of homology_at.
template <class F>
ActionModule<F> homology_action(const ChainComplex<F>& C, int d) {
    static_assert(F::is_field, "homology_action needs field coefficients");
    if (C.part.kind != PartKind::Full)
        throw std::invalid_argument("homology_action: full-part complex required");
    const Multishelf& X = *C.X;
    auto H = homology_at(C, d);
    ActionModule<F> A{&X, C.ring, H.dim, {}};
    A.action.assign(X.num_ops(), {});
    for (int k = 0; k < X.num_ops(); ++k) {
        A.action[k].reserve(X.size);
        for (int y = 0; y < X.size; ++y) {
            auto f = chain_action_matrix(X, C.M, k, y, d);
            Mat<F> m(C.ring, H.dim, H.dim);
            for (int j = 0; j < H.dim; ++j) {
                auto c = H.cycle_class(mul_vec(f, H.kernel_basis.column(j)));
                for (int i = 0; i < H.dim; ++i) m.at(i, j) = c[i];
            }
            A.action[k].push_back(std::move(m));
        }
    }
    return A;
}

}  // namespace rackhom
