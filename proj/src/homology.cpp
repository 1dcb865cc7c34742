#include "rackhom/homology.hpp"

#include <stdexcept>

namespace rackhom {

std::vector<int> ZHomology::live_coords() const {
    std::vector<int> live;
    for (int i = 0; i < static_cast<int>(rel.size()); ++i)
        if (rel[i] != 1) live.push_back(i);
    return live;
}

std::vector<Int> ZHomology::cycle_class(const std::vector<Int>& z) const {
    auto c = mul_vec(kernel_coords, z);
    // sanity: kernel coordinates must reconstruct z
    auto back = mul_vec(kernel_basis, c);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (back[i] != z[i]) throw std::invalid_argument("cycle_class: vector is not a cycle");
    auto u = mul_vec(U_P, c);
    std::vector<Int> out;
    for (int i : live_coords()) {
        if (rel[i] > 0) {
            Int v = u[i] % rel[i];
            if (v < 0) v += rel[i];
            out.push_back(v);
        } else {
            out.push_back(u[i]);
        }
    }
    return out;
}

ZHomology homology_Z(const IMat& d_out, const IMat& d_in) {
    const int n = d_out.cols;
    SmithOptions kv;
    kv.want_U = kv.want_Uinv = false;
    kv.want_V = kv.want_Vinv = true;
    auto s = smith_normal_form(d_out, kv);
    const int k = n - s.rank;

    ZHomology H;
    H.kernel_basis = IMat(ZRing{}, n, k);
    H.kernel_coords = IMat(ZRing{}, k, n);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) {
            H.kernel_basis.at(i, j) = s.V.at(i, s.rank + j);
            H.kernel_coords.at(j, i) = s.Vinv.at(s.rank + j, i);
        }

    IMat P = mul(H.kernel_coords, d_in);
    SmithOptions pu;
    pu.want_U = true;
    pu.want_V = pu.want_Vinv = pu.want_Uinv = false;
    auto sp = smith_normal_form(P, pu);
    H.U_P = sp.U;
    H.rel.assign(k, Int(0));
    auto diag = sp.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) H.rel[i] = diag[i];
    H.group = canonical_group(0, H.rel);
    return H;
}

ZInducedMap induced_on_homology_Z(const ZHomology& Hs, const ZHomology& Ht, const IMat& f) {
    auto live_s = Hs.live_coords();
    auto live_t = Ht.live_coords();
    ZInducedMap M;
    M.mat = IMat(ZRing{}, static_cast<int>(live_t.size()), static_cast<int>(live_s.size()));
    // Canonical generator j is e_{live_s[j]} in U_P coordinates; its cycle
    // representative is kernel_basis * (U_P^{-1} e).
    for (std::size_t j = 0; j < live_s.size(); ++j) {
        std::vector<Int> e(Hs.rel.size(), Int(0));
        e[live_s[j]] = 1;
        auto c = solve_integer(Hs.U_P, e);
        if (!c) throw std::logic_error("induced_on_homology_Z: U_P not invertible");
        auto z = mul_vec(Hs.kernel_basis, *c);
        auto cls = Ht.cycle_class(mul_vec(f, z));
        for (std::size_t i = 0; i < live_t.size(); ++i) M.mat.at(static_cast<int>(i), static_cast<int>(j)) = cls[i];
    }

    bool groups_match = Hs.group == Ht.group;
    // surjectivity: cokernel of [map | torsion relations] must vanish
    int extra = 0;
    for (int i : live_t)
        if (Ht.rel[i] > 1) ++extra;
    IMat S(ZRing{}, M.mat.rows, M.mat.cols + extra);
    for (int i = 0; i < M.mat.rows; ++i)
        for (int j = 0; j < M.mat.cols; ++j) S.at(i, j) = M.mat.at(i, j);
    int col = M.mat.cols;
    for (std::size_t i = 0; i < live_t.size(); ++i)
        if (Ht.rel[live_t[i]] > 1) S.at(static_cast<int>(i), col++) = Ht.rel[live_t[i]];
    SmithOptions so;
    so.want_U = so.want_V = false;
    auto ss = smith_normal_form(S, so);
    bool surjective = ss.rank == M.mat.rows;
    if (surjective)
        for (const auto& d : ss.diagonal())
            if (d > 1) surjective = false;
    M.is_iso = groups_match && surjective;
    return M;
}

}  // namespace rackhom
