#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qtor/relations.hpp"

namespace qtor::detail {

template <class S>
using VecT = std::map<std::size_t, S>;

template <class S>
void axpy_t(VecT<S>& out, const S& c, const VecT<S>& v) {
    for (auto& [k, x] : v) {
        S add = c * x;
        auto it = out.find(k);
        if (it == out.end()) {
            if (!add.is_zero()) out.emplace(k, std::move(add));
        } else {
            it->second += add;
            if (it->second.is_zero()) out.erase(it);
        }
    }
}

// Ops supplies: Scalar, one(), qpow(e), qnum(n) = [n]_q, qdiff_inv(), from_int(n), rs(), basis(k),
// x(s, i, r, v), k(i, e, v), phi(s, i, t, v), h(i, m, v), weight_defect(k, s, j) (a vector, empty if fine)
template <class Ops>
VecT<typename Ops::Scalar> relation_residual_t(const Ops& M, const RelationSpec& p, std::size_t node) {
    using S = typename Ops::Scalar;
    using V = VecT<S>;
    V v = M.basis(node);
    V out;
    const RootSystem& rs = M.rs();
    int i = p.i, j = p.j;
    Sign s = p.sign;
    S one = M.one(), mone = M.from_int(-1);
    switch (p.rel) {
        case Rel::kx: {
            // weights move by +-alpha_j, and k_i x_j k_i^-1 = q^{+-C_ij} x_j
            out = M.weight_defect(node, s, j);
            axpy_t(out, one, M.k(i, 1, M.x(s, j, 0, M.k(i, -1, v))));
            axpy_t(out, -M.qpow(sgn(s) * rs.cartan(i, j)), M.x(s, j, 0, v));
            break;
        }
        case Rel::hh: {
            axpy_t(out, one, M.h(i, p.m, M.h(j, p.mp, v)));
            axpy_t(out, mone, M.h(j, p.mp, M.h(i, p.m, v)));
            break;
        }
        case Rel::hx: {
            axpy_t(out, one, M.h(i, p.m, M.x(s, j, p.r, v)));
            axpy_t(out, mone, M.x(s, j, p.r, M.h(i, p.m, v)));
            S c = M.qnum(static_cast<std::int64_t>(p.m) * rs.cartan(i, j)) * M.from_int(p.m).inverse();
            if (s == Sign::minus) c = -c;
            axpy_t(out, -c, M.x(s, j, p.m + p.r, v));
            break;
        }
        case Rel::xpxm: {
            axpy_t(out, one, M.x(Sign::plus, i, p.r, M.x(Sign::minus, j, p.rp, v)));
            axpy_t(out, mone, M.x(Sign::minus, j, p.rp, M.x(Sign::plus, i, p.r, v)));
            if (i == j) {
                std::int64_t t = p.r + p.rp;
                S inv = M.qdiff_inv();
                axpy_t(out, -inv, M.phi(Sign::plus, i, t, v));
                axpy_t(out, inv, M.phi(Sign::minus, i, t, v));
            }
            break;
        }
        case Rel::xx: {
            S qc = M.qpow(sgn(s) * rs.cartan(i, j));
            axpy_t(out, one, M.x(s, i, p.r + 1, M.x(s, j, p.rp, v)));
            axpy_t(out, -qc, M.x(s, j, p.rp, M.x(s, i, p.r + 1, v)));
            axpy_t(out, -qc, M.x(s, i, p.r, M.x(s, j, p.rp + 1, v)));
            axpy_t(out, one, M.x(s, j, p.rp + 1, M.x(s, i, p.r, v)));
            break;
        }
        case Rel::serre: {
            S two = M.qnum(2);
            std::vector<std::pair<std::int64_t, std::int64_t>> perms{{p.r1, p.r2}};
            if (p.r1 != p.r2) perms.push_back({p.r2, p.r1});
            // r1 = r2: both halves coincide
            S mult = M.from_int(p.r1 == p.r2 ? 2 : 1);
            V xj = M.x(s, j, p.rp, v);
            for (auto [a, b] : perms) {
                V xb = M.x(s, i, b, v);
                axpy_t(out, mult, M.x(s, i, a, M.x(s, i, b, xj)));
                axpy_t(out, -(mult * two), M.x(s, i, a, M.x(s, j, p.rp, xb)));
                axpy_t(out, mult, M.x(s, j, p.rp, M.x(s, i, a, xb)));
            }
            break;
        }
        case Rel::comm: {
            axpy_t(out, one, M.x(s, i, p.r1, M.x(s, j, p.r2, v)));
            axpy_t(out, mone, M.x(s, j, p.r2, M.x(s, i, p.r1, v)));
            break;
        }
    }
    return out;
}

}  // namespace qtor::detail
