#include "qtor/unity.hpp"

#include <algorithm>
#include <deque>

#include "relation_core.hpp"

namespace qtor {

int root_period(int n, int ell) {
    if (n < 3 || n % 2 == 0) throw UnityError("n must be odd and >= 3");
    if (ell == 1 || ell == n) return n + 1;
    if (ell == (n - 1) / 2 + 1) return 2;
    throw UnityError("l = " + std::to_string(ell) + " is not closed for n = " + std::to_string(n) +
                     "; only l in {1, r+1, n} specialize");
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t N) { return ((a % N) + N) % N; }

std::int64_t spread(const YPart& y) {
    std::int64_t d = 0;
    for (auto& f : y) d = std::max(d, f.l < 0 ? -f.l : f.l);
    return d;
}

bool shift_related(const YPart& a, const YPart& b, std::int64_t N) {
    if (a.size() != b.size() || a.empty()) return a == b;
    std::int64_t d = b.front().l - a.front().l;
    return d % N == 0 && ypart_shift(a, d) == b;
}

void init(SpecializedModule& S) {
    S.epow.clear();
    for (int e = 0; e < S.N; ++e) S.epow.push_back(CycloElem::eps_pow(S.N, e));
}

CycloElem eval(const RationalQ& c, int N, const std::string& what) {
    try {
        return eval_cyclotomic(c, N);
    } catch (const SpecializationError& e) {
        throw UnityError("coefficient " + c.str() + " of " + what + ": " + e.what());
    }
}

// keep(k): generic node k belongs to the specialized basis (or quotient)
template <class Keep>
SpecializedModule specialize(const LoopModule& G, int N, Keep keep) {
    SpecializedModule S;
    S.rs = G.rs();
    S.N = N;
    init(S);
    int nodes = G.rs().nodes();
    // one interior representative per residue, closest to l = 0
    std::map<YPart, std::size_t> rep;
    for (std::size_t k = 0; k < G.dim(); ++k) {
        if (!keep(k) || !G.interior[k]) continue;
        YPart res = gamma_N(G.graph.nodes[k], N).y;
        auto it = rep.find(res);
        if (it == rep.end()) {
            rep.emplace(res, k);
            continue;
        }
        const YPart& old = G.graph.nodes[it->second].y;
        if (!shift_related(old, G.graph.nodes[k].y, N))
            throw UnityError("Gamma_" + std::to_string(N) + " identifies " + ypart_str(old) + " and " +
                             G.graph.nodes[k].str());
        if (spread(G.graph.nodes[k].y) < spread(old)) it->second = k;
    }
    for (std::size_t k = 0; k < G.dim(); ++k)
        if (keep(k) && !rep.count(gamma_N(G.graph.nodes[k], N).y))
            throw UnityError("no interior representative for " + G.graph.nodes[k].str() + "; widen the window");

    std::map<YPart, std::size_t> index;
    for (auto& [res, k] : rep) {
        index.emplace(res, S.basis.size());
        S.basis.push_back(res);
        S.generic.push_back(G.graph.nodes[k].y);
        S.level.push_back(G.level.empty() ? 0 : G.level[k]);
        S.kexp.push_back(G.graph.nodes[k].wt.h);
    }
    S.x.assign(S.dim(), std::vector<std::array<std::vector<CycloTerm>, 2>>(static_cast<std::size_t>(nodes)));
    S.phi.assign(S.dim(), std::vector<std::vector<CycloPhi>>(static_cast<std::size_t>(nodes)));
    std::size_t b = 0;
    for (auto& [res, k] : rep) {
        for (int i = 0; i < nodes; ++i) {
            auto ui = static_cast<std::size_t>(i);
            for (int sl = 0; sl < 2; ++sl) {
                for (auto& t : G.x[k][ui][static_cast<std::size_t>(sl)]) {
                    if (!keep(t.dst)) continue;  // lands in the submodule
                    std::size_t d = index.at(gamma_N(G.graph.nodes[t.dst], N).y);
                    std::string what = "x" + std::string(sl ? "-" : "+") + "_" + std::to_string(i) + " on " +
                                       ypart_str(G.graph.nodes[k].y);
                    S.x[b][ui][static_cast<std::size_t>(sl)].push_back({d, eval(t.c, N, what), mod(t.base, N)});
                }
            }
            for (auto& f : G.phi[k][ui])
                S.phi[b][ui].push_back({eval(f.w, N, "phi_" + std::to_string(i)), mod(f.base, N)});
        }
        ++b;
    }
    return S;
}

}  // namespace

SpecializedModule specialize_thin(const RootSystem& rs, int ell, int L) {
    int n = rs.n();
    int p = root_period(n, ell);
    if (L < 1) throw UnityError("L must be >= 1");
    if (p == 2 && L == 1) throw UnityError("p = 2 needs L > 1");
    int N = p * L;
    std::int64_t W = N + 4 * (n + 1);
    LoopModule G = build_thin(rs, ell, {-W, W});
    SpecializedModule S = specialize(G, N, [](std::size_t) { return true; });
    S.kind = "thin";
    S.ell = ell;
    S.L = L;
    S.p = p;
    return S;
}

SpecializedModule specialize_section5(int L) {
    if (L < 1) throw UnityError("L must be >= 1");
    int N = 4 * L;
    std::int64_t W = 8 * L + 16;
    LoopModule G = build_section5(L, {-W, W});
    SpecializedModule S = specialize(G, N, [&](std::size_t k) { return G.level[k] < L; });
    S.kind = "section5";
    S.L = L;
    S.p = 4;
    return S;
}

SpecializedModule direct_sum(const SpecializedModule& a, const SpecializedModule& b) {
    if (a.N != b.N || a.rs.nodes() != b.rs.nodes()) throw UnityError("direct sum needs the same root and rank");
    SpecializedModule S = a;
    S.kind = "sum";
    std::size_t off = a.dim();
    for (std::size_t k = 0; k < b.dim(); ++k) {
        S.basis.push_back(b.basis[k]);
        S.generic.push_back(b.generic[k]);
        S.level.push_back(b.level[k]);
        S.kexp.push_back(b.kexp[k]);
        auto row = b.x[k];
        for (auto& pr : row)
            for (auto& side : pr)
                for (auto& t : side) t.dst += off;
        S.x.push_back(row);
        S.phi.push_back(b.phi[k]);
    }
    return S;
}

CycloVector act_x(const SpecializedModule& M, Sign s, int i, std::int64_t r, const CycloVector& v) {
    if (i < 0 || i >= M.rs.nodes()) throw UnityError("node out of range");
    CycloVector out;
    for (auto& [k, c] : v)
        for (auto& t : M.x[k][static_cast<std::size_t>(i)][static_cast<std::size_t>(slot(s))])
            detail::axpy_t(out, c * t.c * M.eps(r * t.base), CycloVector{{t.dst, CycloElem(M.N, 1)}});
    return out;
}

namespace {

CycloElem qdiff(const SpecializedModule& M) { return M.eps(1) - M.eps(-1); }

// phi^{+}_{i,t} (t >= 0) or phi^{-}_{i,t} (t <= 0) eigenvalue on v_k
CycloElem phi_eigen(const SpecializedModule& M, Sign s, int i, std::int64_t t, std::size_t k) {
    auto ui = static_cast<std::size_t>(i);
    if ((s == Sign::plus && t < 0) || (s == Sign::minus && t > 0)) return CycloElem(M.N);
    if (t == 0) return M.eps(sgn(s) * M.kexp[k][ui]);
    CycloElem acc(M.N);
    for (auto& f : M.phi[k][ui]) acc += f.w * M.eps(t * f.base);
    acc = acc * qdiff(M);
    return s == Sign::plus ? acc : -acc;
}

}  // namespace

// log of phi / k, coefficientwise, then divided by eps - eps^-1
CycloElem h_eigen(const SpecializedModule& M, int i, int m, std::size_t k) {
    if (m == 0) throw UnityError("h_{i,0} is not a generator");
    Sign s = m > 0 ? Sign::plus : Sign::minus;
    int am = m > 0 ? m : -m;
    CycloElem c0inv = phi_eigen(M, s, i, 0, k).inverse();
    std::vector<CycloElem> f(static_cast<std::size_t>(am) + 1, CycloElem(M.N)), g = f;
    for (int t = 1; t <= am; ++t) f[static_cast<std::size_t>(t)] = phi_eigen(M, s, i, sgn(s) * t, k) * c0inv;
    for (int t = 1; t <= am; ++t) {
        CycloElem acc = CycloElem(M.N, t) * f[static_cast<std::size_t>(t)];
        for (int j = 1; j < t; ++j)
            acc = acc - CycloElem(M.N, j) * g[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(t - j)];
        g[static_cast<std::size_t>(t)] = acc / CycloElem(M.N, t);
    }
    CycloElem h = g[static_cast<std::size_t>(am)] / qdiff(M);
    return s == Sign::plus ? h : -h;
}

std::string vector_str(const SpecializedModule& M, const CycloVector& v) {
    if (v.empty()) return "0";
    std::string out;
    for (auto& [k, c] : v) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ") v[" + ypart_str(M.basis[k]) + "]";
    }
    return out;
}

namespace {

struct CycloOps {
    using Scalar = CycloElem;
    const SpecializedModule& M;

    CycloElem one() const { return CycloElem(M.N, 1); }
    CycloElem from_int(std::int64_t n) const { return CycloElem(M.N, n); }
    CycloElem qpow(std::int64_t e) const { return M.eps(e); }
    CycloElem qnum(std::int64_t n) const { return (M.eps(n) - M.eps(-n)) / qdiff(M); }
    CycloElem qdiff_inv() const { return qdiff(M).inverse(); }
    const RootSystem& rs() const { return M.rs; }
    CycloVector basis(std::size_t k) const { return {{k, one()}}; }
    CycloVector x(Sign s, int i, std::int64_t r, const CycloVector& v) const { return act_x(M, s, i, r, v); }
    CycloVector k(int i, std::int64_t e, const CycloVector& v) const {
        CycloVector out;
        for (auto& [b, c] : v) out.emplace(b, c * M.eps(e * M.kexp[b][static_cast<std::size_t>(i)]));
        return out;
    }
    CycloVector phi(Sign s, int i, std::int64_t t, const CycloVector& v) const {
        CycloVector out;
        for (auto& [b, c] : v) detail::axpy_t(out, c * phi_eigen(M, s, i, t, b), basis(b));
        return out;
    }
    CycloVector h(int i, int m, const CycloVector& v) const {
        CycloVector out;
        for (auto& [b, c] : v) detail::axpy_t(out, c * h_eigen(M, i, m, b), basis(b));
        return out;
    }
    // no derivation at eps: only the h-part of the weight is compared
    CycloVector weight_defect(std::size_t node, Sign s, int j) const {
        CycloVector out;
        Weight a = M.rs.alpha(j);
        for (auto& [d, c] : act_x(M, s, j, 0, basis(node)))
            for (std::size_t i = 0; i < a.h.size(); ++i)
                if (M.kexp[d][i] != M.kexp[node][i] + sgn(s) * a.h[i]) {
                    out[d] = c;
                    break;
                }
        return out;
    }
};

}  // namespace

RelationReport relation_check_eps(const SpecializedModule& M, const std::vector<Rel>& rels, const RelRanges& ranges,
                                  bool keep_all) {
    RelationReport rep;
    rep.vectors = M.dim();
    CycloOps ops{M};
    for (Rel rel : rels) {
        auto specs = relation_specs(M.rs, rel, ranges);
        RelCounts& c = rep.by_rel[rel_str(rel)];
        for (auto& sp : specs)
            for (std::size_t k = 0; k < M.dim(); ++k) {
                CycloVector res = detail::relation_residual_t(ops, sp, k);
                ++c.checked;
                bool zero = res.empty();
                if (zero) ++c.zero;
                else ++c.nonzero;
                if (keep_all || !zero) rep.outcomes.push_back({sp, k, zero, "", zero ? "" : vector_str(M, res)});
            }
    }
    return rep;
}

namespace {

// rows keyed by pivot; each row has its pivot as smallest index, normalized to 1
struct Echelon {
    std::map<std::size_t, CycloVector> rows;

    // reduced copy of v, or nullopt if v is in the span
    std::optional<std::size_t> insert(CycloVector v) {
        while (!v.empty()) {
            auto [p, c] = *v.begin();
            auto it = rows.find(p);
            if (it == rows.end()) {
                CycloElem inv = c.inverse();
                CycloVector row;
                for (auto& [k, x] : v) row.emplace(k, x * inv);
                rows.emplace(p, std::move(row));
                return p;
            }
            CycloElem f = -c;
            detail::axpy_t(v, f, it->second);
        }
        return std::nullopt;
    }
};

}  // namespace

CyclicReport cyclic_generation_check(const SpecializedModule& M) {
    CyclicReport rep;
    int nodes = M.rs.nodes();
    for (std::size_t start = 0; start < M.dim(); ++start) {
        Echelon E;
        std::deque<std::size_t> todo;
        todo.push_back(*E.insert({{start, CycloElem(M.N, 1)}}));
        while (!todo.empty() && E.rows.size() < M.dim()) {
            CycloVector v = E.rows.at(todo.front());
            todo.pop_front();
            for (int i = 0; i < nodes && E.rows.size() < M.dim(); ++i)
                for (Sign s : {Sign::plus, Sign::minus})
                    for (int r = 0; r < M.N; ++r) {
                        auto p = E.insert(act_x(M, s, i, r, v));
                        if (p) todo.push_back(*p);
                    }
        }
        if (E.rows.size() < M.dim()) {
            rep.ok = false;
            rep.failing = start;
            rep.rank = E.rows.size();
            return rep;
        }
        rep.rank = E.rows.size();
    }
    return rep;
}

std::map<YPart, std::int64_t> qcharacter(const SpecializedModule& M) {
    std::map<YPart, std::int64_t> out;
    for (auto& y : M.basis) ++out[y];
    return out;
}

nlohmann::json unity_summary(const SpecializedModule& M) {
    nlohmann::json j;
    j["kind"] = M.kind;
    j["n"] = M.rs.n();
    if (M.kind == "thin") j["ell"] = M.ell;
    j["L"] = M.L;
    j["p"] = M.p;
    j["root_order"] = M.N;
    j["dimension"] = M.dim();
    nlohmann::json b = nlohmann::json::array();
    for (auto& y : M.basis) b.push_back(ypart_str(y));
    j["basis"] = b;
    return j;
}

nlohmann::json to_json(const SpecializedModule& M, const RelationReport& r) {
    nlohmann::json j;
    j["module"] = unity_summary(M);
    j["vectors"] = r.vectors;
    nlohmann::json counts = nlohmann::json::object();
    for (auto& [name, c] : r.by_rel)
        counts[name] = {{"checked", c.checked}, {"zero", c.zero}, {"nonzero", c.nonzero}};
    j["counts"] = counts;
    nlohmann::json list = nlohmann::json::array();
    for (auto& o : r.outcomes) {
        nlohmann::json e;
        e["relation"] = rel_str(o.spec.rel);
        e["params"] = spec_json(o.spec);
        e["vector"] = ypart_str(M.basis[o.node]);
        e["residual_is_zero"] = o.zero;
        if (!o.zero) e["residual"] = o.residual;
        list.push_back(e);
    }
    j["results"] = list;
    j["ok"] = r.ok();
    return j;
}

}  // namespace qtor
