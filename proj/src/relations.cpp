#include "qtor/relations.hpp"

#include "relation_core.hpp"

namespace qtor {

std::string rel_str(Rel r) {
    switch (r) {
        case Rel::kx: return "kx";
        case Rel::hh: return "hh";
        case Rel::hx: return "hx";
        case Rel::xpxm: return "xpxm";
        case Rel::xx: return "xx";
        case Rel::serre: return "serre";
        case Rel::comm: return "comm";
    }
    return "?";
}

Rel parse_rel(const std::string& s) {
    for (Rel r : all_relations())
        if (rel_str(r) == s) return r;
    throw std::invalid_argument("unknown relation: " + s);
}

const std::vector<Rel>& all_relations() {
    static const std::vector<Rel> v{Rel::kx, Rel::hh, Rel::hx, Rel::xpxm, Rel::xx, Rel::serre, Rel::comm};
    return v;
}

nlohmann::json spec_json(const RelationSpec& s) {
    nlohmann::json j;
    j["i"] = s.i;
    j["j"] = s.j;
    switch (s.rel) {
        case Rel::kx:
            j["sign"] = sgn(s.sign);
            break;
        case Rel::hh:
            j["m"] = s.m;
            j["m2"] = s.mp;
            break;
        case Rel::hx:
            j["sign"] = sgn(s.sign);
            j["m"] = s.m;
            j["r"] = s.r;
            break;
        case Rel::xpxm:
            j["r"] = s.r;
            j["r2"] = s.rp;
            break;
        case Rel::xx:
            j["sign"] = sgn(s.sign);
            j["r"] = s.r;
            j["r2"] = s.rp;
            break;
        case Rel::serre:
        case Rel::comm:
            j["sign"] = sgn(s.sign);
            j["r1"] = s.r1;
            j["r2"] = s.r2;
            if (s.rel == Rel::serre) j["r3"] = s.rp;
            break;
    }
    return j;
}

std::vector<RelationSpec> relation_specs(const RootSystem& rs, Rel rel, const RelRanges& R) {
    std::vector<RelationSpec> out;
    int N = rs.nodes();
    auto adjacent = [&](int i, int j) { return rs.node(i + 1) == j || rs.node(i - 1) == j; };
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (Sign s : {Sign::plus, Sign::minus}) {
                RelationSpec b;
                b.rel = rel;
                b.i = i;
                b.j = j;
                b.sign = s;
                switch (rel) {
                    case Rel::kx:
                        out.push_back(b);
                        break;
                    case Rel::hh:
                        if (s == Sign::minus) break;
                        for (int m : R.ms)
                            for (int mp : R.ms) {
                                b.m = m;
                                b.mp = mp;
                                out.push_back(b);
                            }
                        break;
                    case Rel::hx:
                        for (int m : R.ms)
                            for (int r = -R.rmax; r <= R.rmax; ++r) {
                                b.m = m;
                                b.r = r;
                                out.push_back(b);
                            }
                        break;
                    case Rel::xpxm:
                        if (s == Sign::minus) break;
                        for (int r = -R.rmax; r <= R.rmax; ++r)
                            for (int rp = -R.rmax; rp <= R.rmax; ++rp) {
                                b.r = r;
                                b.rp = rp;
                                out.push_back(b);
                            }
                        break;
                    case Rel::xx:
                        for (int r = -R.rmax; r <= R.rmax; ++r)
                            for (int rp = -R.rmax; rp <= R.rmax; ++rp) {
                                b.r = r;
                                b.rp = rp;
                                out.push_back(b);
                            }
                        break;
                    case Rel::serre:
                        // both neighbours, both signs; the relation is symmetric in r1, r2
                        if (!adjacent(i, j)) break;
                        for (int r1 = -R.rmax; r1 <= R.rmax; ++r1)
                            for (int r2 = r1; r2 <= R.rmax; ++r2)
                                for (int rp = -R.rmax; rp <= R.rmax; ++rp) {
                                    b.r1 = r1;
                                    b.r2 = r2;
                                    b.rp = rp;
                                    out.push_back(b);
                                }
                        break;
                    case Rel::comm:
                        if (i == j || adjacent(i, j)) break;
                        for (int r1 = -R.rmax; r1 <= R.rmax; ++r1)
                            for (int r2 = -R.rmax; r2 <= R.rmax; ++r2) {
                                b.r1 = r1;
                                b.r2 = r2;
                                out.push_back(b);
                            }
                        break;
                }
            }
    return out;
}

namespace {

struct LoopOps {
    using Scalar = RationalQ;
    const LoopModule& M;

    static const RationalQ& qdiff() {
        static const RationalQ d(LaurentPoly::qpow(1) - LaurentPoly::qpow(-1));
        return d;
    }
    RationalQ one() const { return RationalQ(1); }
    RationalQ from_int(std::int64_t n) const { return RationalQ(n); }
    RationalQ qpow(std::int64_t e) const { return RationalQ::qpow(e); }
    // [n]_q, n may be negative
    RationalQ qnum(std::int64_t n) const { return RationalQ(LaurentPoly::qpow(n) - LaurentPoly::qpow(-n)) / qdiff(); }
    RationalQ qdiff_inv() const { return qdiff().inverse(); }
    const RootSystem& rs() const { return M.rs(); }
    Vector basis(std::size_t k) const { return basis_vector(k); }
    Vector x(Sign s, int i, std::int64_t r, const Vector& v) const { return act_x(M, s, i, r, v); }
    Vector k(int i, std::int64_t e, const Vector& v) const { return act_k(M, i, e, v); }
    Vector phi(Sign s, int i, std::int64_t t, const Vector& v) const { return act_phi(M, s, i, t, v); }
    Vector h(int i, int m, const Vector& v) const { return act_h(M, i, m, v); }
    // the delta part is included
    Vector weight_defect(std::size_t node, Sign s, int j) const {
        Vector out;
        Weight want = M.graph.nodes[node].wt + (sgn(s) * M.rs().alpha(j));
        for (auto& [d, c] : act_x(M, s, j, 0, basis_vector(node)))
            if (!(M.graph.nodes[d].wt == want)) out[d] = c;
        return out;
    }
};

}  // namespace

Residual relation_residual(const LoopModule& M, const RelationSpec& spec, std::size_t k) {
    Residual res;
    try {
        res.value = detail::relation_residual_t(LoopOps{M}, spec, k);
    } catch (const WindowError& e) {
        res.inconclusive = true;
        res.reason = e.what();
    }
    return res;
}

RelCounts RelationReport::total() const {
    RelCounts t;
    for (auto& [_, c] : by_rel) {
        t.checked += c.checked;
        t.zero += c.zero;
        t.nonzero += c.nonzero;
        t.inconclusive += c.inconclusive;
    }
    return t;
}

RelationReport relation_suite(const LoopModule& M, const std::vector<Rel>& rels, const RelRanges& ranges,
                              bool keep_all) {
    RelationReport rep;
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k < M.dim(); ++k)
        if (M.interior[k]) nodes.push_back(k);
    rep.vectors = nodes.size();
    for (Rel rel : rels) {
        auto specs = relation_specs(M.rs(), rel, ranges);
        RelCounts& c = rep.by_rel[rel_str(rel)];
        for (auto& sp : specs)
            for (std::size_t k : nodes) {
                Residual r = relation_residual(M, sp, k);
                ++c.checked;
                bool zero = !r.inconclusive && r.value.empty();
                if (r.inconclusive) ++c.inconclusive;
                else if (zero) ++c.zero;
                else ++c.nonzero;
                if (keep_all || (!r.inconclusive && !zero))
                    rep.outcomes.push_back({sp, k, zero, r.reason, r.inconclusive ? "" : vector_str(M, r.value)});
            }
    }
    return rep;
}

nlohmann::json to_json(const LoopModule& M, const RelationReport& r) {
    nlohmann::json j;
    j["module"] = module_summary(M);
    j["vectors"] = r.vectors;
    nlohmann::json counts = nlohmann::json::object();
    for (auto& [name, c] : r.by_rel)
        counts[name] = {{"checked", c.checked}, {"zero", c.zero}, {"nonzero", c.nonzero}, {"inconclusive", c.inconclusive}};
    j["counts"] = counts;
    nlohmann::json list = nlohmann::json::array();
    for (auto& o : r.outcomes) {
        nlohmann::json e;
        e["relation"] = rel_str(o.spec.rel);
        e["params"] = spec_json(o.spec);
        e["vector"] = M.graph.nodes[o.node].str();
        e["residual_is_zero"] = o.zero;
        if (!o.inconclusive_reason.empty()) e["inconclusive_reason"] = o.inconclusive_reason;
        else if (!o.zero) e["residual"] = o.residual;
        list.push_back(e);
    }
    j["results"] = list;
    j["ok"] = r.ok();
    return j;
}

}  // namespace qtor
