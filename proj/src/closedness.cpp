#include "qtor/closedness.hpp"

#include <algorithm>
#include <unordered_set>

namespace qtor {

std::string sl2_str(const Sl2Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (auto [l, u] : m) {
        s += "Y_{" + std::to_string(l) + "}";
        if (u != 1) s += "^{" + std::to_string(u) + "}";
    }
    return s;
}

Sl2Monomial sl2_row(const YPart& y, int i) {
    Sl2Monomial m;
    for (auto& f : y)
        if (f.i == i) m[f.l] = f.u;
    return m;
}

std::vector<std::pair<std::int64_t, int>> sl2_strings(const Sl2Monomial& dominant) {
    std::map<std::int64_t, std::int64_t> left;
    for (auto [l, u] : dominant) {
        if (u < 0) throw ClosednessError("not dominant: " + sl2_str(dominant));
        if (u > 0) left[l] = u;
    }
    std::vector<std::pair<std::int64_t, int>> out;
    while (!left.empty()) {
        std::int64_t a = left.begin()->first, x = a;
        int k = 0;
        for (auto it = left.find(x); it != left.end(); it = left.find(x)) {
            if (--it->second == 0) left.erase(it);
            x += 2;
            ++k;
        }
        out.emplace_back(a, k);
    }
    for (std::size_t s = 0; s < out.size(); ++s)
        for (std::size_t t = s + 1; t < out.size(); ++t) {
            auto [a1, k1] = out[s];
            auto [a2, k2] = out[t];
            std::int64_t e1 = a1 + 2 * (k1 - 1), e2 = a2 + 2 * (k2 - 1);
            if ((a1 - a2) % 2 != 0) continue;
            bool union_is_string = a2 <= e1 + 2 && a1 <= e2 + 2;
            bool nested = (a1 <= a2 && e2 <= e1) || (a2 <= a1 && e1 <= e2);
            if (union_is_string && !nested)
                throw Sl2UnsupportedError("q-strings in special position in " + sl2_str(dominant));
        }
    return out;
}

std::vector<Sl2Term> sl2_simple_qchar(const Sl2Monomial& dominant) {
    std::vector<Sl2Term> acc{Sl2Term{}};
    for (auto [a, k] : sl2_strings(dominant)) {
        std::vector<Sl2Term> next;
        for (int t = 0; t <= k; ++t) {
            Sl2Term s;
            for (int p = 0; p < k; ++p) {
                if (p < k - t) {
                    s.mono[a + 2 * p] += 1;
                } else {
                    s.mono[a + 2 * p + 2] -= 1;
                    s.lower[a + 2 * p + 1] += 1;
                }
            }
            for (auto& x : acc) {
                Sl2Term r = x;
                for (auto [l, u] : s.mono)
                    if ((r.mono[l] += u) == 0) r.mono.erase(l);
                for (auto [l, c] : s.lower) r.lower[l] += c;
                next.push_back(std::move(r));
            }
        }
        acc = std::move(next);
    }
    std::map<Sl2Monomial, Sl2Term> merged;
    for (auto& t : acc) {
        auto [it, fresh] = merged.emplace(t.mono, t);
        if (!fresh) it->second.mult += t.mult;
    }
    std::vector<Sl2Term> out;
    for (auto& [m, t] : merged) out.push_back(t);
    return out;
}

YPart QContext::a(int i, std::int64_t l) const {
    switch (kind) {
        case Kind::single_row:
            return ypart_from({{i, l - 1, 1}, {i, l + 1, 1}});
        case Kind::drop_row: {
            YPart y = a_ypart(rs, i, l);
            std::erase_if(y, [&](const YFactor& f) { return f.i == dropped; });
            return y;
        }
        case Kind::toroidal:
            break;
    }
    return a_ypart(rs, i, l);
}

QSet qset_of(const CrystalGraph& g) {
    QSet s;
    for (auto& m : g.nodes) s.items.push_back(m.y);
    s.interior = g.interior;
    s.win = g.win;
    return s;
}

std::string qverdict_str(QVerdict v) {
    switch (v) {
        case QVerdict::closed:
            return "closed";
        case QVerdict::not_closed:
            return "not_closed";
        case QVerdict::inconclusive:
            return "inconclusive";
    }
    return "?";
}

namespace {

using ClassKey = std::pair<YPart, std::int64_t>;

ClassKey class_key(const QContext& ctx, const YPart& y, int i) {
    int N = ctx.rs.nodes();
    if (ctx.kind == QContext::Kind::drop_row && i == ctx.dropped)
        throw ClosednessError("direction " + std::to_string(i) + " was erased");
    if (ctx.kind != QContext::Kind::single_row) {
        for (int nb : {(i + 1) % N, (i + N - 1) % N}) {
            if (ctx.kind == QContext::Kind::drop_row && nb == ctx.dropped) continue;
            // cancel row nb against A_{i,l}, whose only nb-factor is Y_{nb,l}^{-1}
            YPart key = y;
            for (auto& f : y)
                if (f.i == nb) key = ypart_mul(key, ypart_pow(ctx.a(i, f.l), f.u));
            return {key, 0};
        }
    }
    // Y_{l-1}Y_{l+1} generates the kernel of the alternating sum
    YPart rest;
    std::int64_t alt = 0;
    for (auto& f : y) {
        if (f.i != i) {
            rest.push_back(f);
            continue;
        }
        std::int64_t h = f.l >= 0 ? f.l / 2 : -((-f.l + 1) / 2);
        alt += (h % 2 == 0) ? f.u : -f.u;
    }
    return {rest, alt};
}

std::int64_t row_degree(const YPart& y, int i) { return ypart_row_sum(y, i); }

struct SetIndex {
    std::unordered_set<YPart, YPartHash> all;
    explicit SetIndex(const QSet& S) : all(S.items.begin(), S.items.end()) {}
    bool has(const YPart& y) const { return all.count(y) != 0; }
};

ClassResult run_class(const QContext& ctx, const QSet& S, const SetIndex& idx, int i,
                      std::vector<std::size_t> members) {
    ClassResult r;
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        auto da = row_degree(S.items[a], i), db = row_degree(S.items[b], i);
        return da != db ? da > db : S.items[a] < S.items[b];
    });
    r.members = members;
    r.coverage.assign(members.size(), 0);
    std::map<Sl2Monomial, std::size_t> by_image;  // -> position in members
    for (std::size_t p = 0; p < members.size(); ++p) {
        if (!by_image.emplace(sl2_row(S.items[members[p]], i), p).second)
            throw ClosednessError("two members of one class share an image: " + ypart_str(S.items[members[p]]));
        if (!S.interior.empty() && !S.interior[members[p]]) r.boundary = true;
    }
    auto fail = [&](const YPart& from, const YPart& missing, bool absent) {
        r.witness_from = from;
        r.witness_missing = missing;
        r.witness_absent = absent;
        bool outside = S.win && !S.win->contains(missing);
        r.verdict = (r.boundary || outside || !absent) ? QVerdict::inconclusive : QVerdict::not_closed;
        if (outside) r.note = "witness outside the window";
        else if (r.boundary) r.note = "class touches the window edge";
        else if (!absent) r.note = "greedy subtraction stuck at " + ypart_str(from);
        return r;
    };
    for (std::size_t p = 0; p < members.size(); ++p) {
        if (r.coverage[p] > 0) continue;
        const YPart& m = S.items[members[p]];
        Sl2Monomial x = sl2_row(m, i);
        // highest uncovered element must be dominant; otherwise m * A_{i,l-1} is required
        std::optional<YPart> first;
        for (auto [l, u] : x) {
            if (u >= 0) continue;
            YPart w = ypart_mul(m, ctx.a(i, l - 1));
            if (!first) first = w;
            if (!idx.has(w)) return fail(m, w, true);
        }
        if (first) return fail(m, *first, false);
        std::vector<Sl2Term> chi;
        try {
            chi = sl2_simple_qchar(x);
        } catch (const Sl2UnsupportedError& e) {
            r.verdict = QVerdict::inconclusive;
            r.note = e.what();
            return r;
        }
        for (auto& t : chi) {
            auto it = by_image.find(t.mono);
            if (it == by_image.end()) {
                YPart w = m;
                for (auto [l, c] : t.lower) w = ypart_mul(w, ypart_pow(ctx.a(i, l), -c));
                return fail(m, w, true);
            }
        }
        for (auto& t : chi) r.coverage[by_image.at(t.mono)] += t.mult;
        r.heads.push_back(members[p]);
    }
    return r;
}

std::map<ClassKey, std::vector<std::size_t>> classes_of(const QContext& ctx, const QSet& S, int i) {
    std::map<ClassKey, std::vector<std::size_t>> cls;
    for (std::size_t k = 0; k < S.items.size(); ++k) cls[class_key(ctx, S.items[k], i)].push_back(k);
    return cls;
}

}  // namespace

ClassResult qclosed_class(const QContext& ctx, const QSet& S, int i, std::size_t k) {
    ClassKey key = class_key(ctx, S.items.at(k), i);
    std::vector<std::size_t> members;
    for (std::size_t t = 0; t < S.items.size(); ++t)
        if (class_key(ctx, S.items[t], i) == key) members.push_back(t);
    return run_class(ctx, S, SetIndex(S), i, std::move(members));
}

DirectionReport qclosed_direction(const QContext& ctx, const QSet& S, int i) {
    DirectionReport d;
    d.i = i;
    SetIndex idx(S);
    bool unsupported = false;
    for (auto& [key, members] : classes_of(ctx, S, i)) {
        ++d.classes;
        ClassResult c = run_class(ctx, S, idx, i, members);
        if (c.verdict == QVerdict::not_closed && d.verdict != QVerdict::not_closed) {
            d.verdict = QVerdict::not_closed;
            d.witness_from = c.witness_from;
            d.witness_missing = c.witness_missing;
        } else if (c.verdict == QVerdict::inconclusive) {
            if (c.boundary || (S.win && c.witness_missing && !S.win->contains(*c.witness_missing))) {
                ++d.boundary_classes;
            } else {
                unsupported = true;
                d.note = c.note;
            }
        }
    }
    if (unsupported && d.verdict == QVerdict::closed) d.verdict = QVerdict::inconclusive;
    return d;
}

std::optional<YPart> kashiwara_op(const QContext& ctx, const YPart& y, int i, bool raise) {
    KStats st = stats(y, i);
    if (raise) return st.p ? std::optional(ypart_mul(y, ctx.a(i, *st.p - 1))) : std::nullopt;
    return st.q ? std::optional(ypart_mul(y, ypart_inv(ctx.a(i, *st.q + 1)))) : std::nullopt;
}

KashiwaraReport kashiwara_closed(const QContext& ctx, const QSet& S, const std::vector<int>& J) {
    KashiwaraReport r;
    SetIndex idx(S);
    for (std::size_t k = 0; k < S.items.size(); ++k) {
        if (!S.interior.empty() && !S.interior[k]) continue;
        for (int i : J)
            for (auto img : {kashiwara_op(ctx, S.items[k], i, true), kashiwara_op(ctx, S.items[k], i, false)})
                if (img && !idx.has(*img)) {
                    r.closed = false;
                    r.from = S.items[k];
                    r.missing = *img;
                    r.i = i;
                    return r;
                }
    }
    return r;
}

ClosednessReport closed_report(const RootSystem& rs, int ell, Window win) {
    ClosednessReport r;
    r.n = rs.n();
    r.ell = ell;
    r.win = win;
    r.window_ok = win.lmax - win.lmin >= 4 * static_cast<std::int64_t>(rs.n() + 1);
    CrystalGraph g = generate(rs, {fundamental_anchor(rs, ell)}, win);
    r.nodes = g.size();
    QSet S = qset_of(g);
    QContext ctx = QContext::toroidal(rs);
    std::vector<int> all;
    for (int i = 0; i < rs.nodes(); ++i) {
        all.push_back(i);
        r.directions.push_back(qclosed_direction(ctx, S, i));
    }
    r.kashiwara = kashiwara_closed(ctx, S, all);
    bool bad = !r.kashiwara.closed, unsure = !r.window_ok;
    for (auto& d : r.directions) {
        bad = bad || d.verdict == QVerdict::not_closed;
        unsure = unsure || d.verdict == QVerdict::inconclusive;
    }
    r.verdict = !r.window_ok ? QVerdict::inconclusive
                : bad        ? QVerdict::not_closed
                : unsure     ? QVerdict::inconclusive
                             : QVerdict::closed;
    return r;
}

nlohmann::json to_json(const ClosednessReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["ell"] = r.ell;
    j["window"] = {r.win.lmin, r.win.lmax};
    j["window_ok"] = r.window_ok;
    j["nodes"] = r.nodes;
    j["verdict"] = qverdict_str(r.verdict);
    j["directions"] = nlohmann::json::array();
    for (auto& d : r.directions) {
        nlohmann::json x;
        x["i"] = d.i;
        x["verdict"] = qverdict_str(d.verdict);
        x["classes"] = d.classes;
        x["boundary_classes"] = d.boundary_classes;
        if (d.witness_from) x["witness"] = {ypart_str(*d.witness_from), ypart_str(*d.witness_missing)};
        j["directions"].push_back(x);
    }
    j["kashiwara_closed"] = r.kashiwara.closed;
    if (!r.kashiwara.closed)
        j["kashiwara_witness"] = {ypart_str(*r.kashiwara.from), ypart_str(*r.kashiwara.missing), r.kashiwara.i};
    return j;
}

}  // namespace qtor
