#include "qtor/crystal.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qtor {

KStats stats(const YPart& y, int i) {
    KStats s;
    auto lo = std::lower_bound(y.begin(), y.end(), YFactor{i, INT64_MIN, 0});
    auto hi = lo;
    while (hi != y.end() && hi->i == i) ++hi;
    std::int64_t run = 0;
    for (auto it = lo; it != hi; ++it) {
        run += it->u;
        if (run > s.phi) {
            s.phi = run;
            s.q = it->l;
        }
    }
    run = 0;
    for (auto it = hi; it != lo;) {
        --it;
        run -= it->u;
        if (run > s.eps) {
            s.eps = run;
            s.p = it->l;
        }
    }
    return s;
}

std::optional<YPart> e_tilde(const RootSystem& rs, const YPart& y, int i) {
    auto s = stats(y, i);
    if (s.eps == 0) return std::nullopt;
    return ypart_mul(y, a_ypart(rs, i, *s.p - 1));
}

std::optional<YPart> f_tilde(const RootSystem& rs, const YPart& y, int i) {
    auto s = stats(y, i);
    if (s.phi == 0) return std::nullopt;
    return ypart_mul(y, ypart_inv(a_ypart(rs, i, *s.q + 1)));
}

std::optional<Monomial> e_tilde(const RootSystem& rs, const Monomial& m, int i) {
    auto y = e_tilde(rs, m.y, i);
    if (!y) return std::nullopt;
    return Monomial{std::move(*y), m.wt + rs.alpha(i)};
}

std::optional<Monomial> f_tilde(const RootSystem& rs, const Monomial& m, int i) {
    auto y = f_tilde(rs, m.y, i);
    if (!y) return std::nullopt;
    return Monomial{std::move(*y), m.wt - rs.alpha(i)};
}

bool Window::contains(const YPart& y) const {
    for (auto& f : y)
        if (f.l < lmin || f.l > lmax) return false;
    return true;
}

std::optional<std::size_t> CrystalGraph::find(const YPart& y) const {
    auto it = index.find(y);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::size_t CrystalGraph::index_of(const YPart& y) const {
    auto k = find(y);
    if (!k) throw CrystalError("monomial " + ypart_str(y) + " is not in the crystal window");
    return *k;
}

CrystalGraph generate(const RootSystem& rs, const std::vector<Monomial>& anchors, Window win,
                      std::size_t max_nodes) {
    if (win.lmin > win.lmax) throw CrystalError("empty window");
    if (anchors.empty()) throw CrystalError("no anchors given");
    CrystalGraph g;
    g.rs = rs;
    g.win = win;
    g.anchors = anchors;

    const int N = rs.nodes();
    std::vector<Monomial> nodes;
    std::unordered_map<YPart, std::size_t, YPartHash> idx;
    std::vector<std::vector<std::int64_t>> fn, en;
    std::deque<std::size_t> queue;

    auto add = [&](Monomial m) -> std::size_t {
        auto [it, fresh] = idx.emplace(m.y, nodes.size());
        if (!fresh) {
            if (!(nodes[it->second].wt == m.wt))
                throw CrystalError("anchors disagree on the weight of " + ypart_str(m.y));
            return it->second;
        }
        if (nodes.size() >= max_nodes) throw CrystalError("crystal exceeds node limit; shrink the window");
        nodes.push_back(std::move(m));
        fn.emplace_back(static_cast<std::size_t>(N), kNone);
        en.emplace_back(static_cast<std::size_t>(N), kNone);
        queue.push_back(nodes.size() - 1);
        return nodes.size() - 1;
    };

    for (auto& a : anchors) {
        make_monomial(rs, a.y, a.wt);  // validates
        if (!win.contains(a.y)) throw CrystalError("anchor " + a.str() + " lies outside the window");
        add(a);
    }
    while (!queue.empty()) {
        std::size_t k = queue.front();
        queue.pop_front();
        for (int i = 0; i < N; ++i) {
            auto s = stats(nodes[k].y, i);
            if (s.phi > 0) {
                YPart y = ypart_mul(nodes[k].y, ypart_inv(a_ypart(rs, i, *s.q + 1)));
                if (win.contains(y)) {
                    Weight w = nodes[k].wt - rs.alpha(i);
                    std::size_t t = add(Monomial{std::move(y), std::move(w)});
                    fn[k][static_cast<std::size_t>(i)] = static_cast<std::int64_t>(t);
                } else {
                    fn[k][static_cast<std::size_t>(i)] = kOutside;
                }
            }
            if (s.eps > 0) {
                YPart y = ypart_mul(nodes[k].y, a_ypart(rs, i, *s.p - 1));
                if (win.contains(y)) {
                    Weight w = nodes[k].wt + rs.alpha(i);
                    std::size_t t = add(Monomial{std::move(y), std::move(w)});
                    en[k][static_cast<std::size_t>(i)] = static_cast<std::int64_t>(t);
                } else {
                    en[k][static_cast<std::size_t>(i)] = kOutside;
                }
            }
        }
    }

    // canonical order
    std::vector<std::size_t> perm(nodes.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return nodes[a].y < nodes[b].y; });
    std::vector<std::int64_t> inv(nodes.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = static_cast<std::int64_t>(k);
    auto remap = [&](std::int64_t t) { return t >= 0 ? inv[static_cast<std::size_t>(t)] : t; };

    g.nodes.reserve(nodes.size());
    g.fnext.resize(nodes.size());
    g.enext.resize(nodes.size());
    g.interior.resize(nodes.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        std::size_t old = perm[k];
        g.nodes.push_back(std::move(nodes[old]));
        g.fnext[k].resize(static_cast<std::size_t>(N));
        g.enext[k].resize(static_cast<std::size_t>(N));
        bool inside = true;
        for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i) {
            g.fnext[k][i] = remap(fn[old][i]);
            g.enext[k][i] = remap(en[old][i]);
            if (g.fnext[k][i] == kOutside || g.enext[k][i] == kOutside) inside = false;
            if (g.fnext[k][i] >= 0)
                g.edges.push_back({k, static_cast<int>(i), static_cast<std::size_t>(g.fnext[k][i])});
        }
        g.interior[k] = inside;
        g.index.emplace(g.nodes[k].y, k);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

CrystalGraph sub_crystal(const CrystalGraph& g, const YPart& m, const std::vector<int>& J) {
    std::size_t start = g.index_of(m);
    std::vector<bool> inJ(static_cast<std::size_t>(g.rs.nodes()), false);
    for (int j : J) inJ.at(static_cast<std::size_t>(j)) = true;
    std::set<std::size_t> seen{start};
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
        std::size_t k = queue.front();
        queue.pop_front();
        for (int j : J)
            for (auto t : {g.fnext[k][static_cast<std::size_t>(j)], g.enext[k][static_cast<std::size_t>(j)]})
                if (t >= 0 && seen.insert(static_cast<std::size_t>(t)).second) queue.push_back(static_cast<std::size_t>(t));
    }
    CrystalGraph s;
    s.rs = g.rs;
    s.win = g.win;
    s.anchors = {g.nodes[start]};
    std::vector<std::int64_t> newidx(g.size(), -1);
    for (std::size_t k : seen) {  // std::set keeps canonical order
        newidx[k] = static_cast<std::int64_t>(s.nodes.size());
        s.index.emplace(g.nodes[k].y, s.nodes.size());
        s.nodes.push_back(g.nodes[k]);
    }
    auto N = static_cast<std::size_t>(g.rs.nodes());
    for (std::size_t k : seen) {
        std::vector<std::int64_t> f(N, kNone), e(N, kNone);
        bool inside = true;
        for (std::size_t i = 0; i < N; ++i) {
            if (!inJ[i]) continue;
            auto ft = g.fnext[k][i], et = g.enext[k][i];
            f[i] = ft >= 0 ? newidx[static_cast<std::size_t>(ft)] : ft;
            e[i] = et >= 0 ? newidx[static_cast<std::size_t>(et)] : et;
            if (ft == kOutside || et == kOutside) inside = false;
            if (f[i] >= 0)
                s.edges.push_back({static_cast<std::size_t>(newidx[k]), static_cast<int>(i), static_cast<std::size_t>(f[i])});
        }
        s.fnext.push_back(std::move(f));
        s.enext.push_back(std::move(e));
        s.interior.push_back(inside);
    }
    std::sort(s.edges.begin(), s.edges.end());
    return s;
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::extremal: return "extremal";
        case Verdict::not_extremal: return "not-extremal";
        case Verdict::inconclusive_window: return "inconclusive-window";
    }
    return "?";
}

Monomial s_reflect(const RootSystem& rs, const Monomial& m, int i) {
    std::int64_t k = ypart_row_sum(m.y, i);
    Monomial x = m;
    for (std::int64_t t = 0; t < (k >= 0 ? k : -k); ++t) {
        auto nx = k > 0 ? f_tilde(rs, x, i) : e_tilde(rs, x, i);
        if (!nx) throw CrystalError("S_i string broke off early");
        x = std::move(*nx);
    }
    return x;
}

ExtremalReport is_extremal(const CrystalGraph& g, const YPart& m, int depth) {
    ExtremalReport rep;
    const RootSystem& rs = g.rs;
    rep.word_cap = depth * rs.nodes();
    Monomial start = g.nodes[g.index_of(m)];
    std::set<YPart> seen{start.y};
    std::vector<Monomial> level{start};
    bool left = false;
    for (int len = 0; !level.empty(); ++len) {
        std::vector<Monomial> next;
        for (auto& x : level) {
            rep.orbit.push_back(x);
            auto k = g.find(x.y);
            if (!k || !g.interior[*k]) left = true;
            for (int i = 0; i < rs.nodes(); ++i) {
                auto s = stats(x.y, i);
                if (s.eps > 0 && s.phi > 0) {
                    rep.verdict = Verdict::not_extremal;
                    rep.witness = x;
                    rep.witness_i = i;
                    return rep;
                }
            }
            if (len == rep.word_cap) continue;
            for (int i = 0; i < rs.nodes(); ++i) {
                Monomial y = s_reflect(rs, x, i);
                if (seen.insert(y.y).second) next.push_back(std::move(y));
            }
        }
        level = std::move(next);
    }
    rep.verdict = left ? Verdict::inconclusive_window : Verdict::extremal;
    return rep;
}

TwistReport check_twist(const CrystalGraph& g, const std::function<YPart(const YPart&)>& map,
                        const std::function<int(int)>& theta) {
    TwistReport rep;
    const RootSystem& rs = g.rs;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!g.interior[k]) continue;
        ++rep.checked;
        const YPart& b = g.nodes[k].y;
        YPart mb = map(b);
        for (int i = 0; i < rs.nodes(); ++i) {
            int ti = rs.node(theta(i));
            auto fb = f_tilde(rs, b, i);
            auto lhs = f_tilde(rs, mb, ti);
            std::optional<YPart> rhs;
            if (fb) rhs = map(*fb);
            if (lhs != rhs) rep.violations.push_back({k, i, 'f'});
            auto eb = e_tilde(rs, b, i);
            auto lhs2 = e_tilde(rs, mb, ti);
            std::optional<YPart> rhs2;
            if (eb) rhs2 = map(*eb);
            if (lhs2 != rhs2) rep.violations.push_back({k, i, 'e'});
        }
    }
    return rep;
}

Monomial fundamental_anchor(const RootSystem& rs, int ell) {
    return make_monomial(rs, ypart_from({{ell, 0, 1}, {0, rs.dist(ell), -1}}), rs.varpi(ell));
}

Monomial level2_anchor(const RootSystem& rs, int s) {
    if (rs.n() != 3) throw CrystalError("the level-two anchor is defined for n = 3");
    Weight w = 2 * rs.varpi(1);
    w.delta = s;
    std::int64_t s4 = 4 * static_cast<std::int64_t>(s);
    return make_monomial(rs, ypart_from({{1, 1, 1}, {1, -1 - s4, 1}, {0, 2, -1}, {0, -s4, -1}}), w);
}

std::string to_dot(const CrystalGraph& g) {
    std::ostringstream os;
    os << "digraph crystal {\n";
    for (std::size_t k = 0; k < g.size(); ++k)
        os << "  n" << k << " [label=\"" << g.nodes[k].str() << "\"" << (g.interior[k] ? "" : ", style=dashed")
           << "];\n";
    for (auto& e : g.edges) os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << e.i << "\"];\n";
    os << "}\n";
    return os.str();
}

nlohmann::json to_json(const CrystalGraph& g) {
    nlohmann::json j;
    j["n"] = g.rs.n();
    j["window"] = {g.win.lmin, g.win.lmax};
    j["nodes"] = nlohmann::json::array();
    for (auto& m : g.nodes) j["nodes"].push_back(monomial_to_json(m));
    j["edges"] = nlohmann::json::array();
    for (auto& e : g.edges) j["edges"].push_back({e.src, e.i, e.dst});
    j["interior"] = g.interior;
    return j;
}

}  // namespace qtor
