#include "qtor/torep.hpp"

#include "torep_internal.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace qtor {

Vector basis_vector(std::size_t k) { return {{k, RationalQ(1)}}; }

static void add_entry(Vector& out, std::size_t k, const RationalQ& c) {
    if (c.is_zero()) return;
    auto it = out.find(k);
    if (it == out.end()) {
        out.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
}

void axpy(Vector& out, const RationalQ& c, const Vector& v) {
    if (c.is_zero()) return;
    for (auto& [k, x] : v) add_entry(out, k, c.is_one() ? x : c * x);
}

Vector scaled(const Vector& v, const RationalQ& c) {
    Vector out;
    axpy(out, c, v);
    return out;
}

bool is_zero(const Vector& v) { return v.empty(); }

std::string vector_str(const LoopModule& M, const Vector& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : v) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ") v[" << M.graph.nodes[k].str() << "]";
    }
    return os.str();
}

void detail::init_tables(LoopModule& M) {
    std::size_t N = M.dim();
    auto nodes = static_cast<std::size_t>(M.rs().nodes());
    M.x.assign(N, std::vector<std::array<std::vector<ActTerm>, 2>>(nodes));
    M.xok.assign(N, std::vector<std::array<bool, 2>>(nodes, {true, true}));
    M.phi.assign(N, std::vector<std::vector<PhiTerm>>(nodes));
    M.phiok.assign(N, std::vector<bool>(nodes, true));
    M.interior.assign(N, true);
}

void detail::finish_interior(LoopModule& M) {
    for (std::size_t k = 0; k < M.dim(); ++k) {
        bool ok = M.graph.interior[k];
        for (std::size_t i = 0; i < M.xok[k].size(); ++i) ok = ok && M.xok[k][i][0] && M.xok[k][i][1] && M.phiok[k][i];
        M.interior[k] = ok;
    }
}

LoopModule build_thin(const RootSystem& rs, int ell, Window win, bool refuse_open) {
    int n = rs.n();
    if (ell < 1 || ell > n) throw TorepError("ell out of range");
    if (refuse_open && ell != 1 && ell != rs.r() + 1 && ell != n) {
        auto rep = closed_report(rs, ell, win);
        std::string w = "no witness inside the window";
        for (auto& d : rep.directions)
            if (d.verdict == QVerdict::not_closed && d.witness_missing) {
                w = "direction " + std::to_string(d.i) + ": " + ypart_str(*d.witness_from) + " needs " +
                    ypart_str(*d.witness_missing);
                break;
            }
        throw NotClosedError("the crystal of ell=" + std::to_string(ell) + " is not closed for n=" +
                             std::to_string(n) + " (only ell in {1, r+1, n} are); " + w);
    }
    LoopModule M;
    M.flavor = Flavor::thin;
    M.ell = ell;
    M.graph = generate(rs, {fundamental_anchor(rs, ell)}, win);
    detail::init_tables(M);
    for (std::size_t k = 0; k < M.dim(); ++k) {
        const auto& y = M.graph.nodes[k].y;
        for (int i = 0; i <= n; ++i) {
            auto ui = static_cast<std::size_t>(i);
            auto st = stats(y, i);
            std::int64_t e = M.graph.enext[k][ui], f = M.graph.fnext[k][ui];
            if (e >= 0) M.x[k][ui][0].push_back({static_cast<std::size_t>(e), RationalQ(1), *st.p - 1, true});
            if (e == kOutside) M.xok[k][ui][0] = false;
            if (f >= 0) M.x[k][ui][1].push_back({static_cast<std::size_t>(f), RationalQ(1), *st.q + 1, true});
            if (f == kOutside) M.xok[k][ui][1] = false;
            if (st.phi > 0) M.phi[k][ui].push_back({RationalQ(st.phi), *st.q + 1});
            if (st.eps > 0) M.phi[k][ui].push_back({RationalQ(-st.eps), *st.p - 1});
        }
    }
    detail::finish_interior(M);
    return M;
}

LoopModule spectral_twist(const LoopModule& M, std::int64_t k) {
    LoopModule T = M;
    T.hcache.clear();
    for (auto& per : T.x)
        for (auto& ps : per)
            for (auto& v : ps)
                for (auto& t : v) t.base = add_ck(t.base, k);
    for (auto& per : T.phi)
        for (auto& v : per)
            for (auto& t : v) t.base = add_ck(t.base, k);
    return T;
}

static void check_label(const LoopModule& M, int i) {
    if (i < 0 || i >= M.rs().nodes()) throw TorepError("label out of range: " + std::to_string(i));
}

Vector act_x(const LoopModule& M, Sign s, int i, std::int64_t r, const Vector& v) {
    check_label(M, i);
    auto ui = static_cast<std::size_t>(i);
    Vector out;
    for (auto& [k, c] : v) {
        if (!M.xok[k][ui][static_cast<std::size_t>(slot(s))])
            throw WindowError("x" + std::string(s == Sign::plus ? "+" : "-") + "_" + std::to_string(i) +
                              " leaves the window at " + M.graph.nodes[k].str());
        for (auto& t : M.x[k][ui][static_cast<std::size_t>(slot(s))]) {
            std::int64_t e = mul_ck(r, t.base);
            add_entry(out, t.dst, t.unit ? c.times_qpow(e) : c * t.c.times_qpow(e));
        }
    }
    return out;
}

Vector act_k(const LoopModule& M, int i, std::int64_t e, const Vector& v) {
    check_label(M, i);
    Vector out;
    for (auto& [k, c] : v) add_entry(out, k, c.times_qpow(mul_ck(e, M.k_exp(k, i))));
    return out;
}

static const RationalQ& qdiff() {
    static const RationalQ d(LaurentPoly::qpow(1) - LaurentPoly::qpow(-1));
    return d;
}

// eigenvalue of phi^{+}_{i,index} (plus) or phi^{-}_{i,index} (minus) on v_k
static RationalQ phi_eigen(const LoopModule& M, Sign s, int i, std::int64_t index, std::size_t k) {
    auto ui = static_cast<std::size_t>(i);
    if (s == Sign::plus && index < 0) return RationalQ();
    if (s == Sign::minus && index > 0) return RationalQ();
    if (index == 0) return RationalQ::qpow(sgn(s) * M.k_exp(k, i));
    if (!M.phiok[k][ui]) throw WindowError("phi_" + std::to_string(i) + " unknown at " + M.graph.nodes[k].str());
    RationalQ acc;
    for (auto& t : M.phi[k][ui]) acc += t.w.times_qpow(mul_ck(index, t.base));
    return s == Sign::plus ? qdiff() * acc : -(qdiff() * acc);
}

Vector act_phi(const LoopModule& M, Sign s, int i, std::int64_t index, const Vector& v) {
    check_label(M, i);
    Vector out;
    for (auto& [k, c] : v) add_entry(out, k, c * phi_eigen(M, s, i, index, k));
    return out;
}

QSeries phi_series(const LoopModule& M, Sign s, int i, std::size_t k, int order) {
    check_label(M, i);
    QSeries out;
    out.dir = s == Sign::plus ? Dir::plus : Dir::minus;
    for (int t = 0; t <= order; ++t) out.c.push_back(phi_eigen(M, s, i, sgn(s) * t, k));
    return out;
}

RationalQ h_eigen(const LoopModule& M, int i, int m, std::size_t k) {
    if (m == 0) throw TorepError("h_{i,0} does not exist");
    auto key = std::make_tuple(k, i, m);
    if (auto it = M.hcache.find(key); it != M.hcache.end()) return it->second;
    Sign s = m > 0 ? Sign::plus : Sign::minus;
    int am = m > 0 ? m : -m;
    QSeries ph = phi_series(M, s, i, k, am);
    RationalQ kinv = ph.c[0].inverse();
    for (auto& c : ph.c) c = c * kinv;
    QSeries lg = series_log(ph, am);
    // phi^{+-}/k^{+-1} = exp(+-(q - q^-1) sum h_{+-m} z^{+-m})
    RationalQ h = lg.at(am) / qdiff();
    if (m < 0) h = -h;
    M.hcache.emplace(key, h);
    return h;
}

Vector act_h(const LoopModule& M, int i, int m, const Vector& v) {
    check_label(M, i);
    Vector out;
    for (auto& [k, c] : v) add_entry(out, k, c * h_eigen(M, i, m, k));
    return out;
}

Vector divided_power_x(const LoopModule& M, Sign s, int i, int kpow, const Vector& v, std::int64_t r) {
    if (kpow < 0) throw TorepError("negative divided power");
    Vector w = v;
    for (int t = 0; t < kpow; ++t) w = act_x(M, s, i, r, w);
    if (kpow <= 1) return w;
    return scaled(w, RationalQ(LaurentPoly(1), qfactorial(kpow)));
}

QSeries fr_series(const YPart& y, int i, Sign s, int order) {
    QSeries out;
    out.dir = s == Sign::plus ? Dir::plus : Dir::minus;
    out.c.assign(static_cast<std::size_t>(order) + 1, RationalQ());
    out.c[0] = RationalQ(1);
    std::int64_t deg = 0;
    for (auto& f : y) {
        if (f.i != i) continue;
        deg += f.u;
        // Y_{i,l}: (1 - z q^{l-1}) / (1 - z q^{l+1}); in w = 1/z: (1 - w q^{1-l}) / (1 - w q^{-1-l}), constant q^-2
        std::int64_t a = s == Sign::plus ? f.l - 1 : 1 - f.l;
        std::int64_t b = s == Sign::plus ? f.l + 1 : -1 - f.l;
        ZPoly num{RationalQ(1), -RationalQ::qpow(a)}, den{RationalQ(1), -RationalQ::qpow(b)};
        if (f.u < 0) std::swap(num, den);
        QSeries one = series_of_rational(num, den, out.dir, order);
        for (std::int64_t t = 0; t < (f.u < 0 ? -f.u : f.u); ++t) out = series_mul(out, one, order);
    }
    RationalQ lead = RationalQ::qpow(s == Sign::plus ? deg : -deg);
    for (auto& c : out.c) c = c * lead;
    return out;
}

FrReport compare_fr(const LoopModule& M, int order) {
    FrReport rep;
    int nodes = M.rs().nodes();
    for (std::size_t k = 0; k < M.dim(); ++k) {
        if (!M.interior[k]) {
            ++rep.skipped;
            continue;
        }
        for (int i = 0; i < nodes; ++i)
            for (Sign s : {Sign::plus, Sign::minus}) {
                QSeries a = phi_series(M, s, i, k, order);
                QSeries b = fr_series(M.graph.nodes[k].y, i, s, order);
                ++rep.checked;
                for (int t = 0; t <= order; ++t)
                    if (!(a.at(t) == b.at(t))) {
                        rep.discrepancies.push_back({k, i, s, t, a.at(t), b.at(t)});
                        break;
                    }
            }
    }
    return rep;
}

std::map<Monomial, std::int64_t> qcharacter(const LoopModule& M, std::optional<Window> win) {
    std::map<Monomial, std::int64_t> out;
    for (auto& m : M.graph.nodes)
        if (!win || win->contains(m.y)) out[m] += 1;
    return out;
}

std::map<Weight, std::size_t> weight_multiplicities(const LoopModule& M) {
    std::map<Weight, std::size_t> out;
    for (auto& m : M.graph.nodes) out[m.wt] += 1;
    return out;
}

ExtremalVectorReport verify_extremal_vector(const LoopModule& M, const YPart& m, int depth) {
    ExtremalVectorReport rep;
    auto start = M.graph.find(m);
    if (!start) throw TorepError("not a basis monomial: " + ypart_str(m));
    int nodes = M.rs().nodes();
    std::set<std::size_t> seen{*start};
    std::deque<std::pair<std::size_t, int>> todo{{*start, 0}};
    while (!todo.empty()) {
        auto [k, d] = todo.front();
        todo.pop_front();
        for (int i = 0; i < nodes; ++i) {
            std::int64_t w = M.k_exp(k, i);
            Sign kill = w >= 0 ? Sign::plus : Sign::minus;
            Sign move = w >= 0 ? Sign::minus : Sign::plus;
            Vector img, dp;
            try {
                img = act_x(M, kill, i, 0, basis_vector(k));
                dp = divided_power_x(M, move, i, static_cast<int>(w >= 0 ? w : -w), basis_vector(k));
            } catch (const WindowError& e) {
                rep.verdict = Verdict::inconclusive_window;
                rep.note = e.what();
                rep.orbit = seen.size();
                return rep;
            }
            bool ok = img.empty() && dp.size() == 1 && dp.begin()->second.is_one();
            if (ok) {
                // the image must be the crystal reflection of the node
                Monomial target = s_reflect(M.rs(), M.graph.nodes[k], i);
                ok = M.graph.nodes[dp.begin()->first] == target;
            }
            if (w == 0 && ok) ok = act_x(M, Sign::minus, i, 0, basis_vector(k)).empty();
            if (!ok) {
                rep.verdict = Verdict::not_extremal;
                rep.failing_node = k;
                rep.failing_i = i;
                rep.orbit = seen.size();
                return rep;
            }
            std::size_t nxt = dp.begin()->first;
            if (d + 1 <= depth && seen.insert(nxt).second) todo.push_back({nxt, d + 1});
        }
    }
    rep.orbit = seen.size();
    return rep;
}

nlohmann::json module_summary(const LoopModule& M) {
    std::size_t inner = 0;
    for (bool b : M.interior) inner += b;
    nlohmann::json j;
    j["flavor"] = M.flavor == Flavor::thin ? "thin" : "section5";
    j["n"] = M.rs().n();
    if (M.flavor == Flavor::thin) j["ell"] = M.ell;
    else j["smax"] = M.smax;
    j["window"] = {M.graph.win.lmin, M.graph.win.lmax};
    j["dimension"] = M.dim();
    j["interior"] = inner;
    return j;
}

}  // namespace qtor
