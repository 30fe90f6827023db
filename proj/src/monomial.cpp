#include "qtor/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qtor/qcoeff.hpp"

namespace qtor {

YPart ypart_from(std::vector<YFactor> f) {
    std::sort(f.begin(), f.end(), [](const YFactor& a, const YFactor& b) {
        return a.i != b.i ? a.i < b.i : a.l < b.l;
    });
    YPart out;
    out.reserve(f.size());
    for (auto& x : f) {
        if (!out.empty() && out.back().i == x.i && out.back().l == x.l)
            out.back().u = add_ck(out.back().u, x.u);
        else
            out.push_back(x);
    }
    std::erase_if(out, [](const YFactor& x) { return x.u == 0; });
    return out;
}

YPart ypart_mul(const YPart& a, const YPart& b) {
    YPart out;
    out.reserve(a.size() + b.size());
    std::size_t x = 0, y = 0;
    while (x < a.size() || y < b.size()) {
        if (y == b.size() || (x < a.size() && std::tie(a[x].i, a[x].l) < std::tie(b[y].i, b[y].l))) {
            out.push_back(a[x++]);
        } else if (x == a.size() || std::tie(b[y].i, b[y].l) < std::tie(a[x].i, a[x].l)) {
            out.push_back(b[y++]);
        } else {
            std::int64_t u = add_ck(a[x].u, b[y].u);
            if (u) out.push_back({a[x].i, a[x].l, u});
            ++x, ++y;
        }
    }
    return out;
}

YPart ypart_inv(const YPart& a) { return ypart_pow(a, -1); }

YPart ypart_pow(const YPart& a, std::int64_t k) {
    if (k == 0) return {};
    YPart out = a;
    for (auto& f : out) f.u = mul_ck(f.u, k);
    return out;
}

YPart ypart_shift(const YPart& a, std::int64_t twop) {
    YPart out = a;
    for (auto& f : out) f.l = add_ck(f.l, twop);
    return out;
}

std::int64_t ypart_row_sum(const YPart& a, int i) {
    std::int64_t s = 0;
    for (auto& f : a)
        if (f.i == i) s = add_ck(s, f.u);
    return s;
}

std::int64_t ypart_exp(const YPart& a, int i, std::int64_t l) {
    auto it = std::lower_bound(a.begin(), a.end(), YFactor{i, l, INT64_MIN});
    return (it != a.end() && it->i == i && it->l == l) ? it->u : 0;
}

std::vector<std::int64_t> ypart_row_sums(const YPart& a, int nodes) {
    std::vector<std::int64_t> s(static_cast<std::size_t>(nodes), 0);
    for (auto& f : a) {
        if (f.i < 0 || f.i >= nodes) throw MonomialError("node index out of range in monomial");
        s[static_cast<std::size_t>(f.i)] = add_ck(s[static_cast<std::size_t>(f.i)], f.u);
    }
    return s;
}

bool ypart_parity_ok(const RootSystem& rs, const YPart& a) {
    for (auto& f : a)
        if (((f.l % 2) + 2) % 2 != rs.parity(f.i)) return false;
    return true;
}

std::string ypart_str(const YPart& a) {
    if (a.empty()) return "1";
    std::ostringstream os;
    for (auto& f : a) {
        os << "Y_{" << f.i << "," << f.l << "}";
        if (f.u != 1) os << "^{" << f.u << "}";
    }
    return os.str();
}

YPart parse_ypart(const std::string& s) {
    std::vector<YFactor> out;
    std::size_t p = 0;
    auto skip = [&] {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    };
    auto fail = [&](const std::string& why) -> MonomialError {
        return MonomialError("cannot parse monomial '" + s + "' at " + std::to_string(p) + ": " + why);
    };
    auto integer = [&]() -> std::int64_t {
        skip();
        std::size_t st = p;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p == st || (p == st + 1 && !std::isdigit(static_cast<unsigned char>(s[st]))))
            throw fail("expected integer");
        return std::stoll(s.substr(st, p - st));
    };
    auto expect = [&](char c) {
        skip();
        if (p >= s.size() || s[p] != c) throw fail(std::string("expected '") + c + "'");
        ++p;
    };
    skip();
    if (s.substr(p) == "1") return {};
    while (true) {
        skip();
        if (p >= s.size()) break;
        expect('Y');
        expect('_');
        expect('{');
        std::int64_t i = integer();
        expect(',');
        std::int64_t l = integer();
        expect('}');
        std::int64_t u = 1;
        skip();
        if (p < s.size() && s[p] == '^') {
            ++p;
            skip();
            if (p < s.size() && s[p] == '{') {
                ++p;
                u = integer();
                expect('}');
            } else {
                u = integer();
            }
        }
        if (i < 0 || i > 1000) throw fail("node index out of range");
        out.push_back({static_cast<int>(i), l, u});
    }
    return ypart_from(std::move(out));
}

std::size_t YPartHash::operator()(const YPart& y) const noexcept {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (auto& f : y) {
        mix(static_cast<std::uint64_t>(f.i));
        mix(static_cast<std::uint64_t>(f.l));
        mix(static_cast<std::uint64_t>(f.u));
    }
    return h;
}

YPart a_ypart(const RootSystem& rs, int i, std::int64_t l) {
    if (((l % 2) + 2) % 2 == rs.parity(i))
        throw ParityError("A_{" + std::to_string(i) + "," + std::to_string(l) + "} has illegal parity");
    return ypart_from({{i, l - 1, 1}, {i, l + 1, 1}, {rs.node(i - 1), l, -1}, {rs.node(i + 1), l, -1}});
}

Monomial make_monomial(const RootSystem& rs, YPart y, Weight wt) {
    if (static_cast<int>(wt.h.size()) != rs.nodes()) throw MonomialError("weight has wrong rank");
    y = ypart_from(std::move(y));
    auto sums = ypart_row_sums(y, rs.nodes());
    if (sums != wt.h)
        throw MonomialError("row sums of " + ypart_str(y) + " disagree with weight " + wt.str());
    if (!ypart_parity_ok(rs, y)) throw ParityError("monomial " + ypart_str(y) + " violates parity");
    return Monomial{std::move(y), std::move(wt)};
}

Monomial identity_monomial(const RootSystem& rs) { return Monomial{{}, rs.zero()}; }

Monomial operator*(const Monomial& a, const Monomial& b) { return Monomial{ypart_mul(a.y, b.y), a.wt + b.wt}; }

Monomial inverse(const Monomial& m) { return Monomial{ypart_inv(m.y), -m.wt}; }

Monomial a_monomial(const RootSystem& rs, int i, std::int64_t l) { return Monomial{a_ypart(rs, i, l), rs.alpha(i)}; }

Monomial xi_keep(const Monomial& m, int i) {
    Monomial r;
    for (auto& f : m.y)
        if (f.i == i) r.y.push_back(f);
    r.wt = Weight(m.wt.h.size());
    r.wt.h.at(static_cast<std::size_t>(i)) = m.wt(i);
    return r;
}

Monomial xi_drop(const Monomial& m, int i) {
    Monomial r;
    for (auto& f : m.y)
        if (f.i != i) r.y.push_back(f);
    r.wt = m.wt;
    r.wt.h.at(static_cast<std::size_t>(i)) = 0;
    r.wt.delta = 0;
    return r;
}

Monomial tau(const Monomial& m, std::int64_t twop, Delta alpha) {
    if (twop % 2 != 0) throw ParityError("tau needs an even spectral shift");
    Monomial r{ypart_shift(m.y, twop), m.wt};
    r.wt.delta += alpha;
    return r;
}

YPart phi_ypart(int n, const YPart& y) {
    std::vector<YFactor> f;
    f.reserve(y.size());
    for (auto& x : y) f.push_back({(x.i + 1) % (n + 1), x.l + 1, x.u});
    return ypart_from(std::move(f));
}

PhiImage twist_phi(int n, const Monomial& m) {
    PhiImage r{phi_ypart(n, m.y), std::vector<std::int64_t>(static_cast<std::size_t>(n + 1), 0)};
    for (int i = 0; i <= n; ++i) r.h[static_cast<std::size_t>((i + 1) % (n + 1))] = m.wt(i);
    return r;
}

YPart psi_ypart(int n, const YPart& y) {
    std::vector<YFactor> f;
    f.reserve(y.size());
    for (auto& x : y) f.push_back({(n + 1 - x.i) % (n + 1), x.l, x.u});
    return ypart_from(std::move(f));
}

Monomial twist_psi(int n, const Monomial& m) {
    Monomial r{psi_ypart(n, m.y), m.wt};
    for (int i = 0; i <= n; ++i) r.wt.h[static_cast<std::size_t>((n + 1 - i) % (n + 1))] = m.wt(i);
    return r;
}

Monomial gamma_N(const Monomial& m, std::int64_t N) {
    if (N <= 0 || N % 2 != 0) throw ParityError("Gamma_N needs a positive even N");
    std::vector<YFactor> f;
    f.reserve(m.y.size());
    for (auto& x : m.y) f.push_back({x.i, ((x.l % N) + N) % N, x.u});
    Monomial r{ypart_from(std::move(f)), m.wt};
    r.wt.delta = 0;
    return r;
}

std::optional<std::vector<YFactor>> a_decompose(const RootSystem& rs, const YPart& y) {
    if (y.empty()) return std::vector<YFactor>{};
    std::int64_t lmax = INT64_MIN;
    for (auto& f : y) lmax = std::max(lmax, f.l);
    YPart r = y;
    std::vector<YFactor> out;
    while (!r.empty()) {
        // the lowest spectral index can only come from Y_{i,L} in A_{i,L+1}
        auto low = std::min_element(r.begin(), r.end(), [](const YFactor& a, const YFactor& b) {
            return a.l != b.l ? a.l < b.l : a.i < b.i;
        });
        int i = low->i;
        std::int64_t L = low->l, c = low->u;
        if (L + 1 >= lmax) return std::nullopt;
        if (((L + 1) % 2 + 2) % 2 == rs.parity(i)) return std::nullopt;
        out.push_back({i, L + 1, c});
        r = ypart_mul(r, ypart_pow(a_ypart(rs, i, L + 1), -c));
    }
    return ypart_from(std::move(out));
}

Weight weight_from_anchor(const RootSystem& rs, const YPart& y, const Monomial& anchor) {
    auto dec = a_decompose(rs, ypart_mul(y, ypart_inv(anchor.y)));
    if (!dec) throw MonomialError(ypart_str(y) + " is not in the A-orbit of " + anchor.str());
    Weight w = anchor.wt;
    for (auto& f : *dec) w += f.u * rs.alpha(f.i);
    return w;
}

nlohmann::json weight_to_json(const Weight& w) { return {{"h", w.h}, {"delta", delta_str(w.delta)}}; }

Weight weight_from_json(const nlohmann::json& j) {
    Weight w;
    w.h = j.at("h").get<std::vector<std::int64_t>>();
    const auto& d = j.at("delta");
    w.delta = d.is_string() ? parse_delta(d.get<std::string>()) : Delta(d.get<std::int64_t>());
    return w;
}

nlohmann::json monomial_to_json(const Monomial& m) {
    nlohmann::json e = nlohmann::json::array();
    for (auto& f : m.y) e.push_back({f.i, f.l, f.u});
    return {{"weight", weight_to_json(m.wt)}, {"exp", e}};
}

Monomial monomial_from_json(const nlohmann::json& j) {
    Monomial m;
    m.wt = weight_from_json(j.at("weight"));
    std::vector<YFactor> f;
    for (auto& t : j.at("exp")) f.push_back({t.at(0).get<int>(), t.at(1).get<std::int64_t>(), t.at(2).get<std::int64_t>()});
    m.y = ypart_from(std::move(f));
    if (ypart_row_sums(m.y, static_cast<int>(m.wt.h.size())) != m.wt.h)
        throw MonomialError("row sums disagree with weight in JSON monomial");
    return m;
}

}  // namespace qtor
