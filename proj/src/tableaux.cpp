#include "qtor/tableaux.hpp"

#include <algorithm>
#include <set>

namespace qtor {

void check_tableau(int n, int ell, const RowTableau& T) {
    if (ell < 1 || ell > n) throw TableauError("row length must lie in 1..n");
    if (static_cast<int>(T.size()) != ell) throw TableauError("tableau " + tableau_str(T) + " has the wrong length");
    for (std::size_t k = 0; k < T.size(); ++k) {
        if (T[k] < 1 || T[k] > n + 1) throw TableauError("entry out of range in " + tableau_str(T));
        if (k && T[k] <= T[k - 1]) throw TableauError("entries not strictly increasing in " + tableau_str(T));
    }
}

std::string tableau_str(const RowTableau& T) {
    std::string s;
    for (std::size_t k = 0; k < T.size(); ++k) s += (k ? "," : "") + std::to_string(T[k]);
    return s;
}

YPart box(int n, int k, std::int64_t p) {
    if (k < 1 || k > n + 1) throw TableauError("box index out of range: " + std::to_string(k));
    return ypart_from({{k - 1, p + k, -1}, {k % (n + 1), p + k - 1, 1}});
}

static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

YPart tab_ypart(int n, int ell, const RowTableau& T, std::int64_t j) {
    check_tableau(n, ell, T);
    // beyond r+1 the fundamental crystal is the psi-image of the row n+1-l model
    if (ell > (n + 1) / 2) throw TableauError("row tableau model needs l <= r+1, got l = " + std::to_string(ell));
    std::int64_t k = floor_div(j, ell);
    std::int64_t j0 = j - k * ell;
    YPart y;
    for (std::int64_t p = 1; p <= ell; ++p) {
        std::int64_t at = p <= j0 ? n - ell - 2 * p + 2 * j0 + 2 : ell + 1 - 2 * p + 2 * j0;
        y = ypart_mul(y, box(n, T[static_cast<std::size_t>(p - 1)], at));
    }
    return ypart_shift(y, k * (n + 1));
}

Monomial tableau_anchor(const RootSystem& rs, int ell) {
    return make_monomial(rs, ypart_from({{ell, 0, 1}, {0, ell, -1}}), rs.varpi(ell));
}

Monomial tab_monomial(const RootSystem& rs, int ell, const RowTableau& T, std::int64_t j) {
    YPart y = tab_ypart(rs.n(), ell, T, j);
    Monomial a = tableau_anchor(rs, ell);
    Weight w = weight_from_anchor(rs, y, a);
    return make_monomial(rs, std::move(y), std::move(w));
}

std::optional<TabIndex> tab_kashiwara(int n, const TabIndex& t, int i, bool raise) {
    const auto& T = t.T;
    auto has = [&](int v) { return std::binary_search(T.begin(), T.end(), v); };
    if (i < 0 || i > n) throw TableauError("node out of range");
    if (i != 0) {
        int from = raise ? i + 1 : i, to = raise ? i : i + 1;
        if (!has(from) || has(to)) return std::nullopt;
        TabIndex r = t;
        *std::find(r.T.begin(), r.T.end(), from) = to;
        return r;
    }
    bool first_one = T.front() == 1, last_top = T.back() == n + 1;
    if (raise) {
        if (!first_one || last_top) return std::nullopt;
        TabIndex r{RowTableau(T.begin() + 1, T.end()), t.j - 1};
        r.T.push_back(n + 1);
        return r;
    }
    if (first_one || !last_top) return std::nullopt;
    TabIndex r{{1}, t.j + 1};
    r.T.insert(r.T.end(), T.begin(), T.end() - 1);
    return r;
}

TabIndex tab_promotion(int n, const TabIndex& t) {
    TabIndex r = t;
    bool wrap = false;
    for (auto& v : r.T) {
        if (v == n + 1) {
            v = 1;
            wrap = true;
        } else {
            ++v;
        }
    }
    std::sort(r.T.begin(), r.T.end());
    if (wrap) ++r.j;
    return r;
}

std::vector<RowTableau> all_tableaux(int n, int ell) {
    if (ell < 1 || ell > n) throw TableauError("row length must lie in 1..n");
    std::vector<RowTableau> out;
    RowTableau T(static_cast<std::size_t>(ell));
    for (int k = 0; k < ell; ++k) T[static_cast<std::size_t>(k)] = k + 1;
    while (true) {
        out.push_back(T);
        int k = ell - 1;
        while (k >= 0 && T[static_cast<std::size_t>(k)] == n + 1 - (ell - 1 - k)) --k;
        if (k < 0) break;
        ++T[static_cast<std::size_t>(k)];
        for (int m = k + 1; m < ell; ++m) T[static_cast<std::size_t>(m)] = T[static_cast<std::size_t>(m - 1)] + 1;
    }
    return out;
}

std::vector<Monomial> enumerate_tableaux(const RootSystem& rs, int ell, std::int64_t jmin, std::int64_t jmax) {
    if (ell > (rs.n() + 1) / 2) throw TableauError("row tableau model needs l <= r+1, got l = " + std::to_string(ell));
    std::set<Monomial> seen;
    for (std::int64_t j = jmin; j <= jmax; ++j)
        for (auto& T : all_tableaux(rs.n(), ell)) seen.insert(tab_monomial(rs, ell, T, j));
    return {seen.begin(), seen.end()};
}

}  // namespace qtor
