#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtor/monomial.hpp"

namespace qtor {

struct TableauError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// single row, strictly increasing entries in 1..n+1
using RowTableau = std::vector<int>;

struct TabIndex {
    RowTableau T;
    std::int64_t j = 0;
    friend auto operator<=>(const TabIndex&, const TabIndex&) = default;
};

void check_tableau(int n, int ell, const RowTableau& T);
std::string tableau_str(const RowTableau& T);

// box k at p: Y_{k-1,p+k}^{-1} Y_{k,p+k-1}, with Y_{n+1,*} = Y_{0,*}
YPart box(int n, int k, std::int64_t p);

// exponent part of m_{T;j}, l <= r+1; any j, reduced through m_{T;j+l} = tau_{n+1}(m_{T;j})
YPart tab_ypart(int n, int ell, const RowTableau& T, std::int64_t j);
// Y_{l,0} Y_{0,l}^{-1} with weight varpi_l
Monomial tableau_anchor(const RootSystem& rs, int ell);
// full monomial, weight read off against tableau_anchor
Monomial tab_monomial(const RootSystem& rs, int ell, const RowTableau& T, std::int64_t j);

// raise = true for e~_i, false for f~_i
std::optional<TabIndex> tab_kashiwara(int n, const TabIndex& t, int i, bool raise);
TabIndex tab_promotion(int n, const TabIndex& t);

std::vector<RowTableau> all_tableaux(int n, int ell);
// distinct m_{T;j} for all T and jmin <= j <= jmax, sorted by exponents
std::vector<Monomial> enumerate_tableaux(const RootSystem& rs, int ell, std::int64_t jmin, std::int64_t jmax);

}  // namespace qtor
