#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtor/lattice.hpp"

namespace qtor {

struct MonomialError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParityError : MonomialError {
    using MonomialError::MonomialError;
};

// One factor Y_{i,l}^u.
struct YFactor {
    int i;
    std::int64_t l;
    std::int64_t u;
    friend auto operator<=>(const YFactor&, const YFactor&) = default;
};

// Sorted by (i, l); no zero exponents.
using YPart = std::vector<YFactor>;

YPart ypart_from(std::vector<YFactor> f);
YPart ypart_mul(const YPart& a, const YPart& b);
YPart ypart_inv(const YPart& a);
YPart ypart_pow(const YPart& a, std::int64_t k);
YPart ypart_shift(const YPart& a, std::int64_t twop);
std::int64_t ypart_row_sum(const YPart& a, int i);
std::int64_t ypart_exp(const YPart& a, int i, std::int64_t l);
std::vector<std::int64_t> ypart_row_sums(const YPart& a, int nodes);
bool ypart_parity_ok(const RootSystem& rs, const YPart& a);
std::string ypart_str(const YPart& a);
YPart parse_ypart(const std::string& s);

struct YPartHash {
    std::size_t operator()(const YPart& y) const noexcept;
};

// A_{i,l} without the weight factor
YPart a_ypart(const RootSystem& rs, int i, std::int64_t l);

struct Monomial {
    YPart y;
    Weight wt;
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return a.y != b.y ? a.y < b.y : a.wt < b.wt;
    }
    std::string str() const { return ypart_str(y); }
};

Monomial make_monomial(const RootSystem& rs, YPart y, Weight wt);
Monomial identity_monomial(const RootSystem& rs);
Monomial operator*(const Monomial& a, const Monomial& b);
Monomial inverse(const Monomial& m);
Monomial a_monomial(const RootSystem& rs, int i, std::int64_t l);

// row i only, weight reduced to h_i
Monomial xi_keep(const Monomial& m, int i);
// row i erased, h_i and delta dropped
Monomial xi_drop(const Monomial& m, int i);

Monomial tau(const Monomial& m, std::int64_t twop, Delta alpha);

// Y_{i,l} -> Y_{i+1,l+1}; the weight only carries the rotated h-part
struct PhiImage {
    YPart y;
    std::vector<std::int64_t> h;
};
YPart phi_ypart(int n, const YPart& y);
PhiImage twist_phi(int n, const Monomial& m);

// Y_{i,l} -> Y_{-i,l}
YPart psi_ypart(int n, const YPart& y);
Monomial twist_psi(int n, const Monomial& m);

// spectral indices reduced mod N (N even), delta dropped
Monomial gamma_N(const Monomial& m, std::int64_t N);

// Writes y * anchor^{-1} as a product of A_{i,l}^{c}; factors returned as (i, l, c).
std::optional<std::vector<YFactor>> a_decompose(const RootSystem& rs, const YPart& y);
// Weight of y when y lies in anchor * (A-group); throws otherwise
Weight weight_from_anchor(const RootSystem& rs, const YPart& y, const Monomial& anchor);

nlohmann::json weight_to_json(const Weight& w);
Weight weight_from_json(const nlohmann::json& j);
nlohmann::json monomial_to_json(const Monomial& m);
Monomial monomial_from_json(const nlohmann::json& j);

}  // namespace qtor
