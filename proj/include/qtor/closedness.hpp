#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtor/crystal.hpp"

namespace qtor {

struct ClosednessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// strings not in general position; never answered
struct Sl2UnsupportedError : ClosednessError {
    using ClosednessError::ClosednessError;
};

// one row: l -> u, zero exponents removed
using Sl2Monomial = std::map<std::int64_t, std::int64_t>;

std::string sl2_str(const Sl2Monomial& m);
Sl2Monomial sl2_row(const YPart& y, int i);

struct Sl2Term {
    Sl2Monomial mono;
    std::map<std::int64_t, std::int64_t> lower;  // l -> c: mono = top * prod A_l^{-c}
    std::int64_t mult = 1;
};

// q-strings {a, a+2, ..., a+2(k-1)}, lowest first
std::vector<std::pair<std::int64_t, int>> sl2_strings(const Sl2Monomial& dominant);
// simple U_q(sl2^) q-character of a dominant monomial, sorted by mono
std::vector<Sl2Term> sl2_simple_qchar(const Sl2Monomial& dominant);

// How A_{i,l} looks for the sets being tested.
struct QContext {
    enum class Kind { toroidal, drop_row, single_row };
    RootSystem rs{3};
    Kind kind = Kind::toroidal;
    int dropped = -1;

    static QContext toroidal(const RootSystem& rs) { return {rs, Kind::toroidal, -1}; }
    // images under Xi^j: row j erased everywhere
    static QContext without_row(const RootSystem& rs, int j) { return {rs, Kind::drop_row, j}; }
    // A_{i,l} = Y_{i,l-1} Y_{i,l+1}
    static QContext sl2(const RootSystem& rs) { return {rs, Kind::single_row, -1}; }

    YPart a(int i, std::int64_t l) const;
};

struct QSet {
    std::vector<YPart> items;
    std::vector<bool> interior;  // empty: everything interior
    std::optional<Window> win;   // witnesses outside it are inconclusive
};

QSet qset_of(const CrystalGraph& g);

enum class QVerdict { closed, not_closed, inconclusive };
std::string qverdict_str(QVerdict v);

struct ClassResult {
    QVerdict verdict = QVerdict::closed;
    std::vector<std::size_t> members;  // indices into QSet::items
    std::vector<std::size_t> heads;    // highest monomials of the emitted sl2 characters
    std::vector<std::int64_t> coverage;  // per member: multiplicity in the emitted sum
    std::optional<YPart> witness_from, witness_missing;
    bool witness_absent = false;
    bool boundary = false;
    std::string note;
};

// the A_{i,*}-class of S.items[k]
ClassResult qclosed_class(const QContext& ctx, const QSet& S, int i, std::size_t k);

struct DirectionReport {
    int i = 0;
    QVerdict verdict = QVerdict::closed;
    std::size_t classes = 0;
    std::size_t boundary_classes = 0;  // failed but touching the window edge
    std::optional<YPart> witness_from, witness_missing;
    std::string note;
};

DirectionReport qclosed_direction(const QContext& ctx, const QSet& S, int i);

struct KashiwaraReport {
    bool closed = true;
    std::optional<YPart> from, missing;
    int i = -1;
};

// e~_i / f~_i with the context's A_{i,l}; agrees with the crystal operators for the toroidal context
std::optional<YPart> kashiwara_op(const QContext& ctx, const YPart& y, int i, bool raise);
// every interior element's e~/f~ images (labels in J) must lie in S
KashiwaraReport kashiwara_closed(const QContext& ctx, const QSet& S, const std::vector<int>& J);

struct ClosednessReport {
    int n = 0;
    int ell = 0;
    Window win;
    bool window_ok = true;
    std::size_t nodes = 0;
    std::vector<DirectionReport> directions;
    KashiwaraReport kashiwara;
    QVerdict verdict = QVerdict::closed;
};

// builds M(e^{varpi_l} Y_{l,0} Y_{0,d_l}^{-1}) in the window and runs both checks in every direction
ClosednessReport closed_report(const RootSystem& rs, int ell, Window win);
nlohmann::json to_json(const ClosednessReport& r);

}  // namespace qtor
