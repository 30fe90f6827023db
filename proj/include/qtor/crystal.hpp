#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qtor/monomial.hpp"

namespace qtor {

struct CrystalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KStats {
    std::int64_t eps = 0;
    std::int64_t phi = 0;
    std::optional<std::int64_t> p;  // set iff eps > 0
    std::optional<std::int64_t> q;  // set iff phi > 0
};

KStats stats(const YPart& y, int i);
std::optional<YPart> e_tilde(const RootSystem& rs, const YPart& y, int i);
std::optional<YPart> f_tilde(const RootSystem& rs, const YPart& y, int i);
std::optional<Monomial> e_tilde(const RootSystem& rs, const Monomial& m, int i);
std::optional<Monomial> f_tilde(const RootSystem& rs, const Monomial& m, int i);

// All spectral indices of a node must lie in [lmin, lmax].
struct Window {
    std::int64_t lmin = 0;
    std::int64_t lmax = 0;
    bool contains(const YPart& y) const;
};

inline constexpr std::int64_t kNone = -1;     // operator gives 0
inline constexpr std::int64_t kOutside = -2;  // image exists but leaves the window

struct CrystalEdge {
    std::size_t src;
    int i;
    std::size_t dst;
    friend auto operator<=>(const CrystalEdge&, const CrystalEdge&) = default;
};

struct CrystalGraph {
    RootSystem rs{3};
    Window win;
    std::vector<Monomial> anchors;
    std::vector<Monomial> nodes;  // sorted by exponent part
    std::vector<CrystalEdge> edges;  // f-arrows, sorted
    std::vector<bool> interior;
    // fnext[k][i], enext[k][i]: target index, kNone or kOutside
    std::vector<std::vector<std::int64_t>> fnext, enext;

    std::size_t size() const { return nodes.size(); }
    std::optional<std::size_t> find(const YPart& y) const;
    std::size_t index_of(const YPart& y) const;  // throws if absent

    std::unordered_map<YPart, std::size_t, YPartHash> index;
};

// BFS closure of the anchors under all e~_i, f~_i inside the window.
CrystalGraph generate(const RootSystem& rs, const std::vector<Monomial>& anchors, Window win,
                      std::size_t max_nodes = 2000000);

// closure of node m under labels in J
CrystalGraph sub_crystal(const CrystalGraph& g, const YPart& m, const std::vector<int>& J);

enum class Verdict { extremal, not_extremal, inconclusive_window };
std::string verdict_str(Verdict v);

struct ExtremalReport {
    Verdict verdict;
    std::vector<Monomial> orbit;  // explored S-orbit
    std::optional<Monomial> witness;  // a node that fails i-extremality
    int witness_i = -1;
    int word_cap = 0;
};

// S_i acting on a crystal element
Monomial s_reflect(const RootSystem& rs, const Monomial& m, int i);

// Explores all S_i-strings of length <= depth*(n+1) from m.
ExtremalReport is_extremal(const CrystalGraph& g, const YPart& m, int depth);

struct TwistViolation {
    std::size_t node;
    int i;
    char op;  // 'e' or 'f'
};

struct TwistReport {
    std::size_t checked = 0;
    std::vector<TwistViolation> violations;
};

// Checks f~_{theta(i)} map(b) = map(f~_i b) and the same for e~ on interior nodes.
TwistReport check_twist(const CrystalGraph& g, const std::function<YPart(const YPart&)>& map,
                        const std::function<int(int)>& theta);

// e^{varpi_l} Y_{l,0} Y_{0,d_l}^{-1}; rs must use the parity of RootSystem::for_anchor(n, l)
Monomial fundamental_anchor(const RootSystem& rs, int ell);
// e^{2 varpi_1 + s delta} Y_{1,1} Y_{1,-1-4s} Y_{0,2}^{-1} Y_{0,-4s}^{-1}, n = 3
Monomial level2_anchor(const RootSystem& rs, int s);

std::string to_dot(const CrystalGraph& g);
nlohmann::json to_json(const CrystalGraph& g);

}  // namespace qtor
