#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qtor/closedness.hpp"
#include "qtor/crystal.hpp"
#include "qtor/qcoeff.hpp"

namespace qtor {

struct TorepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// an operator reached a basis vector whose action is not known inside the window
struct WindowError : TorepError {
    using TorepError::TorepError;
};

struct NotClosedError : TorepError {
    using TorepError::TorepError;
};

// a section-5 row that matches no sl2 template
struct TemplateError : TorepError {
    using TorepError::TorepError;
};

enum class Sign { plus, minus };
inline int sgn(Sign s) { return s == Sign::plus ? 1 : -1; }
inline int slot(Sign s) { return s == Sign::plus ? 0 : 1; }

// x^{+-}_{i,r} v_src gets c q^{r base} v_dst
struct ActTerm {
    std::size_t dst;
    RationalQ c;
    std::int64_t base;
    bool unit = true;  // c == 1
};

// phi^{+-}_{i,+-s} = +-(q - q^-1) sum w q^{+-s base} for s >= 1
struct PhiTerm {
    RationalQ w;
    std::int64_t base;
};

enum class Flavor { thin, section5 };

struct LoopModule {
    Flavor flavor = Flavor::thin;
    int ell = 0;   // thin
    int smax = -1;  // section5
    CrystalGraph graph;  // basis = graph.nodes
    // x[k][i][slot]
    std::vector<std::vector<std::array<std::vector<ActTerm>, 2>>> x;
    std::vector<std::vector<std::array<bool, 2>>> xok;
    std::vector<std::vector<std::vector<PhiTerm>>> phi;
    std::vector<std::vector<bool>> phiok;
    std::vector<bool> interior;  // every action and phi known
    // section5 only
    std::vector<std::vector<std::string>> templ;
    std::vector<int> level;  // s of the crystal containing the node

    const RootSystem& rs() const { return graph.rs; }
    std::size_t dim() const { return graph.size(); }
    std::int64_t k_exp(std::size_t k, int i) const { return graph.nodes[k].wt(i); }

    mutable std::map<std::tuple<std::size_t, int, int>, RationalQ> hcache;
};

using Vector = std::map<std::size_t, RationalQ>;

Vector basis_vector(std::size_t k);
void axpy(Vector& out, const RationalQ& c, const Vector& v);
Vector scaled(const Vector& v, const RationalQ& c);
bool is_zero(const Vector& v);
std::string vector_str(const LoopModule& M, const Vector& v);

// thin module over M(e^{varpi_l} Y_{l,0} Y_{0,d_l}^{-1}); refuses non-closed l unless refuse_open is off
LoopModule build_thin(const RootSystem& rs, int ell, Window win, bool refuse_open = true);
// n = 3; basis = union of M(M_s), 0 <= s <= smax, inside win
LoopModule build_section5(int smax, Window win);

// x_{i,r} with r shifted: coefficients times q^{k r} (the twist t_b at b = q^k)
LoopModule spectral_twist(const LoopModule& M, std::int64_t k);

Vector act_x(const LoopModule& M, Sign s, int i, std::int64_t r, const Vector& v);
Vector act_k(const LoopModule& M, int i, std::int64_t e, const Vector& v);
// phi^{+}_{i,s} (s >= 0) or phi^{-}_{i,-s}; zero for the other sign of s
Vector act_phi(const LoopModule& M, Sign s, int i, std::int64_t index, const Vector& v);
QSeries phi_series(const LoopModule& M, Sign s, int i, std::size_t k, int order);
RationalQ h_eigen(const LoopModule& M, int i, int m, std::size_t k);
Vector act_h(const LoopModule& M, int i, int m, const Vector& v);
Vector divided_power_x(const LoopModule& M, Sign s, int i, int kpow, const Vector& v, std::int64_t r = 0);

// q^{deg Q - deg R} Q(zq^-1) R(zq) / (Q(zq) R(zq^-1)) expanded in z (plus) or z^-1 (minus)
QSeries fr_series(const YPart& y, int i, Sign s, int order);

struct FrDiscrepancy {
    std::size_t node;
    int i;
    Sign sign;
    int s;
    RationalQ module, fr;
};

struct FrReport {
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::vector<FrDiscrepancy> discrepancies;
};

FrReport compare_fr(const LoopModule& M, int order);

std::map<Monomial, std::int64_t> qcharacter(const LoopModule& M, std::optional<Window> win = {});
std::map<Weight, std::size_t> weight_multiplicities(const LoopModule& M);

struct ExtremalVectorReport {
    Verdict verdict = Verdict::extremal;
    std::size_t orbit = 0;
    std::optional<std::size_t> failing_node;
    int failing_i = -1;
    std::string note;
};

// Checks x^{+-}_{i,0} v = 0 and the divided power onto v_{S_i m} along the S-orbit.
ExtremalVectorReport verify_extremal_vector(const LoopModule& M, const YPart& m, int depth);

// w_m = v_m / q on the phi-orbits of M_s, s >= 1; 1 elsewhere
RationalQ s5_crystal_scale(const LoopModule& M, std::size_t k);

// the two coefficients of x^-_0 on v_{Y_a Y_b} in the tensor-type sl2 block
std::pair<RationalQ, RationalQ> tp_coeffs(std::int64_t a, std::int64_t b);

nlohmann::json module_summary(const LoopModule& M);

}  // namespace qtor
