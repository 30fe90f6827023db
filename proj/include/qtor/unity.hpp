#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtor/relations.hpp"

namespace qtor {

struct UnityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x^{+-}_{i,r} v_src gets c eps^{r base} v_dst
struct CycloTerm {
    std::size_t dst;
    CycloElem c;
    std::int64_t base;  // in [0, N)
};

struct CycloPhi {
    CycloElem w;
    std::int64_t base;
};

struct SpecializedModule {
    std::string kind;  // thin, section5, sum
    RootSystem rs{3};
    int ell = 0, L = 1, p = 0, N = 0;
    std::vector<YPart> basis;  // spectral indices in [0, N)
    std::vector<YPart> generic;  // representative in the generic module
    std::vector<int> level;  // section5: s of the generic crystal
    std::vector<std::vector<std::int64_t>> kexp;  // k_i = eps^{kexp[k][i]}
    std::vector<std::vector<std::array<std::vector<CycloTerm>, 2>>> x;
    std::vector<std::vector<std::vector<CycloPhi>>> phi;
    std::vector<CycloElem> epow;  // eps^e for e in [0, N)

    std::size_t dim() const { return basis.size(); }
    const CycloElem& eps(std::int64_t e) const { return epow[static_cast<std::size_t>(((e % N) + N) % N)]; }
};

using CycloVector = std::map<std::size_t, CycloElem>;

// p = n+1 for l in {1, n}, 2 for l = r+1; p = 2 needs L > 1
int root_period(int n, int ell);
SpecializedModule specialize_thin(const RootSystem& rs, int ell, int L);
// quotient of the section-5 module at a primitive 4L-th root by the span of E_s, s >= L
SpecializedModule specialize_section5(int L);
SpecializedModule direct_sum(const SpecializedModule& a, const SpecializedModule& b);

CycloVector act_x(const SpecializedModule& M, Sign s, int i, std::int64_t r, const CycloVector& v);
CycloElem h_eigen(const SpecializedModule& M, int i, int m, std::size_t k);
std::string vector_str(const SpecializedModule& M, const CycloVector& v);

// every relation family with eps in place of q, on every basis vector
RelationReport relation_check_eps(const SpecializedModule& M, const std::vector<Rel>& rels, const RelRanges& ranges,
                                  bool keep_all = false);

struct CyclicReport {
    bool ok = true;
    std::optional<std::size_t> failing;  // a basis vector generating a proper submodule
    std::size_t rank = 0;  // of that submodule
};

// x^{+-}_{i,r}, r in [0, N), applied until the span stops growing
CyclicReport cyclic_generation_check(const SpecializedModule& M);

std::map<YPart, std::int64_t> qcharacter(const SpecializedModule& M);
nlohmann::json unity_summary(const SpecializedModule& M);
nlohmann::json to_json(const SpecializedModule& M, const RelationReport& r);

}  // namespace qtor
