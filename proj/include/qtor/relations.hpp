#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtor/torep.hpp"

namespace qtor {

enum class Rel { kx, hh, hx, xpxm, xx, serre, comm };

std::string rel_str(Rel r);
Rel parse_rel(const std::string& s);
const std::vector<Rel>& all_relations();

struct RelationSpec {
    Rel rel = Rel::kx;
    int i = 0, j = 0;
    Sign sign = Sign::plus;
    std::int64_t r = 0, rp = 0, r1 = 0, r2 = 0;
    int m = 1, mp = 1;
};

nlohmann::json spec_json(const RelationSpec& s);

struct RelRanges {
    int rmax = 3;
    std::vector<int> ms{1, -1, 2, -2};
};

// every parameter choice of one relation family within the ranges
std::vector<RelationSpec> relation_specs(const RootSystem& rs, Rel rel, const RelRanges& ranges);

struct Residual {
    bool inconclusive = false;
    std::string reason;
    Vector value;  // left minus right, applied to v_k
};

Residual relation_residual(const LoopModule& M, const RelationSpec& spec, std::size_t k);

struct RelCounts {
    std::size_t checked = 0, zero = 0, nonzero = 0, inconclusive = 0;
};

struct RelationOutcome {
    RelationSpec spec;
    std::size_t node;
    bool zero;
    std::string inconclusive_reason;
    std::string residual;
};

struct RelationReport {
    std::map<std::string, RelCounts> by_rel;
    std::vector<RelationOutcome> outcomes;  // nonzero always; everything when keep_all
    std::size_t vectors = 0;
    RelCounts total() const;
    bool ok() const { return total().nonzero == 0; }
};

// interior basis vectors only
RelationReport relation_suite(const LoopModule& M, const std::vector<Rel>& rels, const RelRanges& ranges,
                              bool keep_all = false);

nlohmann::json to_json(const LoopModule& M, const RelationReport& r);

}  // namespace qtor
