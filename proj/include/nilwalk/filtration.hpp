#ifndef NILWALK_FILTRATION_HPP
#define NILWALK_FILTRATION_HPP

#include <memory>
#include <string>
#include <vector>

#include "nilwalk/group.hpp"
#include "nilwalk/linalg.hpp"
#include "nilwalk/weights.hpp"

namespace nilwalk {

struct FiltrationLevel {
    WeightVec weight_value;
    std::vector<Comm> generating_commutators;  // weight exactly this value
    int lie_dim = 0;                           // Hirsch length of the level subgroup
    int rank = 0;                              // lie_dim(j) - lie_dim(j+1)
};

struct FiltrationReport {
    std::vector<FiltrationLevel> levels;  // levels 1..j_star
    int j_star = 0;
    std::vector<Rat> D_components;  // per weight coordinate
    std::vector<int> core;          // 1-based generator indices
    std::vector<int> j_w_table;     // per generator: level index (1-based)
    int hirsch_length = 0;
    int class_used = 0;
    WeightSystem W;
    // ascending per-level rational subspaces of the completion (for j_w)
    std::vector<std::shared_ptr<RowSpace>> level_spaces;
};

// rational coordinates of log(g) used by the rank machinery
QVec log_coordinates(const GroupSpec& spec, const GroupElement& g);

// dimension of the smallest rational Lie algebra containing the logs
// (span + bracket closure; Z^d reduces to linear span)
int lie_closure_dim(const GroupSpec& spec, const std::vector<GroupElement>& elements);

FiltrationReport filtration(const GroupSpec& spec, const WeightSystem& W);

std::vector<Rat> D_exponent(const FiltrationReport& report);

// largest level whose completion contains log(g); 0 marks "not in any level"
// (torsion/outside, unreachable for honest elements of torsion-free backends)
int j_w(const GroupSpec& spec, const FiltrationReport& report, const GroupElement& g);

std::vector<int> core_indices(const FiltrationReport& report);

struct GreedyResult {
    std::vector<int> indices;  // 1-based, in pick order
    Rat inv_beta;              // sum of 1/alpha~ over picks
    int gamma_count = 0;       // picks with alpha exactly 2
};
GreedyResult zd_greedy_sigma(const GroupSpec& spec, const std::vector<Alpha>& a);

struct Prediction {
    Rat poly_exponent;
    Rat log_exponent;
    std::string regime;  // "pure-power" | "all-core-alpha=2" | "mixed/unproven"
    bool upper_bound_only = false;
    FiltrationReport report;  // the report the exponents came from
};
Prediction predicted_return_exponent(const GroupSpec& spec, const std::vector<Alpha>& a);

// D(G) with equal weights 1 (sum of j * rank over the lower central series)
Rat volume_exponent_DG(const GroupSpec& spec);

}  // namespace nilwalk

#endif
