#ifndef NILWALK_GEOMETRY_HPP
#define NILWALK_GEOMETRY_HPP

#include <vector>

#include "nilwalk/filtration.hpp"
#include "nilwalk/group.hpp"
#include "nilwalk/weights.hpp"

namespace nilwalk {

// Tuple of commutators, grouped by filtration level in ascending order, whose
// level-j entries are free in the j-th abelian quotient. Freeness is certified
// during construction by rank increments over the next level's subspace.
struct CommutatorBasis {
    std::vector<Comm> comms;
    std::vector<GroupElement> images;  // evaluated in the owning spec
    std::vector<int> level_of;         // 1-based filtration level per entry
    std::vector<int> level_start;      // offset of each level's block
    std::vector<int> free_rank;        // entries per level (= level rank)
};

CommutatorBasis commutator_basis(const GroupSpec& spec, const FiltrationReport& report);

// per-generator weight functions (same order as spec.generators)
using WFSystem = std::vector<WeightFunction>;

// multiplicative weight function of a commutator (product over its leaves)
WeightFunction wf_of_comm(const Comm& c, const WFSystem& F);

// exponents x with g = prod_i c_i^{x_i}, found by level-wise elimination and
// verified by exact re-multiplication; throws when g is outside the span of
// the basis tuple (e.g. a proper finite-index sublattice misses it)
std::vector<Int> coordinates(const GroupSpec& spec, const FiltrationReport& report,
                             const CommutatorBasis& basis, const GroupElement& g);

struct QuasiNormValue {
    double r_value = 0.0;       // comparable radius max_i F_{c_i}^{-1}(|x_i|)
    std::vector<Int> coords;
};

QuasiNormValue quasi_norm_radius(const GroupSpec& spec, const FiltrationReport& report,
                                 const CommutatorBasis& basis, const WFSystem& F,
                                 const GroupElement& g);

struct PowerGrowthRow {
    long n;
    double radius;  // r(g^n)
    double ratio;   // r(g^n) / F_j^{-1}(n),  j = j_w(g)
};

std::vector<PowerGrowthRow> power_growth_check(const GroupSpec& spec,
                                               const FiltrationReport& report,
                                               const CommutatorBasis& basis, const WFSystem& F,
                                               const GroupElement& g,
                                               const std::vector<long>& n_grid);

struct BallVolume {
    double value = 1.0;                // prod_j F_j(r)^{R_j}
    std::vector<Rat> exponent_profile; // sum_j weight_j * R_j per coordinate
};

BallVolume ball_volume(double r, const FiltrationReport& report);

// exact cardinality of { prod c_i^{x_i} : |x_i| <= F_{c_i}(r) }; throws
// BudgetExceeded when the raw tuple count passes `budget`
Int box_count_oracle(const GroupSpec& spec, const CommutatorBasis& basis, const WFSystem& F,
                     double r, long budget = 10000000);

}  // namespace nilwalk

#endif
