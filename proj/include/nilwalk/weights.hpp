#ifndef NILWALK_WEIGHTS_HPP
#define NILWALK_WEIGHTS_HPP

#include <optional>
#include <vector>

#include "nilwalk/commutator.hpp"
#include "nilwalk/rational.hpp"

namespace nilwalk {

// Weight vector in (0,inf) x R^{d-1}: lexicographic order, coordinate-wise sum.
using WeightVec = std::vector<Rat>;

int wv_cmp(const WeightVec& a, const WeightVec& b);  // lexicographic
WeightVec wv_add(const WeightVec& a, const WeightVec& b);
std::string wv_str(const WeightVec& v);

struct WeightSystem {
    std::vector<WeightVec> gen_weights;  // one per generator, equal dimensions
    int dim() const { return gen_weights.empty() ? 0 : (int)gen_weights[0].size(); }
    int k() const { return (int)gen_weights.size(); }
};

WeightVec weight_of(const Comm& c, const WeightSystem& W);

// strictly increasing list of all weights realized by commutators of
// length <= max_len (equivalently: by leaf multisets of size 1..max_len)
std::vector<WeightVec> weight_value_sequence(const WeightSystem& W, int max_len);

// F(r) = r^v1 * log(e+r)^v2 on [1,inf); F(0) defined as 0 for convenience.
struct WeightFunction {
    Rat v1;  // >= 0
    Rat v2;
    double eval(double r) const;
    double invert(double y) const;  // monotone bisection to rel. tol 2^-40
};

WeightFunction wf_product(const WeightFunction& a, const WeightFunction& b);
// weight function attached to a weight vector: (v1) or (v1,v2) head coordinates
WeightFunction wf_from_weight(const WeightVec& w);

// alpha entry: a positive rational or infinity
struct Alpha {
    bool inf = false;
    Rat value;  // meaningful when !inf
    Rat tilde() const;  // min{alpha, 2}; inf -> 2
    bool is_two() const { return !inf && value == 2; }
    bool less_than_two() const { return !inf && value < 2; }
};
Alpha parse_alpha(const std::string& s);  // "p/q" or "inf"
std::string alpha_str(const Alpha& a);

// Both weight systems induced by an alpha tuple:
//   one-dim:  w_i = 1/alpha~_i
//   two-dim:  w_i = (1/alpha~_i, 1/2 iff alpha_i = 2 else 0)
// plus the matching weight functions per generator.
struct CompatiblePair {
    WeightSystem one_dim;
    WeightSystem two_dim;
    std::vector<WeightFunction> F_one;
    std::vector<WeightFunction> F_two;
};
CompatiblePair weights_from_alpha(const std::vector<Alpha>& a);

}  // namespace nilwalk

#endif
