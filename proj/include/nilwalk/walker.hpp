#ifndef NILWALK_WALKER_HPP
#define NILWALK_WALKER_HPP

#include <map>
#include <utility>
#include <vector>

#include "nilwalk/group.hpp"
#include "nilwalk/rng.hpp"
#include "nilwalk/weights.hpp"

namespace nilwalk {

// Exact sampler for the symmetric heavy-tailed exponent law
//   P(m) = c(alpha) (1+|m|)^{-alpha-1},  alpha = inf -> uniform on {-1,0,1}.
// Head: CDF inversion over |m| <= M. Tail: telescoping-power proposal with an
// exact mass-ratio acceptance step.
struct StepSampler {
    Alpha alpha;
    long M = 0;                // head cutoff (power of two)
    double c = 0;              // normalization, absolute error < 2^-40
    double head_mass = 0;      // P(|m| <= M)
    std::vector<double> cum;   // cum[j] = P(|m| <= j), j = 0..M

    Int sample_m(Xoshiro256pp& rng) const;
    double prob(long m) const;  // pointwise mass
};

StepSampler make_step_sampler(const Alpha& a, long head_cutoff = 1 << 20);

struct StableLawSpec {
    std::vector<Alpha> a;
    std::vector<StepSampler> samplers;
};

StableLawSpec make_stable_law(const std::vector<Alpha>& a);

// one step: uniform generator index (1-based) and an exact exponent draw
std::pair<int, Int> sample_step(const StableLawSpec& law, Xoshiro256pp& rng);

GroupElement sample_walk(const StableLawSpec& law, const GroupSpec& spec, long n,
                         Xoshiro256pp& rng);

struct CollisionEstimate {
    long n = 0;
    long N = 0;
    unsigned long long colliding_pairs = 0;
    double estimate = 0;  // pairs / C(N,2), unbiased for the 2n-step return mass
    double std_error = 0;
};

// N independent endpoints on per-sample RNG streams; identical results for any
// worker count
CollisionEstimate collision_estimate(const StableLawSpec& law, const GroupSpec& spec, long n,
                                     long N, uint64_t seed, int workers);

// truncated exact n-step law on Z^d with tracked truncation mass
struct ConvTable {
    std::map<std::vector<long>, double> p;
    double tail_mass = 0;
};

ConvTable exact_convolution(const StableLawSpec& law, const GroupSpec& spec, long n, long trunc,
                            long budget = 10000000);

// sum of squared probabilities (the 2n-step return mass, up to truncation)
double collision_mass(const ConvTable& t);

// Norm-radial walk on Z^2 with the word (L1) norm:
//   nu_gamma(g) ∝ (1 + |g|)^{-gamma} / V(|g|),  V(r) = #{|v| <= r}.
// Sampled exactly by an envelope-rejection scheme over L1 shells.
struct RadialSpec {
    Rat gamma;  // in (0,2), strict
};

std::vector<Int> radial_sample(const RadialSpec& spec, Xoshiro256pp& rng);  // one step in Z^2
CollisionEstimate radial_collision(const RadialSpec& spec, long n, long N, uint64_t seed,
                                   int workers);

enum class FitModel { Power, PowerLog };

struct RegressionResult {
    double slope = 0;       // exponent of n (tied to log log n in PowerLog)
    double intercept = 0;
    double half_width = 0;  // 1.96 * stderr of the slope
    std::vector<double> residuals;
};

struct FitPoint {
    double n;
    double estimate;
    double std_error;  // <= 0 means "unit weight"
};

RegressionResult fit_exponent(const std::vector<FitPoint>& points, FitModel model);

// unbiased uniform draw from [0, m) by top-bit rejection
Int uniform_below(Xoshiro256pp& rng, const Int& m);

}  // namespace nilwalk

#endif
