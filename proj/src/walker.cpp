#include "nilwalk/walker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "nilwalk/errors.hpp"
#include "nilwalk/stats.hpp"

namespace nilwalk {

namespace {

// log(x+1/2 choose shifts) helpers for the telescoping-power tail proposal
// q(j) = (j-1/2)^{-a} - (j+1/2)^{-a}, evaluated stably in log space
double log_tail_proposal(double lj, double a) {
    double invj = std::exp(-lj);
    double l_jmh = lj + std::log1p(-0.5 * invj);
    double l_ratio = std::log(-std::expm1(a * std::log1p(-invj / (1.0 + 0.5 * invj))));
    return -a * l_jmh + l_ratio;
}

double log1p_exp_minus(double lj) {  // log(1 + j) given log j
    return lj + std::log1p(std::exp(-lj));
}

// invert the tail proposal CDF over j > M: smallest j with
// (j+1/2)^{-a} <= (1-u) (M+1/2)^{-a}; returned as (value, log value)
std::pair<Int, double> tail_invert(double base_log /* log(M+1/2) */, double a, double u,
                                   long M) {
    double logt = base_log - std::log1p(-u) / a;  // log of (j_real + 1/2)
    if (logt < 50.0) {
        long double jr = expl((long double)logt) - 0.5L;
        long j = (long)ceill(jr);
        if (j < M + 1) j = M + 1;
        return {Int(j), std::log((double)j)};
    }
    // far tail: the double exponent itself carries the value
    Int j(std::floor(std::exp(logt)));
    return {j, logt};
}

}  // namespace

StepSampler make_step_sampler(const Alpha& a, long head_cutoff) {
    StepSampler s;
    s.alpha = a;
    if (a.inf) {
        s.M = 1;
        s.c = 1.0 / 3.0;
        s.head_mass = 1.0;
        s.cum = {1.0 / 3.0, 1.0};
        return s;
    }
    double al = rat_double(a.value);
    s.M = head_cutoff;
    // unnormalized shell masses, summed small-to-large for accuracy
    std::vector<long double> shell(s.M + 1);
    shell[0] = 1.0L;
    for (long j = 1; j <= s.M; ++j) shell[j] = 2.0L * powl(1.0L + j, -(long double)al - 1.0L);
    long double head = 0.0L;
    for (long j = s.M; j >= 0; --j) head += shell[j];
    // midpoint-rule remainder of 2 * sum_{j>M} (1+j)^{-al-1}
    long double rem = 2.0L * powl((long double)s.M + 1.5L, -(long double)al) / (long double)al;
    long double c = 1.0L / (head + rem);
    s.c = (double)c;
    s.head_mass = (double)(head * c);
    s.cum.resize(s.M + 1);
    long double run = 0.0L;
    for (long j = 0; j <= s.M; ++j) {
        run += shell[j];
        s.cum[j] = (double)(run * c);
    }
    return s;
}

double StepSampler::prob(long m) const {
    long a = std::labs(m);
    if (alpha.inf) return a <= 1 ? 1.0 / 3.0 : 0.0;
    return c * std::pow(1.0 + a, -rat_double(alpha.value) - 1.0);
}

Int StepSampler::sample_m(Xoshiro256pp& rng) const {
    if (alpha.inf) return Int((long)rng.next_below(3) - 1);
    double u = rng.next_double();
    if (u < head_mass) {
        long j = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
        if (j > M) j = M;  // float-edge guard
        if (j == 0) return Int(0);
        return (rng.next() & 1) ? Int(j) : Int(-j);
    }
    double al = rat_double(alpha.value);
    double base_log = std::log((double)M + 0.5);
    for (;;) {
        auto [j, lj] = tail_invert(base_log, al, rng.next_double(), M);
        // accept with  alpha (1+j)^{-alpha-1} / q(j)  <= 1
        double logA = std::log(al) + (-al - 1.0) * log1p_exp_minus(lj) - log_tail_proposal(lj, al);
        if (std::log(rng.next_double()) < logA)
            return (rng.next() & 1) ? j : -j;
    }
}

StableLawSpec make_stable_law(const std::vector<Alpha>& a) {
    StableLawSpec law;
    law.a = a;
    for (const auto& ai : a) law.samplers.push_back(make_step_sampler(ai));
    return law;
}

std::pair<int, Int> sample_step(const StableLawSpec& law, Xoshiro256pp& rng) {
    int k = (int)law.samplers.size();
    int i = 1 + (int)rng.next_below(k);
    return {i, law.samplers[i - 1].sample_m(rng)};
}

GroupElement sample_walk(const StableLawSpec& law, const GroupSpec& spec, long n,
                         Xoshiro256pp& rng) {
    if ((int)law.samplers.size() != spec.k)
        throw std::invalid_argument("law size does not match generator count");
    GroupElement cur = identity(spec);
    for (long t = 0; t < n; ++t) {
        auto [i, m] = sample_step(law, rng);
        if (m == 0) continue;
        cur = multiply(spec, cur, power(spec, spec.generators[i - 1], m));
    }
    return cur;
}

namespace {

CollisionEstimate pairs_to_estimate(long n, long N,
                                    const std::unordered_map<std::string, unsigned long long>& counts) {
    unsigned long long pairs = 0, triples = 0;
    for (const auto& [key, cn] : counts) {
        (void)key;
        pairs += cn * (cn - 1) / 2;
        triples += cn * (cn - 1) / 2 * (cn - 2) / 3;
    }
    CollisionEstimate est;
    est.n = n;
    est.N = N;
    est.colliding_pairs = pairs;
    double Np = (double)N * (N - 1) / 2.0;
    double Nt = Np * (N - 2) / 3.0;
    double p2 = pairs / Np;
    double p3 = Nt > 0 ? triples / Nt : 0.0;
    est.estimate = p2;
    // U-statistic variance of the pair-collision estimator
    double var = 2.0 / ((double)N * (N - 1)) * p2 * (1.0 - p2) +
                 4.0 * (N - 2) / ((double)N * (N - 1)) * (p3 - p2 * p2);
    est.std_error = std::sqrt(std::max(var, 0.0));
    return est;
}

}  // namespace

CollisionEstimate collision_estimate(const StableLawSpec& law, const GroupSpec& spec, long n,
                                     long N, uint64_t seed, int workers) {
    if (N < 2) throw std::invalid_argument("collision estimate needs N >= 2");
    if (N > 20000000) throw BudgetExceeded("endpoint table exceeds the memory budget");
    if (workers < 1) workers = 1;
    std::vector<std::unordered_map<std::string, unsigned long long>> local(workers);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
        long lo = (long)((__int128)N * w / workers);
        long hi = (long)((__int128)N * (w + 1) / workers);
        threads.emplace_back([&, w, lo, hi] {
            auto& out = local[w];
            for (long s = lo; s < hi; ++s) {
                // one stream per sample: partition-independent results
                Xoshiro256pp rng(seed, (uint64_t)s);
                ++out[element_key(sample_walk(law, spec, n, rng))];
            }
        });
    }
    for (auto& t : threads) t.join();
    std::unordered_map<std::string, unsigned long long> counts;
    for (auto& l : local)
        for (auto& [k, c] : l) counts[k] += c;
    return pairs_to_estimate(n, N, counts);
}

ConvTable exact_convolution(const StableLawSpec& law, const GroupSpec& spec, long n, long trunc,
                            long budget) {
    if (spec.backend != Backend::Zd)
        throw UnsupportedBackend("exact convolution is only available on Z^d");
    if ((int)law.samplers.size() != spec.k)
        throw std::invalid_argument("law size does not match generator count");
    int k = spec.k, d = spec.d;

    std::map<std::vector<long>, double> step;
    double step_tail = 0.0;
    for (int i = 0; i < k; ++i) {
        const auto& smp = law.samplers[i];
        double covered = 0.0;
        for (long m = -trunc; m <= trunc; ++m) {
            double p = smp.prob(m);
            if (p == 0.0) continue;
            covered += p;
            std::vector<long> v(d);
            for (int t = 0; t < d; ++t)
                v[t] = m * (long)spec.generators[i].v[t].get_si();
            step[v] += p / k;
        }
        step_tail += std::max(0.0, 1.0 - covered) / k;
    }

    ConvTable out;
    out.tail_mass = 1.0 - std::pow(1.0 - step_tail, (double)n);
    out.p[std::vector<long>(d, 0)] = 1.0;
    for (long t = 0; t < n; ++t) {
        std::map<std::vector<long>, double> next;
        for (const auto& [v, p] : out.p)
            for (const auto& [w, q] : step) {
                std::vector<long> u(d);
                for (int c = 0; c < d; ++c) u[c] = v[c] + w[c];
                next[u] += p * q;
                if ((long)next.size() > budget)
                    throw BudgetExceeded("convolution table exceeds the entry budget");
            }
        out.p = std::move(next);
    }
    return out;
}

double collision_mass(const ConvTable& t) {
    double s = 0.0;
    for (const auto& [v, p] : t.p) {
        (void)v;
        s += p * p;
    }
    return s;
}

Int uniform_below(Xoshiro256pp& rng, const Int& m) {
    if (m <= 0) throw std::invalid_argument("uniform_below needs m >= 1");
    size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    size_t words = (bits + 63) / 64;
    for (;;) {
        Int r(0);
        for (size_t w = 0; w < words; ++w) {
            r <<= 64;
            Int chunk;
            uint64_t x = rng.next();
            mpz_import(chunk.get_mpz_t(), 1, 1, 8, 0, 0, &x);
            r |= chunk;
        }
        r >>= (words * 64 - bits);  // keep exactly `bits` random bits
        if (r < m) return r;
    }
}

std::vector<Int> radial_sample(const RadialSpec& spec, Xoshiro256pp& rng) {
    if (spec.gamma <= 0 || spec.gamma >= 2)
        throw std::invalid_argument("radial gamma must lie strictly in (0,2)");
    double g = rat_double(spec.gamma);
    // shell masses t(m) = 4m (1+m)^{-g} / (2m^2+2m+1), t(0) = 1; envelope
    // e(m) = (2/g) [(m-1/2)^{-g} - (m+1/2)^{-g}] >= t(m), total 2^{g+1}/g
    double Etail = std::pow(2.0, g + 1.0) / g;
    double base_log = std::log(0.5);
    for (;;) {
        double u = rng.next_double() * (1.0 + Etail);
        if (u < 1.0) return {Int(0), Int(0)};
        auto [m, lm] = tail_invert(base_log, g, rng.next_double(), 0);
        double invm = std::exp(-lm);
        double l_t = std::log(4.0) + lm - g * log1p_exp_minus(lm) -
                     (std::log(2.0) + 2.0 * lm + std::log1p(invm * (1.0 + 0.5 * invm)));
        double l_e = std::log(2.0 / g) + log_tail_proposal(lm, g);
        double logA = std::min(l_t - l_e, 0.0);
        if (std::log(rng.next_double()) >= logA) continue;
        // uniform point on the L1 sphere of radius m (4m points, by side)
        Int idx = uniform_below(rng, 4 * m);
        Int q = idx / m, p = idx % m;
        if (q == 0) return {m - p, p};
        if (q == 1) return {-p, m - p};
        if (q == 2) return {p - m, -p};
        return {p, p - m};
    }
}

CollisionEstimate radial_collision(const RadialSpec& spec, long n, long N, uint64_t seed,
                                   int workers) {
    if (spec.gamma <= 0 || spec.gamma >= 2)
        throw std::invalid_argument("radial gamma must lie strictly in (0,2)");
    if (N < 2) throw std::invalid_argument("collision estimate needs N >= 2");
    if (N > 20000000) throw BudgetExceeded("endpoint table exceeds the memory budget");
    if (workers < 1) workers = 1;
    std::vector<std::unordered_map<std::string, unsigned long long>> local(workers);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
        long lo = (long)((__int128)N * w / workers);
        long hi = (long)((__int128)N * (w + 1) / workers);
        threads.emplace_back([&, w, lo, hi] {
            auto& out = local[w];
            for (long s = lo; s < hi; ++s) {
                Xoshiro256pp rng(seed, (uint64_t)s);
                Int x(0), y(0);
                for (long t = 0; t < n; ++t) {
                    auto v = radial_sample(spec, rng);
                    x += v[0];
                    y += v[1];
                }
                ++out[x.get_str() + "#" + y.get_str()];
            }
        });
    }
    for (auto& t : threads) t.join();
    std::unordered_map<std::string, unsigned long long> counts;
    for (auto& l : local)
        for (auto& [k, c] : l) counts[k] += c;
    return pairs_to_estimate(n, N, counts);
}

RegressionResult fit_exponent(const std::vector<FitPoint>& points, FitModel model) {
    if (points.size() < 4) throw std::invalid_argument("fit needs at least 4 points");
    std::vector<double> x, y, w;
    for (const auto& p : points) {
        if (p.estimate <= 0) throw std::invalid_argument("fit needs positive estimates");
        double xv = std::log(p.n);
        if (model == FitModel::PowerLog) xv += std::log(std::log(p.n));
        x.push_back(xv);
        y.push_back(std::log(p.estimate));
        // log-scale sigma ~ stderr / estimate
        double sig = p.std_error > 0 ? p.std_error / p.estimate : 1.0;
        w.push_back(1.0 / (sig * sig));
    }
    WlsFit f = wls(x, y, w);
    RegressionResult r;
    r.slope = f.slope;
    r.intercept = f.intercept;
    r.half_width = 1.96 * std::sqrt(f.slope_var);
    r.residuals = f.residuals;
    return r;
}

}  // namespace nilwalk
