#include "doctest.h"

#include <cmath>
#include <map>
#include <vector>

#include "nilwalk/errors.hpp"
#include "nilwalk/stats.hpp"
#include "nilwalk/walker.hpp"

using namespace nilwalk;

namespace {

GroupSpec line() { return make_zd_spec(1, {{1}}); }

GroupSpec plane() { return make_zd_spec(2, {{1, 0}, {0, 1}}); }

}  // namespace

TEST_CASE("bounded steps draw uniformly from {-1,0,1}") {
    StepSampler s = make_step_sampler(parse_alpha("inf"));
    CHECK(s.prob(0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(s.prob(1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(s.prob(5) == 0.0);
    Xoshiro256pp rng(31, 0);
    std::map<long, long> counts;
    for (int i = 0; i < 60000; ++i) counts[s.sample_m(rng).get_si()]++;
    REQUIRE(counts.size() == 3);
    for (auto [m, c] : counts) {
        CHECK(m >= -1);
        CHECK(m <= 1);
        CHECK(std::abs(c - 20000.0) < 600);  // ~3.7 sigma
    }
}

TEST_CASE("pointwise masses match the zeta-function normalization") {
    // alpha = 1: 1/c = sum (1+|m|)^-2 = pi^2/3 - 1
    StepSampler s = make_step_sampler(parse_alpha("1"));
    double c = 1.0 / (M_PI * M_PI / 3.0 - 1.0);
    CHECK(s.prob(0) == doctest::Approx(c).epsilon(1e-9));
    CHECK(s.prob(1) == doctest::Approx(c / 4).epsilon(1e-9));
    CHECK(s.prob(-1) == doctest::Approx(c / 4).epsilon(1e-9));
    CHECK(s.prob(10) == doctest::Approx(c / 121).epsilon(1e-9));
}

TEST_CASE("sampled step frequencies pass a chi-square test") {
    for (const char* a : {"1/2", "1", "3/2", "2", "inf"}) {
        StepSampler s = make_step_sampler(parse_alpha(a));
        Xoshiro256pp rng(32, (uint64_t)a[0] * 131 + a[1]);
        const long B = 64;
        const long N = 200000;
        std::vector<long> counts(2 * B + 2, 0);  // m in [-B, B] plus overflow
        for (long i = 0; i < N; ++i) {
            Int m = s.sample_m(rng);
            if (m > B || m < -B)
                counts[2 * B + 1]++;
            else
                counts[m.get_si() + B]++;
        }
        double outside = 1.0;
        std::vector<double> expect(2 * B + 2, 0.0);
        for (long m = -B; m <= B; ++m) {
            expect[m + B] = N * s.prob(m);
            outside -= s.prob(m);
        }
        expect[2 * B + 1] = N * std::max(outside, 0.0);
        double stat = 0;
        int dof = -1;
        for (size_t j = 0; j < expect.size(); ++j) {
            if (expect[j] < 5.0) continue;  // fold sparse bins out
            stat += (counts[j] - expect[j]) * (counts[j] - expect[j]) / expect[j];
            ++dof;
        }
        REQUIRE(dof >= 2);  // alpha = inf only has three support points
        CHECK(chi_square_pvalue(stat, dof) > 1e-3);
    }
}

TEST_CASE("tail mass decays at the advertised polynomial rate") {
    for (const char* as : {"1/2", "1"}) {
        Alpha a = parse_alpha(as);
        StepSampler s = make_step_sampler(a);
        double alpha = rat_double(a.value);
        for (long t = 16; t <= 4096; t *= 4) {
            double tail = 1.0 - s.cum[t];
            double ratio = tail / std::pow((double)t, -alpha);
            CHECK(ratio > 0.5);
            CHECK(ratio < 2.0);
        }
    }
}

TEST_CASE("two-fold convolution of the bounded walk and its collision mass") {
    StableLawSpec law = make_stable_law({parse_alpha("inf")});
    ConvTable t = exact_convolution(law, line(), 2, 16);
    CHECK(t.tail_mass == 0.0);
    std::vector<double> expect = {1, 2, 3, 2, 1};
    for (long m = -2; m <= 2; ++m)
        CHECK(t.p.at({m}) == doctest::Approx(expect[m + 2] / 9.0).epsilon(1e-12));
    CHECK(collision_mass(t) == doctest::Approx(19.0 / 81).epsilon(1e-12));
}

TEST_CASE("one-fold convolution reproduces the step law") {
    StableLawSpec law = make_stable_law({parse_alpha("3/2")});
    ConvTable t = exact_convolution(law, line(), 1, 256);
    for (long m = -256; m <= 256; ++m)
        CHECK(t.p.at({m}) == doctest::Approx(law.samplers[0].prob(m)).epsilon(1e-12));
    CHECK(t.tail_mass == doctest::Approx(1.0 - law.samplers[0].cum[256]).epsilon(1e-9));
}

TEST_CASE("collision estimates are unbiased and worker-count independent") {
    StableLawSpec law = make_stable_law({parse_alpha("inf")});
    GroupSpec spec = line();
    CollisionEstimate e1 = collision_estimate(law, spec, 2, 5000, 77, 1);
    CollisionEstimate e2 = collision_estimate(law, spec, 2, 5000, 77, 2);
    CollisionEstimate e3 = collision_estimate(law, spec, 2, 5000, 77, 3);
    CHECK(e1.colliding_pairs == e2.colliding_pairs);
    CHECK(e1.colliding_pairs == e3.colliding_pairs);
    CHECK(e1.estimate == e2.estimate);
    CHECK(e1.std_error == e3.std_error);
    // the four-step return mass is 19/81
    CHECK(std::abs(e1.estimate - 19.0 / 81) < 3 * e1.std_error);
    CHECK_THROWS_AS((void)collision_estimate(law, spec, 2, 100000000, 1, 1),
                    BudgetExceeded);
}

TEST_CASE("independent index tuples drive independent coordinates") {
    StableLawSpec law = make_stable_law({parse_alpha("inf"), parse_alpha("inf")});
    ConvTable t = exact_convolution(law, plane(), 2, 8);
    // steps pick one of the two generators uniformly; after 2 steps the
    // endpoint law is the convolution square of (mixture of axis steps)
    // return mass after two steps: (1/3)^2 + 4 (1/6)^2 = 2/9
    CHECK(t.p.at({0, 0}) == doctest::Approx(2.0 / 9).epsilon(1e-12));
    double total = 0;
    for (const auto& [k, v] : t.p) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // symmetry under negation and coordinate swap
    for (const auto& [k, v] : t.p) {
        CHECK(t.p.at({-k[0], -k[1]}) == doctest::Approx(v).epsilon(1e-12));
        CHECK(t.p.at({k[1], k[0]}) == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("power-law regression recovers synthetic exponents exactly") {
    std::vector<FitPoint> pts;
    for (double n : {8.0, 16.0, 32.0, 64.0, 128.0})
        pts.push_back({n, 3.0 * std::pow(n, -4.0), 0.0});
    RegressionResult r = fit_exponent(pts, FitModel::Power);
    CHECK(r.slope == doctest::Approx(-4.0).epsilon(1e-10));
    CHECK(std::exp(r.intercept) == doctest::Approx(3.0).epsilon(1e-8));
    for (double res : r.residuals) CHECK(std::abs(res) < 1e-10);

    std::vector<FitPoint> plog;
    for (double n : {8.0, 16.0, 32.0, 64.0, 128.0})
        plog.push_back({n, std::pow(n * std::log(n), -2.0), 0.0});
    RegressionResult rl = fit_exponent(plog, FitModel::PowerLog);
    CHECK(rl.slope == doctest::Approx(-2.0).epsilon(1e-10));
    for (double res : rl.residuals) CHECK(std::abs(res) < 1e-10);
    // the wrong model leaves visible curvature behind
    RegressionResult rw = fit_exponent(plog, FitModel::Power);
    double worst = 0;
    for (double res : rw.residuals) worst = std::max(worst, std::abs(res));
    CHECK(worst > 1e-3);
}

TEST_CASE("uniform draws below a bound are in range and balanced") {
    Xoshiro256pp rng(33, 0);
    std::vector<long> counts(10, 0);
    for (int i = 0; i < 100000; ++i) {
        Int x = uniform_below(rng, Int(10));
        REQUIRE(x >= 0);
        REQUIRE(x < 10);
        counts[x.get_si()]++;
    }
    for (long c : counts) CHECK(std::abs(c - 10000.0) < 400);
    Int big("1208925819614629174706176");  // 2^80
    for (int i = 0; i < 100; ++i) {
        Int x = uniform_below(rng, big);
        CHECK(x >= 0);
        CHECK(x < big);
    }
}

TEST_CASE("norm-radial steps follow the shell law on the plane") {
    RadialSpec spec{Rat(1)};
    Xoshiro256pp rng(34, 0);
    const int N = 200000;
    const long B = 8;
    std::vector<long> shell_counts(B + 1, 0);
    std::map<std::pair<long, long>, long> shell2;
    long kept = 0;
    for (int i = 0; i < N; ++i) {
        auto v = radial_sample(spec, rng);
        long m = std::abs(v[0].get_si()) + std::abs(v[1].get_si());
        if (m <= B) {
            shell_counts[m]++;
            kept++;
        }
        if (m == 2) shell2[{v[0].get_si(), v[1].get_si()}]++;
    }
    // conditional multinomial over shells 0..B; relative masses are exact
    // rationals t(0) = 1, t(m) = 4m (1+m)^-gamma / (2m^2+2m+1)
    std::vector<double> t(B + 1);
    double tsum = 0;
    for (long m = 0; m <= B; ++m) {
        t[m] = m == 0 ? 1.0 : 4.0 * m / ((1.0 + m) * (2.0 * m * m + 2 * m + 1));
        tsum += t[m];
    }
    double stat = 0;
    for (long m = 0; m <= B; ++m) {
        double e = kept * t[m] / tsum;
        stat += (shell_counts[m] - e) * (shell_counts[m] - e) / e;
    }
    CHECK(chi_square_pvalue(stat, (int)B) > 1e-3);
    // uniformity across the 8 points of the |v| = 2 shell
    long s2 = 0;
    for (auto& [k, c] : shell2) s2 += c;
    REQUIRE(shell2.size() == 8);
    double stat2 = 0;
    for (auto& [k, c] : shell2) {
        double e = s2 / 8.0;
        stat2 += (c - e) * (c - e) / e;
    }
    CHECK(chi_square_pvalue(stat2, 7) > 1e-3);
}

TEST_CASE("radial walks demand an index strictly inside (0,2)") {
    Xoshiro256pp rng(35, 0);
    CHECK_THROWS(radial_sample(RadialSpec{Rat(2)}, rng));
    CHECK_THROWS(radial_sample(RadialSpec{Rat(0)}, rng));
    CHECK_THROWS(radial_sample(RadialSpec{Rat(5, 2)}, rng));
}

TEST_CASE("radial collision runs are deterministic across worker counts") {
    RadialSpec spec{Rat(1)};
    CollisionEstimate e1 = radial_collision(spec, 4, 3000, 55, 1);
    CollisionEstimate e2 = radial_collision(spec, 4, 3000, 55, 3);
    CHECK(e1.colliding_pairs == e2.colliding_pairs);
    CHECK(e1.estimate == e2.estimate);
}
