#include "doctest.h"

#include <cmath>
#include <vector>

#include "nilwalk/errors.hpp"
#include "nilwalk/geometry.hpp"

using namespace nilwalk;

namespace {

GroupSpec heisenberg2() {
    return make_unitriangular_spec(
        3, {unit_elementary(3, 1, 2), unit_elementary(3, 2, 3)});
}

WFSystem wf_system(const WeightSystem& W) {
    WFSystem F;
    for (const auto& w : W.gen_weights) F.push_back(wf_from_weight(w));
    return F;
}

struct Setup {
    GroupSpec spec;
    FiltrationReport report;
    CommutatorBasis basis;
    WFSystem F;
};

Setup make_setup(GroupSpec spec, const WeightSystem& W) {
    FiltrationReport report = filtration(spec, W);
    CommutatorBasis basis = commutator_basis(spec, report);
    return {std::move(spec), std::move(report), basis, wf_system(W)};
}

GroupElement heis_elt(long x, long y, long z) {
    GroupElement g = unit_elementary(3, 1, 2, x);
    g.v[1 * 3 + 2] = y;
    g.v[0 * 3 + 2] = z;
    return g;
}

}  // namespace

TEST_CASE("coordinates and radius of a Heisenberg element") {
    Setup s = make_setup(heisenberg2(), WeightSystem{{{Rat(1)}, {Rat(1)}}});
    REQUIRE(s.basis.comms.size() == 3);
    GroupElement g = heis_elt(2, 3, 7);
    auto x = coordinates(s.spec, s.report, s.basis, g);
    CHECK(x == std::vector<Int>{Int(2), Int(3), Int(-1)});
    QuasiNormValue q = quasi_norm_radius(s.spec, s.report, s.basis, s.F, g);
    CHECK(q.r_value == doctest::Approx(3.0).epsilon(1e-9));

    CHECK(coordinates(s.spec, s.report, s.basis, identity(s.spec)) ==
          std::vector<Int>{Int(0), Int(0), Int(0)});
    CHECK(quasi_norm_radius(s.spec, s.report, s.basis, s.F, identity(s.spec)).r_value == 0.0);

    // powers of a single basis entry land on its own axis
    for (size_t i = 0; i < s.basis.comms.size(); ++i) {
        GroupElement p = power(s.spec, s.basis.images[i], Int(9));
        auto c = coordinates(s.spec, s.report, s.basis, p);
        for (size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (i == j ? Int(9) : Int(0)));
    }
}

TEST_CASE("weighted radius on the lattice picks the largest axis demand") {
    GroupSpec spec = make_zd_spec(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    Setup s = make_setup(spec, WeightSystem{{{Rat(1)}, {Rat(2)}, {Rat(3)}}});
    GroupElement g{Backend::Zd, 3, {Int(8), Int(9), Int(27)}};
    QuasiNormValue q = quasi_norm_radius(s.spec, s.report, s.basis, s.F, g);
    CHECK(q.coords == std::vector<Int>{Int(8), Int(9), Int(27)});
    CHECK(q.r_value == doctest::Approx(8.0).epsilon(1e-9));  // max(8, 3, 3)
}

TEST_CASE("elements outside the sublattice spanned by the tuple are rejected") {
    GroupSpec spec = make_zd_spec(2, {{2, 0}, {0, 2}});
    Setup s = make_setup(spec, WeightSystem{{{Rat(1)}, {Rat(1)}}});
    GroupElement inside{Backend::Zd, 2, {Int(4), Int(-6)}};
    CHECK(coordinates(s.spec, s.report, s.basis, inside) ==
          std::vector<Int>{Int(2), Int(-3)});
    GroupElement outside{Backend::Zd, 2, {Int(1), Int(1)}};
    CHECK_THROWS(coordinates(s.spec, s.report, s.basis, outside));
}

TEST_CASE("commutator weight functions multiply over leaves") {
    WFSystem F = {wf_from_weight({Rat(1)}), wf_from_weight({Rat(3, 2)})};
    WeightFunction fc = wf_of_comm(parse_commutator("[s2,s1]"), F);
    CHECK(fc.v1 == Rat(5, 2));
    CHECK(fc.v2 == Rat(0));
}

TEST_CASE("box cardinality is the product of the per-axis ranges") {
    {
        GroupSpec spec = make_zd_spec(2, {{1, 0}, {0, 1}});
        Setup s = make_setup(spec, WeightSystem{{{Rat(1)}, {Rat(1)}}});
        CHECK(box_count_oracle(s.spec, s.basis, s.F, 3.0) == 49);
    }
    {
        Setup s = make_setup(heisenberg2(), WeightSystem{{{Rat(1)}, {Rat(1)}}});
        // ranges 2*2+1, 2*2+1, 2*4+1; products over a basis are all distinct
        CHECK(box_count_oracle(s.spec, s.basis, s.F, 2.0) == 225);
        CHECK_THROWS_AS((void)box_count_oracle(s.spec, s.basis, s.F, 2.0, 10),
                        BudgetExceeded);
    }
}

TEST_CASE("ball volume estimate sandwiches the exact box count on the plane") {
    GroupSpec spec = make_zd_spec(2, {{1, 0}, {0, 1}});
    Setup s = make_setup(spec, WeightSystem{{{Rat(1)}, {Rat(1)}}});
    CHECK(s.report.D_components == std::vector<Rat>{Rat(2)});
    for (double r : {4.0, 8.0, 16.0, 32.0}) {
        double v = ball_volume(r, s.report).value;
        double exact = box_count_oracle(s.spec, s.basis, s.F, r, 100000000).get_d();
        CHECK(exact >= v);           // (2r+1)^2 >= r^2
        CHECK(exact <= 9.0 * v);     // and <= (3r)^2 for r >= 1
    }
}

TEST_CASE("volume exponent of the Heisenberg group is four") {
    GroupSpec spec = heisenberg2();
    CHECK(volume_exponent_DG(spec) == Rat(4));
    Setup s = make_setup(spec, WeightSystem{{{Rat(1)}, {Rat(1)}}});
    BallVolume b = ball_volume(2.0, s.report);
    CHECK(b.exponent_profile == std::vector<Rat>{Rat(4)});
    CHECK(b.value == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("central powers grow at the rate of their filtration level") {
    Setup s = make_setup(heisenberg2(), WeightSystem{{{Rat(1)}, {Rat(1)}}});
    GroupElement z = bracket(s.spec, s.spec.generators[0], s.spec.generators[1]);
    CHECK(j_w(s.spec, s.report, z) == 2);
    std::vector<long> grid;
    for (long n = 4; n <= 1024; n *= 2) grid.push_back(n);
    auto rows = power_growth_check(s.spec, s.report, s.basis, s.F, z, grid);
    REQUIRE(rows.size() == grid.size());
    for (const auto& row : rows) {
        CHECK(row.ratio >= 0.25);
        CHECK(row.ratio <= 4.0);
    }
}

TEST_CASE("radius from a redundant central generator agrees in the flat range") {
    // tuples (X, Y) and (X, Y, Z): with the central weight at 2, inside the
    // range where the central direction is already covered by the pair, the
    // two radii agree up to a bounded factor
    GroupSpec pair_spec = heisenberg2();
    GroupSpec triple_spec = make_unitriangular_spec(
        3, {unit_elementary(3, 1, 2), unit_elementary(3, 2, 3), unit_elementary(3, 1, 3)});
    WeightSystem Wp{{{Rat(3, 2), Rat(0)}, {Rat(2), Rat(1)}}};
    WeightSystem Wt{{{Rat(3, 2), Rat(0)}, {Rat(2), Rat(1)}, {Rat(2), Rat(0)}}};
    Setup sp = make_setup(pair_spec, Wp);
    Setup st = make_setup(triple_spec, Wt);
    CHECK(st.report.core == std::vector<int>{1, 2});
    for (auto [x, y, z] : {std::tuple<long, long, long>{5, 7, 100},
                           {0, 0, 50},
                           {-20, 13, -400},
                           {1000, -800, 123456}}) {
        GroupElement g = heis_elt(x, y, z);
        double rp = quasi_norm_radius(sp.spec, sp.report, sp.basis, sp.F, g).r_value;
        double rt = quasi_norm_radius(st.spec, st.report, st.basis, st.F, g).r_value;
        if (rp == 0.0) {
            CHECK(rt == 0.0);
            continue;
        }
        CHECK(rt / rp >= 1.0 / 8.0);
        CHECK(rt / rp <= 8.0);
    }
}
