#include "nilwalk/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "nilwalk/errors.hpp"

namespace nilwalk {

namespace {

// F^{-1} extended below F(1): the comparable radius never drops below the
// unit scale for a nonzero coordinate
double inv_clamped(const WeightFunction& F, double y) {
    if (y <= 0) return 0.0;
    double f1 = F.eval(1.0);
    if (y <= f1) return 1.0;
    return F.invert(y);
}

}  // namespace

CommutatorBasis commutator_basis(const GroupSpec& spec, const FiltrationReport& report) {
    CommutatorBasis b;
    for (int j = 1; j <= report.j_star; ++j) {
        // start from the next level's subspace so rank increments certify
        // freeness in the abelian quotient
        RowSpace rs = (j < report.j_star) ? *report.level_spaces[j]
                                          : RowSpace(report.level_spaces[j - 1]->ambient());
        b.level_start.push_back((int)b.comms.size());
        int picked = 0;
        for (const auto& c : report.levels[j - 1].generating_commutators) {
            GroupElement img = eval_commutator(spec, c);
            if (is_identity(img)) continue;
            if (!rs.add(log_coordinates(spec, img))) continue;
            b.comms.push_back(c);
            b.images.push_back(img);
            b.level_of.push_back(j);
            ++picked;
        }
        if (picked != report.levels[j - 1].rank)
            throw std::logic_error("level generators do not realize the level rank");
        b.free_rank.push_back(picked);
    }
    return b;
}

WeightFunction wf_of_comm(const Comm& c, const WFSystem& F) {
    if (c->is_leaf()) {
        int i = c->letter().index;
        if (i < 1 || i > (int)F.size())
            throw std::invalid_argument("leaf index outside weight-function system");
        return F[i - 1];
    }
    return wf_product(wf_of_comm(c->left(), F), wf_of_comm(c->right(), F));
}

std::vector<Int> coordinates(const GroupSpec& spec, const FiltrationReport& report,
                             const CommutatorBasis& basis, const GroupElement& g) {
    std::vector<Int> x(basis.comms.size(), Int(0));
    GroupElement h = g;
    for (int j = 1; j <= report.j_star; ++j) {
        int start = basis.level_start[j - 1];
        int cnt = basis.free_rank[j - 1];
        if (cnt == 0) continue;

        std::vector<QVec> rows;
        for (int i = start; i < start + cnt; ++i)
            rows.push_back(log_coordinates(spec, basis.images[i]));
        if (j < report.j_star)
            for (const auto& row : report.level_spaces[j]->basis()) rows.push_back(row);

        auto sol = express_in_rows(rows, log_coordinates(spec, h));
        if (!sol)
            throw std::invalid_argument("element is outside the span of the commutator basis");
        GroupElement P = identity(spec);
        for (int t = 0; t < cnt; ++t) {
            const Rat& c = (*sol)[t];
            if (c.get_den() != 1)
                throw std::invalid_argument(
                    "element has a non-integral coordinate over the commutator basis");
            x[start + t] = c.get_num();
            P = multiply(spec, P, power(spec, basis.images[start + t], x[start + t]));
        }
        h = multiply(spec, invert(spec, P), h);
    }
    if (!is_identity(h))
        throw std::invalid_argument("coordinate stripping did not terminate at the identity");

    // re-multiplication identity, checked exactly
    GroupElement check = identity(spec);
    for (size_t i = 0; i < basis.comms.size(); ++i)
        check = multiply(spec, check, power(spec, basis.images[i], x[i]));
    if (!(check == g)) throw std::logic_error("re-multiplication check failed");
    return x;
}

QuasiNormValue quasi_norm_radius(const GroupSpec& spec, const FiltrationReport& report,
                                 const CommutatorBasis& basis, const WFSystem& F,
                                 const GroupElement& g) {
    QuasiNormValue out;
    out.coords = coordinates(spec, report, basis, g);
    for (size_t i = 0; i < basis.comms.size(); ++i) {
        if (out.coords[i] == 0) continue;
        WeightFunction Fc = wf_of_comm(basis.comms[i], F);
        double mag = std::abs(out.coords[i].get_d());
        out.r_value = std::max(out.r_value, inv_clamped(Fc, mag));
    }
    return out;
}

std::vector<PowerGrowthRow> power_growth_check(const GroupSpec& spec,
                                               const FiltrationReport& report,
                                               const CommutatorBasis& basis, const WFSystem& F,
                                               const GroupElement& g,
                                               const std::vector<long>& n_grid) {
    int j = j_w(spec, report, g);
    if (j < 1) throw std::invalid_argument("power growth needs an element inside the filtration");
    WeightFunction Fj = wf_from_weight(report.levels[j - 1].weight_value);
    std::vector<PowerGrowthRow> rows;
    for (long n : n_grid) {
        if (n < 1) throw std::invalid_argument("power grid entries must be >= 1");
        GroupElement gn = power(spec, g, Int(n));
        double r = quasi_norm_radius(spec, report, basis, F, gn).r_value;
        double denom = inv_clamped(Fj, (double)n);
        rows.push_back({n, r, r / denom});
    }
    return rows;
}

BallVolume ball_volume(double r, const FiltrationReport& report) {
    BallVolume out;
    out.exponent_profile = report.D_components;
    for (const auto& lvl : report.levels) {
        WeightFunction Fj = wf_from_weight(lvl.weight_value);
        out.value *= std::pow(Fj.eval(r), (double)lvl.rank);
    }
    return out;
}

Int box_count_oracle(const GroupSpec& spec, const CommutatorBasis& basis, const WFSystem& F,
                     double r, long budget) {
    size_t t = basis.comms.size();
    std::vector<long> B(t);
    double tuples = 1.0;
    for (size_t i = 0; i < t; ++i) {
        double Fi = wf_of_comm(basis.comms[i], F).eval(r);
        B[i] = (long)std::floor(Fi + 1e-9);
        tuples *= (double)(2 * B[i] + 1);
        if (tuples > (double)budget)
            throw BudgetExceeded("box enumeration exceeds the element budget");
    }

    if (t == 0) return 1;
    std::unordered_set<std::string> seen;
    // depth-first over exponent tuples, reusing partial prefix products
    std::vector<GroupElement> prefix{identity(spec)};
    struct Frame {
        size_t i;
        long x;
    };
    std::vector<Frame> stack{{0, -B[0]}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.x > B[f.i]) {
            stack.pop_back();
            prefix.pop_back();
            if (!stack.empty()) ++stack.back().x;
            continue;
        }
        GroupElement next =
            multiply(spec, prefix.back(), power(spec, basis.images[f.i], Int(f.x)));
        if (f.i + 1 == t) {
            seen.insert(element_key(next));
            ++f.x;
        } else {
            prefix.push_back(std::move(next));
            stack.push_back({f.i + 1, -B[f.i + 1]});
        }
    }
    return Int((unsigned long)seen.size());
}

}  // namespace nilwalk
