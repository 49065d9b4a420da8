#include "nilwalk/weights.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace nilwalk {

int wv_cmp(const WeightVec& a, const WeightVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("weight dimension mismatch");
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

WeightVec wv_add(const WeightVec& a, const WeightVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("weight dimension mismatch");
    WeightVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

std::string wv_str(const WeightVec& v) {
    if (v.size() == 1) return rat_str(v[0]);
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += rat_str(v[i]);
    }
    return s + ")";
}

WeightVec weight_of(const Comm& c, const WeightSystem& W) {
    if (c->is_leaf()) {
        int i = c->letter().index;
        if (i < 1 || i > W.k()) throw std::invalid_argument("leaf index outside weight system");
        return W.gen_weights[i - 1];
    }
    return wv_add(weight_of(c->left(), W), weight_of(c->right(), W));
}

std::vector<WeightVec> weight_value_sequence(const WeightSystem& W, int max_len) {
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    // weights depend only on the leaf multiset: enumerate multisets of sizes
    // 1..max_len over the k generators
    struct Cmp {
        bool operator()(const WeightVec& a, const WeightVec& b) const { return wv_cmp(a, b) < 0; }
    };
    std::set<WeightVec, Cmp> vals;
    std::vector<WeightVec> frontier = W.gen_weights;
    for (const auto& v : frontier) vals.insert(v);
    for (int len = 2; len <= max_len; ++len) {
        std::vector<WeightVec> next;
        std::set<WeightVec, Cmp> seen;
        for (const auto& v : frontier)
            for (const auto& g : W.gen_weights) {
                WeightVec s = wv_add(v, g);
                if (seen.insert(s).second) next.push_back(s);
            }
        for (const auto& v : next) vals.insert(v);
        frontier = std::move(next);
    }
    return {vals.begin(), vals.end()};
}

double WeightFunction::eval(double r) const {
    if (r < 0) throw std::invalid_argument("weight function evaluated at r < 0");
    if (r == 0) return 0.0;
    return std::pow(r, rat_double(v1)) * std::pow(std::log(std::exp(1.0) + r), rat_double(v2));
}

double WeightFunction::invert(double y) const {
    if (v1 <= 0) throw std::invalid_argument("invert needs v1 > 0");
    double f1 = eval(1.0);
    if (y < f1) throw std::invalid_argument("invert below F(1)");
    if (y == f1) return 1.0;
    double lo = 1.0, hi = 2.0;
    while (eval(hi) < y) {
        lo = hi;
        hi *= 2;
        if (hi > 1e300) throw std::invalid_argument("invert target out of range");
    }
    for (int it = 0; it < 200 && (hi - lo) > lo * 0x1.0p-40; ++it) {
        double mid = 0.5 * (lo + hi);
        (eval(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

WeightFunction wf_product(const WeightFunction& a, const WeightFunction& b) {
    return {a.v1 + b.v1, a.v2 + b.v2};
}

WeightFunction wf_from_weight(const WeightVec& w) {
    if (w.empty()) throw std::invalid_argument("empty weight vector");
    if (w.size() == 1) return {w[0], Rat(0)};
    return {w[0], w[1]};
}

Rat Alpha::tilde() const {
    if (inf || value > 2) return Rat(2);
    return value;
}

Alpha parse_alpha(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return {true, Rat(0)};
    Alpha a{false, parse_rat(s)};
    if (a.value <= 0) throw std::invalid_argument("alpha must be positive");
    return a;
}

std::string alpha_str(const Alpha& a) { return a.inf ? "inf" : rat_str(a.value); }

CompatiblePair weights_from_alpha(const std::vector<Alpha>& a) {
    CompatiblePair out;
    for (const auto& ai : a) {
        if (!ai.inf && ai.value <= 0) throw std::invalid_argument("alpha must be positive");
        Rat w1 = Rat(1) / ai.tilde();
        Rat w2 = ai.is_two() ? Rat(1, 2) : Rat(0);
        out.one_dim.gen_weights.push_back({w1});
        out.two_dim.gen_weights.push_back({w1, w2});
        out.F_one.push_back({w1, Rat(0)});
        out.F_two.push_back({w1, w2});
    }
    return out;
}

}  // namespace nilwalk
