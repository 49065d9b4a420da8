#include "nilwalk/filtration.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilwalk {

namespace {

// analysis view of a spec: Z^d works on coordinate vectors, matrix backends on
// logs of unitriangular matrices; the Hall backend analyzes through its
// supplied faithful matrix image
struct AnalysisView {
    bool matrix_mode;
    GroupSpec mat_spec;  // valid in matrix mode
    const GroupSpec* orig;

    explicit AnalysisView(const GroupSpec& spec) : orig(&spec) {
        if (spec.backend == Backend::Zd) {
            matrix_mode = false;
        } else if (spec.backend == Backend::Unitriangular) {
            matrix_mode = true;
            mat_spec = spec;
        } else {
            if (spec.matrix_images.empty())
                throw std::invalid_argument(
                    "free nilpotent rank analysis needs a faithful matrix image in the GroupSpec");
            matrix_mode = true;
            mat_spec = make_unitriangular_spec(spec.image_d, spec.matrix_images);
        }
    }

    int ambient() const {
        if (!matrix_mode) return orig->d;
        int d = mat_spec.d;
        return d * (d - 1) / 2;
    }

    // image of a formal commutator in the analysis group
    GroupElement eval(const Comm& c) const {
        if (!matrix_mode) return eval_commutator(*orig, c);
        return eval_commutator_images(mat_spec, c, mat_spec.generators);
    }

    GroupElement map_element(const GroupElement& g) const {
        if (orig->backend != Backend::FreeNilpotent) return g;
        return project_hall_to_matrix({g.v}, *orig->hall, mat_spec);
    }

    QVec flatten(const LieElement& m) const {
        QVec out;
        out.reserve(ambient());
        for (int i = 0; i < m.d; ++i)
            for (int j = i + 1; j < m.d; ++j) out.push_back(m.at(i, j));
        return out;
    }

    QVec log_coords(const GroupElement& g_orig) const {
        if (!matrix_mode) {
            QVec out;
            for (const auto& x : g_orig.v) out.emplace_back(x);
            return out;
        }
        return flatten(log_element(map_element(g_orig)));
    }
};

LieElement lie_bracket_mat(const LieElement& x, const LieElement& y) {
    int d = x.d;
    LieElement r{d, std::vector<Rat>(d * d, Rat(0))};
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Rat s(0);
            for (int t = i + 1; t < j; ++t)
                s += x.at(i, t) * y.at(t, j) - y.at(i, t) * x.at(t, j);
            r.at(i, j) = s;
        }
    return r;
}

// rational Lie closure: span + bracket, grown incrementally
struct Closure {
    const AnalysisView& view;
    RowSpace rs;
    std::vector<LieElement> pool;  // matrix mode only

    explicit Closure(const AnalysisView& v) : view(v), rs(v.ambient()) {}

    void add_log(const LieElement& m) {
        if (!rs.add(view.flatten(m))) return;
        size_t mine = pool.size();
        pool.push_back(m);
        // close under brackets with everything present (including new arrivals)
        for (size_t i = 0; i < pool.size(); ++i) {
            if (i == mine) continue;
            add_log(lie_bracket_mat(pool[i], pool[mine]));
        }
    }

    void add_vector(const QVec& v) { rs.add(v); }
};

}  // namespace

QVec log_coordinates(const GroupSpec& spec, const GroupElement& g) {
    AnalysisView view(spec);
    return view.log_coords(g);
}

int lie_closure_dim(const GroupSpec& spec, const std::vector<GroupElement>& elements) {
    AnalysisView view(spec);
    Closure cl(view);
    for (const auto& g : elements) {
        if (!view.matrix_mode)
            cl.add_vector(view.log_coords(g));
        else
            cl.add_log(log_element(view.map_element(g)));
    }
    return (int)cl.rs.dim();
}

FiltrationReport filtration(const GroupSpec& spec, const WeightSystem& W) {
    if (W.k() != spec.k) throw std::invalid_argument("weight system size != generator count");
    AnalysisView view(spec);
    int cls = spec.effective_class();

    struct Item {
        Comm c;
        WeightVec w;
        GroupElement img;
        bool trivial;
    };
    std::vector<Item> items;
    for (const auto& c : enumerate_commutators(spec.k, cls)) {
        GroupElement img = view.eval(c);
        items.push_back({c, weight_of(c, W), img, is_identity(img)});
    }

    std::vector<WeightVec> grid = weight_value_sequence(W, cls + 1);
    size_t L = grid.size();

    // descending sweep: extend the closure as the weight threshold drops
    std::vector<int> dims(L, 0);
    std::vector<std::shared_ptr<RowSpace>> spaces(L);
    {
        AnalysisView v2(spec);
        Closure cl(v2);
        std::vector<bool> used(items.size(), false);
        for (size_t jj = L; jj-- > 0;) {
            for (size_t t = 0; t < items.size(); ++t) {
                if (used[t] || items[t].trivial) continue;
                if (wv_cmp(items[t].w, grid[jj]) >= 0) {
                    used[t] = true;
                    if (v2.matrix_mode)
                        // eval() already lands in the matrix group, so no
                        // normal-form mapping here
                        cl.add_log(log_element(items[t].img));
                    else
                        cl.add_vector(v2.log_coords(items[t].img));
                }
            }
            dims[jj] = (int)cl.rs.dim();
            spaces[jj] = std::make_shared<RowSpace>(cl.rs);
        }
    }

    FiltrationReport rep;
    rep.W = W;
    rep.class_used = cls;
    rep.hirsch_length = dims.empty() ? 0 : dims[0];

    int j_star = 0;
    for (size_t j = 0; j < L; ++j)
        if (dims[j] > 0) j_star = (int)j + 1;
    rep.j_star = j_star;

    rep.D_components.assign(W.dim(), Rat(0));
    for (int j = 1; j <= j_star; ++j) {
        FiltrationLevel lvl;
        lvl.weight_value = grid[j - 1];
        lvl.lie_dim = dims[j - 1];
        int next = (j < (int)L) ? dims[j] : 0;
        lvl.rank = dims[j - 1] - next;
        for (const auto& it : items)
            if (wv_cmp(it.w, grid[j - 1]) == 0) lvl.generating_commutators.push_back(it.c);
        for (int cco = 0; cco < W.dim(); ++cco)
            rep.D_components[cco] += grid[j - 1][cco] * lvl.rank;
        rep.levels.push_back(std::move(lvl));
        rep.level_spaces.push_back(spaces[j - 1]);
    }

    // per-generator isolator levels and the core
    for (int i = 1; i <= spec.k; ++i) {
        QVec lg = view.log_coords(spec.generators[i - 1]);
        int jw = 0;
        for (int j = j_star; j >= 1; --j)
            if (rep.level_spaces[j - 1]->contains(lg)) {
                jw = j;
                break;
            }
        rep.j_w_table.push_back(jw);
        if (jw >= 1 && wv_cmp(rep.levels[jw - 1].weight_value, W.gen_weights[i - 1]) == 0)
            rep.core.push_back(i);
    }
    return rep;
}

std::vector<Rat> D_exponent(const FiltrationReport& report) { return report.D_components; }

int j_w(const GroupSpec& spec, const FiltrationReport& report, const GroupElement& g) {
    AnalysisView view(spec);
    QVec lg = view.log_coords(g);
    for (int j = report.j_star; j >= 1; --j)
        if (report.level_spaces[j - 1]->contains(lg)) return j;
    return 0;
}

std::vector<int> core_indices(const FiltrationReport& report) { return report.core; }

GreedyResult zd_greedy_sigma(const GroupSpec& spec, const std::vector<Alpha>& a) {
    if (spec.backend != Backend::Zd)
        throw std::invalid_argument("greedy extraction is a Z^d operation");
    if ((int)a.size() != spec.k) throw std::invalid_argument("alpha size mismatch");
    std::vector<int> order(spec.k);
    for (int i = 0; i < spec.k; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (a[i].inf != a[j].inf) return !a[i].inf;  // finite alpha first
        if (a[i].inf) return i < j;
        if (a[i].value != a[j].value) return a[i].value < a[j].value;
        return i < j;
    });
    RowSpace rs(spec.d);
    GreedyResult res;
    res.inv_beta = 0;
    for (int idx : order) {
        QVec v;
        for (const auto& x : spec.generators[idx].v) v.emplace_back(x);
        if (rs.add(v)) {
            res.indices.push_back(idx + 1);
            res.inv_beta += Rat(1) / a[idx].tilde();
            if (a[idx].is_two()) ++res.gamma_count;
            if ((int)rs.dim() == spec.d) break;
        }
    }
    if ((int)rs.dim() != spec.d)
        throw std::invalid_argument("generators do not span a finite-index sublattice");
    return res;
}

Rat volume_exponent_DG(const GroupSpec& spec) {
    WeightSystem W;
    for (int i = 0; i < spec.k; ++i) W.gen_weights.push_back({Rat(1)});
    FiltrationReport rep = filtration(spec, W);
    return rep.D_components[0];
}

Prediction predicted_return_exponent(const GroupSpec& spec, const std::vector<Alpha>& a) {
    CompatiblePair pair = weights_from_alpha(a);
    FiltrationReport rep1 = filtration(spec, pair.one_dim);
    bool all_lt2 = true, all_eq2 = true;
    for (int i : rep1.core) {
        const Alpha& ai = a[i - 1];
        // alpha = inf behaves like the bounded-step case: no log correction
        if (!(ai.less_than_two() || ai.inf)) all_lt2 = false;
        if (!ai.is_two()) all_eq2 = false;
    }
    Prediction p;
    if (all_lt2) {
        p.poly_exponent = rep1.D_components[0];
        p.log_exponent = 0;
        p.regime = "pure-power";
        p.report = std::move(rep1);
        return p;
    }
    if (all_eq2) {
        Rat dg = volume_exponent_DG(spec);
        p.poly_exponent = dg / 2;
        p.log_exponent = dg / 2;
        p.regime = "all-core-alpha=2";
        p.report = std::move(rep1);
        return p;
    }
    FiltrationReport rep2 = filtration(spec, pair.two_dim);
    p.poly_exponent = rep2.D_components[0];
    p.log_exponent = rep2.D_components[1];
    p.regime = "mixed/unproven";
    p.upper_bound_only = true;
    p.report = std::move(rep2);
    return p;
}

}  // namespace nilwalk
