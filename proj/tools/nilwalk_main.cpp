// Command-line front end: analyze / simulate / norm / volume / oracle.
// Configuration arrives as JSON; every run echoes its fully resolved config.
// Exit codes: 0 ok, 2 config/schema problem, 3 unsupported backend,
// 4 budget or resource limit, 1 anything else.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nilwalk/errors.hpp"
#include "nilwalk/filtration.hpp"
#include "nilwalk/free_lie.hpp"
#include "nilwalk/geometry.hpp"
#include "nilwalk/group.hpp"
#include "nilwalk/walker.hpp"

using json = nlohmann::ordered_json;
using namespace nilwalk;

namespace {

struct Options {
    std::string config_path;
    uint64_t seed = 12345;
    int workers = 1;
    std::string out_dir = ".";
    long budget_seconds = 0;  // 0 = unlimited
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
    return cfg;
}

const json& need(const json& j, const char* field) {
    if (!j.contains(field)) throw SchemaError(std::string("missing field: ") + field);
    return j.at(field);
}

GroupSpec parse_group(const json& j) {
    std::string backend = need(j, "backend").get<std::string>();
    if (backend == "zd") {
        int d = need(j, "d").get<int>();
        std::vector<std::vector<long>> gens;
        for (const auto& g : need(j, "generators")) gens.push_back(g.get<std::vector<long>>());
        if (d < 1 || gens.empty()) throw SchemaError("zd needs d >= 1 and generators");
        return make_zd_spec(d, gens);
    }
    if (backend == "unitriangular") {
        int d = need(j, "d").get<int>();
        std::vector<GroupElement> gens;
        for (const auto& g : need(j, "generators")) {
            std::vector<std::vector<long>> rows;
            for (const auto& r : g) rows.push_back(r.get<std::vector<long>>());
            gens.push_back(mat_from_rows(d, rows));
        }
        int cls = j.value("class", 0);
        return make_unitriangular_spec(d, gens, cls);
    }
    if (backend == "free_nilpotent") {
        int k = need(j, "k").get<int>();
        int ell = need(j, "class").get<int>();
        GroupSpec spec = make_free_nilpotent_spec(k, ell);
        if (j.contains("image")) {
            const json& im = j.at("image");
            int id = need(im, "d").get<int>();
            spec.image_d = id;
            for (const auto& g : need(im, "generators")) {
                std::vector<std::vector<long>> rows;
                for (const auto& r : g) rows.push_back(r.get<std::vector<long>>());
                spec.matrix_images.push_back(mat_from_rows(id, rows));
            }
        }
        return spec;
    }
    throw UnsupportedBackend("unknown backend: " + backend);
}

WeightSystem parse_weights(const json& arr) {
    WeightSystem W;
    for (const auto& w : arr) {
        WeightVec v;
        if (w.is_array())
            for (const auto& c : w) v.push_back(parse_rat(c.get<std::string>()));
        else
            v.push_back(parse_rat(w.get<std::string>()));
        W.gen_weights.push_back(v);
    }
    if (W.k() == 0) throw SchemaError("empty weight system");
    for (const auto& v : W.gen_weights)
        if ((int)v.size() != W.dim()) throw SchemaError("weight dimensions differ");
    return W;
}

std::vector<Alpha> parse_alphas(const json& arr) {
    std::vector<Alpha> a;
    for (const auto& s : arr) a.push_back(parse_alpha(s.get<std::string>()));
    if (a.empty()) throw SchemaError("empty alpha vector");
    return a;
}

GroupElement parse_element(const GroupSpec& spec, const json& j) {
    if (spec.backend == Backend::Zd) {
        auto v = j.get<std::vector<long>>();
        if ((int)v.size() != spec.d) throw SchemaError("element dimension mismatch");
        GroupElement g{Backend::Zd, spec.d, {}};
        for (long x : v) g.v.emplace_back(x);
        return g;
    }
    if (spec.backend == Backend::Unitriangular) {
        std::vector<std::vector<long>> rows;
        for (const auto& r : j) rows.push_back(r.get<std::vector<long>>());
        return mat_from_rows(spec.d, rows);
    }
    auto v = j.get<std::vector<long>>();
    if ((int)v.size() != spec.d) throw SchemaError("element dimension mismatch");
    GroupElement g{Backend::FreeNilpotent, spec.d, {}};
    for (long x : v) g.v.emplace_back(x);
    return g;
}

json report_to_json(const FiltrationReport& rep) {
    json out;
    out["j_star"] = rep.j_star;
    out["hirsch_length"] = rep.hirsch_length;
    out["class_used"] = rep.class_used;
    json levels = json::array();
    for (const auto& lvl : rep.levels) {
        json l;
        l["weight"] = wv_str(lvl.weight_value);
        l["rank"] = lvl.rank;
        l["lie_dim"] = lvl.lie_dim;
        json cs = json::array();
        for (const auto& c : lvl.generating_commutators) cs.push_back(comm_to_string(c));
        l["commutators"] = cs;
        levels.push_back(l);
    }
    out["levels"] = levels;
    out["core"] = rep.core;
    out["j_w"] = rep.j_w_table;
    return out;
}

void attach_D(json& out, const std::vector<Rat>& D) {
    if (D.size() == 1 || (D.size() == 2 && D[1] == 0)) {
        out["D"] = rat_str(D[0]);
    } else {
        out["D1"] = rat_str(D[0]);
        out["D2"] = rat_str(D[1]);
    }
}

void emit(const json& out, const Options& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    std::ofstream f(opt.out_dir + "/" + name);
    f << out.dump(2) << "\n";
    std::cout << out.dump(2) << std::endl;
}

WFSystem wf_system_for(const json& cfg, const GroupSpec& spec, WeightSystem& W_out) {
    WFSystem F;
    if (cfg.contains("weights")) {
        W_out = parse_weights(cfg.at("weights"));
        for (const auto& w : W_out.gen_weights) F.push_back(wf_from_weight(w));
    } else if (cfg.contains("alpha")) {
        auto a = parse_alphas(cfg.at("alpha"));
        CompatiblePair pair = weights_from_alpha(a);
        W_out = pair.two_dim;
        F = pair.F_two;
    } else {
        throw SchemaError("need \"weights\" or \"alpha\"");
    }
    if (W_out.k() != spec.k) throw SchemaError("weight/alpha count != generator count");
    return F;
}

int run_analyze(const json& cfg, const Options& opt) {
    GroupSpec spec = parse_group(need(cfg, "group"));
    json out;
    out["config"] = cfg;
    if (cfg.contains("weights")) {
        WeightSystem W = parse_weights(cfg.at("weights"));
        if (W.k() != spec.k) throw SchemaError("weight count != generator count");
        FiltrationReport rep = filtration(spec, W);
        out["report"] = report_to_json(rep);
        attach_D(out, rep.D_components);
    }
    if (cfg.contains("alpha")) {
        auto a = parse_alphas(cfg.at("alpha"));
        if ((int)a.size() != spec.k) throw SchemaError("alpha count != generator count");
        Prediction pred = predicted_return_exponent(spec, a);
        json pj;
        pj["regime"] = pred.regime;
        pj["poly_exponent"] = rat_str(pred.poly_exponent);
        pj["log_exponent"] = rat_str(pred.log_exponent);
        pj["upper_bound_only"] = pred.upper_bound_only;
        pj["report"] = report_to_json(pred.report);
        out["prediction"] = pj;
        if (!cfg.contains("weights"))
            attach_D(out, {pred.poly_exponent, pred.log_exponent});
        if (spec.backend == Backend::Zd) {
            try {
                GreedyResult g = zd_greedy_sigma(spec, a);
                json gj;
                gj["indices"] = g.indices;
                gj["inv_beta"] = rat_str(g.inv_beta);
                gj["alpha_two_picks"] = g.gamma_count;
                out["greedy_sigma"] = gj;
            } catch (const std::invalid_argument& e) {
                out["greedy_sigma"] = {{"error", e.what()}};
            }
        }
    }
    if (!cfg.contains("weights") && !cfg.contains("alpha"))
        throw SchemaError("analyze needs \"weights\" or \"alpha\"");
    emit(out, opt, "analyze.json");
    return 0;
}

int run_simulate(const json& cfg, const Options& opt) {
    const json& sim = need(cfg, "simulate");
    std::vector<long> n_grid = need(sim, "n_grid").get<std::vector<long>>();
    long N = need(sim, "N").get<long>();
    double tolerance = sim.value("tolerance", 0.5);
    if (n_grid.empty() || N < 2) throw SchemaError("simulate needs n_grid and N >= 2");

    bool radial = sim.contains("radial_gamma");
    GroupSpec spec;
    StableLawSpec law;
    RadialSpec rspec;
    json predicted;
    if (radial) {
        rspec.gamma = parse_rat(sim.at("radial_gamma").get<std::string>());
        if (rspec.gamma <= 0 || rspec.gamma >= 2)
            throw SchemaError("radial_gamma must lie strictly in (0,2)");
        // Z^2 with the word (L1) norm: D(G) = 2, decay exponent D/gamma
        predicted["regime"] = "radial";
        predicted["poly_exponent"] = rat_str(Rat(2) / rspec.gamma);
        predicted["log_exponent"] = "0";
    } else {
        spec = parse_group(need(cfg, "group"));
        auto a = parse_alphas(need(cfg, "alpha"));
        if ((int)a.size() != spec.k) throw SchemaError("alpha count != generator count");
        law = make_stable_law(a);
        Prediction pred = predicted_return_exponent(spec, a);
        predicted["regime"] = pred.regime;
        predicted["poly_exponent"] = rat_str(pred.poly_exponent);
        predicted["log_exponent"] = rat_str(pred.log_exponent);
        predicted["upper_bound_only"] = pred.upper_bound_only;
    }

    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() -
                                                                t0)
            .count();
    };

    std::vector<CollisionEstimate> series;
    bool truncated = false;
    for (long n : n_grid) {
        if (opt.budget_seconds > 0 && elapsed() >= opt.budget_seconds) {
            truncated = true;
            break;
        }
        series.push_back(radial ? radial_collision(rspec, n, N, opt.seed, opt.workers)
                                : collision_estimate(law, spec, n, N, opt.seed, opt.workers));
    }

    std::filesystem::create_directories(opt.out_dir);
    {
        std::ofstream csv(opt.out_dir + "/simulate.csv");
        csv << "n,estimate,stderr,pairs,N\n";
        char buf[128];
        for (const auto& e : series) {
            std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%llu,%ld\n", e.n, e.estimate,
                          e.std_error, e.colliding_pairs, e.N);
            csv << buf;
        }
    }

    json out;
    out["config"] = cfg;
    out["seed"] = opt.seed;
    out["workers"] = opt.workers;
    out["predicted"] = predicted;
    json serj = json::array();
    std::vector<FitPoint> pts;
    for (const auto& e : series) {
        serj.push_back({{"n", e.n},
                        {"estimate", e.estimate},
                        {"stderr", e.std_error},
                        {"pairs", e.colliding_pairs},
                        {"N", e.N}});
        if (e.estimate > 0) pts.push_back({(double)e.n, e.estimate, e.std_error});
    }
    out["series"] = serj;
    if (truncated) out["truncated"] = true;

    auto fit_json = [&](FitModel m) -> json {
        RegressionResult r = fit_exponent(pts, m);
        double rss = 0;
        for (double v : r.residuals) rss += v * v;
        return {{"slope", r.slope},
                {"intercept", r.intercept},
                {"half_width", r.half_width},
                {"residual_ss", rss}};
    };
    if (pts.size() >= 4) {
        out["fit_power"] = fit_json(FitModel::Power);
        out["fit_power_log"] = fit_json(FitModel::PowerLog);
        double slope = out["fit_power"]["slope"].get<double>();
        double target = -parse_rat(predicted["poly_exponent"].get<std::string>()).get_d();
        out["verdict"] =
            std::abs(slope - target) <= tolerance ? "within-tolerance" : "outside-tolerance";
    }
    emit(out, opt, "simulate.json");
    if (truncated) throw BudgetExceeded("horizon grid truncated by --budget-seconds");
    return 0;
}

int run_norm(const json& cfg, const Options& opt) {
    GroupSpec spec = parse_group(need(cfg, "group"));
    WeightSystem W;
    WFSystem F = wf_system_for(cfg, spec, W);
    FiltrationReport rep = filtration(spec, W);
    CommutatorBasis basis = commutator_basis(spec, rep);
    GroupElement g = parse_element(spec, need(cfg, "element"));
    QuasiNormValue q = quasi_norm_radius(spec, rep, basis, F, g);
    json out;
    out["config"] = cfg;
    out["r_value"] = q.r_value;
    json cs = json::array(), xs = json::array();
    for (size_t i = 0; i < basis.comms.size(); ++i) {
        cs.push_back(comm_to_string(basis.comms[i]));
        xs.push_back(q.coords[i].get_str());
    }
    out["basis"] = cs;
    out["coordinates"] = xs;
    out["level"] = j_w(spec, rep, g);
    emit(out, opt, "norm.json");
    return 0;
}

int run_volume(const json& cfg, const Options& opt) {
    GroupSpec spec = parse_group(need(cfg, "group"));
    WeightSystem W;
    WFSystem F = wf_system_for(cfg, spec, W);
    FiltrationReport rep = filtration(spec, W);
    json out;
    out["config"] = cfg;
    json prof = json::array();
    for (const auto& c : rep.D_components) prof.push_back(rat_str(c));
    out["exponent_profile"] = prof;
    out["D_of_G"] = rat_str(volume_exponent_DG(spec));
    json vals = json::array();
    std::vector<double> rs = cfg.value("r", std::vector<double>{});
    CommutatorBasis basis = commutator_basis(spec, rep);
    bool box = cfg.value("box", false);
    for (double r : rs) {
        json v;
        v["r"] = r;
        v["theoretical"] = ball_volume(r, rep).value;
        if (box) v["box_count"] = box_count_oracle(spec, basis, F, r).get_str();
        vals.push_back(v);
    }
    out["values"] = vals;
    emit(out, opt, "volume.json");
    return 0;
}

int run_oracle(const json& cfg, const Options& opt) {
    std::string op = need(cfg, "op").get<std::string>();
    json out;
    out["config"] = cfg;
    out["op"] = op;
    if (op == "witt") {
        int k = need(cfg, "k").get<int>();
        int ell = need(cfg, "class").get<int>();
        json counts = json::array();
        for (int m = 1; m <= ell; ++m) counts.push_back(witt_number(k, m).get_str());
        out["counts"] = counts;
    } else if (op == "convolution") {
        GroupSpec spec = parse_group(need(cfg, "group"));
        StableLawSpec law = make_stable_law(parse_alphas(need(cfg, "alpha")));
        long n = need(cfg, "n").get<long>();
        long trunc = cfg.value("trunc", 4096L);
        ConvTable t = exact_convolution(law, spec, n, trunc);
        json table = json::array();
        for (const auto& [v, p] : t.p) {
            json row;
            row["x"] = v;
            row["p"] = p;
            table.push_back(row);
        }
        out["table"] = table;
        out["tail_mass"] = t.tail_mass;
        out["collision_mass"] = collision_mass(t);
    } else if (op == "box_count") {
        GroupSpec spec = parse_group(need(cfg, "group"));
        WeightSystem W;
        WFSystem F = wf_system_for(cfg, spec, W);
        FiltrationReport rep = filtration(spec, W);
        CommutatorBasis basis = commutator_basis(spec, rep);
        double r = need(cfg, "r").get<double>();
        out["count"] = box_count_oracle(spec, basis, F, r).get_str();
    } else if (op == "snf") {
        std::vector<std::vector<Int>> m;
        for (const auto& row : need(cfg, "matrix")) {
            std::vector<Int> r;
            for (const auto& x : row) r.emplace_back(x.get<long>());
            m.push_back(r);
        }
        json f = json::array();
        for (const auto& d : smith_normal_form(m)) f.push_back(d.get_str());
        out["invariant_factors"] = f;
    } else {
        throw SchemaError("unknown oracle op: " + op);
    }
    emit(out, opt, "oracle.json");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact return-probability exponents and collision simulation on nilpotent groups"};
    app.require_subcommand(1);
    app.fallthrough();  // allow global flags after the subcommand name
    Options opt;
    app.add_option("--config", opt.config_path, "JSON configuration file")->required();
    app.add_option("--seed", opt.seed, "master RNG seed");
    app.add_option("--workers", opt.workers, "worker thread count");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--budget-seconds", opt.budget_seconds, "wall-clock budget (0 = unlimited)");

    auto* analyze = app.add_subcommand("analyze", "exact filtration, ranks, exponents");
    auto* simulate = app.add_subcommand("simulate", "collision estimates and slope fits");
    auto* norm = app.add_subcommand("norm", "comparable quasi-norm radius of an element");
    auto* volume = app.add_subcommand("volume", "ball-volume profile and box counts");
    auto* oracle = app.add_subcommand("oracle", "exact reference tables");

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = load_config(opt.config_path);
        if (analyze->parsed()) return run_analyze(cfg, opt);
        if (simulate->parsed()) return run_simulate(cfg, opt);
        if (norm->parsed()) return run_norm(cfg, opt);
        if (volume->parsed()) return run_volume(cfg, opt);
        if (oracle->parsed()) return run_oracle(cfg, opt);
    } catch (const SchemaError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedBackend& e) {
        std::cerr << "unsupported backend: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
