#include "nilwalk/group.hpp"

#include <sstream>
#include <stdexcept>

namespace nilwalk {

int GroupSpec::effective_class() const {
    if (nil_class > 0) return nil_class;
    if (backend == Backend::Zd) return 1;
    if (backend == Backend::Unitriangular) return d - 1;
    return hall ? hall->basis().ell : 0;
}

GroupSpec make_zd_spec(int d, const std::vector<std::vector<long>>& gens) {
    GroupSpec s;
    s.backend = Backend::Zd;
    s.d = d;
    s.nil_class = 1;
    for (const auto& g : gens) {
        if ((int)g.size() != d) throw std::invalid_argument("generator dimension mismatch");
        GroupElement e{Backend::Zd, d, {}};
        for (long x : g) e.v.emplace_back(x);
        s.generators.push_back(std::move(e));
    }
    s.k = (int)s.generators.size();
    return s;
}

GroupSpec make_unitriangular_spec(int d, const std::vector<GroupElement>& gens, int declared_class) {
    GroupSpec s;
    s.backend = Backend::Unitriangular;
    s.d = d;
    s.nil_class = declared_class > 0 ? declared_class : d - 1;
    for (const auto& g : gens) {
        if (g.tag != Backend::Unitriangular || g.d != d)
            throw std::invalid_argument("generator backend mismatch");
        s.generators.push_back(g);
    }
    s.k = (int)s.generators.size();
    return s;
}

GroupSpec make_free_nilpotent_spec(int k, int ell) {
    GroupSpec s;
    s.backend = Backend::FreeNilpotent;
    s.k = k;
    s.nil_class = ell;
    s.hall = std::make_shared<CollectionContext>(k, ell);
    s.d = s.hall->rank();
    for (int i = 0; i < k; ++i) {
        GroupElement e{Backend::FreeNilpotent, s.d, std::vector<Int>(s.d, Int(0))};
        e.v[i] = 1;  // generators are the first k Hall basis entries
        s.generators.push_back(std::move(e));
    }
    return s;
}

GroupElement identity(const GroupSpec& spec) {
    switch (spec.backend) {
        case Backend::Zd:
            return {Backend::Zd, spec.d, std::vector<Int>(spec.d, Int(0))};
        case Backend::Unitriangular: {
            GroupElement e{Backend::Unitriangular, spec.d, std::vector<Int>(spec.d * spec.d, Int(0))};
            for (int i = 0; i < spec.d; ++i) e.v[i * spec.d + i] = 1;
            return e;
        }
        case Backend::FreeNilpotent:
            return {Backend::FreeNilpotent, spec.d, std::vector<Int>(spec.d, Int(0))};
    }
    throw std::logic_error("unreachable");
}

GroupElement mat_from_rows(int d, const std::vector<std::vector<long>>& rows) {
    GroupElement e{Backend::Unitriangular, d, std::vector<Int>(d * d, Int(0))};
    if ((int)rows.size() != d) throw std::invalid_argument("matrix row count mismatch");
    for (int i = 0; i < d; ++i) {
        if ((int)rows[i].size() != d) throw std::invalid_argument("matrix column count mismatch");
        for (int j = 0; j < d; ++j) {
            if (j < i && rows[i][j] != 0)
                throw std::invalid_argument("matrix must be upper unitriangular");
            if (j == i && rows[i][j] != 1)
                throw std::invalid_argument("matrix diagonal must be 1");
            e.v[i * d + j] = rows[i][j];
        }
    }
    return e;
}

GroupElement unit_elementary(int d, int i, int j, long value) {
    if (i < 1 || j < 1 || i >= j || j > d) throw std::invalid_argument("need 1 <= i < j <= d");
    GroupElement e{Backend::Unitriangular, d, std::vector<Int>(d * d, Int(0))};
    for (int t = 0; t < d; ++t) e.v[t * d + t] = 1;
    e.v[(i - 1) * d + (j - 1)] = value;
    return e;
}

static void check_same(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
    if (g.tag != spec.backend || h.tag != spec.backend || g.d != h.d)
        throw std::invalid_argument("backend mismatch");
}

GroupElement multiply(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
    check_same(spec, g, h);
    switch (spec.backend) {
        case Backend::Zd: {
            GroupElement r = g;
            for (int i = 0; i < g.d; ++i) r.v[i] += h.v[i];
            return r;
        }
        case Backend::Unitriangular: {
            int d = g.d;
            GroupElement r{Backend::Unitriangular, d, std::vector<Int>(d * d, Int(0))};
            // unitriangular product: only j >= i entries, k in [i, j]
            for (int i = 0; i < d; ++i)
                for (int j = i; j < d; ++j) {
                    Int s = 0;
                    for (int t = i; t <= j; ++t) s += g.v[i * d + t] * h.v[t * d + j];
                    r.v[i * d + j] = s;
                }
            return r;
        }
        case Backend::FreeNilpotent: {
            NormalForm u{g.v}, v{h.v};
            return {Backend::FreeNilpotent, g.d, spec.hall->nf_multiply(u, v).x};
        }
    }
    throw std::logic_error("unreachable");
}

GroupElement invert(const GroupSpec& spec, const GroupElement& g) {
    switch (spec.backend) {
        case Backend::Zd: {
            GroupElement r = g;
            for (auto& x : r.v) x = -x;
            return r;
        }
        case Backend::Unitriangular: {
            // back-substitution: r = g^{-1}, row by row from the diagonal out
            int d = g.d;
            GroupElement r = identity(spec);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    Int s = 0;
                    for (int t = i; t < j; ++t) s += r.v[i * d + t] * g.v[t * d + j];
                    r.v[i * d + j] = -s;
                }
            return r;
        }
        case Backend::FreeNilpotent:
            return {Backend::FreeNilpotent, g.d, spec.hall->nf_inverse({g.v}).x};
    }
    throw std::logic_error("unreachable");
}

GroupElement power(const GroupSpec& spec, const GroupElement& g, const Int& n) {
    if (spec.backend == Backend::Zd) {
        GroupElement r = g;
        for (auto& x : r.v) x *= n;
        return r;
    }
    if (spec.backend == Backend::FreeNilpotent)
        return {Backend::FreeNilpotent, g.d, spec.hall->nf_power({g.v}, n).x};
    if (n == 0) return identity(spec);
    GroupElement base = n < 0 ? invert(spec, g) : g;
    Int e = abs(n);
    GroupElement acc = identity(spec);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t b = bits; b-- > 0;) {
        acc = multiply(spec, acc, acc);
        if (mpz_tstbit(e.get_mpz_t(), b)) acc = multiply(spec, acc, base);
    }
    return acc;
}

GroupElement bracket(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) {
    if (spec.backend == Backend::Zd) return identity(spec);
    return multiply(spec, multiply(spec, invert(spec, g), invert(spec, h)),
                    multiply(spec, g, h));
}

bool is_identity(const GroupElement& g) {
    if (g.tag == Backend::Unitriangular) {
        for (int i = 0; i < g.d; ++i)
            for (int j = i + 1; j < g.d; ++j)
                if (g.v[i * g.d + j] != 0) return false;
        return true;
    }
    for (const auto& x : g.v)
        if (x != 0) return false;
    return true;
}

GroupElement eval_commutator_images(const GroupSpec& spec, const Comm& c,
                                    const std::vector<GroupElement>& images) {
    if (c->is_leaf()) {
        int i = c->letter().index;
        if (i < 1 || i > (int)images.size()) throw std::invalid_argument("leaf index outside S");
        const GroupElement& g = images[i - 1];
        return c->letter().sign > 0 ? g : invert(spec, g);
    }
    return bracket(spec, eval_commutator_images(spec, c->left(), images),
                   eval_commutator_images(spec, c->right(), images));
}

GroupElement eval_commutator(const GroupSpec& spec, const Comm& c) {
    return eval_commutator_images(spec, c, spec.generators);
}

LieElement log_element(const GroupElement& g) {
    if (g.tag != Backend::Unitriangular)
        throw std::invalid_argument("log_element needs the unitriangular backend");
    int d = g.d;
    // N = g - I ; log = N - N^2/2 + ... +- N^{d-1}/(d-1)
    std::vector<Rat> N(d * d, Rat(0));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) N[i * d + j] = Rat(g.v[i * d + j]);
    LieElement out{d, std::vector<Rat>(d * d, Rat(0))};
    std::vector<Rat> P = N;
    for (int p = 1; p < d; ++p) {
        Rat coeff = Rat((p % 2) ? 1 : -1, p);
        for (int i = 0; i < d * d; ++i) out.a[i] += coeff * P[i];
        if (p + 1 < d) {
            std::vector<Rat> Q(d * d, Rat(0));
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    Rat s(0);
                    for (int t = i + 1; t < j; ++t) s += P[i * d + t] * N[t * d + j];
                    Q[i * d + j] = s;
                }
            P = std::move(Q);
        }
    }
    return out;
}

std::vector<Rat> exp_rational(const LieElement& x) {
    int d = x.d;
    std::vector<Rat> out(d * d, Rat(0));
    for (int i = 0; i < d; ++i) out[i * d + i] = 1;
    std::vector<Rat> P(x.a);
    Rat fact(1);  // 1/p! maintained by dividing by p each round
    for (int p = 1; p < d; ++p) {
        fact /= p;
        for (int i = 0; i < d * d; ++i) out[i] += fact * P[i];
        if (p + 1 < d) {
            std::vector<Rat> Q(d * d, Rat(0));
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    Rat s(0);
                    for (int t = i + 1; t < j; ++t) s += P[i * d + t] * x.a[t * d + j];
                    Q[i * d + j] = s;
                }
            P = std::move(Q);
        }
    }
    return out;
}

GroupElement exp_element(const LieElement& x) {
    auto m = exp_rational(x);
    GroupElement g{Backend::Unitriangular, x.d, std::vector<Int>(x.d * x.d, Int(0))};
    for (int i = 0; i < x.d * x.d; ++i) {
        if (m[i].get_den() != 1) throw std::invalid_argument("exp is not integral");
        g.v[i] = m[i].get_num();
    }
    return g;
}

GroupElement project_hall_to_matrix(const NormalForm& h, const CollectionContext& ctx,
                                    const GroupSpec& image_spec) {
    if (image_spec.backend != Backend::Unitriangular)
        throw std::invalid_argument("projection target must be a matrix spec");
    // class check: all brackets of total length ell+1 over the images must die
    int ell = ctx.basis().ell;
    for (const auto& c : ctx.basis().commutators) {
        if (c->length() < ell) continue;
        GroupElement img = eval_commutator(image_spec, c);
        for (const auto& g : image_spec.generators)
            if (!is_identity(bracket(image_spec, img, g)))
                throw std::invalid_argument("generator images exceed the declared class");
    }
    GroupElement out = identity(image_spec);
    for (size_t i = 0; i < h.x.size(); ++i) {
        if (h.x[i] == 0) continue;
        GroupElement img = eval_commutator(image_spec, ctx.basis().commutators[i]);
        out = multiply(image_spec, out, power(image_spec, img, h.x[i]));
    }
    return out;
}

std::string element_key(const GroupElement& g) {
    std::ostringstream os;
    os << (int)g.tag << '|' << g.d;
    for (const auto& x : g.v) os << ',' << x.get_str(62);
    return os.str();
}

uint64_t element_hash(const GroupElement& g) {
    std::string k = element_key(g);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : k) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string element_str(const GroupElement& g) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < g.v.size(); ++i) {
        if (i) os << ',';
        os << g.v[i].get_str();
    }
    os << ']';
    return os.str();
}

}  // namespace nilwalk
