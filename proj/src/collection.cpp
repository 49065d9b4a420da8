#include "nilwalk/collection.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilwalk {

HallBasis hall_basis(int k, int ell) {
    FreeLie lie(k, ell);
    HallBasis b;
    b.k = k;
    b.ell = ell;
    for (int i = 0; i < lie.size(); ++i) b.commutators.push_back(lie.basis_tree(i));
    b.counts = lie.counts_per_length();
    return b;
}

CollectionContext::CollectionContext(int k, int ell) : lie_(k, ell) {
    if (ell > 4) throw std::invalid_argument("free nilpotent backend supports class <= 4");
    basis_.k = k;
    basis_.ell = ell;
    for (int i = 0; i < lie_.size(); ++i) {
        basis_.commutators.push_back(lie_.basis_tree(i));
        basis_lie_index_.push_back(i);
        // Mal'cev coordinates are taken against the iterated group
        // commutators c_i, not exp of the bare Lie brackets; log(c_i) picks
        // up higher-length corrections starting at class 3
        basis_log_.push_back(lie_.log_image(lie_.basis_tree(i)));
    }
    basis_.counts = lie_.counts_per_length();
}

LieElt CollectionContext::embed(const NormalForm& u) const {
    if ((int)u.x.size() != rank()) throw std::invalid_argument("normal form size mismatch");
    LieElt z;
    for (int i = 0; i < rank(); ++i) {
        if (u.x[i] == 0) continue;
        z = lie_.bch(z, lie_.scale(basis_log_[i], Rat(u.x[i])));
    }
    return z;
}

NormalForm CollectionContext::strip(LieElt z) const {
    NormalForm out = nf_identity();
    for (int i = 0; i < rank(); ++i) {
        auto it = z.find(basis_lie_index_[i]);
        if (it == z.end()) continue;
        const Rat& c = it->second;
        if (c.get_den() != 1)
            throw std::logic_error("non-integral Mal'cev coordinate: not a group element");
        Int xi = c.get_num();
        out.x[i] = xi;
        z = lie_.bch(lie_.scale(basis_log_[i], Rat(-xi)), z);
    }
    if (!z.empty()) throw std::logic_error("stripping did not terminate at zero");
    return out;
}

NormalForm CollectionContext::nf_multiply(const NormalForm& u, const NormalForm& v) const {
    return strip(lie_.bch(embed(u), embed(v)));
}

NormalForm CollectionContext::nf_inverse(const NormalForm& u) const {
    return strip(lie_.scale(embed(u), Rat(-1)));
}

NormalForm CollectionContext::nf_power(const NormalForm& u, const Int& n) const {
    return strip(lie_.scale(embed(u), Rat(n)));
}

NormalForm CollectionContext::collect(const Word& w) const {
    LieElt z;
    for (const auto& f : w) {
        if (f.c->length() > basis_.ell || f.exponent == 0) continue;
        LieElt lg = lie_.log_image(f.c);
        z = lie_.bch(z, lie_.scale(lg, Rat(f.exponent)));
    }
    return strip(z);
}

Word collect_word(const Word& w, int ell) {
    // expand into unit letters over canonical representatives
    std::vector<std::pair<Comm, int>> word;
    for (const auto& f : w) {
        if (f.c->length() > ell || f.exponent == 0) continue;
        auto [rep, s] = canonicalize(f.c);
        Int n = abs(f.exponent);
        if (n > 100000) throw std::invalid_argument("collect_word exponent exceeds desk scale");
        int sign = s * (f.exponent < 0 ? -1 : 1);
        for (Int i = 0; i < n; ++i) word.emplace_back(rep, sign);
    }

    Word out;
    while (!word.empty()) {
        // least commutator present
        Comm least = word[0].first;
        for (const auto& [c, s] : word)
            if (comm_lt(c, least)) least = c;
        size_t boundary = 0;  // letters of `least` already collected at the front
        for (size_t scan = 0; scan < word.size(); ++scan) {
            if (!comm_eq(word[scan].first, least)) continue;
            size_t q = scan;
            while (q > boundary) {
                // swap (z,delta) (y,eps) -> (y,eps) (z,delta) [z^delta, y^eps]
                auto z = word[q - 1];
                auto y = word[q];
                word[q - 1] = y;
                word[q] = z;
                if (z.first->length() + y.first->length() <= ell) {
                    Comm A = z.second > 0 ? z.first : J(z.first);
                    Comm B = y.second > 0 ? y.first : J(y.first);
                    int cmp = comm_cmp(A, B);
                    if (cmp != 0) {
                        Comm t = cmp > 0 ? FormalCommutator::bracket(A, B)
                                         : FormalCommutator::bracket(B, A);
                        word.insert(word.begin() + q + 1, {t, cmp > 0 ? +1 : -1});
                    }
                }
                --q;
            }
            ++boundary;
        }
        Int exponent = 0;
        for (size_t i = 0; i < boundary; ++i) exponent += word[i].second;
        word.erase(word.begin(), word.begin() + boundary);
        if (exponent != 0) out.push_back({least, exponent});
    }
    return out;
}

}  // namespace nilwalk
