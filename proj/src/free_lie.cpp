#include "nilwalk/free_lie.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilwalk {

Int witt_number(int k, int m) {
    if (m < 1) throw std::invalid_argument("witt_number needs m >= 1");
    // mu(d) over divisors d of m
    Int sum = 0;
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        int n = d, mu = 1;
        for (int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) {
                    mu = 0;
                    break;
                }
                mu = -mu;
            }
        if (mu != 0 && n > 1) mu = -mu;
        if (mu == 0) continue;
        Int kp;
        mpz_ui_pow_ui(kp.get_mpz_t(), (unsigned long)k, (unsigned long)(m / d));
        sum += mu * kp;
    }
    return sum / m;
}

FreeLie::FreeLie(int k, int ell) : k_(k), ell_(ell) {
    if (k < 1 || ell < 1) throw std::invalid_argument("FreeLie needs k >= 1, ell >= 1");
    std::vector<std::vector<int>> by_length(ell + 1);
    for (int i = 1; i <= k; ++i) {
        Node n{FormalCommutator::leaf(i), 1, -1, -1};
        by_length[1].push_back((int)basis_.size());
        index_[n.tree->key()] = (int)basis_.size();
        basis_.push_back(n);
    }
    counts_.assign(ell, 0);
    counts_[0] = k;
    for (int m = 2; m <= ell; ++m) {
        std::vector<Node> fresh;
        for (int la = 1; la < m; ++la) {
            int lb = m - la;
            for (int ia : by_length[la])
                for (int ib : by_length[lb]) {
                    const Node& a = basis_[ia];
                    const Node& b = basis_[ib];
                    if (comm_cmp(a.tree, b.tree) <= 0) continue;
                    if (a.left >= 0 && comm_cmp(basis_[a.right].tree, b.tree) > 0) continue;
                    fresh.push_back({FormalCommutator::bracket(a.tree, b.tree), m, ia, ib});
                }
        }
        std::sort(fresh.begin(), fresh.end(),
                  [](const Node& x, const Node& y) { return comm_lt(x.tree, y.tree); });
        for (auto& n : fresh) {
            by_length[m].push_back((int)basis_.size());
            index_[n.tree->key()] = (int)basis_.size();
            basis_.push_back(n);
        }
        counts_[m - 1] = (int)fresh.size();
    }
}

int FreeLie::index_of(const Comm& c) const {
    auto it = index_.find(c->key());
    return it == index_.end() ? -1 : it->second;
}

LieElt FreeLie::gen(int i) const {
    if (i < 1 || i > k_) throw std::invalid_argument("generator index out of range");
    return {{i - 1, Rat(1)}};
}

LieElt FreeLie::scale(const LieElt& x, const Rat& f) const {
    LieElt r;
    if (f == 0) return r;
    for (const auto& [i, c] : x) r[i] = c * f;
    return r;
}

LieElt FreeLie::add(const LieElt& x, const LieElt& y) const {
    LieElt r = x;
    for (const auto& [i, c] : y) {
        Rat v = (r.count(i) ? r[i] : Rat(0)) + c;
        if (v == 0)
            r.erase(i);
        else
            r[i] = v;
    }
    return r;
}

LieElt FreeLie::neg(const LieElt& x) const { return scale(x, Rat(-1)); }

LieElt FreeLie::bracket_basis(int i, int j) const {
    if (i == j) return {};
    if (basis_[i].length + basis_[j].length > ell_) return {};
    auto key = std::make_pair(i, j);
    auto it = bcache_.find(key);
    if (it != bcache_.end()) return it->second;
    LieElt result;
    if (comm_cmp(basis_[i].tree, basis_[j].tree) < 0) {
        result = neg(bracket_basis(j, i));
    } else if (basis_[i].left < 0 || comm_cmp(basis_[basis_[i].right].tree, basis_[j].tree) <= 0) {
        // [i,j] is itself basic
        Comm t = FormalCommutator::bracket(basis_[i].tree, basis_[j].tree);
        int idx = index_of(t);
        if (idx < 0) throw std::logic_error("basic commutator missing from Hall basis");
        result = {{idx, Rat(1)}};
    } else {
        // i = [a,b] with b > j: Jacobi  [[a,b],j] = [[a,j],b] + [a,[b,j]]
        int a = basis_[i].left, b = basis_[i].right;
        LieElt aj = bracket_basis(a, j);
        LieElt bj = bracket_basis(b, j);
        LieElt t1, t2;
        for (const auto& [u, cu] : aj) t1 = add(t1, scale(bracket_basis(u, b), cu));
        for (const auto& [u, cu] : bj) t2 = add(t2, scale(bracket_basis(a, u), cu));
        result = add(t1, t2);
    }
    bcache_[key] = result;
    return result;
}

LieElt FreeLie::bracket(const LieElt& x, const LieElt& y) const {
    LieElt r;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y) r = add(r, scale(bracket_basis(i, j), ci * cj));
    return r;
}

LieElt FreeLie::lie_of_tree(const Comm& c) const {
    if (c->is_leaf()) {
        LieElt g = gen(c->letter().index);
        return c->letter().sign > 0 ? g : neg(g);
    }
    return bracket(lie_of_tree(c->left()), lie_of_tree(c->right()));
}

LieElt FreeLie::bch(const LieElt& x, const LieElt& y) const {
    if (ell_ > 4) throw std::logic_error("BCH truncation implemented through class 4 only");
    LieElt z = add(x, y);
    LieElt xy = bracket(x, y);
    z = add(z, scale(xy, Rat(1, 2)));
    if (ell_ >= 3) {
        z = add(z, scale(bracket(x, xy), Rat(1, 12)));
        z = add(z, scale(bracket(y, bracket(y, x)), Rat(1, 12)));
    }
    if (ell_ >= 4) z = add(z, scale(bracket(y, bracket(x, xy)), Rat(-1, 24)));
    return z;
}

LieElt FreeLie::bch_commutator(const LieElt& x, const LieElt& y) const {
    return bch(bch(bch(neg(x), neg(y)), x), y);
}

LieElt FreeLie::log_image(const Comm& c) const {
    if (c->is_leaf()) {
        LieElt g = gen(c->letter().index);
        return c->letter().sign > 0 ? g : neg(g);
    }
    return bch_commutator(log_image(c->left()), log_image(c->right()));
}

}  // namespace nilwalk
