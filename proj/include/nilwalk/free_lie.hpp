#ifndef NILWALK_FREE_LIE_HPP
#define NILWALK_FREE_LIE_HPP

#include <map>
#include <memory>
#include <vector>

#include "nilwalk/commutator.hpp"
#include "nilwalk/rational.hpp"

namespace nilwalk {

// Sparse element of the free nilpotent Lie algebra over Q on k generators,
// truncated at bracket length ell: basis index -> coefficient.
using LieElt = std::map<int, Rat>;

// Witt number M_k(m) = (1/m) sum_{d|m} mu(d) k^{m/d}
Int witt_number(int k, int m);

// Hall basis of basic commutators for (k, ell), ordered by (length, key).
// Basic: generators; or [a,b] with a,b basic, a > b, and (a leaf or
// right(a) <= b). Counts per length equal the Witt numbers.
class FreeLie {
  public:
    FreeLie(int k, int ell);

    int k() const { return k_; }
    int ell() const { return ell_; }
    int size() const { return (int)basis_.size(); }
    const Comm& basis_tree(int i) const { return basis_[i].tree; }
    int basis_length(int i) const { return basis_[i].length; }
    const std::vector<int>& counts_per_length() const { return counts_; }
    // index of a basis tree, -1 if absent
    int index_of(const Comm& c) const;

    LieElt gen(int i) const;  // basis element of generator s_i (1-based)
    LieElt scale(const LieElt& x, const Rat& f) const;
    LieElt add(const LieElt& x, const LieElt& y) const;
    LieElt neg(const LieElt& x) const;

    // Lie bracket with Hall rewriting, truncated at length ell
    LieElt bracket(const LieElt& x, const LieElt& y) const;

    // image of a formal commutator under the LIE bracket (signed leaves -> +-gen)
    LieElt lie_of_tree(const Comm& c) const;

    // truncated Baker-Campbell-Hausdorff: log(exp x * exp y); requires ell <= 4
    LieElt bch(const LieElt& x, const LieElt& y) const;

    // group-commutator in log coordinates: log([exp x, exp y])
    LieElt bch_commutator(const LieElt& x, const LieElt& y) const;

    // log of the image of a formal commutator under the GROUP bracket
    LieElt log_image(const Comm& c) const;

  private:
    struct Node {
        Comm tree;
        int length;
        int left = -1, right = -1;  // -1 for leaves
    };
    LieElt bracket_basis(int i, int j) const;

    int k_, ell_;
    std::vector<Node> basis_;
    std::vector<int> counts_;
    std::map<std::string, int> index_;                     // tree key -> index
    mutable std::map<std::pair<int, int>, LieElt> bcache_;  // bracket memo
};

}  // namespace nilwalk

#endif
