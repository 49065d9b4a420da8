#ifndef NILWALK_COLLECTION_HPP
#define NILWALK_COLLECTION_HPP

#include <memory>
#include <vector>

#include "nilwalk/commutator.hpp"
#include "nilwalk/free_lie.hpp"

namespace nilwalk {

// Ordered basis of basic commutators for N(k, ell) with per-length counts.
struct HallBasis {
    int k = 0;
    int ell = 0;
    std::vector<Comm> commutators;  // ascending (length, key) order
    std::vector<int> counts;        // per length 1..ell; equal Witt numbers
};

// Exponent vector over the Hall basis; unique per group element.
struct NormalForm {
    std::vector<Int> x;
    bool is_identity() const {
        for (const auto& e : x)
            if (e != 0) return false;
        return true;
    }
    bool operator==(const NormalForm&) const = default;
};

// Exact engine for N(k, ell), ell <= 4. Normal forms are Mal'cev coordinates
// of the second kind: g = prod c_i^{x_i} over the Hall basis in order.
// Products fold through the truncated BCH formula in the free nilpotent Lie
// algebra and are read back by grade-wise integer stripping; exactness is
// guarded by integrality assertions and by matrix-projection cross-checks in
// the tests.
class CollectionContext {
  public:
    CollectionContext(int k, int ell);

    const HallBasis& basis() const { return basis_; }
    const FreeLie& lie() const { return lie_; }
    int rank() const { return (int)basis_.commutators.size(); }

    // log coordinates of the element denoted by a normal form
    LieElt embed(const NormalForm& u) const;
    // unique normal form of a group element given by log coordinates;
    // throws logic_error if coordinates are not integral (not a group element)
    NormalForm strip(LieElt z) const;

    NormalForm nf_identity() const { return {std::vector<Int>(rank(), Int(0))}; }
    NormalForm nf_multiply(const NormalForm& u, const NormalForm& v) const;
    NormalForm nf_inverse(const NormalForm& u) const;
    NormalForm nf_power(const NormalForm& u, const Int& n) const;

    // normal form of an arbitrary word over formal commutators (brackets of
    // length > ell drop; leaves must be indexed within 1..k)
    NormalForm collect(const Word& w) const;

  private:
    FreeLie lie_;
    HallBasis basis_;
    std::vector<int> basis_lie_index_;   // Hall basis pos -> FreeLie index
    std::vector<LieElt> basis_log_;      // log of the group commutator c_i
};

HallBasis hall_basis(int k, int ell);

// The least-first collecting process over canonical commutators: repeatedly
// take the least commutator present and move its occurrences to the left by
// successive commutation; created brackets are canonicalized through J and
// dropped past length ell. Returns the collected word (ascending commutators
// with accumulated exponents). Letters of the input must have exponent +-1
// after expansion; arbitrary exponents are expanded by repetition, so keep
// degrees desk-scale.
Word collect_word(const Word& w, int ell);

}  // namespace nilwalk

#endif
