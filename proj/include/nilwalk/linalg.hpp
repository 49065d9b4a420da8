#ifndef NILWALK_LINALG_HPP
#define NILWALK_LINALG_HPP

#include <optional>
#include <vector>

#include "nilwalk/rational.hpp"

namespace nilwalk {

using QVec = std::vector<Rat>;

// Incrementally maintained reduced row-echelon basis of a rational subspace.
// Supports exact membership tests and span extension; no floating point.
class RowSpace {
  public:
    explicit RowSpace(size_t ambient) : ambient_(ambient) {}

    size_t ambient() const { return ambient_; }
    size_t dim() const { return rows_.size(); }

    // reduce v against the current basis; returns the residual
    QVec reduce(QVec v) const;
    bool contains(const QVec& v) const;
    // add v to the span; returns true if the dimension grew
    bool add(const QVec& v);

    // coefficients expressing v over the stored basis rows, if v is in span
    std::optional<QVec> coordinates_in_basis(const QVec& v) const;
    const std::vector<QVec>& basis() const { return rows_; }

  private:
    size_t ambient_;
    std::vector<QVec> rows_;     // reduced: leading 1 at pivot, zeros above/below
    std::vector<size_t> pivots_;
};

size_t rank_of(const std::vector<QVec>& rows);

// Solve x * A = b for a rational row vector x given basis rows A (each a QVec);
// returns nullopt when b is outside the row span.
std::optional<QVec> express_in_rows(const std::vector<QVec>& rows, const QVec& b);

// Smith normal form diagonal of an integer matrix (rows x cols), returned as
// the list of nonzero invariant factors d1 | d2 | ... ; rank = count.
std::vector<Int> smith_normal_form(std::vector<std::vector<Int>> m);

}  // namespace nilwalk

#endif
