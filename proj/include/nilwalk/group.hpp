#ifndef NILWALK_GROUP_HPP
#define NILWALK_GROUP_HPP

#include <memory>
#include <string>
#include <vector>

#include "nilwalk/collection.hpp"
#include "nilwalk/commutator.hpp"
#include "nilwalk/rational.hpp"

namespace nilwalk {

enum class Backend { Zd, Unitriangular, FreeNilpotent };

// Backend-tagged exact element. Payload layout:
//   Zd:             v = coordinates, d = dimension
//   Unitriangular:  v = d*d row-major integer matrix, unit diagonal
//   FreeNilpotent:  v = Hall-coordinate exponents, d = basis rank
struct GroupElement {
    Backend tag;
    int d = 0;
    std::vector<Int> v;
    bool operator==(const GroupElement&) const = default;
};

// d x d strictly upper triangular rational matrix (Mal'cev logarithm lives here)
struct LieElement {
    int d = 0;
    std::vector<Rat> a;  // row-major
    Rat& at(int i, int j) { return a[i * d + j]; }
    const Rat& at(int i, int j) const { return a[i * d + j]; }
};

struct GroupSpec {
    Backend backend = Backend::Zd;
    int d = 0;          // Zd dimension or matrix side
    int k = 0;          // number of generators
    int nil_class = 0;  // declared nilpotency class (0 = derive default)
    std::vector<GroupElement> generators;
    std::shared_ptr<const CollectionContext> hall;  // FreeNilpotent only
    // optional faithful matrix image of the generators (FreeNilpotent rank path)
    int image_d = 0;
    std::vector<GroupElement> matrix_images;

    int effective_class() const;
};

GroupSpec make_zd_spec(int d, const std::vector<std::vector<long>>& gens);
GroupSpec make_unitriangular_spec(int d, const std::vector<GroupElement>& gens, int declared_class = 0);
GroupSpec make_free_nilpotent_spec(int k, int ell);

GroupElement identity(const GroupSpec& spec);
GroupElement mat_from_rows(int d, const std::vector<std::vector<long>>& rows);
// I + E_{i,j} convenience (1-based indices)
GroupElement unit_elementary(int d, int i, int j, long value = 1);

GroupElement multiply(const GroupSpec& spec, const GroupElement& g, const GroupElement& h);
GroupElement invert(const GroupSpec& spec, const GroupElement& g);
GroupElement power(const GroupSpec& spec, const GroupElement& g, const Int& n);
GroupElement bracket(const GroupSpec& spec, const GroupElement& g, const GroupElement& h);
bool is_identity(const GroupElement& g);

// image of a formal commutator under s_i -> spec.generators[i-1]
GroupElement eval_commutator(const GroupSpec& spec, const Comm& c);
// image under an explicit generator tuple (matrix backend)
GroupElement eval_commutator_images(const GroupSpec& spec, const Comm& c,
                                    const std::vector<GroupElement>& images);

// terminating matrix logarithm / exponential (Unitriangular backend)
LieElement log_element(const GroupElement& g);
std::vector<Rat> exp_rational(const LieElement& x);      // full rational matrix
GroupElement exp_element(const LieElement& x);           // requires integrality

// homomorphic image of a Hall normal form through generator images living in
// image_spec; verifies the images have nilpotency class <= ell of the form
GroupElement project_hall_to_matrix(const NormalForm& h, const CollectionContext& ctx,
                                    const GroupSpec& image_spec);

// serialization for hashing / collision counting
std::string element_key(const GroupElement& g);
uint64_t element_hash(const GroupElement& g);

std::string element_str(const GroupElement& g);

}  // namespace nilwalk

#endif
