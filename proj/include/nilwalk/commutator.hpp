#ifndef NILWALK_COMMUTATOR_HPP
#define NILWALK_COMMUTATOR_HPP

#include <memory>
#include <string>
#include <vector>

#include "nilwalk/rational.hpp"

namespace nilwalk {

struct Letter {
    int index;  // 1..k
    int sign;   // +1 or -1
    bool operator==(const Letter&) const = default;
};

// Immutable formal commutator: a leaf letter or a bracket of two subtrees.
// Nodes cache length and a serialized key; the canonical total order on
// commutators is (length, key) with keys compared lexicographically.
class FormalCommutator;
using Comm = std::shared_ptr<const FormalCommutator>;

class FormalCommutator {
  public:
    static Comm leaf(int index, int sign = +1);
    static Comm bracket(Comm left, Comm right);

    bool is_leaf() const { return !left_; }
    const Letter& letter() const { return letter_; }
    const Comm& left() const { return left_; }
    const Comm& right() const { return right_; }
    int length() const { return length_; }
    const std::string& key() const { return key_; }

  private:
    FormalCommutator() = default;
    Letter letter_{0, 0};
    Comm left_, right_;
    int length_ = 1;
    std::string key_;
};

// order: length first, then lexicographic on the serialized encoding
int comm_cmp(const Comm& a, const Comm& b);
inline bool comm_lt(const Comm& a, const Comm& b) { return comm_cmp(a, b) < 0; }
inline bool comm_eq(const Comm& a, const Comm& b) { return comm_cmp(a, b) == 0; }

// inversion involution: J(s_i^+-) = s_i^-+, J([a,b]) = [b,a]
Comm J(const Comm& c);
// c is canonical iff it is a positive leaf or a bracket [a,b] with a > b
bool is_canonical(const Comm& c);
// returns (canonical representative, sign): (c,+1) if canonical, else (J(c),-1)
std::pair<Comm, int> canonicalize(const Comm& c);

// leaves in order, brackets and signs stripped
std::vector<int> build_word(const Comm& c);
// full expansion over S^{+-1} via [c1,c2] = c1^-1 c2^-1 c1 c2 (freely reduced)
std::vector<Letter> group_word(const Comm& c);

// all canonical representatives of length <= max_len, ordered by (length, key);
// J-fixed trees ([a,a]) are excluded since they pair with themselves
std::vector<Comm> enumerate_commutators(int k, int max_len);
// every formal commutator of length exactly len (both members of each J-pair)
std::vector<Comm> all_commutators_of_length(int k, int len);

std::string comm_to_string(const Comm& c);       // e.g. "[s1,[s2,s3^-1]]"
Comm parse_commutator(const std::string& text);  // whitespace-insensitive

// A word is a sequence of (commutator, exponent) pairs.
struct WordFactor {
    Comm c;
    Int exponent;
};
using Word = std::vector<WordFactor>;

// occurrence count of c^{+-1} in the word (sum of |exponent| over equal trees)
Int word_degree(const Word& w, const Comm& c);
// signed occurrence count
Int word_degree_signed(const Word& w, const Comm& c);

}  // namespace nilwalk

#endif
