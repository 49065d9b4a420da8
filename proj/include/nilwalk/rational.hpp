#ifndef NILWALK_RATIONAL_HPP
#define NILWALK_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace nilwalk {

using Int = mpz_class;
using Rat = mpq_class;

// Rationals travel through JSON/CLI as "p/q" strings ("p" alone means p/1).
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double rat_double(const Rat& q) { return q.get_d(); }

}  // namespace nilwalk

#endif
