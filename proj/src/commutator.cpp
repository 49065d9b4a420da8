#include "nilwalk/commutator.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace nilwalk {

Comm FormalCommutator::leaf(int index, int sign) {
    if (index < 1) throw std::invalid_argument("generator index must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    auto n = std::shared_ptr<FormalCommutator>(new FormalCommutator());
    n->letter_ = {index, sign};
    n->length_ = 1;
    n->key_ = "s" + std::to_string(index) + (sign < 0 ? "^-1" : "");
    return n;
}

Comm FormalCommutator::bracket(Comm left, Comm right) {
    if (!left || !right) throw std::invalid_argument("null bracket child");
    auto n = std::shared_ptr<FormalCommutator>(new FormalCommutator());
    n->length_ = left->length() + right->length();
    n->key_ = "[" + left->key() + "," + right->key() + "]";
    n->left_ = std::move(left);
    n->right_ = std::move(right);
    return n;
}

int comm_cmp(const Comm& a, const Comm& b) {
    if (a->length() != b->length()) return a->length() < b->length() ? -1 : 1;
    return a->key().compare(b->key()) < 0 ? -1 : (a->key() == b->key() ? 0 : 1);
}

Comm J(const Comm& c) {
    if (c->is_leaf()) return FormalCommutator::leaf(c->letter().index, -c->letter().sign);
    return FormalCommutator::bracket(c->right(), c->left());
}

bool is_canonical(const Comm& c) {
    if (c->is_leaf()) return c->letter().sign > 0;
    return comm_cmp(c->left(), c->right()) > 0;
}

std::pair<Comm, int> canonicalize(const Comm& c) {
    if (is_canonical(c)) return {c, +1};
    return {J(c), -1};
}

static void build_word_rec(const Comm& c, std::vector<int>& out) {
    if (c->is_leaf()) {
        out.push_back(c->letter().index);
        return;
    }
    build_word_rec(c->left(), out);
    build_word_rec(c->right(), out);
}

std::vector<int> build_word(const Comm& c) {
    std::vector<int> out;
    build_word_rec(c, out);
    return out;
}

static void append_reduced(std::vector<Letter>& w, const Letter& l) {
    if (!w.empty() && w.back().index == l.index && w.back().sign == -l.sign)
        w.pop_back();
    else
        w.push_back(l);
}

static void append_word(std::vector<Letter>& out, const std::vector<Letter>& w, bool invert) {
    if (!invert) {
        for (const auto& l : w) append_reduced(out, l);
    } else {
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            append_reduced(out, {it->index, -it->sign});
    }
}

std::vector<Letter> group_word(const Comm& c) {
    if (c->is_leaf()) return {c->letter()};
    auto w1 = group_word(c->left());
    auto w2 = group_word(c->right());
    std::vector<Letter> out;
    append_word(out, w1, true);
    append_word(out, w2, true);
    append_word(out, w1, false);
    append_word(out, w2, false);
    return out;
}

std::vector<Comm> all_commutators_of_length(int k, int len) {
    static std::map<std::pair<int, int>, std::vector<Comm>> cache;
    auto it = cache.find({k, len});
    if (it != cache.end()) return it->second;
    std::vector<Comm> out;
    if (len == 1) {
        for (int i = 1; i <= k; ++i) {
            out.push_back(FormalCommutator::leaf(i, +1));
            out.push_back(FormalCommutator::leaf(i, -1));
        }
    } else {
        for (int l1 = 1; l1 < len; ++l1) {
            auto left = all_commutators_of_length(k, l1);
            auto right = all_commutators_of_length(k, len - l1);
            for (const auto& a : left)
                for (const auto& b : right)
                    out.push_back(FormalCommutator::bracket(a, b));
        }
    }
    cache[{k, len}] = out;
    return out;
}

std::vector<Comm> enumerate_commutators(int k, int max_len) {
    if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::vector<Comm> out;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Comm> level;
        for (const auto& c : all_commutators_of_length(k, len))
            if (is_canonical(c)) level.push_back(c);
        std::sort(level.begin(), level.end(), comm_lt);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::string comm_to_string(const Comm& c) { return c->key(); }

namespace {
struct Parser {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        if (pos >= s.size()) throw std::invalid_argument("unexpected end of commutator literal");
        return s[pos];
    }
    void expect(char c) {
        if (peek() != c)
            throw std::invalid_argument(std::string("expected '") + c + "' in commutator literal");
        ++pos;
    }
    Comm parse() {
        if (peek() == '[') {
            ++pos;
            Comm a = parse();
            expect(',');
            Comm b = parse();
            expect(']');
            return FormalCommutator::bracket(a, b);
        }
        expect('s');
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw std::invalid_argument("expected generator index after 's'");
        int idx = std::stoi(s.substr(start, pos - start));
        int sign = +1;
        size_t save = pos;
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            skip_ws();
            if (s.compare(pos, 2, "-1") == 0) {
                sign = -1;
                pos += 2;
            } else if (s.compare(pos, 1, "1") == 0) {
                pos += 1;
            } else {
                throw std::invalid_argument("only exponents ^1 and ^-1 are allowed in commutator literals");
            }
        } else {
            pos = save;
        }
        return FormalCommutator::leaf(idx, sign);
    }
};
}  // namespace

Comm parse_commutator(const std::string& text) {
    Parser p{text};
    Comm c = p.parse();
    p.skip_ws();
    if (p.pos != text.size())
        throw std::invalid_argument("trailing characters in commutator literal");
    return c;
}

Int word_degree(const Word& w, const Comm& c) {
    Int d = 0;
    for (const auto& f : w)
        if (comm_eq(f.c, c)) d += abs(f.exponent);
    return d;
}

Int word_degree_signed(const Word& w, const Comm& c) {
    Int d = 0;
    for (const auto& f : w)
        if (comm_eq(f.c, c)) d += f.exponent;
    return d;
}

}  // namespace nilwalk
