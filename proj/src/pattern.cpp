#include "oc/pattern.hpp"

#include <sstream>

namespace oc {

OrientationPattern OrientationPattern::parse(const std::string& text) {
    std::istringstream in(text);
    std::string kind_word, signs_word;
    in >> kind_word >> signs_word;
    Kind kind;
    if (kind_word == "path")
        kind = Kind::path;
    else if (kind_word == "cycle")
        kind = Kind::cycle;
    else
        throw std::invalid_argument("pattern kind must be 'path' or 'cycle'");
    return from_signs(kind, signs_word);
}

OrientationPattern OrientationPattern::from_signs(Kind kind, const std::string& s) {
    std::vector<Sign> signs;
    signs.reserve(s.size());
    for (char c : s) {
        if (c == '+')
            signs.push_back(Sign::plus);
        else if (c == '-')
            signs.push_back(Sign::minus);
        else
            throw std::invalid_argument("pattern signs must be over {+,-}");
    }
    return OrientationPattern(kind, std::move(signs));
}

OrientationPattern OrientationPattern::consistent(Kind kind, int k) {
    int e = (kind == Kind::path) ? k - 1 : k;
    return OrientationPattern(kind, std::vector<Sign>(size_t(e), Sign::plus));
}

OrientationPattern OrientationPattern::antidirected(Kind kind, int k) {
    int e = (kind == Kind::path) ? k - 1 : k;
    if (kind == Kind::cycle && k % 2 != 0)
        throw std::invalid_argument("antidirected cycle needs even length");
    std::vector<Sign> signs(size_t(e));
    for (int i = 0; i < e; ++i) signs[size_t(i)] = (i % 2 == 0) ? Sign::plus : Sign::minus;
    return OrientationPattern(kind, std::move(signs));
}

OrientationPattern subpattern(const OrientationPattern& p, int i, int j) {
    if (p.is_cycle()) {
        if (j <= i) throw std::out_of_range("subpattern needs i < j");
        int len = j - i + 1;
        if (len > p.k()) throw std::out_of_range("cyclic window longer than cycle");
        return cycle_window(p, ((i - 1) % p.k()) + 1, len);
    }
    if (i < 1 || j > p.k() || i >= j) throw std::out_of_range("subpattern range");
    std::vector<Sign> signs;
    signs.reserve(size_t(j - i));
    for (int e = i; e < j; ++e) signs.push_back(p.sign(e));
    return OrientationPattern(OrientationPattern::Kind::path, std::move(signs));
}

OrientationPattern cycle_window(const OrientationPattern& c, int start_edge, int len) {
    if (!c.is_cycle()) throw std::invalid_argument("cycle_window needs a cycle");
    if (len < 2 || len > c.k()) throw std::out_of_range("cycle window length");
    if (start_edge < 1 || start_edge > c.k()) throw std::out_of_range("cycle start edge");
    std::vector<Sign> signs;
    signs.reserve(size_t(len - 1));
    for (int off = 0; off < len - 1; ++off)
        signs.push_back(c.sign(((start_edge - 1 + off) % c.k()) + 1));
    return OrientationPattern(OrientationPattern::Kind::path, std::move(signs));
}

}  // namespace oc
