#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace katofan {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using VecI = std::vector<Int>;
using VecQ = std::vector<Rat>;

inline int sign(const Int& a) { return a.sign(); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

/// gcd of all entries; 0 for the zero vector.
inline Int content(const VecI& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    return g;
}

/// Divide out the content so the first nonzero entry keeps its sign.
inline VecI primitive(VecI v) {
    Int g = content(v);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

inline bool is_zero(const VecI& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline VecI add(const VecI& a, const VecI& b) {
    VecI r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline VecI sub(const VecI& a, const VecI& b) {
    VecI r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline VecI scale(const Int& c, const VecI& a) {
    VecI r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline VecI negate(const VecI& a) {
    VecI r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Int dot(const VecI& a, const VecI& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot_q(const VecQ& a, const VecI& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
    return s;
}

inline bool lex_less(const VecI& a, const VecI& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rat& a) {
    Int num = boost::multiprecision::numerator(a);
    Int den = boost::multiprecision::denominator(a);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::string to_string(const VecI& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

/// Sort vectors lexicographically and drop duplicates.
inline void sort_unique(std::vector<VecI>& vs) {
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

}  // namespace katofan
