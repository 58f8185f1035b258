#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace sf {

// Exact rational scalar used throughout; no floating point anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p/q" etc.  Used by the JSON loaders and the CLI.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    return r;
}

inline std::string rat_str(const Rat& r) {
    return r.get_str();
}

inline int rat_sign(const Rat& r) { return sgn(r); }

} // namespace sf
