#pragma once

#include "sf/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sf {

// Exponent vector of a monomial in n variables.
using Monomial = std::vector<uint32_t>;

// Multivariate polynomial with exact rational coefficients.
// Terms with zero coefficient are never stored.
class Polynomial {
public:
    Polynomial() : n_(0) {}
    explicit Polynomial(int n) : n_(n) {}
    Polynomial(int n, const Rat& c);

    static Polynomial variable(int n, int i);       // x_i, 1-based i
    static Polynomial monomial(int n, const Monomial& m, const Rat& c);

    int vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rat>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rat& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rat& c) const;
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);

    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(int i) const;             // d/dx_i, 1-based
    Rat eval(const std::vector<Rat>& x) const;
    // Substitute x_i -> subs[i-1], an affine/polynomial expression in m variables.
    Polynomial substitute(const std::vector<Polynomial>& subs) const;

    int total_degree() const;                       // -1 for the zero polynomial
    std::string str() const;

private:
    int n_;
    std::map<Monomial, Rat> terms_;
};

} // namespace sf
