#pragma once

#include "sf/multiindex.hpp"
#include "sf/polynomial.hpp"

#include <map>
#include <string>
#include <utility>

namespace sf {

/*
 * Bigraded exterior calculus on R^n with polynomial coefficients.
 *
 * A (p,q)-form is stored as a map (I,J) -> f_IJ over ascending multi-indices
 * |I| = p, |J| = q, representing sum f_IJ d'x_I ^ d''x_J.  All five operators
 * act through OperatorConvention; the sign choices are fixed once so that the
 * whole identity suite holds:
 *
 *   J(f d'x_I ^ d''x_J)  = (-1)^{pq} f d'x_J ^ d''x_I
 *   d'                   = front insertion of d'x_i
 *   d''                  = J o d' o J            (works out to the (-1)^p twist)
 *   N(f d'x_I ^ d''x_J)  = (-1)^p sum_{i in I} sgn(i,I) f d'x_{I\i} ^ (d''x_i ^ d''x_J)
 *   Nbar                 = J o N o J
 *
 * Under these signs: d'd'' + d''d' = 0, [d'',N] = 0, d'N - Nd' = d'',
 * N Nbar N = (q+1) N on (1,q), and both Leibniz rules hold with the graded
 * sign (-1)^{p+q}.  A convention with sigma_J = +1 makes coefficient-symmetric
 * (1,1)-forms J-fixed but breaks anticommutation and Leibniz; the suite is the
 * arbiter, so (-1)^{pq} it is.
 */
struct OperatorConvention {
    // sigma_J(p,q) multiplies the ordered swap I <-> J.
    int sigma_J(int p, int q) const { return ((p * q) % 2 == 0) ? 1 : -1; }
    // sigma_N(p) multiplies the contraction-reinsertion sum in N.
    // flip_N is a fault-injection hook for the negative controls; it touches
    // N only, so the identities that pair N against d', Nbar or J go red
    // while everything else stays green.
    bool flip_N = false;
    int sigma_N(int p) const {
        int s = (p % 2 == 0) ? 1 : -1;
        return flip_N ? -s : s;
    }
    // Nbar has its own implementation (the expanded form of J o N o J);
    // sigma_Nbar(p) = (-1)^{p+1}.
    int sigma_Nbar(int p) const { return (p % 2 == 0) ? -1 : 1; }
};

class Superform {
public:
    Superform() : n_(0), p_(0), q_(0) {}
    Superform(int n, int p, int q) : n_(n), p_(p), q_(q) {}

    static Superform function(const Polynomial& f);                       // (0,0)
    static Superform basis(int n, const MultiIndex& I, const MultiIndex& J,
                           const Polynomial& coef);

    int vars() const { return n_; }
    int p() const { return p_; }
    int q() const { return q_; }
    bool is_zero() const { return terms_.empty(); }

    using Key = std::pair<MultiIndex, MultiIndex>;
    const std::map<Key, Polynomial>& terms() const { return terms_; }

    void add_term(const MultiIndex& I, const MultiIndex& J, const Polynomial& f);

    Superform operator+(const Superform& o) const;
    Superform operator-(const Superform& o) const;
    Superform operator*(const Rat& c) const;
    bool operator==(const Superform& o) const;

    std::string str() const;

private:
    int n_, p_, q_;
    std::map<Key, Polynomial> terms_;
};

// sgn(i, I) = (-1)^(l-1), domain error if i not in I.
int sgn(int i, const MultiIndex& I);

Superform wedge(const Superform& a, const Superform& b);
Superform d_prime(const Superform& a);
Superform J_op(const Superform& a, const OperatorConvention& cv = {});
Superform d_second(const Superform& a, const OperatorConvention& cv = {});
Superform N_op(const Superform& a, const OperatorConvention& cv = {});
Superform Nbar_op(const Superform& a, const OperatorConvention& cv = {});

// a - (1/(q+1)) Nbar(N(a)) on (1,q)-forms; projection onto Ker N.
Superform project_kerN(const Superform& a, const OperatorConvention& cv = {});

// Textual serialization: `coef * d'x{i..} ^ d''x{j..}` terms joined by " + ".
std::string serialize(const Superform& a);
Superform deserialize(int n, const std::string& text);

} // namespace sf
