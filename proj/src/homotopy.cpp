#include "sf/homotopy.hpp"

#include <stdexcept>

namespace sf {

namespace {

// Radial weight: each monomial x^m picks up 1/(|m| + q).
Polynomial radial_integral(const Polynomial& f, int q) {
    Polynomial r(f.vars());
    for (const auto& [m, c] : f.terms()) {
        long deg = 0;
        for (auto e : m) deg += e;
        Rat w(1, static_cast<unsigned long>(deg + q));
        w.canonicalize();
        r.add_term(m, c * w);
    }
    return r;
}

} // namespace

Superform d2_homotopy(const Superform& a, const OperatorConvention& cv) {
    (void)cv;
    if (a.q() < 1) throw std::invalid_argument("d2_homotopy requires q >= 1");
    int n = a.vars(), q = a.q();
    Superform r(n, a.p(), q - 1);
    // d'' carries the (-1)^p twist relative to the plain de Rham differential
    // in the second block, so K does too; the twists cancel in d''K + Kd''.
    Rat tw((a.p() % 2 == 0) ? 1 : -1);
    for (const auto& [k, f] : a.terms()) {
        Polynomial g = radial_integral(f, q);
        const MultiIndex& J = k.second;
        for (size_t l = 0; l < J.size(); ++l) {
            Rat s(((l % 2) == 0) ? 1 : -1);
            Polynomial coef = g * Polynomial::variable(n, J[l]) * (s * tw);
            r.add_term(k.first, remove_index(J, J[l]), coef);
        }
    }
    return r;
}

} // namespace sf
