#include "sf/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace sf {

Polynomial::Polynomial(int n, const Rat& c) : n_(n) {
    if (c != 0) terms_[Monomial(n, 0)] = c;
}

Polynomial Polynomial::variable(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("variable index");
    Monomial m(n, 0);
    m[i - 1] = 1;
    return monomial(n, m, Rat(1));
}

Polynomial Polynomial::monomial(int n, const Monomial& m, const Rat& c) {
    Polynomial p(n);
    p.add_term(m, c);
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(n_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(n_, 0);
            for (int i = 0; i < n_; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

Polynomial Polynomial::operator*(const Rat& c) const {
    Polynomial r(n_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Polynomial Polynomial::derivative(int i) const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) {
        if (m[i - 1] == 0) continue;
        Monomial d = m;
        d[i - 1] -= 1;
        r.add_term(d, c * Rat(static_cast<long>(m[i - 1])));
    }
    return r;
}

Rat Polynomial::eval(const std::vector<Rat>& x) const {
    Rat v(0);
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < n_; ++i)
            for (uint32_t k = 0; k < m[i]; ++k) t *= x[i];
        v += t;
    }
    return v;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& subs) const {
    if (static_cast<int>(subs.size()) != n_) throw std::invalid_argument("substitute arity");
    int m_vars = subs.empty() ? 0 : subs[0].vars();
    Polynomial r(m_vars);
    for (const auto& [m, c] : terms_) {
        Polynomial t(m_vars, c);
        for (int i = 0; i < n_; ++i)
            for (uint32_t k = 0; k < m[i]; ++k) t = t * subs[i];
        r += t;
    }
    return r;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (auto e : m) s += static_cast<int>(e);
        if (s > d) d = s;
    }
    return d;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rat_str(c);
        for (int i = 0; i < n_; ++i) {
            if (m[i] == 0) continue;
            os << "*x" << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

} // namespace sf
