#include "sf/superform.hpp"

#include <sstream>
#include <stdexcept>

namespace sf {

int sgn(int i, const MultiIndex& I) { return sgn_in(i, I); }

Superform Superform::function(const Polynomial& f) {
    Superform a(f.vars(), 0, 0);
    a.add_term({}, {}, f);
    return a;
}

Superform Superform::basis(int n, const MultiIndex& I, const MultiIndex& J,
                           const Polynomial& coef) {
    Superform a(n, static_cast<int>(I.size()), static_cast<int>(J.size()));
    a.add_term(I, J, coef);
    return a;
}

void Superform::add_term(const MultiIndex& I, const MultiIndex& J, const Polynomial& f) {
    if (static_cast<int>(I.size()) != p_ || static_cast<int>(J.size()) != q_)
        throw std::invalid_argument("superform term has wrong bidegree");
    if (f.is_zero()) return;
    for (size_t k = 0; k + 1 < I.size(); ++k)
        if (I[k] >= I[k + 1]) throw std::invalid_argument("multi-index not ascending");
    for (size_t k = 0; k + 1 < J.size(); ++k)
        if (J[k] >= J[k + 1]) throw std::invalid_argument("multi-index not ascending");
    auto key = std::make_pair(I, J);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, f);
    } else {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Superform Superform::operator+(const Superform& o) const {
    // The zero form lives in every bidegree, so it combines freely.
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    if (n_ != o.n_ || p_ != o.p_ || q_ != o.q_)
        throw std::invalid_argument("superform bidegree mismatch in +");
    Superform r = *this;
    for (const auto& [k, f] : o.terms_) r.add_term(k.first, k.second, f);
    return r;
}

Superform Superform::operator-(const Superform& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o * Rat(-1);
    if (n_ != o.n_ || p_ != o.p_ || q_ != o.q_)
        throw std::invalid_argument("superform bidegree mismatch in -");
    Superform r = *this;
    for (const auto& [k, f] : o.terms_) r.add_term(k.first, k.second, -f);
    return r;
}

Superform Superform::operator*(const Rat& c) const {
    Superform r(n_, p_, q_);
    if (c == 0) return r;
    for (const auto& [k, f] : terms_) r.add_term(k.first, k.second, f * c);
    return r;
}

bool Superform::operator==(const Superform& o) const {
    if (is_zero() && o.is_zero()) return true;
    return n_ == o.n_ && p_ == o.p_ && q_ == o.q_ && terms_ == o.terms_;
}

Superform wedge(const Superform& a, const Superform& b) {
    if (a.vars() != b.vars())
        throw std::invalid_argument("wedge: ambient dimension mismatch");
    int n = a.vars();
    int p = a.p() + b.p(), q = a.q() + b.q();
    if (p > n || q > n) return Superform(n, std::min(p, n), std::min(q, n));
    Superform r(n, p, q);
    // Sign: moving d'x_K of degree p_b past d''x_J of degree q_a, then the
    // two block shuffles.
    int cross = (a.q() * b.p()) % 2 == 0 ? 1 : -1;
    for (const auto& [ka, fa] : a.terms())
        for (const auto& [kb, fb] : b.terms()) {
            MultiIndex I, J;
            int s1 = merge_sign(ka.first, kb.first, I);
            if (s1 == 0) continue;
            int s2 = merge_sign(ka.second, kb.second, J);
            if (s2 == 0) continue;
            Rat s(cross * s1 * s2);
            r.add_term(I, J, (fa * fb) * s);
        }
    return r;
}

Superform d_prime(const Superform& a) {
    int n = a.vars();
    if (a.p() >= n) return Superform(n, a.p() + 1 > n ? n : a.p() + 1, a.q());
    Superform r(n, a.p() + 1, a.q());
    for (const auto& [k, f] : a.terms()) {
        for (int i = 1; i <= n; ++i) {
            if (contains(k.first, i)) continue;
            Polynomial df = f.derivative(i);
            if (df.is_zero()) continue;
            int s;
            MultiIndex I = insert_index(k.first, i, s);
            r.add_term(I, k.second, df * Rat(s));
        }
    }
    return r;
}

Superform J_op(const Superform& a, const OperatorConvention& cv) {
    Superform r(a.vars(), a.q(), a.p());
    Rat s(cv.sigma_J(a.p(), a.q()));
    for (const auto& [k, f] : a.terms()) r.add_term(k.second, k.first, f * s);
    return r;
}

Superform d_second(const Superform& a, const OperatorConvention& cv) {
    return J_op(d_prime(J_op(a, cv)), cv);
}

Superform N_op(const Superform& a, const OperatorConvention& cv) {
    int n = a.vars();
    if (a.p() == 0) return Superform(n, 0, std::min(a.q() + 1, n));
    Superform r(n, a.p() - 1, a.q() + 1);
    if (a.q() + 1 > n) return r;
    Rat sp(cv.sigma_N(a.p()));
    for (const auto& [k, f] : a.terms()) {
        for (int i : k.first) {
            if (contains(k.second, i)) continue;
            int s2;
            MultiIndex J = insert_index(k.second, i, s2);
            MultiIndex I = remove_index(k.first, i);
            r.add_term(I, J, f * (sp * Rat(sgn_in(i, k.first) * s2)));
        }
    }
    return r;
}

Superform Nbar_op(const Superform& a, const OperatorConvention& cv) {
    // Explicit form of J o N o J; kept as an independent implementation so the
    // conjugation identity is a real cross-check between two code paths.
    int n = a.vars();
    if (a.q() == 0) return Superform(n, std::min(a.p() + 1, n), 0);
    Superform r(n, a.p() + 1, a.q() - 1);
    if (a.p() + 1 > n) return r;
    Rat sp(cv.sigma_Nbar(a.p()));
    for (const auto& [k, f] : a.terms()) {
        for (int j : k.second) {
            if (contains(k.first, j)) continue;
            int s2;
            MultiIndex I = insert_index(k.first, j, s2);
            MultiIndex J = remove_index(k.second, j);
            r.add_term(I, J, f * (sp * Rat(sgn_in(j, k.second) * s2)));
        }
    }
    return r;
}

Superform project_kerN(const Superform& a, const OperatorConvention& cv) {
    if (a.p() != 1) throw std::invalid_argument("project_kerN requires p = 1");
    Rat c(1, static_cast<unsigned long>(a.q() + 1));
    c.canonicalize();
    return a - Nbar_op(N_op(a, cv), cv) * c;
}

std::string serialize(const Superform& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, f] : a.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << f.str() << ")";
        if (!k.first.empty()) {
            os << " * d'x{";
            for (size_t i = 0; i < k.first.size(); ++i)
                os << (i ? "," : "") << k.first[i];
            os << "}";
        }
        if (!k.second.empty()) {
            os << (k.first.empty() ? " * " : " ^ ") << "d''x{";
            for (size_t i = 0; i < k.second.size(); ++i)
                os << (i ? "," : "") << k.second[i];
            os << "}";
        }
    }
    return os.str();
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

MultiIndex parse_index_set(const std::string& s, size_t& pos) {
    // expects "{i,j,...}"
    if (s[pos] != '{') throw std::invalid_argument("expected '{'");
    ++pos;
    MultiIndex I;
    while (pos < s.size() && s[pos] != '}') {
        size_t next;
        I.push_back(std::stoi(s.substr(pos), &next));
        pos += next;
        if (s[pos] == ',') ++pos;
    }
    if (pos >= s.size()) throw std::invalid_argument("unterminated index set");
    ++pos;
    return I;
}

} // namespace

Superform deserialize(int n, const std::string& text) {
    // Grammar per term: (poly) [* d'x{..}] [^ d''x{..}]; poly uses the
    // Polynomial::str format: rat[*xk[^e]]... joined by " + ".
    std::vector<std::tuple<Polynomial, MultiIndex, MultiIndex>> parsed;
    size_t pos = 0;
    skip_ws(text, pos);
    if (text.compare(pos, 1, "0") == 0 && pos + 1 >= text.size())
        throw std::invalid_argument("deserialize of literal 0 needs a bidegree; unsupported");
    while (pos < text.size()) {
        skip_ws(text, pos);
        if (text[pos] != '(') throw std::invalid_argument("expected '(' at coefficient");
        size_t depth = 1, start = ++pos;
        while (pos < text.size() && depth) {
            if (text[pos] == '(') ++depth;
            if (text[pos] == ')') --depth;
            ++pos;
        }
        std::string poly_src = text.substr(start, pos - start - 1);
        // parse polynomial: terms split on '+' at top level
        Polynomial f(n);
        size_t p2 = 0;
        while (p2 < poly_src.size()) {
            skip_ws(poly_src, p2);
            size_t next;
            // rational literal
            size_t end = p2;
            while (end < poly_src.size() && (isdigit(static_cast<unsigned char>(poly_src[end])) ||
                                             poly_src[end] == '-' || poly_src[end] == '/'))
                ++end;
            Rat c = parse_rat(poly_src.substr(p2, end - p2));
            p2 = end;
            Monomial m(n, 0);
            while (p2 < poly_src.size() && poly_src[p2] == '*') {
                ++p2;
                if (poly_src[p2] != 'x') throw std::invalid_argument("expected variable");
                ++p2;
                int idx = std::stoi(poly_src.substr(p2), &next);
                p2 += next;
                uint32_t e = 1;
                if (p2 < poly_src.size() && poly_src[p2] == '^') {
                    ++p2;
                    e = static_cast<uint32_t>(std::stoi(poly_src.substr(p2), &next));
                    p2 += next;
                }
                m[idx - 1] += e;
            }
            f.add_term(m, c);
            skip_ws(poly_src, p2);
            if (p2 < poly_src.size()) {
                if (poly_src[p2] != '+') throw std::invalid_argument("expected '+' in polynomial");
                ++p2;
            }
        }
        MultiIndex I, J;
        skip_ws(text, pos);
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip_ws(text, pos);
            if (text.compare(pos, 4, "d'x{") == 0) {
                pos += 3;
                I = parse_index_set(text, pos);
            } else if (text.compare(pos, 5, "d''x{") == 0) {
                pos += 4;
                J = parse_index_set(text, pos);
            } else {
                throw std::invalid_argument("expected d'x or d''x");
            }
            skip_ws(text, pos);
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip_ws(text, pos);
                if (text.compare(pos, 5, "d''x{") != 0)
                    throw std::invalid_argument("expected d''x after ^");
                pos += 4;
                J = parse_index_set(text, pos);
                skip_ws(text, pos);
            }
        }
        parsed.emplace_back(f, I, J);
        skip_ws(text, pos);
        if (pos < text.size()) {
            if (text[pos] != '+') throw std::invalid_argument("expected '+' between terms");
            ++pos;
        }
    }
    if (parsed.empty()) throw std::invalid_argument("empty superform text");
    int p = static_cast<int>(std::get<1>(parsed[0]).size());
    int q = static_cast<int>(std::get<2>(parsed[0]).size());
    Superform a(n, p, q);
    for (auto& [f, I, J] : parsed) a.add_term(I, J, f);
    return a;
}

} // namespace sf
