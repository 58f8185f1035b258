#pragma once

#include "sf/superform.hpp"

#include <random>

namespace sf {

// Deterministic generators for the randomized suites; everything is driven by
// a caller-owned mt19937_64 so a (seed, config) pair pins the whole run.
class FormGen {
public:
    explicit FormGen(uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    Rat rat(int num_max = 9, int den_max = 3) {
        std::uniform_int_distribution<int> num(-num_max, num_max);
        std::uniform_int_distribution<int> den(1, den_max);
        Rat r(num(rng_), den(rng_));
        r.canonicalize();
        return r;
    }

    Polynomial poly(int n, int max_deg, int max_terms = 4) {
        Polynomial f(n);
        std::uniform_int_distribution<int> nterms(1, max_terms);
        std::uniform_int_distribution<int> deg(0, max_deg);
        int k = nterms(rng_);
        for (int t = 0; t < k; ++t) {
            Monomial m(n, 0);
            int d = deg(rng_);
            std::uniform_int_distribution<int> var(0, n - 1);
            for (int j = 0; j < d; ++j) m[var(rng_)] += 1;
            f.add_term(m, rat());
        }
        return f;
    }

    MultiIndex multi_index(int n, int k) {
        std::vector<int> all;
        for (int i = 1; i <= n; ++i) all.push_back(i);
        for (int i = n - 1; i > 0; --i) {
            std::uniform_int_distribution<int> pick(0, i);
            std::swap(all[i], all[pick(rng_)]);
        }
        MultiIndex I(all.begin(), all.begin() + k);
        std::sort(I.begin(), I.end());
        return I;
    }

    Superform form(int n, int p, int q, int max_deg, int max_keys = 3) {
        Superform a(n, p, q);
        std::uniform_int_distribution<int> nkeys(1, max_keys);
        int k = nkeys(rng_);
        for (int t = 0; t < k; ++t)
            a.add_term(multi_index(n, p), multi_index(n, q), poly(n, max_deg));
        return a;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace sf
