#pragma once

#include "rigidcr/series.hpp"

#include <random>

namespace testutil {

using rcr::Exponent4;
using rcr::GaussRat;
using rcr::TruncSeries;

inline mpq_class small_rat(std::mt19937_64& rng, int num = 3, int den = 3) {
    std::uniform_int_distribution<int> n(-num, num), d(1, den);
    mpq_class q(n(rng), d(rng));
    q.canonicalize();
    return q;
}

inline GaussRat small_gauss(std::mt19937_64& rng) { return GaussRat(small_rat(rng), small_rat(rng)); }

// Random polynomial with terms up to total degree max_deg, declared valid to `order`.
inline TruncSeries random_poly(std::mt19937_64& rng, int max_deg, int order, int terms = 6,
                               bool holomorphic = false) {
    TruncSeries s(order);
    std::uniform_int_distribution<int> e(0, max_deg);
    for (int k = 0; k < terms; ++k) {
        int a = e(rng), b = e(rng), c = holomorphic ? 0 : e(rng), d = holomorphic ? 0 : e(rng);
        while (a + b + c + d > max_deg) {
            if (a) --a; else if (b) --b; else if (c) --c; else --d;
        }
        s.add_to(Exponent4(a, b, c, d), small_gauss(rng));
    }
    return s;
}

// Schoolbook product over the stored terms, kept apart from the library's dense kernel.
inline TruncSeries naive_mul(const TruncSeries& x, const TruncSeries& y) {
    TruncSeries out(std::min(x.valid_order(), y.valid_order()));
    for (const auto& [ex, cx] : x.terms())
        for (const auto& [ey, cy] : y.terms()) {
            const Exponent4 e = ex + ey;
            if (e.deg() <= out.valid_order()) out.add_to(e, cx * cy);
        }
    return out;
}

inline std::array<GaussRat, 4> random_point(std::mt19937_64& rng) {
    return {small_gauss(rng), small_gauss(rng), small_gauss(rng), small_gauss(rng)};
}

}  // namespace testutil
