#include "rigidcr/equivalence.hpp"

#include "rigidcr/normal_form.hpp"
#include "rigidcr/toy_c2.hpp"

#include <map>
#include <numeric>

namespace rcr {

std::vector<std::vector<long>> relation_lattice(const std::vector<long>& v) {
    const std::size_t N = v.size();
    std::vector<std::vector<long>> U(N, std::vector<long>(N, 0));  // U[col][row]
    for (std::size_t i = 0; i < N; ++i) U[i][i] = 1;
    std::vector<long> r = v;
    auto colop = [&](std::size_t dst, std::size_t src, long q) {  // col dst -= q col src
        r[dst] -= q * r[src];
        for (std::size_t k = 0; k < N; ++k) U[dst][k] -= q * U[src][k];
    };
    std::vector<std::vector<long>> basis;
    if (N == 0) return basis;
    for (std::size_t j = 1; j < N; ++j) {
        while (r[j] != 0) {
            colop(0, j, r[0] / r[j]);
            std::swap(r[0], r[j]);
            std::swap(U[0], U[j]);
        }
        basis.push_back(U[j]);
    }
    if (r[0] == 0) basis.push_back(U[0]);
    return basis;
}

namespace {

struct Check {
    bool ok;
    GaussRat prod;
    mpq_class mod2;
};

// Products over a relation k of c_i^k_i and |c_i|^(2 k_i).
Check product(const MultiplicativeSystem& s, const std::vector<long>& k) {
    Check ch{true, GaussRat(1), mpq_class(1)};
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!k[i]) continue;
        ch.prod *= s.c[i].pow(k[i]);
        mpq_class q = s.c[i].norm();
        mpz_class num, den;
        const long e = k[i] < 0 ? -k[i] : k[i];
        mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
        mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
        mpq_class p(num, den);
        p.canonicalize();
        ch.mod2 *= k[i] < 0 ? 1 / p : p;
    }
    return ch;
}

// Representatives of each distinct exponent value plus the differences that
// tie equal-exponent rows to their representative.
std::vector<std::vector<long>> relations_for(const std::vector<long>& v) {
    const std::size_t N = v.size();
    std::map<long, std::size_t> rep;
    std::vector<std::vector<long>> rels;
    std::vector<long> reps_val;
    std::vector<std::size_t> reps_idx;
    for (std::size_t i = 0; i < N; ++i) {
        auto [it, fresh] = rep.try_emplace(v[i], i);
        if (fresh) {
            reps_val.push_back(v[i]);
            reps_idx.push_back(i);
        } else {
            std::vector<long> k(N, 0);
            k[i] = 1;
            k[it->second] -= 1;
            rels.push_back(k);
        }
    }
    for (const auto& small : relation_lattice(reps_val)) {
        std::vector<long> k(N, 0);
        for (std::size_t j = 0; j < small.size(); ++j) k[reps_idx[j]] = small[j];
        rels.push_back(k);
    }
    return rels;
}

std::optional<Exponent4> blame(const MultiplicativeSystem& s, const std::vector<long>& k) {
    if (s.slot.empty()) return std::nullopt;
    for (std::size_t i = k.size(); i-- > 0;)
        if (k[i]) return s.slot[i];
    return std::nullopt;
}

}  // namespace

SystemSolution solve_system(const MultiplicativeSystem& s) {
    SystemSolution sol;
    if (s.zero_mismatch) {
        sol.reason = "slot " + s.zero_mismatch->str() + " vanishes on one side only";
        sol.failing_slot = s.zero_mismatch;
        return sol;
    }
    for (const auto& k : relations_for(s.m)) {
        if (product(s, k).mod2 != 1) {
            sol.reason = "modulus relation violated";
            sol.failing_slot = blame(s, k);
            return sol;
        }
    }
    for (const auto& k : relations_for(s.n)) {
        Check ch = product(s, k);
        if (!ch.prod.is_real() || sgn(ch.prod.re()) <= 0 || ch.prod.re() * ch.prod.re() != ch.mod2) {
            sol.reason = "argument relation violated";
            sol.failing_slot = blame(s, k);
            return sol;
        }
    }
    sol.consistent = true;
    // Witness via Bezout combinations reaching gcd(m) and gcd(n).
    auto bezout = [](const std::vector<long>& v, long& g) {
        std::vector<long> x(v.size(), 0);
        g = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            // extended gcd of (g, v[i])
            long a = g, b = v[i], xa = 1, xb = 0, ya = 0, yb = 1;
            while (b != 0) {
                long q = a / b;
                std::tie(a, b) = std::make_pair(b, a - q * b);
                std::tie(xa, xb) = std::make_pair(xb, xa - q * xb);
                std::tie(ya, yb) = std::make_pair(yb, ya - q * yb);
            }
            if (a < 0) a = -a, xa = -xa, ya = -ya;
            for (auto& t : x) t *= xa;
            x[i] += ya;
            g = a;
        }
        return x;
    };
    auto us = bezout(s.m, sol.gs);
    auto ut = bezout(s.n, sol.gt);
    if (sol.gs) sol.s_value = product(s, us).mod2;
    if (sol.gt) sol.t_value = product(s, ut).prod;
    return sol;
}

MultiplicativeSystem build_system(const TruncSeries& G, const TruncSeries& Gimage, Ambient amb) {
    MultiplicativeSystem sys;
    const int order = std::min(G.valid_order(), Gimage.valid_order());
    for (int i = 0; i < dense_size(order); ++i) {
        const Exponent4 e = dense_exponent(i);
        const GaussRat x = G.coeff(e), y = Gimage.coeff(e);
        if (x.is_zero() && y.is_zero()) continue;
        if (x.is_zero() || y.is_zero()) {
            if (!sys.zero_mismatch) sys.zero_mismatch = e;
            continue;
        }
        sys.m.push_back(e.a + e.c - 2);
        sys.n.push_back(amb == Ambient::C3 ? e.a + 2 * e.b - e.c - 2 * e.d : e.a - e.c);
        sys.c.push_back(x / y);
        sys.slot.push_back(e);
    }
    return sys;
}

EquivalenceResult equivalent_c3(const Hypersurface& a, const Hypersurface& b) {
    const int delta = std::min(a.degree, b.degree);
    auto cut = [delta](const Hypersurface& h) {
        Hypersurface t = h;
        t.F = h.F.truncated(delta);
        t.degree = delta;
        return t;
    };
    const NormalFormResult na = normalize(cut(a)), nb = normalize(cut(b));
    EquivalenceResult r;
    r.degree = delta;
    r.branch_a = to_string(na.branch);
    r.branch_b = to_string(nb.branch);
    r.representative = "+";
    r.solution = solve_system(build_system(na.H_norm.F, nb.H_norm.F, Ambient::C3));
    if (!r.solution.consistent && na.branch == Branch::V0Nonzero && nb.branch == Branch::V0Nonzero) {
        Hypersurface flipped = apply(dilation_rotation(GaussRat(-1), delta), nb.H_norm);
        SystemSolution alt = solve_system(build_system(na.H_norm.F, flipped.F, Ambient::C3));
        if (alt.consistent) {
            r.solution = alt;
            r.representative = "-";
        }
    }
    r.equivalent = r.solution.consistent;
    r.verdict = r.equivalent ? "equivalent-up-to-truncation" : "inequivalent";
    return r;
}

EquivalenceResult equivalent_c2(const Hypersurface& a, const Hypersurface& b) {
    const int delta = std::min(a.degree, b.degree);
    auto cut = [delta](const Hypersurface& h) {
        Hypersurface t = h;
        t.F = h.F.truncated(delta);
        t.degree = delta;
        return t;
    };
    const C2Prenormal pa = prenormalize_c2(cut(a)), pb = prenormalize_c2(cut(b));
    EquivalenceResult r;
    r.degree = delta;
    r.solution = solve_system(build_system(pa.H.F, pb.H.F, Ambient::C2));
    r.equivalent = r.solution.consistent;
    r.verdict = r.equivalent ? "equivalent-up-to-truncation" : "inequivalent";
    return r;
}

}  // namespace rcr
