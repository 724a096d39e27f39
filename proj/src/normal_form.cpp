#include "rigidcr/normal_form.hpp"

#include <set>

namespace rcr {

namespace {

const GaussRat kHalf = GaussRat::frac(1, 2);

TruncSeries holo_monomial(int a, int b, const GaussRat& c, int order) {
    return TruncSeries::monomial(Exponent4(a, b, 0, 0), c, order);
}

bool dirty_c1(const Hypersurface& h) {
    for (const auto& [e, c] : h.F.terms())
        if (e.c == 1 && e.d == 0 && e.a + e.b >= 2) return true;
    return false;
}

bool dirty_c2(const Hypersurface& h) {
    for (const auto& [e, c] : h.F.terms())
        if (e.c == 2 && e.d == 0 && e.a + e.b >= 2 && !(e.a == 2 && e.b == 0)) return true;
    return false;
}

struct Runner {
    Hypersurface cur;
    NormalFormResult res;

    explicit Runner(const Hypersurface& h) : cur(h) { res.applied = identity_map(h.degree); }

    void step(const RigidMap& m) {
        cur = apply(m, cur);
        res.applied = compose(res.applied, m);
    }

    void record(int stage, const std::string& name, const RigidMap& m, std::map<std::string, GaussRat> params = {}) {
        step(m);
        res.stages.push_back({stage, name, m, cur, std::move(params)});
    }

    // Re-establishes the stage 1-5 conditions at every degree.
    int clean() {
        int passes = 0;
        for (;;) {
            bool changed = false;
            if (dirty_c1(cur)) step(stage2_map(cur)), changed = true;
            if (cur.mono({0, 1, 2, 0}) != kHalf) step(stage3_map(cur)), changed = true;
            if (!cur.mono({2, 0, 2, 0}).is_zero()) step(stage4_map(cur)), changed = true;
            if (dirty_c2(cur)) step(stage5_map(cur)), changed = true;
            if (!changed) return passes;
            if (++passes > cur.degree + 1) throw PreconditionError("normalization did not stabilize");
        }
    }
};

NormalFormResult run(const Hypersurface& input, bool full, bool with_branch) {
    if (input.ambient_dim != 3) throw PreconditionError("normalization expects a hypersurface in C^3");
    if (input.degree < 5) throw PreconditionError("normalization needs degree >= 5");
    const RigidMap chart = chart_map(input);
    const Hypersurface charted = apply(chart, input);
    ValidationReport rep = validate(charted);
    if (!rep.ok()) {
        std::string msg = "input is not a valid rigid, Levi rank-one, 2-nondegenerate jet";
        for (const auto& m : rep.messages) msg += "; " + m;
        throw PreconditionError(msg);
    }
    Runner r(input);
    r.step(chart);
    const int delta = input.degree;
    r.record(0, "pluriharmonic", remove_pluriharmonic(r.cur).second);
    {
        RigidMap m = stage1_map(r.cur);
        r.record(1, "levi", m, {{"F_1010", r.cur.mono({1, 0, 1, 0})}, {"F_0110", r.cur.mono({0, 1, 1, 0})}});
    }
    r.record(2, "absorb_c1", stage2_map(r.cur));
    {
        GaussRat c = r.cur.taylor({0, 1, 2, 0});
        r.record(3, "scale_zeta", stage3_map(r.cur), {{"c", c}});
    }
    r.record(4, "kill_2020", stage4_map(r.cur), {{"F_2020", r.cur.taylor({2, 0, 2, 0})}});
    r.record(5, "absorb_c2", stage5_map(r.cur));
    r.res.extension_passes = r.clean();

    if (full) {
        auto [g10, b20] = stage6_parameters(r.cur);
        r.record(6, "stabilizer_shear", stage6_map(r.cur), {{"g10", g10}, {"b20", b20}});
        r.res.extension_passes += r.clean();
        if (r.cur.mono({0, 1, 2, 0}) != kHalf) throw PreconditionError("internal: zeta scale drifted after the shear");
        if (!r.cur.mono({3, 0, 0, 1}).is_zero() || !r.cur.mono({3, 0, 1, 1}).is_real())
            throw PreconditionError("internal: shear did not normalize F_3001 and Im F_3011");
        r.res.I0 = r.cur.taylor({0, 2, 3, 0});
        r.res.V0 = r.cur.taylor({0, 1, 4, 0});
        r.res.Q0 = r.cur.taylor({1, 1, 3, 0});
        r.res.has_invariants = true;
    }
    r.res.H_norm = r.cur;
    r.res.H_norm.degree = delta;
    if (!full || !with_branch) return r.res;

    NormalFormResult& R = r.res;
    if (!R.I0.is_zero()) {
        R.branch = Branch::I0Nonzero;
        R.branch_map = dilation_rotation(R.I0, delta);
        R.branch_exact = true;
    } else if (!R.V0.is_zero()) {
        R.branch = Branch::V0Nonzero;
        if (auto x = gauss_sqrt(R.V0.conj())) {
            R.branch_map = dilation_rotation(*x, delta);
            R.branch_exact = true;
        } else {
            R.ratio_squared = (R.Q0 * R.Q0).re() / R.V0.norm();
            R.ratio_sign = sgn(R.Q0.re());
        }
    } else {
        R.branch = Branch::Flat;
    }
    if (R.branch_map) {
        R.H_branch = apply(*R.branch_map, R.H_norm);
        R.branch_I0 = R.H_branch->taylor({0, 2, 3, 0});
        R.branch_V0 = R.H_branch->taylor({0, 1, 4, 0});
        R.branch_Q0 = R.H_branch->taylor({1, 1, 3, 0});
    }
    return R;
}

}  // namespace

NormalFormResult prenormalize(const Hypersurface& h) { return run(h, false, false); }

NormalFormResult normalize(const Hypersurface& h, bool with_branch) { return run(h, true, with_branch); }

std::string to_string(Branch b) {
    switch (b) {
        case Branch::Flat: return "flat";
        case Branch::I0Nonzero: return "I0_nonzero";
        case Branch::V0Nonzero: return "V0_nonzero";
    }
    return "?";
}

RigidMap chart_map(const Hypersurface& h) {
    RigidMap m = identity_map(h.degree);
    // A rank-one Hermitian Levi matrix with F_{1,0,1,0} = 0 also has F_{1,0,0,1} = 0,
    // so its kernel is the z axis and exchanging z and zeta restores the chart.
    if (h.mono({1, 0, 1, 0}).is_zero() && !h.mono({0, 1, 0, 1}).is_zero()) std::swap(m.f, m.g);
    return m;
}

RigidMap stage1_map(const Hypersurface& h) {
    const GaussRat A = h.mono({1, 0, 1, 0});
    if (A.is_zero() || !A.is_real()) throw PreconditionError("stage 1: F_1010 must be real and nonzero");
    const int n = h.degree;
    RigidMap m = identity_map(n);
    m.f = holo_monomial(1, 0, A, n) + holo_monomial(0, 1, h.mono({0, 1, 1, 0}), n);
    m.rho = A.re();
    return m;
}

RigidMap stage2_map(const Hypersurface& h) {
    RigidMap m = identity_map(h.degree);
    for (const auto& [e, c] : h.F.terms())
        if (e.c == 1 && e.d == 0 && e.a + e.b >= 2) m.f.add_to(Exponent4(e.a, e.b, 0, 0), c);
    return m;
}

RigidMap stage3_map(const Hypersurface& h) {
    const GaussRat c = h.taylor({0, 1, 2, 0});
    if (c.is_zero()) throw PreconditionError("stage 3: F_0120 vanishes (not 2-nondegenerate)");
    RigidMap m = identity_map(h.degree);
    m.g = holo_monomial(0, 1, c, h.degree);
    return m;
}

RigidMap stage4_map(const Hypersurface& h) {
    const GaussRat m2020 = h.mono({2, 0, 2, 0});
    if (!m2020.is_real()) throw PreconditionError("stage 4: F_2020 is not real");
    RigidMap m = identity_map(h.degree);
    m.g.add_to({2, 0, 0, 0}, m2020);
    return m;
}

RigidMap stage5_map(const Hypersurface& h) {
    RigidMap m = identity_map(h.degree);
    for (const auto& [e, c] : h.F.terms())
        if (e.c == 2 && e.d == 0 && e.a + e.b >= 2 && !(e.a == 2 && e.b == 0))
            m.g.add_to(Exponent4(e.a, e.b, 0, 0), c * GaussRat(2));
    return m;
}

std::pair<GaussRat, GaussRat> stage6_parameters(const Hypersurface& h) {
    auto T = [&](int a, int b, int c, int d) { return h.taylor({a, b, c, d}); };
    const GaussRat g10 = T(0, 1, 3, 0) * GaussRat::frac(-1, 3);
    const GaussRat b20 = GaussRat(0, mpq_class(1, 18)) *
                         (T(0, 2, 3, 0) * T(0, 1, 3, 0) - T(3, 0, 0, 2) * T(3, 0, 0, 1) +
                          GaussRat(3) * T(1, 1, 3, 0) - GaussRat(3) * T(3, 0, 1, 1));
    if (!b20.is_real()) throw PreconditionError("stage 6: b20 is not real");
    return {g10, b20};
}

RigidMap stage6_map(const Hypersurface& h) {
    auto [g10, b20] = stage6_parameters(h);
    RigidMap m = identity_map(h.degree);
    m.g.add_to({1, 0, 0, 0}, g10);
    m.g.add_to({2, 0, 0, 0}, GaussRat(0, b20.re() / 2));
    return m;
}

std::vector<SlotConstraint> stage_constraints(int stage, int delta) {
    std::vector<SlotConstraint> out;
    auto add = [&](int a, int b, int c, int d, int k) {
        if (a + b + c + d <= delta) out.push_back({Exponent4(a, b, c, d), k});
    };
    if (stage >= 1) add(1, 0, 1, 0, 1), add(0, 1, 1, 0, 2);
    if (stage >= 2)
        for (int n = 2; n + 1 <= delta; ++n)
            for (int a = 0; a <= n; ++a) add(a, n - a, 1, 0, 2);
    if (stage >= 3) add(0, 1, 2, 0, 2);
    if (stage >= 4) add(2, 0, 2, 0, 1);
    if (stage >= 5)
        for (int n = 2; n + 2 <= delta; ++n)
            for (int a = 0; a <= n; ++a)
                if (!(a == 2 && n == 2)) add(a, n - a, 2, 0, 2);
    if (stage >= 6) add(3, 0, 0, 1, 2), add(3, 0, 1, 1, 1);
    return out;
}

int stage_dimension(int stage, int delta) {
    int d = h_dim(delta);
    for (const auto& c : stage_constraints(stage, delta)) d -= c.real_conditions;
    return d;
}

bool satisfies_stage(const Hypersurface& h, int stage) {
    for (const auto& c : stage_constraints(stage, h.degree)) {
        const Exponent4 e = c.slot;
        const GaussRat v = h.mono(e);
        GaussRat want;
        if (e == Exponent4(1, 0, 1, 0)) want = 1;
        if (e == Exponent4(0, 1, 2, 0)) want = kHalf;
        if (e == Exponent4(3, 0, 1, 1)) {
            if (!v.is_real()) return false;
            continue;
        }
        if (v != want) return false;
    }
    return true;
}

}  // namespace rcr
