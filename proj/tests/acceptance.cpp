// Acceptance run: one PASS/FAIL line per criterion. Sample counts, seeds,
// time limits and the route constants are fixed here.

#include "kernel_properties.hpp"
#include "rigidcr/cr_fields.hpp"
#include "rigidcr/equivalence.hpp"
#include "rigidcr/jet_formula.hpp"
#include "rigidcr/normal_form.hpp"
#include "rigidcr/toy_c2.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace rcr;
using namespace testutil;

namespace {

constexpr double kA1Seconds = 10, kA2Seconds = 30, kA3Seconds = 60, kA11Seconds = 60;
constexpr int kA3Samples = 100, kA5Samples = 100, kA6Samples = 50, kA8Samples = 50, kA9Samples = 50,
              kA10Samples = 20, kA11Cases = 10000;
const Exponent4 kLevi(1, 0, 1, 0);

// Frozen ratios jet/diff, times powers of F_{1,0,1,0}.
const GaussRat kBridgeI0(3), kBridgeV0(-3), kBridgeQ0 = GaussRat::frac(3, 2);

int failures = 0;

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void fail(const std::string& why) {
        if (pass) note << why;
        pass = false;
    }
};

void report(const char* id, const char* title, const std::function<void(Outcome&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %s  %s (%.1fs)%s%s\n", id, o.pass ? "PASS" : "FAIL", title, secs,
                o.note.str().empty() ? "" : "  ", o.note.str().c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Hypersurface unit_sample(std::uint64_t seed, int delta) {
    RandomOptions opt;
    opt.unit_levi = true;
    opt.with_pluriharmonic = true;
    return random_rank1(seed, delta, opt);
}

Hypersurface sample(std::uint64_t seed, int delta) {
    RandomOptions opt;
    opt.with_pluriharmonic = true;
    return random_rank1(seed, delta, opt);
}

// Adds `v` to one independent slot of the normal form (and its conjugate slot)
// and recomputes the dependent coefficients.
Hypersurface perturb(const Hypersurface& h, Exponent4 e, const GaussRat& v) {
    JetTable j = independent_jets(h);
    j.convention = Convention::Monomial;
    for (auto& [k, c] : j.values) c = h.mono(k);
    j.values[e] = j.values[e] + v;
    j.values[e.bar()] = j.values[e.bar()] + v.conj();
    return complete_dependents(j);
}

void a1(Outcome& o) {
    for (int d = 6; d <= 8; ++d) {
        const auto t0 = std::chrono::steady_clock::now();
        const Hypersurface gm = gm_model(d);
        const NormalFormResult r = normalize(gm);
        const DiffInvariants dv = diff_invariants(gm);
        const double secs = seconds_since(t0);
        if (!(r.H_norm.F == gm.F)) o.fail("nonzero remainder at degree " + std::to_string(d));
        if (!r.I0.is_zero() || !r.V0.is_zero() || !r.Q0.is_zero()) o.fail("jet invariants nonzero at degree " + std::to_string(d));
        if (!dv.I0.is_zero() || !dv.V0.is_zero() || !dv.Q0.is_zero()) o.fail("differential invariants nonzero at degree " + std::to_string(d));
        if (d == 8 && secs >= kA1Seconds) o.fail("degree 8 took too long");
        if (d == 8) o.note << "degree 8 in " << secs << "s";
    }
}

void a2(Outcome& o) {
    const NormalFormResult r = normalize(lightcone_tube(8));
    if (r.branch != Branch::Flat) o.fail("light cone not on the flat branch");
    const EquivalenceResult e = equivalent_c3(gm_model(8), lightcone_tube(8));
    if (!e.equivalent) o.fail("verdict " + e.verdict);
    o.note << "verdict " << e.verdict;
}

void a3_a4(Outcome& o3, Outcome& o4) {
    const std::string dir = RIGIDCR_FIXTURE_DIR;
    const Formula i0n = parse_formula(read_text_file(dir + "/i0_numerator.txt"));
    const Formula v0n = parse_formula(read_text_file(dir + "/v0_numerator.txt"));
    const auto i0d = parse_formula_blocks(read_text_file(dir + "/i0_denominator.txt"));
    const auto v0d = parse_formula_blocks(read_text_file(dir + "/v0_denominator.txt"));
    if (i0n.size() != 52) o3.fail("numerator has " + std::to_string(i0n.size()) + " terms");
    if (v0n.size() != 11) o4.fail("numerator has " + std::to_string(v0n.size()) + " terms");
    const auto t0 = std::chrono::steady_clock::now();
    int i0_ok = 0, v0_ok = 0;
    for (int s = 0; s < kA3Samples; ++s) {
        Hypersurface h = unit_sample(5000 + s, 5);
        h.convention = Convention::Taylor;
        const NormalFormResult r = normalize(h, false);
        const Hypersurface& h0 = r.stages.at(0).result;
        auto look = [&](Exponent4 e) { return h0.taylor(e); };
        if (evaluate(i0n, look) / evaluate_factors(i0d, look) == r.I0) ++i0_ok;
        if (evaluate(v0n, look) / evaluate_factors(v0d, look) == r.V0) ++v0_ok;
    }
    const double secs = seconds_since(t0);
    if (i0_ok != kA3Samples) o3.fail("mismatches");
    if (v0_ok != kA3Samples) o4.fail("mismatches");
    if (secs >= kA3Seconds) o3.fail("too slow");
    o3.note << i0_ok << "/" << kA3Samples << " exact";
    o4.note << v0_ok << "/" << kA3Samples << " exact";
}

void a5(Outcome& o) {
    int real = 0, routes = 0, bridge = 0;
    for (int s = 0; s < kA5Samples; ++s) {
        const Hypersurface h = sample(6000 + s, 6);
        const DiffInvariants d = diff_invariants(h);
        const NormalFormResult r = normalize(h, false);
        if (d.Q0.is_real() && r.Q0.is_real()) ++real;
        if (d.Q0 == d.Q0_reduced && d.Q0 == d.Q0_expanded) ++routes;
        const mpq_class a = h.mono(kLevi).re();
        if (r.Q0 * GaussRat(a * a) == kBridgeQ0 * d.Q0) ++bridge;
    }
    if (real != kA5Samples) o.fail("Q0 not real");
    if (routes != kA5Samples) o.fail("differential expressions disagree");
    if (bridge != kA5Samples) o.fail("jet/differential ratio not constant");
    o.note << "real " << real << ", expressions " << routes << ", ratio 3/2 on " << bridge << " of " << kA5Samples;
}

void a6(Outcome& o) {
    int law = 0, f22 = 0, f22_unit = 0;
    for (int s = 0; s < kA6Samples; ++s) {
        const Hypersurface h = random_c2(7000 + s, 6);
        if (R_transformation_residual(h, random_c2_map(7100 + s, 6)).is_zero()) ++law;
        // z' = F11 z avoids a square root, which divides F22 by F11.
        if (prenormalize_c2(h).H.mono({2, 0, 2, 0}) * h.mono(kLevi) == predicted_F22(h)) ++f22;
        const Hypersurface u = random_c2(7200 + s, 6, true);
        if (prenormalize_c2(u).H.mono({2, 0, 2, 0}) == predicted_F22(u)) ++f22_unit;
    }
    if (law != kA6Samples) o.fail("numerator law residual nonzero");
    if (f22 != kA6Samples || f22_unit != kA6Samples) o.fail("F22 closed form mismatch");
    o.note << "law " << law << ", F22 unit Levi " << f22_unit << ", general " << f22 << " of " << kA6Samples;
}

void a7(Outcome& o) {
    const int rt[] = {9, 21, 37, 57, 81, 109, 141};
    const int hd[] = {3, 11, 26, 50, 85, 133, 196};
    const int st[] = {50, 47, 23, 21, 20, 8};
    for (int d = 1; d <= 7; ++d)
        if (rt_dim(d) != rt[d - 1]) o.fail("rt_dim(" + std::to_string(d) + ")");
    for (int d = 2; d <= 8; ++d)
        if (h_dim(d) != hd[d - 2]) o.fail("h_dim(" + std::to_string(d) + ")");
    for (int s = 0; s <= 5; ++s)
        if (stage_dimension(s, 5) != st[s]) o.fail("stage " + std::to_string(s) + " dimension");
}

void a8(Outcome& o) {
    int sound = 0, complete = 0, stable = 0;
    for (int s = 0; s < kA8Samples; ++s) {
        const Hypersurface h = sample(8000 + s, 6);
        const Hypersurface img = apply(random_map(8100 + s, 6), h);
        if (equivalent_c3(h, img).equivalent) ++sound;
        const Hypersurface bumped = perturb(normalize(h, false).H_norm, Exponent4(0, 1, 5, 0), GaussRat(1));
        if (!equivalent_c3(h, bumped).equivalent) ++complete;
        const RigidMap p = random_map(8200 + s, 6), q = random_map(8300 + s, 6);
        if (equivalent_c3(apply(p, h), apply(q, img)).equivalent &&
            !equivalent_c3(apply(p, h), apply(q, bumped)).equivalent)
            ++stable;
    }
    if (sound != kA8Samples) o.fail("image judged inequivalent");
    if (complete != kA8Samples) o.fail("perturbation judged equivalent");
    if (stable != kA8Samples) o.fail("verdict changed under further maps");
    o.note << "equivalent " << sound << ", inequivalent " << complete << ", stable " << stable << " of " << kA8Samples;
}

void a9(Outcome& o) {
    std::mt19937_64 rng(9000);
    int ok = 0;
    for (int s = 0; s < kA9Samples; ++s) {
        const Hypersurface h = sample(9000 + s, 7);
        const IdentityResiduals r = identity_residuals(h, random_poly(rng, 4, 7, 5));
        const std::pair<const char*, const TruncSeries*> parts[] = {
            {"bracket", &r.bracket}, {"K(conj P)", &r.K_Pbar}, {"K(L1bar conj P)", &r.K_L1bar_Pbar}, {"Kbar(I0)", &r.Kbar_I0}};
        bool all = true;
        for (const auto& [name, res] : parts)
            if (!res->is_zero()) {
                all = false;
                const auto& [e, c] = *res->terms().begin();
                o.fail(std::string(name) + " residual at " + e.str() + " = " + c.str());
            }
        if (all) ++ok;
    }
    o.note << ok << "/" << kA9Samples << " with zero residuals";
}

void a10(Outcome& o) {
    std::mt19937_64 rng(10000);
    int ok = 0;
    for (int s = 0; s < kA10Samples; ++s) {
        // H is a translate of a rank-one jet G, so p lies on a rank-one surface.
        const Hypersurface g = sample(10000 + s, 6);
        const GaussRat z0 = small_gauss(rng), w0 = small_gauss(rng);
        Hypersurface h = g;
        h.F = shift(g.F, {-z0, -w0, -z0.conj(), -w0.conj()});
        const DiffInvariants d = diff_invariants_at(h, z0, w0);
        const Hypersurface c = recenter(h, z0, w0);
        const NormalFormResult r = normalize(c, false);
        const GaussRat a = c.mono(kLevi);
        if (r.I0 * a == kBridgeI0 * d.I0 && r.V0 * a * a == kBridgeV0 * d.V0 && r.Q0 * a * a == kBridgeQ0 * d.Q0) ++ok;
    }
    if (ok != kA10Samples) o.fail("bridge mismatch");
    o.note << ok << "/" << kA10Samples << " base points";
}

void a11(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& t : run_kernel_properties(11000, kA11Cases)) {
        if (t.cases < kA11Cases || t.failures) o.fail(t.name + " " + t.first_failure);
        o.note << t.name << " " << (t.cases - t.failures) << "/" << t.cases << "; ";
    }
    if (seconds_since(t0) >= kA11Seconds) o.fail("too slow");
}

}  // namespace

int main() {
    report("A1", "model is flat on both routes", a1);
    report("A2", "light cone equivalent to the model", a2);
    {
        Outcome o3, o4;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            a3_a4(o3, o4);
        } catch (const std::exception& e) {
            o3.fail(e.what());
            o4.fail(e.what());
        }
        const double secs = seconds_since(t0);
        for (auto* o : {&o3, &o4}) {
            if (!o->pass) ++failures;
            std::printf("%s %s  %s (%.1fs)  %s\n", o == &o3 ? "A3" : "A4", o->pass ? "PASS" : "FAIL",
                        o == &o3 ? "52-term I0 closed form" : "11-term V0 closed form", secs, o->note.str().c_str());
        }
    }
    report("A5", "Q0 real, three expressions, constant jet ratio", a5);
    report("A6", "C2 numerator law and F22", a6);
    report("A7", "dimension tables", a7);
    report("A8", "equivalence soundness and completeness", a8);
    report("A9", "operator identities", a9);
    report("A10", "off-origin bridge", a10);
    report("A11", "series kernel properties", a11);
    std::printf("%d failed\n", failures);
    return failures ? 1 : 0;
}
