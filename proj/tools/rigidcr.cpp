#include "rigidcr/cr_fields.hpp"
#include "rigidcr/equivalence.hpp"
#include "rigidcr/io.hpp"
#include "rigidcr/jet_formula.hpp"
#include "rigidcr/normal_form.hpp"
#include "rigidcr/toy_c2.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rcr;

namespace {

int g_max_degree = 10;
bool g_decimal = false;
std::vector<std::string> g_warnings;

std::string approx(const mpq_class& q) {
    std::ostringstream os;
    os.precision(17);
    os << q.get_d();
    return os.str();
}

Json num(const GaussRat& z) {
    Json j = to_json(z);
    if (g_decimal) j["approx"] = approx(z.re()) + (sgn(z.im()) < 0 ? " - " : " + ") + approx(abs(z.im())) + "i";
    return j;
}

Json read_json(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        text = os.str();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path);
        std::ostringstream os;
        os << in.rdbuf();
        text = os.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

void check_degree(int d) {
    if (d > g_max_degree)
        throw ParseError("degree " + std::to_string(d) + " exceeds --max-degree " + std::to_string(g_max_degree));
}

Hypersurface load(const std::string& path) {
    Hypersurface h = hypersurface_from_json(read_json(path), &g_warnings);
    check_degree(h.degree);
    return h;
}

Json validation_json(const ValidationReport& r) {
    Json j;
    j["ok"] = r.ok();
    j["reality"] = r.reality;
    j["origin"] = r.origin;
    j["pluriharmonic_free"] = r.pluriharmonic_free;
    j["levi_nonzero"] = r.levi_nonzero;
    j["rank1"] = r.rank1;
    j["rank1_order"] = r.rank1_order;
    j["certified_order"] = r.certified_order;
    j["nondegenerate"] = r.nondegenerate;
    j["messages"] = r.messages;
    return j;
}

Json params_json(const std::map<std::string, GaussRat>& p) {
    Json j = Json::object();
    for (const auto& [k, v] : p) j[k] = num(v);
    return j;
}

Json normal_form_json(const NormalFormResult& r, bool with_surfaces) {
    Json j;
    Json stages = Json::array();
    for (const auto& s : r.stages) {
        Json st;
        st["stage"] = s.stage;
        st["name"] = s.name;
        st["params"] = params_json(s.params);
        stages.push_back(st);
    }
    j["stages"] = stages;
    j["extension_passes"] = r.extension_passes;
    if (with_surfaces) j["normal_form"] = hypersurface_to_json(r.H_norm);
    if (r.has_invariants) {
        j["invariants"] = {{"I0", num(r.I0)}, {"V0", num(r.V0)}};
        if (r.H_norm.degree >= 6) j["invariants"]["Q0"] = num(r.Q0);
    }
    j["branch"] = to_string(r.branch);
    if (r.branch != Branch::Flat) {
        j["branch_exact"] = r.branch_exact;
        if (r.branch_exact) {
            j["branch_invariants"] = {{"I0", num(r.branch_I0)}, {"V0", num(r.branch_V0)}};
            if (r.H_norm.degree >= 6) j["branch_invariants"]["Q0"] = num(r.branch_Q0);
            if (with_surfaces && r.H_branch) j["branch_normal_form"] = hypersurface_to_json(*r.H_branch);
        } else {
            j["ratio_squared"] = frac_str(r.ratio_squared);
            j["ratio_sign"] = r.ratio_sign;
        }
    }
    j["map"] = map_to_json(r.applied);
    return j;
}

Json c2_report(const Hypersurface& h) {
    Json j;
    const TruncSeries R = R_field(h);
    j["R_at_origin"] = num(R.constant_term());
    const int order = sphere_order(h);
    j["sphere_order"] = order;
    j["verdict"] = R.is_zero() ? "flat to order " + std::to_string(h.degree) : "not flat";
    return j;
}

void emit(Json doc) {
    if (!g_warnings.empty()) doc["warnings"] = g_warnings;
    std::cout << doc.dump(2) << "\n";
}

int cmd_validate(const std::string& path) {
    const Hypersurface h = load(path);
    Json doc;
    doc["command"] = "validate";
    doc["ambient_dim"] = h.ambient_dim;
    doc["degree"] = h.degree;
    const ValidationReport r = validate(h);
    doc["validation"] = validation_json(r);
    emit(doc);
    return r.ok() ? 0 : 1;
}

int cmd_complete(const std::string& path, int degree) {
    JetTable t = jet_table_from_json(read_json(path), &g_warnings);
    if (degree > 0) {
        if (degree > t.degree) throw ParseError("--degree exceeds the degree of the jet data");
        std::map<Exponent4, GaussRat> kept;
        for (const auto& [e, v] : t.values)
            if (e.deg() <= degree) kept[e] = v;
        t.values = kept;
        t.degree = degree;
    }
    check_degree(t.degree);
    const Hypersurface h = complete_dependents(t);
    Json doc;
    doc["command"] = "complete";
    doc["surface"] = hypersurface_to_json(h);
    emit(doc);
    return 0;
}

int cmd_prenormalize(const std::string& path) {
    const Hypersurface h = load(path);
    Json doc;
    doc["command"] = "prenormalize";
    if (h.ambient_dim == 2) {
        const C2Prenormal p = prenormalize_c2(h);
        doc["normal_form"] = hypersurface_to_json(p.H);
        doc["predicted_F22"] = num(predicted_F22(h));
        doc["map"] = map_to_json(p.applied);
    } else {
        doc["result"] = normal_form_json(prenormalize(h), true);
    }
    emit(doc);
    return 0;
}

int cmd_normalize(const std::string& path, bool branch) {
    const Hypersurface h = load(path);
    Json doc;
    doc["command"] = "normalize";
    if (h.ambient_dim == 2) {
        const C2Prenormal p = prenormalize_c2(h);
        doc["normal_form"] = hypersurface_to_json(p.H);
        doc["map"] = map_to_json(p.applied);
        doc["sphere"] = c2_report(h);
    } else {
        doc["result"] = normal_form_json(normalize(h, branch), true);
    }
    emit(doc);
    return 0;
}

int cmd_invariants(const std::string& path, const std::string& route, const std::vector<std::string>& at) {
    Hypersurface h = load(path);
    Json doc;
    doc["command"] = "invariants";
    if (h.ambient_dim == 2) {
        if (!at.empty()) {
            const GaussRat z0(parse_frac(at.at(0)), parse_frac(at.at(1)));
            h.F = shift(h.F, {z0, GaussRat(0), z0.conj(), GaussRat(0)});
        }
        doc["R"] = c2_report(h);
        emit(doc);
        return 0;
    }
    GaussRat z0, w0;
    if (!at.empty()) {
        if (at.size() != 4) throw ParseError("--at expects four fractions");
        z0 = GaussRat(parse_frac(at[0]), parse_frac(at[1]));
        w0 = GaussRat(parse_frac(at[2]), parse_frac(at[3]));
        doc["base_point"] = {{"z", num(z0)}, {"zeta", num(w0)}};
    }
    const bool off = !at.empty();
    const Hypersurface centered = off ? recenter(h, z0, w0) : h;
    if (route == "jet" || route == "both") {
        const NormalFormResult r = normalize(centered, true);
        Json j = {{"I0", num(r.I0)}, {"V0", num(r.V0)}};
        if (r.H_norm.degree >= 6) j["Q0"] = num(r.Q0);
        j["branch"] = to_string(r.branch);
        doc["jet"] = j;
    }
    if (route == "diff" || route == "both") {
        const DiffInvariants d = off ? diff_invariants_at(h, z0, w0) : diff_invariants(h);
        Json j = {{"I0", num(d.I0)}, {"V0", num(d.V0)}};
        if (d.has_Q0) {
            j["Q0"] = num(d.Q0);
            j["Q0_reduced"] = num(d.Q0_reduced);
            j["Q0_expanded"] = num(d.Q0_expanded);
        }
        const JetScaled s = jet_scale(d, centered.mono(Exponent4(1, 0, 1, 0)));
        j["jet_scaled"] = {{"I0", num(s.I0)}, {"V0", num(s.V0)}};
        if (s.has_Q0) j["jet_scaled"]["Q0"] = num(s.Q0);
        doc["diff"] = j;
    }
    emit(doc);
    return 0;
}

int cmd_equivalence(const std::string& a, const std::string& b) {
    Json doc;
    doc["command"] = "equivalence";
    try {
        const Hypersurface ha = load(a), hb = load(b);
        if (ha.ambient_dim != hb.ambient_dim) throw ParseError("ambient dimensions differ");
        const EquivalenceResult r = ha.ambient_dim == 2 ? equivalent_c2(ha, hb) : equivalent_c3(ha, hb);
        doc["verdict"] = r.verdict;
        doc["degree"] = r.degree;
        if (ha.ambient_dim == 3) {
            doc["branch_a"] = r.branch_a;
            doc["branch_b"] = r.branch_b;
            if (!r.representative.empty()) doc["representative"] = r.representative;
        }
        Json w;
        w["consistent"] = r.solution.consistent;
        if (!r.solution.reason.empty()) w["reason"] = r.solution.reason;
        if (r.solution.consistent) {
            w["s_power"] = 2 * r.solution.gs;
            w["s_value"] = frac_str(r.solution.s_value);
            w["t_power"] = r.solution.gt;
            w["t_value"] = num(r.solution.t_value);
        }
        if (r.solution.failing_slot) w["failing_slot"] = r.solution.failing_slot->str();
        doc["witness"] = w;
    } catch (const std::exception& e) {
        doc["verdict"] = "error";
        doc["error"] = e.what();
    }
    emit(doc);
    return 0;
}

int cmd_model(const std::string& kind, int degree, std::uint64_t seed, const std::string& conv, int ambient) {
    check_degree(degree);
    Hypersurface h;
    if (kind == "gm") {
        h = gm_model(degree);
    } else if (kind == "lightcone") {
        h = lightcone_tube(degree);
    } else if (kind == "random") {
        if (ambient == 2) {
            h = random_c2(seed, degree);
        } else {
            RandomOptions opt;
            h = random_rank1(seed, degree, opt);
        }
    } else {
        throw ParseError("unknown model '" + kind + "'");
    }
    h.convention = convention_from_string(conv);
    emit(hypersurface_to_json(h));
    return 0;
}

int cmd_selftest(const std::string& dir, int samples, std::uint64_t seed) {
    Json doc;
    doc["command"] = "selftest";
    const FixtureReport rep = check_fixtures(dir, samples, seed);
    doc["samples"] = rep.samples;
    doc["i0_numerator"] = {{"matches", rep.i0_matches}, {"pass", rep.i0_matches == samples}};
    doc["v0_numerator"] = {{"matches", rep.v0_matches}, {"pass", rep.v0_matches == samples}};
    Json rels = Json::array();
    for (const auto& r : rep.relations) {
        const bool pass = r.disputed ? r.holds < samples : r.holds == samples;
        rels.push_back({{"stage", r.stage}, {"slot", r.slot.str()}, {"disputed", r.disputed},
                        {"holds", r.holds}, {"pass", pass}});
    }
    doc["stage_relations"] = rels;

    // Operator identities on random jets, with phi a fixed test polynomial.
    int id_pass = 0;
    RandomOptions opt;
    TruncSeries phi(6);
    phi.set(Exponent4(1, 1, 0, 1), GaussRat(1, 2));
    phi.set(Exponent4(2, 0, 1, 0), GaussRat(-1));
    phi.set(Exponent4(0, 1, 2, 1), GaussRat(3));
    for (int s = 0; s < samples; ++s) {
        const Hypersurface h = random_rank1(seed + 1000 + s, 7, opt);
        const IdentityResiduals r = identity_residuals(h, phi);
        if (r.bracket.is_zero() && r.K_Pbar.is_zero() && r.K_L1bar_Pbar.is_zero() && r.Kbar_I0.is_zero()) ++id_pass;
    }
    doc["identities"] = {{"matches", id_pass}, {"pass", id_pass == samples}};
    const bool ok = rep.ok() && id_pass == samples;
    doc["pass"] = ok;
    emit(doc);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal forms, invariants and equivalence of rigid hypersurfaces"};
    app.require_subcommand(1);
    app.add_option("--max-degree", g_max_degree, "Largest accepted degree")->capture_default_str();
    app.add_flag("--decimal", g_decimal, "Add decimal approximations (marked approx)");

    std::string file, file_b, route = "both", kind, conv = "monomial";
    std::string fixtures = RIGIDCR_FIXTURE_DIR;
    int degree = 0, samples = 20, ambient = 3;
    bool no_branch = false;
    std::uint64_t seed = 1;
    std::vector<std::string> at;

    auto* v = app.add_subcommand("validate", "Check reality, rank one and 2-nondegeneracy");
    v->add_option("file", file, "Coefficient file, - for stdin");
    auto* c = app.add_subcommand("complete", "Fill in dependent coefficients from independent jets");
    c->add_option("file", file);
    c->add_option("--degree", degree);
    auto* p = app.add_subcommand("prenormalize", "Run the normalization stages before the shear");
    p->add_option("file", file);
    auto* n = app.add_subcommand("normalize", "Full normal form");
    n->add_option("file", file);
    n->add_flag("--no-branch", no_branch, "Skip the final dilation-rotation");
    n->add_flag("--branch", [&](std::int64_t) { no_branch = false; }, "Apply the branch scaling (default)");
    auto* inv = app.add_subcommand("invariants", "I0, V0, Q0 (or R in C^2)");
    inv->add_option("file", file);
    inv->add_option("--route", route)->check(CLI::IsMember({"jet", "diff", "both"}));
    inv->add_option("--at", at, "z_re z_im zeta_re zeta_im")->expected(2, 4);
    auto* e = app.add_subcommand("equivalence", "Decide rigid equivalence at jet level");
    e->add_option("a", file)->required();
    e->add_option("b", file_b)->required();
    auto* m = app.add_subcommand("model", "Print a model surface");
    m->add_option("kind", kind)->required()->check(CLI::IsMember({"gm", "lightcone", "random"}));
    m->add_option("--degree", degree)->required();
    m->add_option("--seed", seed);
    m->add_option("--convention", conv)->check(CLI::IsMember({"monomial", "taylor"}));
    m->add_option("--ambient", ambient)->check(CLI::IsMember({2, 3}));
    auto* st = app.add_subcommand("selftest", "Check the transcribed closed forms and identities");
    st->add_option("--fixtures", fixtures);
    st->add_option("--samples", samples);
    st->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*v) return cmd_validate(file);
        if (*c) return cmd_complete(file, degree);
        if (*p) return cmd_prenormalize(file);
        if (*n) return cmd_normalize(file, !no_branch);
        if (*inv) return cmd_invariants(file, route, at);
        if (*e) return cmd_equivalence(file, file_b);
        if (*m) return cmd_model(kind, degree, seed, conv, ambient);
        if (*st) return cmd_selftest(fixtures, samples, seed);
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const PreconditionError& err) {
        std::cerr << "precondition failed: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
