#include "rigidcr/io.hpp"

namespace rcr {

namespace {

mpq_class frac_field(const Json& j, const char* key, std::vector<std::string>* warnings) {
    if (!j.contains(key)) return 0;
    const Json& v = j.at(key);
    std::string text;
    if (v.is_string())
        text = v.get<std::string>();
    else if (v.is_number_integer())
        text = std::to_string(v.get<long long>());
    else
        throw ParseError(std::string("field '") + key + "' must be a \"p/q\" string");
    bool reduced = true;
    mpq_class q = parse_frac(text, &reduced);
    if (!reduced && warnings) warnings->push_back("fraction '" + text + "' was not in lowest terms");
    return q;
}

Exponent4 exponent_from_json(const Json& e, int ambient) {
    if (!e.is_array()) throw ParseError("'exp' must be an array");
    std::vector<int> v;
    for (const auto& x : e) {
        if (!x.is_number_integer() || x.get<int>() < 0) throw ParseError("exponents must be nonnegative integers");
        v.push_back(x.get<int>());
    }
    if (ambient == 2 && v.size() == 2) return Exponent4(v[0], 0, v[1], 0);
    if (v.size() != 4) throw ParseError("'exp' must have 4 entries (2 for ambient_dim 2)");
    return Exponent4(v[0], v[1], v[2], v[3]);
}

struct Parsed {
    std::map<Exponent4, GaussRat> coeffs;
    int degree;
    int ambient;
    Convention conv;
};

Parsed parse_file(const Json& j, std::vector<std::string>* warnings) {
    if (!j.is_object()) throw ParseError("coefficient file must be a JSON object");
    Parsed p;
    p.ambient = j.value("ambient_dim", 3);
    if (p.ambient != 2 && p.ambient != 3) throw ParseError("ambient_dim must be 2 or 3");
    if (!j.contains("degree") || !j.at("degree").is_number_integer()) throw ParseError("missing integer 'degree'");
    p.degree = j.at("degree").get<int>();
    if (p.degree < 2 || p.degree > kMaxOrder) throw ParseError("degree out of range");
    p.conv = convention_from_string(j.value("convention", std::string("monomial")));
    if (!j.contains("coefficients") || !j.at("coefficients").is_array()) throw ParseError("missing 'coefficients' array");
    for (const auto& c : j.at("coefficients")) {
        if (!c.contains("exp")) throw ParseError("coefficient without 'exp'");
        const Exponent4 e = exponent_from_json(c.at("exp"), p.ambient);
        if (e.deg() > p.degree) throw ParseError("exponent " + e.str() + " exceeds the declared degree");
        if (p.coeffs.count(e)) throw ParseError("duplicate exponent " + e.str());
        p.coeffs[e] = gauss_from_json(c, warnings);
    }
    return p;
}

}  // namespace

Json to_json(const GaussRat& z) { return Json{{"re", frac_str(z.re())}, {"im", frac_str(z.im())}}; }

GaussRat gauss_from_json(const Json& j, std::vector<std::string>* warnings) {
    if (!j.is_object()) throw ParseError("expected {re, im}");
    return GaussRat(frac_field(j, "re", warnings), frac_field(j, "im", warnings));
}

Json series_to_json(const TruncSeries& s, int slots) {
    Json arr = Json::array();
    for (const auto& [e, c] : s.terms()) {
        Json item;
        if (slots == 2)
            item["exp"] = {e.a, e.b};
        else
            item["exp"] = {e.a, e.b, e.c, e.d};
        item["re"] = frac_str(c.re());
        item["im"] = frac_str(c.im());
        arr.push_back(item);
    }
    return arr;
}

Json hypersurface_to_json(const Hypersurface& h) {
    Json j;
    j["ambient_dim"] = h.ambient_dim;
    j["degree"] = h.degree;
    j["convention"] = to_string(h.convention);
    Json arr = Json::array();
    for (const auto& [e, c] : h.F.terms()) {
        const GaussRat v = h.coeff(e);
        Json item;
        if (h.ambient_dim == 2)
            item["exp"] = {e.a, e.c};
        else
            item["exp"] = {e.a, e.b, e.c, e.d};
        item["re"] = frac_str(v.re());
        item["im"] = frac_str(v.im());
        arr.push_back(item);
    }
    j["coefficients"] = arr;
    return j;
}

Hypersurface hypersurface_from_json(const Json& j, std::vector<std::string>* warnings) {
    Parsed p = parse_file(j, warnings);
    return from_coefficients(p.coeffs, p.degree, p.conv, p.ambient);
}

JetTable jet_table_from_json(const Json& j, std::vector<std::string>* warnings) {
    Parsed p = parse_file(j, warnings);
    if (p.ambient != 3) throw ParseError("jet completion needs ambient_dim 3");
    JetTable t;
    t.degree = p.degree;
    t.convention = p.conv;
    t.values = p.coeffs;
    return t;
}

Json map_to_json(const RigidMap& m) {
    Json j;
    j["degree"] = m.degree;
    j["rho"] = frac_str(m.rho);
    j["f"] = series_to_json(m.f, 2);
    j["g"] = series_to_json(m.g, 2);
    j["h"] = series_to_json(m.h, 2);
    return j;
}

}  // namespace rcr
