#include "rigidcr/jet_formula.hpp"

#include "rigidcr/normal_form.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace rcr {

namespace {

std::string strip_comment(std::string line) {
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    return line;
}

FormulaTerm parse_term(const std::string& line) {
    static const std::regex factor_re(R"(F_\{(\d+),(\d+),(\d+),(\d+)\}(?:\^(-?\d+))?)");
    std::istringstream is(line);
    std::string tok;
    is >> tok;
    FormulaTerm t;
    t.coef = parse_frac(tok);
    while (is >> tok) {
        std::smatch m;
        if (!std::regex_match(tok, m, factor_re)) throw ParseError("bad factor '" + tok + "' in formula");
        Exponent4 e(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4]));
        t.factors.emplace_back(e, m[5].matched ? std::stol(m[5]) : 1L);
    }
    return t;
}

}  // namespace

Formula parse_formula(std::string_view text) {
    Formula f;
    std::istringstream is{std::string(text)};
    for (std::string line; std::getline(is, line);) {
        line = strip_comment(line);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        f.push_back(parse_term(line));
    }
    return f;
}

std::vector<FormulaBlock> parse_formula_blocks(std::string_view text) {
    std::vector<FormulaBlock> out;
    std::istringstream is{std::string(text)};
    bool open = false;
    for (std::string line; std::getline(is, line);) {
        line = strip_comment(line);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        if (first == "end") {
            if (!open) throw ParseError("'end' without an open block");
            open = false;
        } else if (!open && first != "+" && first[0] != '+' && first[0] != '-') {
            FormulaBlock b;
            b.header.push_back(first);
            for (std::string w; ls >> w;) b.header.push_back(w);
            out.push_back(std::move(b));
            open = true;
        } else {
            if (!open) throw ParseError("formula line outside a block");
            out.back().body.push_back(parse_term(line));
        }
    }
    if (open) throw ParseError("unterminated formula block");
    return out;
}

GaussRat evaluate(const Formula& f, const CoeffLookup& value) {
    GaussRat total;
    for (const auto& t : f) {
        GaussRat p(t.coef);
        for (const auto& [e, k] : t.factors) p *= value(e).pow(k);
        total += p;
    }
    return total;
}

GaussRat evaluate_factors(const std::vector<FormulaBlock>& blocks, const CoeffLookup& value) {
    GaussRat total(1);
    for (const auto& b : blocks) {
        if (b.header.size() != 2 || b.header[0] != "factor") throw ParseError("expected 'factor p/q' block");
        const mpq_class power = parse_frac(b.header[1]);
        GaussRat base = evaluate(b.body, value);
        const long num = power.get_num().get_si(), den = power.get_den().get_si();
        if (den != 1) {
            if (den != 2 || !base.is_real()) throw PreconditionError("unsupported fractional power");
            auto r = rational_sqrt(base.re());
            if (!r) throw PreconditionError("factor has no exact square root");
            base = GaussRat(*r);
        }
        total *= base.pow(num);
    }
    return total;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool FixtureReport::ok() const {
    if (i0_matches != samples || v0_matches != samples) return false;
    for (const auto& r : relations)
        if (r.disputed ? r.holds == samples : r.holds != samples) return false;
    return true;
}

FixtureReport check_fixtures(const std::string& dir, int samples, std::uint64_t seed) {
    const Formula i0n = parse_formula(read_text_file(dir + "/i0_numerator.txt"));
    const Formula v0n = parse_formula(read_text_file(dir + "/v0_numerator.txt"));
    const auto i0d = parse_formula_blocks(read_text_file(dir + "/i0_denominator.txt"));
    const auto v0d = parse_formula_blocks(read_text_file(dir + "/v0_denominator.txt"));
    const auto rels = parse_formula_blocks(read_text_file(dir + "/stage_relations.txt"));
    FixtureReport rep;
    rep.samples = samples;
    for (const auto& b : rels) {
        if (b.header.size() < 3 || b.header[0] != "relation") throw ParseError("bad relation header");
        RelationOutcome o;
        o.stage = std::stoi(b.header[1]);
        int a, bb, c, d;
        if (std::sscanf(b.header[2].c_str(), "%d,%d,%d,%d", &a, &bb, &c, &d) != 4) throw ParseError("bad relation slot");
        o.slot = Exponent4(a, bb, c, d);
        o.disputed = b.header.size() > 3 && b.header[3] == "disputed";
        rep.relations.push_back(o);
    }
    RandomOptions opt;
    opt.unit_levi = true;
    opt.with_pluriharmonic = true;
    for (int s = 0; s < samples; ++s) {
        const Hypersurface h = random_rank1(seed + s, 5, opt);
        const NormalFormResult r = normalize(h, false);
        const Hypersurface& h0 = r.stages.at(0).result;
        auto look0 = [&](Exponent4 e) { return h0.taylor(e); };
        if (evaluate(i0n, look0) / evaluate_factors(i0d, look0) == r.I0) ++rep.i0_matches;
        if (evaluate(v0n, look0) / evaluate_factors(v0d, look0) == r.V0) ++rep.v0_matches;
        for (std::size_t k = 0; k < rels.size(); ++k) {
            auto& o = rep.relations[k];
            const Hypersurface& prev = r.stages.at(o.stage - 1).result;
            const Hypersurface& cur = r.stages.at(o.stage).result;
            const GaussRat rhs = evaluate(rels[k].body, [&](Exponent4 e) { return prev.taylor(e); });
            if (cur.taylor(o.slot) == rhs) ++o.holds;
        }
    }
    return rep;
}

}  // namespace rcr
