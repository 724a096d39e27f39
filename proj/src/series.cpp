#include "rigidcr/series.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace rcr {

namespace {

struct DenseTable {
    std::vector<int> index;           // packed exponent -> dense index
    std::vector<Exponent4> exponent;  // dense index -> exponent
    std::vector<int> size_upto;       // size_upto[n] = #exponents of degree <= n

    DenseTable() : index(1 << 16, -1) {
        for (int n = 0; n <= kMaxOrder; ++n) {
            for (int a = n; a >= 0; --a)
                for (int b = n - a; b >= 0; --b)
                    for (int c = n - a - b; c >= 0; --c) {
                        Exponent4 e(a, b, c, n - a - b - c);
                        index[pack(e)] = static_cast<int>(exponent.size());
                        exponent.push_back(e);
                    }
            size_upto.push_back(static_cast<int>(exponent.size()));
        }
    }
    static int pack(Exponent4 e) { return (e.a << 12) | (e.b << 8) | (e.c << 4) | e.d; }
};

const DenseTable& table() {
    static const DenseTable t;
    return t;
}

void check_order(int order) {
    if (order > kMaxOrder) throw PreconditionError("series order exceeds supported maximum");
}

// Dense accumulator reused across one operation.
struct Accumulator {
    std::vector<GaussRat> slot;
    std::vector<char> used;
    std::vector<int> touched;
    mpq_class tmp;

    explicit Accumulator(int order) : slot(dense_size(order)), used(slot.size(), 0) {}

    GaussRat& at(Exponent4 e) {
        int i = dense_index(e);
        if (!used[i]) {
            used[i] = 1;
            touched.push_back(i);
        }
        return slot[i];
    }
    void fma(Exponent4 e, const GaussRat& x, const GaussRat& y) { fma_into(at(e), x, y, tmp); }

    TruncSeries collect(int order) {
        TruncSeries out(order);
        std::sort(touched.begin(), touched.end());
        for (int i : touched) {
            if (!slot[i].is_zero()) out.set(dense_exponent(i), slot[i]);
            slot[i] = GaussRat();
            used[i] = 0;
        }
        touched.clear();
        return out;
    }
};

std::vector<std::pair<Exponent4, const GaussRat*>> by_degree(const TruncSeries& s) {
    std::vector<std::pair<Exponent4, const GaussRat*>> v;
    v.reserve(s.size());
    for (const auto& [e, c] : s.terms()) v.emplace_back(e, &c);
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first.deg() < y.first.deg(); });
    return v;
}

}  // namespace

int dense_size(int order) {
    if (order < 0) return 0;
    check_order(order);
    return table().size_upto[order];
}
int dense_index(Exponent4 e) { return table().index[DenseTable::pack(e)]; }
Exponent4 dense_exponent(int idx) { return table().exponent[idx]; }

long factorial(int n) {
    long r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

long taylor_factor(Exponent4 e) { return factorial(e.a) * factorial(e.b) * factorial(e.c) * factorial(e.d); }

std::string Exponent4::str() const {
    std::ostringstream os;
    os << int(a) << "," << int(b) << "," << int(c) << "," << int(d);
    return os.str();
}

TruncSeries::TruncSeries(int valid_order) : order_(valid_order) {
    if (valid_order < 0) throw PreconditionError("negative valid order");
    check_order(valid_order);
}

TruncSeries TruncSeries::constant(const GaussRat& c, int order) {
    TruncSeries s(order);
    s.set(Exponent4(), c);
    return s;
}

TruncSeries TruncSeries::variable(Var v, int order) {
    int e[4] = {0, 0, 0, 0};
    e[v] = 1;
    return monomial(Exponent4(e[0], e[1], e[2], e[3]), GaussRat(1), order);
}

TruncSeries TruncSeries::monomial(Exponent4 e, const GaussRat& c, int order) {
    TruncSeries s(order);
    if (e.deg() <= order) s.set(e, c);
    return s;
}

GaussRat TruncSeries::coeff(Exponent4 e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussRat() : it->second;
}

void TruncSeries::set(Exponent4 e, const GaussRat& c) {
    if (e.deg() > order_) throw PreconditionError("coefficient degree exceeds valid order");
    if (c.is_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

void TruncSeries::add_to(Exponent4 e, const GaussRat& c) {
    if (c.is_zero()) return;
    if (e.deg() > order_) throw PreconditionError("coefficient degree exceeds valid order");
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int TruncSeries::min_degree() const {
    int m = -1;
    for (const auto& [e, c] : terms_)
        if (m < 0 || e.deg() < m) m = e.deg();
    return m;
}

bool TruncSeries::is_holomorphic() const {
    for (const auto& [e, c] : terms_)
        if (e.c || e.d) return false;
    return true;
}

TruncSeries TruncSeries::truncated(int order) const {
    TruncSeries out(std::min(order, order_));
    for (const auto& [e, c] : terms_)
        if (e.deg() <= out.order_) out.terms_.emplace(e, c);
    return out;
}

TruncSeries TruncSeries::filtered(const std::function<bool(Exponent4)>& pred) const {
    TruncSeries out(order_);
    for (const auto& [e, c] : terms_)
        if (pred(e)) out.terms_.emplace(e, c);
    return out;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [e, c] : o.terms_)
        if (e.deg() <= order_) add_to(e, c);
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [e, c] : o.terms_)
        if (e.deg() <= order_) add_to(e, -c);
    return *this;
}

TruncSeries& TruncSeries::operator*=(const GaussRat& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries out(*this);
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

std::string TruncSeries::str() const {
    std::ostringstream os;
    os << "[order " << order_ << "]";
    for (const auto& [e, c] : terms_) os << " (" << c << ")*[" << e.str() << "]";
    return os.str();
}

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
    const int order = std::min(a.valid_order(), b.valid_order());
    if (a.is_zero() || b.is_zero()) return TruncSeries(order);
    auto va = by_degree(a), vb = by_degree(b);
    Accumulator acc(order);
    for (const auto& [ea, ca] : va) {
        if (ea.deg() > order) break;
        const int room = order - ea.deg();
        for (const auto& [eb, cb] : vb) {
            if (eb.deg() > room) break;
            acc.fma(ea + eb, *ca, *cb);
        }
    }
    return acc.collect(order);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }

TruncSeries divide_by_unit(const TruncSeries& s, const TruncSeries& u) {
    const GaussRat u0 = u.constant_term();
    if (u0.is_zero()) throw PreconditionError("divide_by_unit: divisor has zero constant term");
    const int order = std::min(s.valid_order(), u.valid_order());
    const GaussRat u0inv = u0.inv();
    std::vector<std::vector<std::pair<Exponent4, const GaussRat*>>> ubydeg(order + 1);
    for (const auto& [e, c] : u.terms())
        if (e.deg() >= 1 && e.deg() <= order) ubydeg[e.deg()].emplace_back(e, &c);
    std::vector<std::vector<std::pair<Exponent4, GaussRat>>> q(order + 1);
    Accumulator acc(order);
    const GaussRat minus_one(-1);
    for (int n = 0; n <= order; ++n) {
        for (const auto& [e, c] : s.terms())
            if (e.deg() == n) acc.at(e) += c;
        for (int j = 1; j <= n; ++j)
            for (const auto& [eu, cu] : ubydeg[j])
                for (const auto& [eq, cq] : q[n - j]) {
                    GaussRat& slot = acc.at(eu + eq);
                    fma_into(slot, *cu, -cq, acc.tmp);
                }
        TruncSeries part = acc.collect(order);
        for (const auto& [e, c] : part.terms()) q[n].emplace_back(e, c * u0inv);
    }
    TruncSeries out(order);
    for (const auto& level : q)
        for (const auto& [e, c] : level) out.set(e, c);
    return out;
}

TruncSeries derive(const TruncSeries& s, Var v) {
    if (s.valid_order() < 1) throw PreconditionError("derive: series not valid to order 1");
    TruncSeries out(s.valid_order() - 1);
    for (const auto& [e, c] : s.terms()) {
        const int k = e[v];
        if (k == 0) continue;
        int x[4] = {e.a, e.b, e.c, e.d};
        x[v] -= 1;
        out.set(Exponent4(x[0], x[1], x[2], x[3]), c * GaussRat(k));
    }
    return out;
}

TruncSeries conj_series(const TruncSeries& s) {
    TruncSeries out(s.valid_order());
    for (const auto& [e, c] : s.terms()) out.set(e.bar(), c.conj());
    return out;
}

TruncSeries real_part(const TruncSeries& s) { return (s + conj_series(s)) * GaussRat::frac(1, 2); }

TruncSeries substitute(const TruncSeries& s, const std::array<TruncSeries, 4>& sigma) {
    int maxpow[4] = {0, 0, 0, 0};
    for (const auto& [e, c] : s.terms())
        for (int v = 0; v < 4; ++v) maxpow[v] = std::max(maxpow[v], e[v]);
    int order = s.valid_order();
    for (int v = 0; v < 4; ++v) {
        if (maxpow[v] == 0) continue;
        if (!sigma[v].constant_term().is_zero())
            throw PreconditionError("substitute: substituted series has a constant term");
        order = std::min(order, sigma[v].valid_order());
    }
    std::array<std::vector<TruncSeries>, 4> pw;
    for (int v = 0; v < 4; ++v) {
        pw[v].push_back(TruncSeries::constant(1, order));
        TruncSeries base = sigma[v].truncated(order);
        for (int k = 1; k <= maxpow[v]; ++k) pw[v].push_back(mul(pw[v].back(), base));
    }
    // Group by the antiholomorphic part so the holomorphic sums are formed first.
    std::map<std::pair<int, int>, TruncSeries> inner;
    std::map<std::pair<int, int>, TruncSeries> holo_products;
    for (const auto& [e, c] : s.terms()) {
        auto key_ab = std::make_pair(int(e.a), int(e.b));
        auto it = holo_products.find(key_ab);
        if (it == holo_products.end())
            it = holo_products.emplace(key_ab, mul(pw[0][e.a], pw[1][e.b])).first;
        auto [jt, fresh] = inner.try_emplace({int(e.c), int(e.d)}, TruncSeries(order));
        jt->second += it->second * c;
    }
    TruncSeries out(order);
    for (const auto& [cd, h] : inner) out += mul(h, mul(pw[2][cd.first], pw[3][cd.second]));
    return out;
}

TruncSeries substitute_holo(const TruncSeries& s, const TruncSeries& f, const TruncSeries& g) {
    return substitute(s, {f, g, conj_series(f), conj_series(g)});
}

std::pair<TruncSeries, TruncSeries> invert_pair(const TruncSeries& f, const TruncSeries& g, int delta) {
    if (!f.is_holomorphic() || !g.is_holomorphic()) throw PreconditionError("invert_pair: maps must be holomorphic");
    if (!f.constant_term().is_zero() || !g.constant_term().is_zero())
        throw PreconditionError("invert_pair: maps must fix the origin");
    const int order = std::min({delta, f.valid_order(), g.valid_order()});
    const Exponent4 ez(1, 0, 0, 0), ew(0, 1, 0, 0);
    const GaussRat a = f.coeff(ez), b = f.coeff(ew), c = g.coeff(ez), d = g.coeff(ew);
    const GaussRat det = a * d - b * c;
    if (det.is_zero()) throw PreconditionError("invert_pair: singular linear part");
    const GaussRat di = det.inv();
    const GaussRat ia = d * di, ib = -b * di, ic = -c * di, id = a * di;
    auto lin_f = TruncSeries::monomial(ez, a, order) + TruncSeries::monomial(ew, b, order);
    auto lin_g = TruncSeries::monomial(ez, c, order) + TruncSeries::monomial(ew, d, order);
    const TruncSeries nf = f.truncated(order) - lin_f, ng = g.truncated(order) - lin_g;
    const TruncSeries z = TruncSeries::variable(Z, order), w = TruncSeries::variable(ZETA, order);
    const TruncSeries zero(order);
    TruncSeries pf = z * ia + w * ib, pg = z * ic + w * id;
    // Each pass fixes one more degree of the inverse.
    for (int n = 2; n <= order; ++n) {
        auto upto_n = [n](Exponent4 e) { return e.deg() <= n; };
        TruncSeries u = (z - substitute(nf, {pf, pg, zero, zero})).filtered(upto_n);
        TruncSeries v = (w - substitute(ng, {pf, pg, zero, zero})).filtered(upto_n);
        pf = u * ia + v * ib;
        pg = u * ic + v * id;
    }
    return {pf, pg};
}

TruncSeries weighted_component(const TruncSeries& s, int nu) {
    return s.filtered([nu](Exponent4 e) { return e.a + e.c == nu; });
}

TruncSeries homogeneous_part(const TruncSeries& s, int n) {
    return s.filtered([n](Exponent4 e) { return e.deg() == n; });
}

GaussRat eval_at(const TruncSeries& s, const std::array<GaussRat, 4>& p) {
    GaussRat total;
    for (const auto& [e, c] : s.terms()) {
        GaussRat t = c;
        for (int v = 0; v < 4; ++v)
            if (e[v]) t *= p[v].pow(e[v]);
        total += t;
    }
    return total;
}

TruncSeries shift(const TruncSeries& s, const std::array<GaussRat, 4>& p) {
    // Binomial expansion of (x_v + p_v)^k, one variable at a time.
    TruncSeries cur = s;
    for (int v = 0; v < 4; ++v) {
        if (p[v].is_zero()) continue;
        TruncSeries next(cur.valid_order());
        for (const auto& [e, c] : cur.terms()) {
            const int k = e[v];
            GaussRat pj(1);
            mpz_class binom = 1;
            for (int j = 0; j <= k; ++j) {
                int x[4] = {e.a, e.b, e.c, e.d};
                x[v] = k - j;
                next.add_to(Exponent4(x[0], x[1], x[2], x[3]), c * pj * GaussRat(mpq_class(binom)));
                pj *= p[v];
                binom = binom * (k - j) / (j + 1);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace rcr
