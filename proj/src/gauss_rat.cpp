#include "rigidcr/gauss_rat.hpp"

#include <cctype>

namespace rcr {

GaussRat GaussRat::inv() const {
    mpq_class n = norm();
    if (sgn(n) == 0) throw PreconditionError("division by zero Gaussian rational");
    return GaussRat(re_ / n, -im_ / n);
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussRat GaussRat::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    GaussRat result(1), base(*this);
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

void fma_into(GaussRat& acc, const GaussRat& x, const GaussRat& y, mpq_class& tmp) {
    const bool xr = sgn(x.im()) == 0, yr = sgn(y.im()) == 0;
    mpq_mul(tmp.get_mpq_t(), x.re().get_mpq_t(), y.re().get_mpq_t());
    mpq_add(acc.re().get_mpq_t(), acc.re().get_mpq_t(), tmp.get_mpq_t());
    if (xr && yr) return;
    if (!xr && !yr) {
        mpq_mul(tmp.get_mpq_t(), x.im().get_mpq_t(), y.im().get_mpq_t());
        mpq_sub(acc.re().get_mpq_t(), acc.re().get_mpq_t(), tmp.get_mpq_t());
    }
    if (!yr) {
        mpq_mul(tmp.get_mpq_t(), x.re().get_mpq_t(), y.im().get_mpq_t());
        mpq_add(acc.im().get_mpq_t(), acc.im().get_mpq_t(), tmp.get_mpq_t());
    }
    if (!xr) {
        mpq_mul(tmp.get_mpq_t(), x.im().get_mpq_t(), y.re().get_mpq_t());
        mpq_add(acc.im().get_mpq_t(), acc.im().get_mpq_t(), tmp.get_mpq_t());
    }
}

std::string frac_str(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_frac(std::string_view s, bool* was_reduced) {
    auto bad = [&] { return ParseError("malformed rational '" + std::string(s) + "'"); };
    if (s.empty()) throw bad();
    auto digits_ok = [](std::string_view t, bool allow_sign) {
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string_view num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    mpz_class zn(n), zd{std::string(den)};
    if (zd == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    mpq_class q(zn, zd);
    q.canonicalize();
    if (was_reduced) *was_reduced = (q.get_num() == zn && q.get_den() == zd);
    return q;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return std::nullopt;
    mpq_class r(sqrt(mpz_class(q.get_num())), sqrt(mpz_class(q.get_den())));
    r.canonicalize();
    return r;
}

std::optional<GaussRat> gauss_sqrt(const GaussRat& v) {
    if (v.is_zero()) return GaussRat(0);
    auto modulus = rational_sqrt(v.norm());
    if (!modulus) return std::nullopt;
    // x = u + i w with u^2 = (p + |v|)/2, w^2 = (|v| - p)/2, 2uw = q.
    auto u = rational_sqrt((v.re() + *modulus) / 2);
    auto w = rational_sqrt((*modulus - v.re()) / 2);
    if (!u || !w) return std::nullopt;
    mpq_class wr = *w;
    if (sgn(v.im()) < 0) wr = -wr;
    GaussRat x(*u, wr);
    if (x * x != v) return std::nullopt;
    return x;
}

std::string GaussRat::str() const {
    if (is_real()) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "*i";
    std::string s = re_.get_str();
    if (sgn(im_) > 0) s += "+";
    return s + im_.get_str() + "*i";
}

std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << z.str(); }

}  // namespace rcr
