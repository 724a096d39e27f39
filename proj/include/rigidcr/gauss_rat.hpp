#pragma once

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rcr {

// Raised when a mathematical precondition fails (zero pivot, missing order).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised on malformed input text.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact element of Q(i), stored as two canonical GMP rationals.
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(long n) : re_(n), im_(0) {}
    GaussRat(const mpq_class& re) : re_(re), im_(0) {}
    GaussRat(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

    static GaussRat i() { return GaussRat(0, 1); }
    static GaussRat frac(long p, long q) {
        mpq_class r(p, q);
        r.canonicalize();
        return GaussRat(r);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }
    mpq_class& re() { return re_; }
    mpq_class& im() { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRat conj() const { return GaussRat(re_, -im_); }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    GaussRat inv() const;

    GaussRat& operator+=(const GaussRat& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o) { return *this *= o.inv(); }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    GaussRat operator-() const { return GaussRat(-re_, -im_); }

    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat pow(long e) const;

    // Human readable, e.g. "3/2-1/5*i".
    std::string str() const;

private:
    mpq_class re_{0}, im_{0};
};

// acc += x*y without building intermediate GaussRat objects.
void fma_into(GaussRat& acc, const GaussRat& x, const GaussRat& y, mpq_class& tmp);

// Canonical "p/q" text (denominator always printed).
std::string frac_str(const mpq_class& q);

// Parses "p", "p/q" or "-p/q". Throws ParseError. Sets *was_reduced to false
// when the input was not in lowest terms.
mpq_class parse_frac(std::string_view s, bool* was_reduced = nullptr);

// Exact square root of a nonnegative rational, if it exists.
std::optional<mpq_class> rational_sqrt(const mpq_class& q);

// Some x in Q(i) with x*x == v, if one exists.
std::optional<GaussRat> gauss_sqrt(const GaussRat& v);

std::ostream& operator<<(std::ostream& os, const GaussRat& z);

}  // namespace rcr
