#pragma once

#include "rigidcr/gauss_rat.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>

namespace rcr {

// Largest total degree any series may carry.
inline constexpr int kMaxOrder = 15;

// Slots of an exponent: powers of z, zeta, conj(z), conj(zeta).
enum Var : int { Z = 0, ZETA = 1, ZB = 2, ZETAB = 3 };

struct Exponent4 {
    std::uint8_t a = 0, b = 0, c = 0, d = 0;

    constexpr Exponent4() = default;
    constexpr Exponent4(int a_, int b_, int c_, int d_)
        : a(static_cast<std::uint8_t>(a_)), b(static_cast<std::uint8_t>(b_)),
          c(static_cast<std::uint8_t>(c_)), d(static_cast<std::uint8_t>(d_)) {}

    constexpr int operator[](int v) const { return v == 0 ? a : v == 1 ? b : v == 2 ? c : d; }
    constexpr int deg() const { return a + b + c + d; }
    // Exponent of the conjugate monomial.
    constexpr Exponent4 bar() const { return Exponent4(c, d, a, b); }
    constexpr Exponent4 operator+(const Exponent4& o) const {
        return Exponent4(a + o.a, b + o.b, c + o.c, d + o.d);
    }
    constexpr auto operator<=>(const Exponent4&) const = default;

    std::string str() const;
};

/// Truncated power series in (z, zeta, conj z, conj zeta) with exact
/// Gaussian-rational coefficients. Coefficients are known exactly up to
/// total degree valid_order(); nothing above that degree is stored.
class TruncSeries {
public:
    using Map = std::map<Exponent4, GaussRat>;

    TruncSeries() = default;
    explicit TruncSeries(int valid_order);

    static TruncSeries constant(const GaussRat& c, int order);
    static TruncSeries variable(Var v, int order);
    static TruncSeries monomial(Exponent4 e, const GaussRat& c, int order);

    int valid_order() const { return order_; }
    const Map& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    GaussRat coeff(Exponent4 e) const;
    GaussRat constant_term() const { return coeff(Exponent4()); }
    // Sets a coefficient; zero removes it. Degree must not exceed valid_order.
    void set(Exponent4 e, const GaussRat& c);
    void add_to(Exponent4 e, const GaussRat& c);

    // Lowest total degree with a nonzero coefficient, or -1 for zero.
    int min_degree() const;
    bool is_holomorphic() const;  // no conj(z), conj(zeta)

    TruncSeries truncated(int order) const;
    // Keeps only terms satisfying pred; valid order unchanged.
    TruncSeries filtered(const std::function<bool(Exponent4)>& pred) const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const GaussRat& s);

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const GaussRat& s) { return a *= s; }
    friend TruncSeries operator*(const GaussRat& s, TruncSeries a) { return a *= s; }
    TruncSeries operator-() const;

    // Same valid order and same coefficients.
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    Map terms_;
    int order_ = 0;
};

TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

// S / U where U has a nonzero constant term.
TruncSeries divide_by_unit(const TruncSeries& s, const TruncSeries& u);

// Partial derivative; the valid order drops by one.
TruncSeries derive(const TruncSeries& s, Var v);

// Series of the conjugate function: out(a,b,c,d) = conj(in(c,d,a,b)).
TruncSeries conj_series(const TruncSeries& s);

// Real part (s + conj s)/2 as a series.
TruncSeries real_part(const TruncSeries& s);

// S(sigma_z, sigma_zeta, sigma_zbar, sigma_zetabar); each sigma has zero constant term.
TruncSeries substitute(const TruncSeries& s, const std::array<TruncSeries, 4>& sigma);

// Substitutes a holomorphic pair (f, g) and its conjugate.
TruncSeries substitute_holo(const TruncSeries& s, const TruncSeries& f, const TruncSeries& g);

// Compositional inverse of the holomorphic pair (f, g), exact to degree delta.
std::pair<TruncSeries, TruncSeries> invert_pair(const TruncSeries& f, const TruncSeries& g, int delta);

// Terms with a + c == nu.
TruncSeries weighted_component(const TruncSeries& s, int nu);

// Terms of total degree n.
TruncSeries homogeneous_part(const TruncSeries& s, int n);

// Value at a point; p lists values for all four slots.
GaussRat eval_at(const TruncSeries& s, const std::array<GaussRat, 4>& p);

// Exact polynomial shift S(x + p); valid order is kept.
TruncSeries shift(const TruncSeries& s, const std::array<GaussRat, 4>& p);

// Number of exponents of total degree <= order, and a dense index for them.
int dense_size(int order);
int dense_index(Exponent4 e);
Exponent4 dense_exponent(int idx);

long factorial(int n);
// a! b! c! d!
long taylor_factor(Exponent4 e);

}  // namespace rcr
