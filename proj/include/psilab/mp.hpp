#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <type_traits>

namespace psilab {

namespace bmp = boost::multiprecision;

// Working tiers on the high-precision L path: 40 digits for the default
// 30-digit requests, 80 for escalation / doubled-precision oracles.  The
// extra ~10 digits are guard digits over the requested accuracy.
using Real40 = bmp::number<bmp::mpfr_float_backend<40>>;
using Real80 = bmp::number<bmp::mpfr_float_backend<80>>;

template <class R>
inline void sin_cos(const R& x, R& s, R& c) {
    mpfr_sin_cos(s.backend().data(), c.backend().data(), x.backend().data(), MPFR_RNDN);
}
inline void sin_cos(const double& x, double& s, double& c) {
    s = std::sin(x);
    c = std::cos(x);
}

template <class R>
struct RealTraits {
    static R pi() { return boost::math::constants::pi<R>(); }
    static R euler() { return boost::math::constants::euler<R>(); }
    static int digits10() { return std::numeric_limits<R>::digits10; }
};

// Minimal complex-over-R value type.  std::complex is only specified for
// builtin floats, so the multiprecision path carries its own.
template <class R>
struct Cplx {
    R re{}, im{};

    Cplx() = default;
    template <class T1>
        requires std::is_convertible_v<T1, R>
    Cplx(const T1& r) : re(r) {}
    template <class T1, class T2>
        requires(std::is_convertible_v<T1, R> && std::is_convertible_v<T2, R>)
    Cplx(const T1& r, const T2& i) : re(r), im(i) {}

    Cplx operator-() const { return {-re, -im}; }
    Cplx& operator+=(const Cplx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cplx& operator-=(const Cplx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
    friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Cplx& a, const R& k) { return {a.re * k, a.im * k}; }
    friend Cplx operator*(const R& k, const Cplx& a) { return a * k; }
    friend Cplx operator/(const Cplx& a, const R& k) { return {a.re / k, a.im / k}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        R d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend Cplx conj(const Cplx& a) { return {a.re, -a.im}; }
    friend R norm(const Cplx& a) { return a.re * a.re + a.im * a.im; }
    friend R abs(const Cplx& a) {
        using std::sqrt;
        return sqrt(norm(a));
    }
    friend R arg(const Cplx& a) {
        using std::atan2;
        return atan2(a.im, a.re);
    }
    friend Cplx exp(const Cplx& a) {
        using std::exp;
        R m = exp(a.re), s, c;
        sin_cos(a.im, s, c);
        return {m * c, m * s};
    }
    friend Cplx log(const Cplx& a) {
        using std::log;
        return {log(abs(a)), arg(a)};
    }
    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

// exp(i theta)
template <class R>
Cplx<R> unit_phase(const R& theta) {
    R s, c;
    sin_cos(theta, s, c);
    return {c, s};
}

// b^w for real b > 0
template <class R>
Cplx<R> pow_real_base(const R& b, const Cplx<R>& w) {
    using std::log;
    R lb = log(b);
    return exp(Cplx<R>(w.re * lb, w.im * lb));
}

} // namespace psilab
