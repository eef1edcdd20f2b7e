#pragma once

#include "psilab/errors.hpp"
#include "psilab/mp.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <algorithm>
#include <mutex>
#include <vector>

namespace psilab {

namespace detail {

// B_{2k} / (2k)! for the Euler-Maclaurin correction terms.
template <class R>
const std::vector<R>& em_coeffs() {
    static std::vector<R> coeffs;
    static std::once_flag flag;
    std::call_once(flag, [] {
        const size_t kmax = 32;
        R fact(2);  // (2k)! built incrementally
        coeffs.reserve(kmax);
        for (size_t k = 1; k <= kmax; ++k) {
            if (k > 1)
                fact *= R(2 * k) * R(2 * k - 1);
            coeffs.push_back(boost::math::bernoulli_b2n<R>(static_cast<int>(k)) / fact);
        }
    });
    return coeffs;
}

} // namespace detail

template <class R>
struct HurwitzResult {
    Cplx<R> value;
    R tail_bound;  // certified Euler-Maclaurin remainder bound
};

// zeta(s, alpha) by Euler-Maclaurin with N shifted terms and M correction
// terms.  Valid for Re(s) > -(2M+1), s != 1.  The remainder is bounded by
// |first omitted term| * |s+2M+1| / (Re s + 2M+1).
template <class R>
HurwitzResult<R> hurwitz_zeta_em(const Cplx<R>& s, const R& alpha, int n_shift, int m_corr) {
    using std::abs;
    using std::log;

    const auto& coef = detail::em_coeffs<R>();
    Cplx<R> sum{};
    for (int n = 0; n < n_shift; ++n) {
        R na = alpha + n;
        R lna = log(na);
        sum += exp(Cplx<R>(-s.re * lna, -s.im * lna));
    }
    R base = alpha + n_shift;
    Cplx<R> base_pow_minus_s = pow_real_base(base, -s);                    // base^{-s}
    sum += base_pow_minus_s * base / (s - Cplx<R>(R(1)));                  // base^{1-s}/(s-1)
    sum += base_pow_minus_s * R(0.5);

    Cplx<R> rising = s;                       // s(s+1)...(s+2k-2)
    R base_inv2 = R(1) / (base * base);
    Cplx<R> w = base_pow_minus_s / base;      // base^{-s-2k+1}
    for (int k = 1; k <= m_corr; ++k) {
        sum += w * rising * coef[static_cast<size_t>(k - 1)];
        rising = rising * Cplx<R>(s.re + R(2 * k - 1), s.im) * Cplx<R>(s.re + R(2 * k), s.im);
        w = w * base_inv2;
    }
    // first omitted term, k = m_corr + 1
    R tail = abs(w * rising * coef[static_cast<size_t>(m_corr)]);
    R ratio_num = abs(Cplx<R>(s.re + R(2 * m_corr + 1), s.im));
    R ratio_den = s.re + R(2 * m_corr + 1);
    if (ratio_den <= 0)
        throw domain_error("hurwitz_zeta: Re(s) too far left for chosen M");
    tail *= ratio_num / ratio_den;
    return {sum, tail};
}

// zeta(s, alpha) to ~target_digits, raising N adaptively until the
// certified remainder is below target.
template <class R>
Cplx<R> hurwitz_zeta(const Cplx<R>& s, const R& alpha, int target_digits) {
    using std::abs;
    if (!(alpha > 0 && alpha <= 1))
        throw domain_error("hurwitz_zeta: alpha must lie in (0, 1]");
    if (s.re == 1 && s.im == 0)
        throw domain_error("hurwitz_zeta: pole at s = 1");

    R target(1);
    for (int i = 0; i < target_digits; ++i)
        target /= 10;

    double im = std::abs(static_cast<double>(s.im));
    int n_shift = std::max(24, static_cast<int>(2.0 * im) + 8);
    const int m_corr = 25;
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto r = hurwitz_zeta_em(s, alpha, n_shift, m_corr);
        R scale = std::max(R(1), abs(r.value));
        if (r.tail_bound <= target * scale)
            return r.value;
        n_shift *= 2;
    }
    throw domain_error("hurwitz_zeta: Euler-Maclaurin failed to reach target precision");
}

} // namespace psilab
