#pragma once

#include "psilab/mp.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <mutex>
#include <vector>

namespace psilab {

namespace detail {

// B_{2k} / (2k (2k-1)) for the Stirling series, built once per scalar type.
template <class R>
const std::vector<R>& stirling_coeffs(size_t kmax) {
    static std::vector<R> coeffs;
    static std::once_flag flag;
    std::call_once(flag, [kmax] {
        coeffs.reserve(kmax);
        for (size_t k = 1; k <= kmax; ++k) {
            R b = boost::math::bernoulli_b2n<R>(static_cast<int>(k));
            coeffs.push_back(b / (R(2 * k) * R(2 * k - 1)));
        }
    });
    return coeffs;
}

} // namespace detail

// log Gamma(z) by the Stirling series after shifting Re(z) up.  The branch
// is whatever the recurrence produces: exp() of it is Gamma(z) exactly, and
// imaginary parts are only ever used modulo 2 pi.
template <class R>
Cplx<R> log_gamma(Cplx<R> z) {
    using std::floor;
    using std::log;
    const int digits = RealTraits<R>::digits10();
    const size_t kmax = 50;
    const double shift_to = std::max(20.0, 0.57 * digits + 4.0);
    const std::vector<R>& coef = detail::stirling_coeffs<R>(kmax);

    Cplx<R> corr{};  // minus sum of log(z+j) from the recurrence
    double re = static_cast<double>(z.re);
    int m = re < shift_to ? static_cast<int>(shift_to - re) + 1 : 0;
    for (int j = 0; j < m; ++j) {
        corr -= log(z);
        z.re += 1;
    }

    const R half(0.5);
    Cplx<R> lz = log(z);
    Cplx<R> result = (z - Cplx<R>(half)) * lz - z +
                     Cplx<R>(log(R(2) * RealTraits<R>::pi()) * half);
    Cplx<R> zinv = Cplx<R>(R(1)) / z;
    Cplx<R> zinv2 = zinv * zinv;
    Cplx<R> zpow = zinv;  // z^{-(2k-1)}
    R eps = R(1);
    for (int i = 0; i < digits + 2; ++i)
        eps /= 10;
    for (size_t k = 0; k < kmax; ++k) {
        Cplx<R> term = zpow * coef[k];
        result += term;
        if (abs(term) < eps * abs(result))
            break;
        zpow = zpow * zinv2;
    }
    return result + corr;
}

template <class R>
Cplx<R> gamma_fn(const Cplx<R>& z) {
    return exp(log_gamma(z));
}

} // namespace psilab
