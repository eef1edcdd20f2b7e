#pragma once

#include "psilab/characters.hpp"
#include "psilab/gammaf.hpp"
#include "psilab/hurwitz.hpp"
#include "psilab/mp.hpp"

#include <complex>
#include <string>
#include <vector>

namespace psilab {

// The >= 30-significant-digit complex type of the L-evaluation path.
using ComplexValue = Cplx<Real40>;

// Critical-line ordinates of one character, positive side; the negative
// side is implied by conjugation (the zeros of conj(chi) reflected).
struct ZeroSet {
    std::string label;
    long long q = 0;
    double height = 0;                // scanned height T
    std::vector<double> ordinates;    // ascending gamma > 0
    std::vector<int> multiplicities;  // parallel to ordinates, all 1
    int precision_digits = 11;
};

struct NearCoincidence {
    std::string label_a, label_b;
    double gamma_a = 0, gamma_b = 0;
};

struct ScanResult {
    std::vector<ZeroSet> sets;        // primitive non-principal chi mod q
    double max_im_on_grid = 0;        // realness diagnostic of rotated Z
    std::vector<NearCoincidence> near_coincidences;  // within 1e-6 across chars
};

struct CentralValueReport {
    std::string label;
    std::complex<double> l_half;
    int z_chi = 0;
    double vanishing_threshold = 0;
    bool escalated = false;
    bool possible_central_zero = false;  // below threshold at max precision
};

struct LfuncOptions {
    int target_digits = 30;      // requested accuracy (guard digits on top)
    double grid_step = 0.05;
    int max_grid_halvings = 8;
    double bisection_tol = 1e-12;
    double height_cap = 1e4;
};

// chi(n) as a root of unity at R precision.
template <class R>
Cplx<R> chi_value_hp(const DirichletCharacter& chi, long long n) {
    UnityValue uv = chi.unity_value(n);
    if (uv.zero)
        return Cplx<R>{};
    R theta = R(2) * RealTraits<R>::pi() * R(uv.num) / R(uv.den);
    return unit_phase(theta);
}

// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q).
template <class R>
Cplx<R> l_value_t(const Cplx<R>& s, const DirichletCharacter& chi, int target_digits) {
    long long q = chi.modulus();
    if (chi.is_principal() && s.re == 1 && s.im == 0)
        throw domain_error("l_value: principal character has a pole at s = 1");
    Cplx<R> sum{};
    for (long long a = 1; a <= q; ++a) {
        Cplx<R> c = chi_value_hp<R>(chi, a);
        if (c.re == 0 && c.im == 0)
            continue;
        sum += c * hurwitz_zeta(s, R(a) / R(q), target_digits);
    }
    if (q == 1)
        return sum;
    return pow_real_base(R(q), -s) * sum;
}

// tau(chi) at R precision via the exact rational angles.
template <class R>
Cplx<R> gauss_sum_hp(const DirichletCharacter& chi) {
    long long q = chi.modulus();
    Cplx<R> s{};
    for (long long a = 1; a <= q; ++a) {
        UnityValue uv = chi.unity_value(a);
        if (uv.zero)
            continue;
        long long den = uv.den * q;
        long long num = (uv.num * q + (a % q) * uv.den) % den;
        s += unit_phase(R(2) * RealTraits<R>::pi() * R(num) / R(den));
    }
    return s;
}

template <class R>
Cplx<R> root_number_hp(const DirichletCharacter& chi) {
    using std::sqrt;
    if (!chi.is_primitive())
        throw domain_error("root_number: character must be primitive");
    Cplx<R> tau = gauss_sum_hp<R>(chi);
    Cplx<R> den = Cplx<R>(sqrt(R(chi.modulus())));
    if (chi.parity() == 1)
        den = den * Cplx<R>(R(0), R(1));
    return tau / den;
}

// Completed L-function: (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi).
template <class R>
Cplx<R> completed_l_t(const Cplx<R>& s, const DirichletCharacter& chi, int target_digits) {
    if (!chi.is_primitive())
        throw domain_error("completed_l: character must be primitive");
    R a(chi.parity());
    Cplx<R> half_arg = (s + Cplx<R>(a)) * Cplx<R>(R(0.5));
    Cplx<R> power = pow_real_base(R(chi.modulus()) / RealTraits<R>::pi(), half_arg);
    return power * gamma_fn(half_arg) * l_value_t(s, chi, target_digits);
}

// Double-facing wrappers at the default 40-digit working tier.
ComplexValue hurwitz_zeta_value(const ComplexValue& s, const Real40& alpha, int digits = 30);
ComplexValue l_value(const ComplexValue& s, const DirichletCharacter& chi, int digits = 30);
ComplexValue completed_l(const ComplexValue& s, const DirichletCharacter& chi, int digits = 30);

// Zeros of the rotated completed function on (0, T], all primitive
// non-principal characters mod q in one pass (they share the Hurwitz grid).
ScanResult scan_zeros_mod(long long q, double T, const LfuncOptions& opt = {});
ZeroSet scan_zeros(const DirichletCharacter& chi, double T, const LfuncOptions& opt = {});

// Sign-located ordinates on [t_lo, t_hi] for one character (no audit);
// test hook for the conjugation symmetry across a conjugate pair.
std::vector<double> scan_ordinates_interval(const DirichletCharacter& chi, double t_lo,
                                            double t_hi, const LfuncOptions& opt = {});

// N(T, chi): zeros with 0 < gamma < T by the argument principle on the
// rectangle [-1/2, 3/2] x [0, T] (double-precision phase walk).
int zero_count_audit(const DirichletCharacter& chi, double T);

CentralValueReport central_report(const DirichletCharacter& chi, double threshold = 1e-3);

// sum over p | q, p not dividing the conductor, of chi*(p^k) log p over
// p^k <= x, so that psi(x, chi) = psi(x, chi*) - correction.
std::complex<double> imprimitive_psi_correction(const DirichletCharacter& chi, double x);

} // namespace psilab
