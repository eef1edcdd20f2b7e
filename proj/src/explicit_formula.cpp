#include "psilab/explicit_formula.hpp"

#include "psilab/errors.hpp"
#include "psilab/kahan.hpp"
#include "psilab/lfunc.hpp"
#include "psilab/psi.hpp"

#include <cmath>

namespace psilab {

double truncation_bound_psi(double x, long long q, double T) {
    double lg = std::log(static_cast<double>(q) * x);
    return 4.0 * x * lg * lg / T;
}

std::complex<double> zero_sum(double x, const DirichletCharacter& chi,
                              const ZeroStore& zeros, double T, bool include_real,
                              int z_chi) {
    if (!chi.is_primitive() || chi.is_principal())
        throw domain_error("zero_sum: character must be primitive non-principal");
    std::vector<double> gammas = zeros.signed_ordinates(chi, T);
    double rx = std::sqrt(x);
    double lx = std::log(x);
    KahanComplex acc;
    for (double g : gammas) {
        std::complex<double> rho(0.5, g);
        std::complex<double> xrho = rx * std::complex<double>(std::cos(g * lx), std::sin(g * lx));
        acc.add(xrho / rho);
    }
    if (include_real && z_chi > 0)
        acc.add(std::complex<double>(2.0 * rx * z_chi, 0.0));
    return -acc.value();
}

RemainderValue remainder_T(double x, long long q, long long a, const SieveOptions& opt) {
    if (q < 1)
        throw domain_error("remainder_T: q must be >= 1");
    a = ((a % q) + q) % q;
    if (gcd_ll(a == 0 ? q : a, q) != 1)
        throw domain_error("remainder_T: gcd(a,q) must be 1");
    RemainderValue rv;
    rv.x = x;
    rv.q = q;
    rv.a = a;
    if (q == 1) {
        rv.T_value = 0.0;  // psi(x;1,1) = psi(x;chi0)
        return rv;
    }
    double psi_qa = psi_progression(x, q, a, opt).value;
    double psi_0 = psi_principal(x, q, opt).value;
    double phi = static_cast<double>(euler_phi(q));
    rv.T_value = -(psi_qa - psi_0 / phi) / std::sqrt(x);
    return rv;
}

namespace {

// sum over chi != chi0 mod q of conj(chi(a)) * [sum_{rho notin R, |g|<=T} x^rho/rho
// + correction], with zeros taken from the primitive part.
std::complex<double> tstar_unnormalized(double x, long long q, long long a, double T,
                                        const ZeroStore& zeros) {
    CharacterGroup group(q);
    KahanComplex acc;
    for (const auto& chi : group.characters()) {
        if (chi.is_principal())
            continue;
        DirichletCharacter chi_star = chi.is_primitive() ? chi : chi.primitive_part();
        std::complex<double> inner = -zero_sum(x, chi_star, zeros, T, false);
        inner += imprimitive_psi_correction(chi, x);
        std::complex<double> weight = std::conj(chi.value(a));
        acc.add(weight * inner);
    }
    return acc.value();
}

} // namespace

RemainderValue remainder_Tstar(double x, long long q, long long a, double T_height,
                               const ZeroStore& zeros) {
    if (q < 1)
        throw domain_error("remainder_Tstar: q must be >= 1");
    a = ((a % q) + q) % q;
    if (gcd_ll(a == 0 ? q : a, q) != 1)
        throw domain_error("remainder_Tstar: gcd(a,q) must be 1");
    RemainderValue rv;
    rv.x = x;
    rv.q = q;
    rv.a = a;
    rv.truncation_error_bound = truncation_bound_psi(x, q, T_height) / std::sqrt(x);
    if (q == 1)
        return rv;
    double phi = static_cast<double>(euler_phi(q));
    std::complex<double> s = tstar_unnormalized(x, q, a, T_height, zeros);
    rv.Tstar_value = s.real() / (std::sqrt(x) * phi);
    return rv;
}

double hypothesis_ratio(double x, long long q, long long a, double T_height, double eps,
                        const ZeroStore& zeros) {
    RemainderValue rv = remainder_Tstar(x, q, a, T_height, zeros);
    double phi = static_cast<double>(euler_phi(q));
    double measured = std::abs(phi * std::sqrt(x) * rv.Tstar_value);
    double conjectured = std::pow(x, 0.5 + eps) / std::sqrt(static_cast<double>(q));
    return measured / conjectured;
}

double trivial_zero_term(double x1, double x2, int parity) {
    auto triv = [parity](double x) {
        if (parity == 1)
            return std::atanh(1.0 / x);               // sum x^{1-2k}/(2k-1)
        return -0.5 * std::log1p(-1.0 / (x * x))      // sum x^{-2k}/(2k)
               - std::log(x);                         // residue of the s=0 double pole
    };
    return triv(x2) - triv(x1);
}

double differenced_explicit_check(double x1, double x2, const DirichletCharacter& chi,
                                  double T_height, const ZeroStore& zeros,
                                  const SieveOptions& opt) {
    if (!chi.is_primitive() || chi.is_principal())
        throw domain_error("differenced_explicit_check: need primitive non-principal chi");
    if (!(x1 >= 2 && x1 <= x2))
        throw domain_error("differenced_explicit_check: need 2 <= x1 <= x2");
    if (x1 == x2)
        return 0.0;
    std::complex<double> dpsi =
        psi_character(x2, chi, opt) - psi_character(x1, chi, opt);
    std::complex<double> dzero = zero_sum(x2, chi, zeros, T_height, false) -
                                 zero_sum(x1, chi, zeros, T_height, false);
    double dtriv = trivial_zero_term(x1, x2, chi.parity());
    return std::abs(dpsi - dzero - std::complex<double>(dtriv, 0.0));
}

} // namespace psilab
