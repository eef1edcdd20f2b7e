#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace psilab {

// Exact character value: zero, or the root of unity e^{2 pi i num/den}
// with 0 <= num < den.  Kept in rational-angle form so orthogonality and
// Gauss-sum combinations can be done without rounding.
struct UnityValue {
    bool zero = true;
    long long num = 0;
    long long den = 1;
    std::complex<double> to_complex() const;
};

struct Generator {
    long long g;      // generator of one cyclic component of (Z/q)*
    long long order;  // its order d
};

namespace detail {
struct GroupData;
}

class DirichletCharacter {
  public:
    long long modulus() const;
    const std::vector<long long>& exponents() const { return exps_; }
    const std::vector<Generator>& generators() const;

    int parity() const { return parity_; }            // a_chi = (1 - chi(-1))/2
    long long conductor() const { return conductor_; }
    bool is_principal() const { return principal_; }
    bool is_primitive() const;
    bool is_real() const { return real_; }
    std::string label() const;                        // "q:k1,k2,..."

    UnityValue unity_value(long long n) const;
    std::complex<double> value(long long n) const;
    // chi(r) for r = 0..q-1, built once and shared across copies.
    const std::vector<std::complex<double>>& value_table() const;

    DirichletCharacter conjugate() const;
    DirichletCharacter product(const DirichletCharacter& other) const;
    // The primitive character mod conductor() inducing this one.
    DirichletCharacter primitive_part() const;

  private:
    friend class CharacterGroup;
    DirichletCharacter(std::shared_ptr<const detail::GroupData> data,
                       std::vector<long long> exps);

    std::shared_ptr<const detail::GroupData> data_;
    std::vector<long long> exps_;
    int parity_ = 0;
    long long conductor_ = 1;
    bool principal_ = true;
    bool real_ = true;

    struct ValueCache {
        std::once_flag flag;
        std::vector<std::complex<double>> table;
    };
    std::shared_ptr<ValueCache> cache_;
};

// The full group of the phi(q) characters mod q.  Generator convention:
// the 2-part first (-1 then 5 for 2^e with e >= 3; -1 for e = 2; none for
// e <= 1), then odd prime powers in ascending order, each generated by its
// smallest primitive root.
class CharacterGroup {
  public:
    explicit CharacterGroup(long long q);

    long long modulus() const;
    const std::vector<Generator>& generators() const;
    const std::vector<DirichletCharacter>& characters() const { return chars_; }
    const DirichletCharacter& principal() const { return chars_.front(); }

    DirichletCharacter from_exponents(const std::vector<long long>& exps) const;

  private:
    std::shared_ptr<const detail::GroupData> data_;
    std::vector<DirichletCharacter> chars_;
};

// Parses the "q:k1,k2,..." label format used by the zero cache and CLI.
DirichletCharacter character_from_label(const std::string& label);

// tau(chi) = sum_a chi(a) e^{2 pi i a / q}, direct q-term sum.
std::complex<double> gauss_sum(const DirichletCharacter& chi);

// epsilon(chi) = tau(chi) / (i^{a_chi} sqrt(q)); requires chi primitive.
std::complex<double> root_number(const DirichletCharacter& chi);

} // namespace psilab
