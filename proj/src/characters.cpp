#include "psilab/characters.hpp"

#include "psilab/errors.hpp"
#include "psilab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace psilab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

long long mulmod(long long a, long long b, long long m) {
    return static_cast<long long>(static_cast<__int128>(a) * b % m);
}

long long powmod(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> fs;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            fs.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        fs.push_back(n);
    return fs;
}

// Smallest g generating the (cyclic) group (Z/p^e)*, p odd prime.
long long smallest_primitive_root(long long pe, long long phi) {
    auto fs = prime_factors(phi);
    for (long long g = 2; g < pe; ++g) {
        if (gcd_ll(g, pe) != 1)
            continue;
        bool ok = true;
        for (long long f : fs) {
            if (powmod(g, phi / f, pe) == 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            return g;
    }
    throw domain_error("no primitive root found");
}

long long crt_pair(long long r1, long long m1, long long r2, long long m2) {
    // x = r1 (mod m1), x = r2 (mod m2), gcd(m1,m2)=1
    long long m1_inv = powmod(m1 % m2, euler_phi(m2) - 1, m2);
    long long diff = ((r2 - r1) % m2 + m2) % m2;
    return r1 + m1 * mulmod(diff, m1_inv, m2);
}

} // namespace

namespace detail {

// One cyclic component of (Z/q)*.  The 2-part with e >= 3 contributes two
// components over the same local modulus (generated by -1 and 5).
struct Component {
    long long p;                // underlying prime
    long long pk;               // local modulus p^e
    long long e;                // exponent in q
    long long gen;
    long long order;
    std::vector<int32_t> dlog;  // residue mod pk -> exponent, -1 off units
};

struct GroupData {
    long long q = 1;
    int two_exponent = 0;         // v_2(q)
    std::vector<Component> comps;
    std::vector<Generator> gens;
    long long lcm_orders = 1;
};

} // namespace detail

using detail::Component;
using detail::GroupData;

namespace {

std::shared_ptr<const GroupData> build_group_data(long long q) {
    if (q < 1)
        throw domain_error("character_group: modulus must be >= 1");
    if (q > 1000000)
        throw domain_error("character_group: modulus above 10^6 cap");
    auto gd = std::make_shared<GroupData>();
    gd->q = q;

    long long m = q;
    int e2 = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++e2;
    }
    gd->two_exponent = e2;
    std::vector<std::pair<long long, long long>> odd;  // (p, e)
    for (long long p = 3; p * p <= m; p += 2) {
        if (m % p == 0) {
            long long e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            odd.emplace_back(p, e);
        }
    }
    if (m > 1)
        odd.emplace_back(m, 1);

    auto add = [&](Component c) {
        gd->gens.push_back({c.gen, c.order});
        gd->lcm_orders = std::lcm(gd->lcm_orders, c.order);
        gd->comps.push_back(std::move(c));
    };

    if (e2 == 2) {
        std::vector<int32_t> dl(4, -1);
        dl[1] = 0;
        dl[3] = 1;
        add({2, 4, 2, 3, 2, std::move(dl)});
    } else if (e2 >= 3) {
        long long pk = 1ll << e2;
        long long half = pk >> 2;  // order of 5 mod 2^e
        std::vector<int32_t> dl_sign(static_cast<size_t>(pk), -1);
        std::vector<int32_t> dl_five(static_cast<size_t>(pk), -1);
        long long v = 1;
        for (long long t = 0; t < half; ++t) {
            dl_sign[static_cast<size_t>(v)] = 0;
            dl_five[static_cast<size_t>(v)] = static_cast<int32_t>(t);
            long long w = pk - v;  // -5^t mod 2^e
            dl_sign[static_cast<size_t>(w)] = 1;
            dl_five[static_cast<size_t>(w)] = static_cast<int32_t>(t);
            v = mulmod(v, 5, pk);
        }
        add({2, pk, e2, pk - 1, 2, std::move(dl_sign)});
        add({2, pk, e2, 5, half, std::move(dl_five)});
    }
    for (auto [p, e] : odd) {
        long long pk = 1;
        for (long long i = 0; i < e; ++i)
            pk *= p;
        long long phi = pk / p * (p - 1);
        long long g = smallest_primitive_root(pk, phi);
        std::vector<int32_t> dl(static_cast<size_t>(pk), -1);
        long long v = 1;
        for (long long t = 0; t < phi; ++t) {
            dl[static_cast<size_t>(v)] = static_cast<int32_t>(t);
            v = mulmod(v, g, pk);
        }
        add({p, pk, e, g, phi, std::move(dl)});
    }
    return gd;
}

// Conductor from the exponent tuple: product of local conductors.
long long conductor_of(const GroupData& gd, const std::vector<long long>& exps) {
    long long f = 1;
    size_t i = 0;
    if (gd.two_exponent == 2) {
        if (exps[0] % 2 != 0)
            f *= 4;
        i = 1;
    } else if (gd.two_exponent >= 3) {
        long long s = exps[0] % 2;
        long long half = 1ll << (gd.two_exponent - 2);
        long long k = exps[1] % half;
        if (k == 0) {
            if (s != 0)
                f *= 4;
        } else {
            long long o2 = half / gcd_ll(half, k);  // order on <5>, a power of 2
            f *= 4 * o2;
        }
        i = 2;
    }
    for (; i < gd.comps.size(); ++i) {
        const Component& c = gd.comps[i];
        long long k = exps[i] % c.order;
        if (k == 0)
            continue;
        long long char_order = c.order / gcd_ll(c.order, k);
        long long pj = 1;
        long long phi_pj = 1;
        for (long long j = 1; j <= c.e; ++j) {
            pj *= c.p;
            phi_pj = (j == 1) ? c.p - 1 : phi_pj * c.p;
            if (phi_pj % char_order == 0)
                break;
        }
        f *= pj;
    }
    return f;
}

} // namespace

// ---------------------------------------------------------------------------
// UnityValue

std::complex<double> UnityValue::to_complex() const {
    if (zero)
        return {0.0, 0.0};
    double theta = kTwoPi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(theta), std::sin(theta)};
}

// ---------------------------------------------------------------------------
// DirichletCharacter

DirichletCharacter::DirichletCharacter(std::shared_ptr<const GroupData> data,
                                       std::vector<long long> exps)
    : data_(std::move(data)), exps_(std::move(exps)),
      cache_(std::make_shared<ValueCache>()) {
    const GroupData& gd = *data_;
    principal_ = true;
    real_ = true;
    for (size_t i = 0; i < exps_.size(); ++i) {
        exps_[i] = ((exps_[i] % gd.comps[i].order) + gd.comps[i].order) % gd.comps[i].order;
        if (exps_[i] != 0)
            principal_ = false;
        if ((2 * exps_[i]) % gd.comps[i].order != 0)
            real_ = false;
    }
    conductor_ = conductor_of(gd, exps_);
    UnityValue at_minus_one = unity_value(gd.q - 1);  // q=1: chi(0)=1
    parity_ = (!at_minus_one.zero && at_minus_one.den == 2) ? 1 : 0;
}

long long DirichletCharacter::modulus() const { return data_->q; }

const std::vector<Generator>& DirichletCharacter::generators() const { return data_->gens; }

bool DirichletCharacter::is_primitive() const { return conductor_ == data_->q; }

std::string DirichletCharacter::label() const {
    std::ostringstream os;
    os << data_->q << ":";
    for (size_t i = 0; i < exps_.size(); ++i)
        os << (i ? "," : "") << exps_[i];
    return os.str();
}

UnityValue DirichletCharacter::unity_value(long long n) const {
    const GroupData& gd = *data_;
    long long q = gd.q;
    if (q == 1)
        return {false, 0, 1};
    long long r = ((n % q) + q) % q;
    if (gcd_ll(r == 0 ? q : r, q) != 1)
        return {};
    long long L = gd.lcm_orders;
    long long num = 0;
    for (size_t i = 0; i < gd.comps.size(); ++i) {
        const Component& c = gd.comps[i];
        long long t = c.dlog[static_cast<size_t>(r % c.pk)];
        num = (num + mulmod(exps_[i] % c.order * (L / c.order) % L, t % c.order, L)) % L;
    }
    long long g = gcd_ll(num == 0 ? L : num, L);
    return {false, num / g, L / g};
}

std::complex<double> DirichletCharacter::value(long long n) const {
    return unity_value(n).to_complex();
}

const std::vector<std::complex<double>>& DirichletCharacter::value_table() const {
    std::call_once(cache_->flag, [&] {
        long long q = data_->q;
        cache_->table.resize(static_cast<size_t>(q));
        for (long long r = 0; r < q; ++r)
            cache_->table[static_cast<size_t>(r)] = value(r);
    });
    return cache_->table;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<long long> e(exps_.size());
    for (size_t i = 0; i < exps_.size(); ++i)
        e[i] = (data_->comps[i].order - exps_[i]) % data_->comps[i].order;
    return DirichletCharacter(data_, std::move(e));
}

DirichletCharacter DirichletCharacter::product(const DirichletCharacter& other) const {
    if (other.data_->q != data_->q)
        throw domain_error("character product: moduli differ");
    std::vector<long long> e(exps_.size());
    for (size_t i = 0; i < exps_.size(); ++i)
        e[i] = (exps_[i] + other.exps_[i]) % data_->comps[i].order;
    return DirichletCharacter(data_, std::move(e));
}

DirichletCharacter DirichletCharacter::primitive_part() const {
    long long f = conductor_;
    if (f == data_->q)
        return *this;
    auto fd = build_group_data(f);

    // Exponent of chi* on each generator of the group mod f: evaluate chi at
    // an integer that is the generator on that component mod f, 1 on the other
    // components of f, and 1 mod the primes of q outside f.
    long long extra = 1;  // product of p^e over p | q, p not dividing f
    {
        long long m = data_->q;
        for (long long p : prime_factors(data_->q)) {
            if (f % p != 0) {
                long long pe = 1;
                long long t = m;
                while (t % p == 0) {
                    t /= p;
                    pe *= p;
                }
                extra *= pe;
            }
        }
    }

    std::vector<long long> exps_star;
    for (size_t j = 0; j < fd->comps.size(); ++j) {
        // CRT across the components of f
        long long r = 0, mmod = 1;
        for (size_t i = 0; i < fd->comps.size(); ++i) {
            // the two 2-part components share one modulus; combine them once
            if (i > 0 && fd->comps[i].pk == fd->comps[i - 1].pk)
                continue;
            long long want;
            if (fd->comps[i].pk == fd->comps[j].pk) {
                // generator of component j inside its local modulus
                want = fd->comps[j].gen % fd->comps[j].pk;
            } else {
                want = 1;
            }
            r = (mmod == 1) ? want : crt_pair(r, mmod, want, fd->comps[i].pk);
            mmod *= fd->comps[i].pk;
        }
        long long n = (mmod == 1) ? 1 : r;
        if (extra > 1)
            n = crt_pair(n % mmod, mmod, 1, extra);
        if (n == 0)
            n = 1;
        UnityValue uv = unity_value(n);
        if (uv.zero)
            throw domain_error("primitive_part: evaluation hit a non-unit");
        long long d = fd->comps[j].order;
        if ((d % uv.den) != 0)
            throw domain_error("primitive_part: inconsistent value order");
        exps_star.push_back(uv.num * (d / uv.den) % d);
    }
    return DirichletCharacter(fd, std::move(exps_star));
}

// ---------------------------------------------------------------------------
// CharacterGroup

CharacterGroup::CharacterGroup(long long q) : data_(build_group_data(q)) {
    size_t ncomp = data_->comps.size();
    long long count = 1;
    for (const auto& c : data_->comps)
        count *= c.order;
    chars_.reserve(static_cast<size_t>(count));
    std::vector<long long> exps(ncomp, 0);
    for (long long idx = 0; idx < count; ++idx) {
        chars_.push_back(DirichletCharacter(data_, exps));
        for (size_t i = ncomp; i-- > 0;) {
            if (++exps[i] < data_->comps[i].order)
                break;
            exps[i] = 0;
        }
    }
}

long long CharacterGroup::modulus() const { return data_->q; }

const std::vector<Generator>& CharacterGroup::generators() const { return data_->gens; }

DirichletCharacter CharacterGroup::from_exponents(const std::vector<long long>& exps) const {
    if (exps.size() != data_->comps.size())
        throw domain_error("from_exponents: wrong tuple length");
    return DirichletCharacter(data_, exps);
}

DirichletCharacter character_from_label(const std::string& label) {
    auto colon = label.find(':');
    if (colon == std::string::npos)
        throw domain_error("character label must look like q:k1,k2,...");
    long long q = std::stoll(label.substr(0, colon));
    std::vector<long long> exps;
    std::string rest = label.substr(colon + 1);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            exps.push_back(std::stoll(tok));
    CharacterGroup group(q);
    return group.from_exponents(exps);
}

// ---------------------------------------------------------------------------
// Gauss sums

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
    long long q = chi.modulus();
    std::complex<double> s = 0.0;
    for (long long a = 1; a <= q; ++a) {
        UnityValue uv = chi.unity_value(a);
        if (uv.zero)
            continue;
        // chi(a) e^{2 pi i a/q}: combine the two rational angles exactly
        long long den = uv.den * q;
        long long num = (uv.num * q + a % q * uv.den) % den;
        double theta = kTwoPi * static_cast<double>(num) / static_cast<double>(den);
        s += std::complex<double>(std::cos(theta), std::sin(theta));
    }
    return s;
}

std::complex<double> root_number(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw domain_error("root_number: character must be primitive");
    std::complex<double> tau = gauss_sum(chi);
    std::complex<double> denom = std::sqrt(static_cast<double>(chi.modulus()));
    if (chi.parity() == 1)
        denom *= std::complex<double>(0.0, 1.0);
    return tau / denom;
}

} // namespace psilab
