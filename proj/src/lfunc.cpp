#include "psilab/lfunc.hpp"

#include "psilab/errors.hpp"
#include "psilab/sieve.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

namespace psilab {

namespace {

constexpr int kWorkingDigits = 30;  // requested; Real40 carries the guards

// ---------------------------------------------------------------------------
// Shared-grid evaluator for all primitive non-principal characters mod q.
// The Hurwitz values zeta(1/2+it, a/q) are computed once per grid point and
// combined per character; log(n + a/q) and (n + a/q)^{-1/2} are cached.
class ModulusScanner {
  public:
    ModulusScanner(long long q, const LfuncOptions& opt)
        : q_(q), opt_(opt), group_(q) {
        for (const auto& chi : group_.characters())
            if (!chi.is_principal() && chi.is_primitive())
                chars_.push_back(chi);
        if (chars_.empty())
            throw domain_error("scan: no primitive non-principal characters mod " +
                               std::to_string(q));
        for (long long a = 1; a <= q_; ++a)
            if (gcd_ll(a, q_) == 1)
                as_.push_back(a);
        size_t na = as_.size();
        log_na_.resize(na);
        rsqrt_na_.resize(na);
        chivals_.resize(chars_.size());
        rot_.resize(chars_.size());
        for (size_t ci = 0; ci < chars_.size(); ++ci) {
            chivals_[ci].resize(na);
            for (size_t ai = 0; ai < na; ++ai)
                chivals_[ci][ai] = chi_value_hp<Real40>(chars_[ci], as_[ai]);
            Cplx<Real40> eps = root_number_hp<Real40>(chars_[ci]);
            Real40 theta = arg(eps);
            rot_[ci] = unit_phase(-theta / 2);  // eps^{-1/2}; sign convention free
        }
        log_q_pi_ = log(Real40(q_) / RealTraits<Real40>::pi());
        log_q_ = log(Real40(q_));
    }

    size_t nchars() const { return chars_.size(); }
    const DirichletCharacter& chi(size_t ci) const { return chars_[ci]; }

    int terms_for(double t) const {
        return std::max(24, static_cast<int>(2.0 * std::abs(t)) + 8);
    }

    void prepare(double t_abs_max) { ensure_tables(terms_for(t_abs_max) + 4); }

    // Rotated completed values at t for every character, scaled by
    // e^{pi |t| / 4}; records the worst |Im| of the unscaled Z.
    void eval_point(double t, std::vector<double>& out, double* im_seen) const {
        size_t na = as_.size();
        std::vector<Cplx<Real40>> zeta_a(na);
        int n_terms = terms_for(t);
        for (size_t ai = 0; ai < na; ++ai)
            zeta_a[ai] = zeta_half_line(t, ai, n_terms);

        Cplx<Real40> s(Real40(0.5), Real40(t));
        Cplx<Real40> q_pow = q_ == 1 ? Cplx<Real40>(Real40(1))
                                     : exp(Cplx<Real40>(-s.re * log_q_, -s.im * log_q_));
        // Gamma and conductor factors per parity
        Cplx<Real40> gam[2], cond[2];
        for (int par = 0; par < 2; ++par) {
            Cplx<Real40> half_arg((s.re + par) / 2, s.im / 2);
            gam[par] = gamma_fn(half_arg);
            cond[par] = exp(Cplx<Real40>(half_arg.re * log_q_pi_, half_arg.im * log_q_pi_));
        }
        using std::exp;
        Real40 rescale = exp(RealTraits<Real40>::pi() * Real40(std::abs(t)) / 4);
        double im_max = 0;
        out.resize(chars_.size());
        for (size_t ci = 0; ci < chars_.size(); ++ci) {
            Cplx<Real40> L{};
            for (size_t ai = 0; ai < na; ++ai)
                L += chivals_[ci][ai] * zeta_a[ai];
            L = q_pow * L;
            int par = chars_[ci].parity();
            Cplx<Real40> Z = rot_[ci] * cond[par] * gam[par] * L;
            im_max = std::max(im_max, std::abs(static_cast<double>(Z.im)));
            out[ci] = static_cast<double>(Z.re * rescale);
        }
        if (im_seen)
            *im_seen = im_max;
    }

    double eval_one(double t, size_t ci) const {
        std::vector<double> vals;
        eval_point(t, vals, nullptr);
        return vals[ci];
    }

  private:
    // zeta(1/2 + it, a/q) with cached logs and inverse square roots.
    Cplx<Real40> zeta_half_line(double t, size_t ai, int n_terms) const {
        using std::abs;
        using std::log;
        const auto& logs = log_na_[ai];
        const auto& rs = rsqrt_na_[ai];
        if (static_cast<size_t>(n_terms) > logs.size())
            throw domain_error("scan: cache not prepared to required height");
        Real40 tt(t);
        Cplx<Real40> sum{};
        for (int n = 0; n < n_terms; ++n) {
            Real40 sn, cn;
            sin_cos(tt * logs[static_cast<size_t>(n)], sn, cn);
            sum += Cplx<Real40>(rs[static_cast<size_t>(n)] * cn,
                                -(rs[static_cast<size_t>(n)] * sn));
        }
        Cplx<Real40> s(Real40(0.5), tt);
        Real40 base = Real40(n_terms) + Real40(as_[ai]) / Real40(q_);
        Real40 lb = log(base);
        Real40 sb, cb;
        sin_cos(tt * lb, sb, cb);
        using std::exp;
        using std::sqrt;
        Real40 mag = Real40(1) / sqrt(base);
        Cplx<Real40> base_pow(mag * cb, -(mag * sb));  // base^{-s}
        sum += base_pow * base / (s - Cplx<Real40>(Real40(1)));
        sum += base_pow * Real40(0.5);

        const auto& coef = detail::em_coeffs<Real40>();
        const int m_corr = 25;
        Cplx<Real40> rising = s;
        Real40 binv2 = Real40(1) / (base * base);
        Cplx<Real40> w = base_pow / base;
        for (int k = 1; k <= m_corr; ++k) {
            sum += w * rising * coef[static_cast<size_t>(k - 1)];
            rising = rising * Cplx<Real40>(s.re + Real40(2 * k - 1), s.im) *
                     Cplx<Real40>(s.re + Real40(2 * k), s.im);
            w = w * binv2;
        }
        return sum;
    }

    void ensure_tables(int need_n) {
        using std::log;
        using std::sqrt;
        for (size_t ai = 0; ai < as_.size(); ++ai) {
            auto& logs = log_na_[ai];
            auto& rs = rsqrt_na_[ai];
            Real40 alpha = Real40(as_[ai]) / Real40(q_);
            for (int n = static_cast<int>(logs.size()); n < need_n; ++n) {
                Real40 na = alpha + n;
                logs.push_back(log(na));
                rs.push_back(Real40(1) / sqrt(na));
            }
        }
    }

    long long q_;
    LfuncOptions opt_;
    CharacterGroup group_;
    std::vector<DirichletCharacter> chars_;
    std::vector<long long> as_;
    std::vector<std::vector<Real40>> log_na_, rsqrt_na_;
    std::vector<std::vector<Cplx<Real40>>> chivals_;
    std::vector<Cplx<Real40>> rot_;
    Real40 log_q_pi_, log_q_;
};

// Sign-change bracketing + TOMS 748 refinement on [t_lo, t_hi] for one
// character, at grid step h.  Optionally reuses precomputed grid values.
std::vector<double> locate_zeros_one(const ModulusScanner& sc, size_t ci, double t_lo,
                                     double t_hi, double h, double tol,
                                     const std::vector<double>* grid_vals) {
    int J = static_cast<int>(std::ceil((t_hi - t_lo) / h));
    std::vector<double> vals(static_cast<size_t>(J) + 1);
    if (grid_vals) {
        vals = *grid_vals;
    } else {
#pragma omp parallel for schedule(dynamic, 8)
        for (int j = 0; j <= J; ++j)
            vals[static_cast<size_t>(j)] = sc.eval_one(std::min(t_lo + j * h, t_hi), ci);
    }
    std::vector<std::pair<double, double>> brackets;
    for (int j = 1; j <= J; ++j) {
        double a = vals[static_cast<size_t>(j - 1)], b = vals[static_cast<size_t>(j)];
        if ((a < 0 && b > 0) || (a > 0 && b < 0))
            brackets.emplace_back(t_lo + (j - 1) * h, std::min(t_lo + j * h, t_hi));
    }
    std::vector<double> ords(brackets.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(brackets.size()); ++bi) {
        auto [a, b] = brackets[static_cast<size_t>(bi)];
        auto f = [&](double t) { return sc.eval_one(t, ci); };
        std::uintmax_t iters = 90;
        auto r = boost::math::tools::toms748_solve(
            f, a, b, [tol](double lo, double hi) { return hi - lo < tol; }, iters);
        ords[static_cast<size_t>(bi)] = 0.5 * (r.first + r.second);
    }
    return ords;
}

} // namespace

// ---------------------------------------------------------------------------
// Public wrappers

ComplexValue hurwitz_zeta_value(const ComplexValue& s, const Real40& alpha, int digits) {
    return hurwitz_zeta(s, alpha, digits);
}

ComplexValue l_value(const ComplexValue& s, const DirichletCharacter& chi, int digits) {
    return l_value_t(s, chi, digits);
}

ComplexValue completed_l(const ComplexValue& s, const DirichletCharacter& chi, int digits) {
    return completed_l_t(s, chi, digits);
}

// ---------------------------------------------------------------------------
// Argument-principle audit (double precision; only the phase matters).

namespace {

double theta_lambda(const DirichletCharacter& chi, std::complex<double> s) {
    int a = chi.parity();
    Cplx<double> sc(s.real(), s.imag());
    Cplx<double> half_arg((sc.re + a) / 2, sc.im / 2);
    Cplx<double> lg = log_gamma(half_arg);
    double lqpi = std::log(static_cast<double>(chi.modulus()) /
                           3.14159265358979323846264338328);
    Cplx<double> lv = l_value_t<double>(sc, chi, 13);
    double theta = lg.im + half_arg.im * lqpi + std::arg(std::complex<double>(lv.re, lv.im));
    return theta;
}

double principal_mod_2pi(double x) {
    constexpr double two_pi = 6.28318530717958647692528676656;
    x = std::fmod(x, two_pi);
    if (x > two_pi / 2)
        x -= two_pi;
    if (x < -two_pi / 2)
        x += two_pi;
    return x;
}

struct EdgeWalker {
    const DirichletCharacter& chi;
    double total = 0;
    int max_depth = 48;

    void walk(std::complex<double> s0, std::complex<double> s1, double th0, double th1,
              int depth) {
        double d = principal_mod_2pi(th1 - th0);
        if (std::abs(d) <= 1.5) {
            total += d;
            return;
        }
        if (depth >= max_depth)
            throw audit_error("zero_count_audit: phase jump > pi persists near s = (" +
                              std::to_string(s0.real()) + ", " + std::to_string(s0.imag()) +
                              ")..(" + std::to_string(s1.real()) + ", " +
                              std::to_string(s1.imag()) + ")");
        std::complex<double> mid = 0.5 * (s0 + s1);
        double thm = theta_lambda(chi, mid);
        walk(s0, mid, th0, thm, depth + 1);
        walk(mid, s1, thm, th1, depth + 1);
    }

    void edge(std::complex<double> s0, std::complex<double> s1, double step) {
        double len = std::abs(s1 - s0);
        int n = std::max(2, static_cast<int>(std::ceil(len / step)));
        std::complex<double> prev = s0;
        double th_prev = theta_lambda(chi, prev);
        for (int i = 1; i <= n; ++i) {
            std::complex<double> cur = s0 + (s1 - s0) * (static_cast<double>(i) / n);
            double th_cur = theta_lambda(chi, cur);
            walk(prev, cur, th_prev, th_cur, 0);
            prev = cur;
            th_prev = th_cur;
        }
    }
};

int audit_once(const DirichletCharacter& chi, double T) {
    EdgeWalker w{chi};
    const std::complex<double> c0(1.5, 0.0), c1(1.5, T), c2(-0.5, T), c3(-0.5, 0.0);
    w.edge(c0, c1, 0.5);
    w.edge(c1, c2, 0.25);
    w.edge(c2, c3, 0.5);
    w.edge(c3, c0, 0.25);
    constexpr double two_pi = 6.28318530717958647692528676656;
    double winding = w.total / two_pi;
    long long n = std::llround(winding);
    if (std::abs(winding - static_cast<double>(n)) > 0.2)
        throw audit_error("zero_count_audit: winding " + std::to_string(winding) +
                          " is not close to an integer");
    if (n < 0)
        throw audit_error("zero_count_audit: negative winding");
    return static_cast<int>(n);
}

} // namespace

int zero_count_audit(const DirichletCharacter& chi, double T) {
    if (!chi.is_primitive() || chi.is_principal())
        throw domain_error("zero_count_audit: need a primitive non-principal character");
    if (T <= 0)
        return 0;
    try {
        return audit_once(chi, T);
    } catch (const audit_error&) {
        // T may sit on (or too close to) an ordinate; perturb and retry.
        return audit_once(chi, T + 1e-6);
    }
}

// ---------------------------------------------------------------------------
// Zero scans

namespace {

ScanResult scan_zeros_impl(long long q, double T, const LfuncOptions& opt,
                           const DirichletCharacter* only) {
    if (T <= 0 || T > opt.height_cap)
        throw domain_error("scan_zeros: height must lie in (0, height_cap]");
    ModulusScanner sc(q, opt);
    sc.prepare(T);

    double h = opt.grid_step;
    int J = static_cast<int>(std::ceil(T / h));
    std::vector<std::vector<double>> grid(sc.nchars(),
                                          std::vector<double>(static_cast<size_t>(J) + 1));
    double im_worst = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : im_worst)
    for (int j = 0; j <= J; ++j) {
        std::vector<double> vals;
        double im = 0;
        sc.eval_point(std::min(j * h, T), vals, &im);
        im_worst = std::max(im_worst, im);
        for (size_t ci = 0; ci < sc.nchars(); ++ci)
            grid[ci][static_cast<size_t>(j)] = vals[ci];
    }

    ScanResult result;
    result.max_im_on_grid = im_worst;
    for (size_t ci = 0; ci < sc.nchars(); ++ci) {
        if (only && sc.chi(ci).label() != only->label())
            continue;
        int expected = zero_count_audit(sc.chi(ci), T);
        double hc = h;
        std::vector<double> ords =
            locate_zeros_one(sc, ci, 0.0, T, hc, opt.bisection_tol, &grid[ci]);
        int halvings = 0;
        while (static_cast<int>(ords.size()) != expected && halvings < opt.max_grid_halvings) {
            hc /= 2;
            ++halvings;
            ords = locate_zeros_one(sc, ci, 0.0, T, hc, opt.bisection_tol, nullptr);
        }
        if (static_cast<int>(ords.size()) != expected)
            throw audit_error("scan_zeros: " + sc.chi(ci).label() + " found " +
                              std::to_string(ords.size()) + " zeros on [0, " +
                              std::to_string(T) + "] but the argument principle counts " +
                              std::to_string(expected));
        ZeroSet zs;
        zs.label = sc.chi(ci).label();
        zs.q = q;
        zs.height = T;
        zs.ordinates = std::move(ords);
        zs.multiplicities.assign(zs.ordinates.size(), 1);
        zs.precision_digits = 11;
        result.sets.push_back(std::move(zs));
    }

    // near-coincident ordinates across characters of this modulus
    std::vector<std::pair<double, size_t>> all;
    for (size_t i = 0; i < result.sets.size(); ++i)
        for (double g : result.sets[i].ordinates)
            all.emplace_back(g, i);
    std::sort(all.begin(), all.end());
    for (size_t i = 1; i < all.size(); ++i) {
        if (all[i].first - all[i - 1].first < 1e-6) {
            result.near_coincidences.push_back({result.sets[all[i - 1].second].label,
                                                result.sets[all[i].second].label,
                                                all[i - 1].first, all[i].first});
        }
    }
    return result;
}

} // namespace

ScanResult scan_zeros_mod(long long q, double T, const LfuncOptions& opt) {
    return scan_zeros_impl(q, T, opt, nullptr);
}

ZeroSet scan_zeros(const DirichletCharacter& chi, double T, const LfuncOptions& opt) {
    if (!chi.is_primitive() || chi.is_principal())
        throw domain_error("scan_zeros: need a primitive non-principal character");
    ScanResult r = scan_zeros_impl(chi.modulus(), T, opt, &chi);
    for (auto& zs : r.sets)
        if (zs.label == chi.label())
            return std::move(zs);
    throw domain_error("scan_zeros: character not found in its own modulus scan");
}

std::vector<double> scan_ordinates_interval(const DirichletCharacter& chi, double t_lo,
                                            double t_hi, const LfuncOptions& opt) {
    if (!chi.is_primitive() || chi.is_principal())
        throw domain_error("scan interval: need a primitive non-principal character");
    if (t_hi <= t_lo)
        return {};
    ModulusScanner sc(chi.modulus(), opt);
    sc.prepare(std::max(std::abs(t_lo), std::abs(t_hi)));
    size_t ci = sc.nchars();
    for (size_t i = 0; i < sc.nchars(); ++i)
        if (sc.chi(i).label() == chi.label())
            ci = i;
    if (ci == sc.nchars())
        throw domain_error("scan interval: character not in modulus scanner");
    return locate_zeros_one(sc, ci, t_lo, t_hi, opt.grid_step, opt.bisection_tol, nullptr);
}

// ---------------------------------------------------------------------------
// Central values

CentralValueReport central_report(const DirichletCharacter& chi, double threshold) {
    if (chi.is_principal())
        throw domain_error("central_report: character must be non-principal");
    CentralValueReport rep;
    rep.label = chi.label();
    rep.vanishing_threshold = threshold;
    Cplx<Real40> L = l_value_t<Real40>(Cplx<Real40>(Real40(0.5)), chi, kWorkingDigits);
    rep.l_half = L.to_double();
    double mag = std::abs(rep.l_half);
    if (mag > threshold) {
        rep.z_chi = 0;
        return rep;
    }
    // escalate: doubled precision, far smaller threshold
    rep.escalated = true;
    Cplx<Real80> L2 = l_value_t<Real80>(Cplx<Real80>(Real80(0.5)), chi, 60);
    double mag2 = static_cast<double>(abs(L2));
    rep.l_half = L2.to_double();
    if (mag2 > 1e-10) {
        rep.z_chi = 0;
    } else {
        rep.possible_central_zero = true;
        rep.z_chi = 1;  // surfaced, never silent: possible_central_zero is set
    }
    return rep;
}

// ---------------------------------------------------------------------------

std::complex<double> imprimitive_psi_correction(const DirichletCharacter& chi, double x) {
    long long q = chi.modulus();
    long long f = chi.conductor();
    if (f == q)
        return {0.0, 0.0};
    DirichletCharacter chi_star = chi.primitive_part();
    std::complex<double> sum = 0.0;
    auto add_prime = [&](long long p) {
        if (f % p == 0)
            return;  // p divides the conductor: chi*(p^k) = 0
        double lp = std::log(static_cast<double>(p));
        for (long long pk = p; pk <= static_cast<long long>(x); pk *= p) {
            sum += chi_star.value(pk) * lp;
            if (pk > static_cast<long long>(x) / p)
                break;
        }
    };
    long long m = q;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            add_prime(p);
        }
    }
    if (m > 1)
        add_prime(m);
    return sum;
}

} // namespace psilab
