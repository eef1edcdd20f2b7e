#pragma once

#include <complex>

namespace psilab {

// Kahan-Babuska-Neumaier compensated accumulator.  All psi-type sums run
// through this: at x = 1e8 a progression sum accumulates ~1e7 terms and a
// naive sum would drift well past the 1e-9 relative targets.
class KahanSum {
  public:
    void add(double v) {
        double t = s_ + v;
        if (std::abs(s_) >= std::abs(v))
            c_ += (s_ - t) + v;
        else
            c_ += (v - t) + s_;
        s_ = t;
    }
    void merge(const KahanSum& o) {
        add(o.s_);
        c_ += o.c_;
    }
    double value() const { return s_ + c_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

class KahanComplex {
  public:
    void add(std::complex<double> v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    void merge(const KahanComplex& o) {
        re_.merge(o.re_);
        im_.merge(o.im_);
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

  private:
    KahanSum re_, im_;
};

} // namespace psilab
