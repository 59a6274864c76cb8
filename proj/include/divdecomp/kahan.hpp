#pragma once

#include <cmath>
#include <complex>

namespace divdecomp {

// Neumaier-compensated accumulator. The running compensation keeps the
// absolute error of a length-m sum at O(eps * sum |terms|) independent of m,
// which is what the 1e-9 identity tolerances need at 1e6 terms.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    KahanSum& operator+=(double v) {
        add(v);
        return *this;
    }

    double value() const { return sum + comp; }
};

struct KahanComplexSum {
    KahanSum re, im;

    void add(std::complex<double> v) {
        re.add(v.real());
        im.add(v.imag());
    }

    KahanComplexSum& operator+=(std::complex<double> v) {
        add(v);
        return *this;
    }

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace divdecomp
