#pragma once

namespace solwave {

/// Neumaier compensated summation; keeps accumulated round-off near one ulp
/// of the result regardless of the number of terms.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if ((sum >= x) == (sum >= -x))  // |sum| >= |x|
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

}  // namespace solwave
