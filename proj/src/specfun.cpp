#include "gkkm/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace gkkm {

double pochhammer(double a, int k) {
    if (k < 0) throw std::invalid_argument("pochhammer: k < 0");
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + i;
    return p;
}

double kummer_terminating(int n, double b, double x) {
    if (n < 0) throw std::invalid_argument("kummer_terminating: n < 0");
    if (!(b > 0)) throw std::invalid_argument("kummer_terminating: b <= 0");
    double sum = 1.0, comp = 0.0, term = 1.0;
    for (int k = 0; k < n; ++k) {
        term *= (static_cast<double>(k) - n) * x / ((b + k) * (k + 1));
        const double t = sum + term;             // Kahan step
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

double jacobi(int n, double a, double b, double x) {
    if (n < 0) throw std::invalid_argument("jacobi: n < 0");
    if (!(a > -1.0) || !(b > -1.0))
        throw std::invalid_argument("jacobi: parameters must exceed -1");
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = 0.5 * (a - b + (a + b + 2.0) * x);
    for (int k = 1; k < n; ++k) {
        const double k2ab = 2.0 * k + a + b;
        const double c1 = 2.0 * (k + 1) * (k + a + b + 1.0) * k2ab;
        const double c2 = (k2ab + 1.0) * (a * a - b * b);
        const double c3 = k2ab * (k2ab + 1.0) * (k2ab + 2.0);
        const double c4 = 2.0 * (k + a) * (k + b) * (k2ab + 2.0);
        const double next = ((c2 + c3 * x) * p - c4 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    return p;
}

} // namespace gkkm
