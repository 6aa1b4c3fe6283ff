#ifndef GKKM_SPECFUN_HPP
#define GKKM_SPECFUN_HPP

namespace gkkm {

/// Rising factorial (a)_k.
double pochhammer(double a, int k);

/// Terminating confluent hypergeometric series F(-n, b, x), b > 0.
/// Ascending compensated summation; exact polynomial of degree n.
double kummer_terminating(int n, double b, double x);

/// Jacobi polynomial P_n^{(a,b)}(x), a, b > -1, by three-term recurrence.
double jacobi(int n, double a, double b, double x);

} // namespace gkkm

#endif
