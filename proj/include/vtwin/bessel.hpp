#pragma once

#include <vector>

namespace vtwin
{

/// J_0(x) .. J_nmax(x) for x >= 0 by Miller's downward recurrence,
/// normalized with J_0 + 2 * sum J_2k = 1.
std::vector<double> bessel_j_orders(int nmax, double x);

/// Integer-order Bessel function of the first kind, any sign of n and x.
double bessel_j(int n, double x);

/// J'_n(x) = (J_{n-1}(x) - J_{n+1}(x)) / 2.
double bessel_j_prime(int n, double x);

} // namespace vtwin
