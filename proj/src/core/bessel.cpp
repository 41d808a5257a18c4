#include "vtwin/bessel.hpp"

#include "vtwin/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace vtwin
{

std::vector<double> bessel_j_orders(int nmax, double x)
{
    require(nmax >= 0, "bessel_j_orders: nmax must be non-negative");
    require(x >= 0.0 && std::isfinite(x), "bessel_j_orders: argument must be finite and non-negative");
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    if (x == 0.0)
    {
        out[0] = 1.0;
        return out;
    }
    if (x < 1e-8)
    {
        // Leading two series terms; the recurrence would overflow on 2k/x.
        const double h = x / 2.0;
        double lead = 1.0;
        for (int n = 0; n <= nmax; ++n)
        {
            out[static_cast<std::size_t>(n)] = lead * (1.0 - h * h / (n + 1));
            lead *= h / (n + 1);
        }
        return out;
    }

    // Start well above both the requested order and the turning point n ~ x.
    const double top = std::max(static_cast<double>(nmax), x);
    int start = static_cast<int>(top + 30.0 + std::sqrt(60.0 * top));
    start += start % 2; // even, so the normalization sum ends on J_0

    std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
    j[static_cast<std::size_t>(start)] = 1e-30;
    const double big = 1e250;
    for (int k = start; k >= 1; --k)
    {
        const auto uk = static_cast<std::size_t>(k);
        j[uk - 1] = (2.0 * k / x) * j[uk] - j[uk + 1];
        if (std::abs(j[uk - 1]) > big)
        {
            for (std::size_t m = uk - 1; m < j.size(); ++m)
            {
                j[m] /= big;
            }
        }
    }
    double norm = j[0];
    for (int k = 2; k <= start; k += 2)
    {
        norm += 2.0 * j[static_cast<std::size_t>(k)];
    }
    for (int n = 0; n <= nmax; ++n)
    {
        out[static_cast<std::size_t>(n)] = j[static_cast<std::size_t>(n)] / norm;
    }
    return out;
}

double bessel_j(int n, double x)
{
    const int an = std::abs(n);
    double sign = 1.0;
    if (n < 0 && an % 2 == 1)
    {
        sign = -sign; // J_{-n} = (-1)^n J_n
    }
    if (x < 0.0 && an % 2 == 1)
    {
        sign = -sign; // J_n(-x) = (-1)^n J_n(x)
    }
    return sign * bessel_j_orders(an, std::abs(x))[static_cast<std::size_t>(an)];
}

double bessel_j_prime(int n, double x)
{
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

} // namespace vtwin
