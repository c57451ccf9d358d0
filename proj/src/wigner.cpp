#include "atomlight/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace atomlight {

namespace {

// log n! for n up to the largest argument reachable with j <= ~75;
// well beyond anything the D-line schemes need.
constexpr int kMaxFact = 512;

inline double lf(int n) {
    static const auto table = [] {
        std::array<double, kMaxFact + 1> t{};
        for (int i = 1; i <= kMaxFact; ++i)
            t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    return table[n];
}

// log of the triangle coefficient Delta(a,b,c); arguments in 2j units,
// triangle rule already checked.
double log_triangle(int ta, int tb, int tc) {
    const int u = (ta + tb - tc) / 2;
    const int v = (ta - tb + tc) / 2;
    const int w = (-ta + tb + tc) / 2;
    return lf(u) + lf(v) + lf(w) - lf((ta + tb + tc) / 2 + 1);
}

bool triad_ok(int ta, int tb, int tc) {
    if ((ta + tb + tc) % 2 != 0)
        return false;
    return tc >= std::abs(ta - tb) && tc <= ta + tb;
}

} // namespace

bool triangle_ok(HalfInteger a, HalfInteger b, HalfInteger c) {
    return triad_ok(a.twice(), b.twice(), c.twice());
}

double wigner6j(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                HalfInteger j4, HalfInteger j5, HalfInteger j6) {
    const int t1 = j1.twice(), t2 = j2.twice(), t3 = j3.twice();
    const int t4 = j4.twice(), t5 = j5.twice(), t6 = j6.twice();

    if (!triad_ok(t1, t2, t3) || !triad_ok(t1, t5, t6) ||
        !triad_ok(t4, t2, t6) || !triad_ok(t4, t5, t3))
        return 0.0;

    // Racah: sum over k of (-1)^k (k+1)! / [prod (k - S_i)! prod (P_j - k)!]
    // with S_i the four triad sums and P_j the three pair sums.
    const int S1 = (t1 + t2 + t3) / 2;
    const int S2 = (t1 + t5 + t6) / 2;
    const int S3 = (t4 + t2 + t6) / 2;
    const int S4 = (t4 + t5 + t3) / 2;
    const int P1 = (t1 + t2 + t4 + t5) / 2;
    const int P2 = (t2 + t3 + t5 + t6) / 2;
    const int P3 = (t3 + t1 + t6 + t4) / 2;

    const int kmin = std::max({S1, S2, S3, S4});
    const int kmax = std::min({P1, P2, P3});

    const double half_log_delta =
        0.5 * (log_triangle(t1, t2, t3) + log_triangle(t1, t5, t6) +
               log_triangle(t4, t2, t6) + log_triangle(t4, t5, t3));

    double sum = 0.0;
    for (int k = kmin; k <= kmax; ++k) {
        const double log_term = lf(k + 1) - lf(k - S1) - lf(k - S2) -
                                lf(k - S3) - lf(k - S4) - lf(P1 - k) -
                                lf(P2 - k) - lf(P3 - k);
        const double term = std::exp(half_log_delta + log_term);
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

} // namespace atomlight
