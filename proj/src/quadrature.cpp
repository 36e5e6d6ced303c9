#include "smoothtrim/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "smoothtrim/error.hpp"

namespace smoothtrim {
namespace {

constexpr int kPoints = 15;

struct GaussRule {
    std::array<double, kPoints> x{};
    std::array<double, kPoints> w{};
};

// Nodes and weights of the 15-point Gauss-Legendre rule on [-1, 1], found by
// Newton iteration on the Legendre polynomial (converges to machine precision
// in a handful of steps, so there are no hand-typed constants to mistype).
GaussRule make_rule() {
    GaussRule rule;
    constexpr double pi = 3.141592653589793238462643383279502884;
    const int n = kPoints;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

const GaussRule& rule() {
    static const GaussRule r = make_rule();
    return r;
}

double gauss15(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& r = rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kPoints; ++i) sum += r.w[i] * f(mid + half * r.x[i]);
    return sum * half;
}

struct AdaptiveState {
    double worst = 0.0;
    bool converged = true;
};

double refine(const std::function<double(double)>& f, double a, double b, double whole,
              double tol, int depth, int max_depth, AdaptiveState& st) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) return whole;  // interval below double resolution
    const double left = gauss15(f, a, mid);
    const double right = gauss15(f, mid, b);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol) return left + right;
    if (depth >= max_depth) {
        st.converged = false;
        st.worst = std::max(st.worst, diff);
        return left + right;
    }
    return refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, st) +
           refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, st);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> pts;
    pts.reserve(breakpoints.size() + 2);
    pts.push_back(a);
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    AdaptiveState st;
    const double width = b - a;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double lo = pts[k];
        const double hi = pts[k + 1];
        if (hi <= lo) continue;
        // proportional tolerance share with a floor so thousands of step
        // segments do not demand impossible per-segment accuracy
        const double tol = opt.abs_tol * std::max((hi - lo) / width, 1e-3);
        total += refine(f, lo, hi, gauss15(f, lo, hi), tol, 0, opt.max_depth, st);
    }
    if (!st.converged) {
        std::ostringstream msg;
        msg << "quadrature did not converge: worst segment error " << st.worst
            << " exceeds tolerance " << opt.abs_tol;
        throw NumericError(msg.str());
    }
    return sign * total;
}

}  // namespace smoothtrim
