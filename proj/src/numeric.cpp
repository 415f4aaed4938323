#include "numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"

namespace nugg {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
// rule (zero Gauss weight on Kronrod-only nodes).
struct NodeWeight {
    double x, wg, wk;
};
constexpr NodeWeight kGK15[8] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0, 0.204432940075298892},
    {0.586087235467691130, 0.0, 0.169004726639267903},
    {0.864864423359769073, 0.0, 0.104790010322250184},
    {0.991455371120812639, 0.0, 0.022935322010529225},
};

struct GkResult {
    double value;
    double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double y0 = f(mid);
    double g = kGK15[0].wg * y0;
    double k = kGK15[0].wk * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i].x;
        const double y = f(mid + dx) + f(mid - dx);
        g += kGK15[i].wg * y;
        k += kGK15[i].wk * y;
    }
    g *= half;
    k *= half;
    // plain |G7 - K15| is a conservative bound; the usual damped estimate
    // understates the error on spikes parked at panel edges
    return {k, std::abs(k - g)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_intervals) {
    if (a == b) return 0.0;
    struct Interval {
        double a, b, value, error;
    };
    std::vector<Interval> heap;
    const auto by_error = [](const Interval& l, const Interval& r2) { return l.error < r2.error; };
    auto push = [&](double lo, double hi, double value, double error) {
        heap.push_back({lo, hi, value, error});
        std::push_heap(heap.begin(), heap.end(), by_error);
        return error;
    };
    auto eval_push = [&](double lo, double hi) {
        const GkResult r = gk15(f, lo, hi);
        return push(lo, hi, r.value, r.error);
    };
    double total_err = eval_push(a, b);
    while (total_err > abs_tol) {
        if (static_cast<int>(heap.size()) >= max_intervals)
            fail(Errc::numeric, "quadrature: interval budget exhausted");
        std::pop_heap(heap.begin(), heap.end(), by_error);
        Interval worst = heap.back();
        heap.pop_back();
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // interval at machine resolution; accept its estimate
            push(worst.a, worst.b, worst.value, 0.0);
            continue;
        }
        total_err += eval_push(worst.a, mid);
        total_err += eval_push(mid, worst.b);
    }
    double sum = 0.0;
    for (const auto& iv : heap) sum += iv.value;
    return sum;
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::span<const double> breakpoints, double abs_tol, int max_intervals) {
    if (a == b) return 0.0;
    std::vector<double> pts;
    pts.push_back(a);
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const double tol_each = abs_tol / static_cast<double>(pts.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        sum += integrate(f, pts[i], pts[i + 1], tol_each, max_intervals);
    return sum;
}

double integrate_ball_slice(const std::function<double(double)>& f, double c, double w, double lo,
                            double hi, std::span<const double> breakpoints, double abs_tol) {
    if (!(w > 0.0) || hi <= lo) return 0.0;
    auto to_t = [&](double r) { return std::acos(std::clamp((c - r) / w, -1.0, 1.0)); };
    std::vector<double> t_breaks;
    for (double b : breakpoints) t_breaks.push_back(to_t(b));
    return integrate_split(
        [&](double t) {
            const double s = std::sin(t);
            return f(c - w * std::cos(t)) * w * s;
        },
        to_t(lo), to_t(hi), t_breaks, abs_tol);
}

double bessel_i0(double x) {
    x = std::abs(x);
    if (x < 30.0) {
        // sum_k (x^2/4)^k / (k!)^2, all terms positive
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum;
    }
    // asymptotic: e^x/sqrt(2 pi x) * sum_k prod_{j<=k}(2j-1)^2 / (k! (8x)^k)
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 24; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * x * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * sum;
}

double chebyshev_u(int k, double x) {
    x = std::clamp(x, -1.0, 1.0);
    if (k < 0) return 0.0;
    double u_prev = 1.0;  // U_0
    if (k == 0) return u_prev;
    double u = 2.0 * x;  // U_1
    for (int i = 2; i <= k; ++i) {
        const double next = 2.0 * x * u - u_prev;
        u_prev = u;
        u = next;
    }
    return u;
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    double lo = *std::max_element(v.begin(), v.begin() + mid);
    return 0.5 * (lo + hi);
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) fail(Errc::invalid, "fit_slope: need >= 2 points");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) fail(Errc::invalid, "fit_slope: degenerate abscissae");
    return sxy / sxx;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) fail(Errc::invalid, "pearson: need >= 2 points");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

namespace {
std::vector<double> ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}
}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    return pearson(rx, ry);
}

}  // namespace nugg
