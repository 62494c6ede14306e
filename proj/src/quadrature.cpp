#include "distlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace distlab {
namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double kronrod = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1)
            gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    kronrod *= h;
    gauss *= h;
    // QUADPACK-style rescaled error estimate; falls back to the raw
    // difference when the integrand is tiny.
    double resasc = 0.0;
    const double mean = kronrod / (b - a);
    for (int i = 0; i < 15; ++i) {
        int j = (i < 8) ? i : 14 - i;
        resasc += kWgk[j] * std::abs(fv[i] - mean);
    }
    resasc *= h;
    double err = std::abs(kronrod - gauss);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {a, b, kronrod, err};
}

struct WorstFirst {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.error != q.error) return p.error < q.error;
        return p.a > q.a;  // deterministic tie-break
    }
};

QuadResult run_adaptive(const RealFn& f, std::vector<double> edges, double tol,
                        long max_intervals) {
    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> heap;
    long evals = 0;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = evaluate_panel(f, edges[i], edges[i + 1]);
        evals += 15;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    long intervals = static_cast<long>(heap.size());
    while (total_err > tol && intervals < max_intervals) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push(worst);  // at machine resolution; accept its estimate
            break;
        }
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Deterministic final summation: re-accumulate panels ordered by left edge.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& p, const Panel& q) { return p.a < q.a; });
    double value = 0.0, err = 0.0;
    for (const Panel& p : panels) {
        value += p.value;
        err += p.error;
    }
    if (!std::isfinite(value))
        throw NoConvergence("quadrature: non-finite integrand", value, err);
    if (err > tol && intervals >= max_intervals)
        throw NoConvergence("quadrature: subdivision budget exhausted", value, err);
    return {value, err, evals};
}

} // namespace

QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts,
                     std::span<const double> splits) {
    if (!(a < b))
        throw std::invalid_argument("integrate: requires a < b");
    std::vector<double> edges;
    edges.push_back(a);
    for (double s : splits)
        if (s > a && s < b) edges.push_back(s);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return run_adaptive(f, std::move(edges), opts.tol, opts.max_intervals);
}

QuadResult integrate(const RealFn& f, double a, double b, double tol,
                     std::span<const double> splits) {
    QuadOptions opts;
    opts.tol = tol;
    return integrate(f, a, b, opts, splits);
}

QuadResult integrate_semi_infinite(const RealFn& f, double a, double tol,
                                   DecayHint hint, long max_intervals) {
    RealFn g;
    if (hint == DecayHint::exponential) {
        g = [&f, a](double u) {
            const double w = 1.0 - u;
            return f(a - std::log(w)) / w;
        };
    } else {
        g = [&f, a](double u) {
            const double w = 1.0 - u;
            return f(a + u / w) / (w * w);
        };
    }
    QuadOptions opts;
    opts.tol = tol;
    opts.max_intervals = max_intervals;
    // Seed panels toward u=1 where the transform compresses the tail.
    const double seed[] = {0.5, 0.9, 0.99, 0.999, 0.9999};
    return integrate(g, 0.0, 1.0, opts, seed);
}

std::vector<double> geometric_splits(double scale, double lo, double hi, double factor) {
    std::vector<double> pts;
    if (lo < 0.0 && hi > 0.0) pts.push_back(0.0);
    const double span = std::max(std::abs(lo), std::abs(hi));
    for (double s = scale; s < span; s *= factor) {
        if (s > lo && s < hi) pts.push_back(s);
        if (-s > lo && -s < hi) pts.push_back(-s);
        if (s > 1e300) break;
    }
    return pts;
}

} // namespace distlab
