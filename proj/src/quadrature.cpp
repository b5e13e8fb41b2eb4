#include "noisemod/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace noisemod {

namespace {

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double halflen = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = halflen * kNodes[i];
        fv[i] = f(center - dx);
        fv[7 + i] = f(center + dx);
    }

    double resk = kKronrodW[7] * fc;
    double resg = kGaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double pair = fv[i] + fv[7 + i];
        resk += kKronrodW[i] * pair;
        if (i % 2 == 1) resg += kGaussW[i / 2] * pair;
    }

    // QUADPACK-style error estimate scaled by the integrand's variation.
    const double mean = resk * 0.5;
    double resasc = kKronrodW[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodW[i] * (std::abs(fv[i] - mean) + std::abs(fv[7 + i] - mean));
    resasc *= halflen;

    double err = std::abs(resk - resg) * halflen;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

    return Panel{a, b, resk * halflen, err};
}

}  // namespace

QuadratureOutcome integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     std::span<const double> breakpoints, double rel_tolerance,
                                     int max_subdivisions) {
    if (!(b > a)) throw std::invalid_argument("integration interval must have b > a");
    if (!(rel_tolerance > 0.0)) throw std::invalid_argument("rel_tolerance must be positive");

    std::vector<double> edges{a};
    for (double p : breakpoints)
        if (p > a && p < b) edges.push_back(p);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const auto by_error = [](const Panel& lhs, const Panel& rhs) { return lhs.error < rhs.error; };
    std::vector<Panel> heap;
    heap.reserve(edges.size() + static_cast<std::size_t>(std::max(max_subdivisions, 0)) + 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        heap.push_back(evaluate_panel(f, edges[i], edges[i + 1]));
        std::push_heap(heap.begin(), heap.end(), by_error);
    }

    const auto totals = [&heap] {
        double value = 0.0, error = 0.0;
        for (const Panel& p : heap) {
            value += p.value;
            error += p.error;
        }
        return std::pair{value, error};
    };

    int subdivisions = 0;
    auto [value, error] = totals();
    while (error > rel_tolerance * std::max(std::abs(value), 1e-300)) {
        if (subdivisions >= max_subdivisions)
            throw QuadratureError("quadrature did not converge within " +
                                      std::to_string(max_subdivisions) +
                                      " subdivisions (error estimate " + std::to_string(error) + ")",
                                  value, error);
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Panel worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        heap.push_back(evaluate_panel(f, worst.a, mid));
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(evaluate_panel(f, mid, worst.b));
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++subdivisions;

        // Recompute from scratch: cheap relative to panel evaluation and free
        // of accumulation drift.
        std::tie(value, error) = totals();
    }
    return QuadratureOutcome{value, error, subdivisions};
}

}  // namespace noisemod
