#include "fracdisp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "fracdisp/errors.hpp"

namespace fracdisp::quad {

namespace {

GaussRule build_gauss(int n) {
    // Newton iteration on Legendre P_n, symmetric nodes.
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
    return it->second;
}

void QuadratureSpec::validate(double requested_tol) const {
    if (panel_edges.size() < 2) throw QuadratureError("quadrature spec has no panels");
    for (std::size_t i = 0; i + 1 < panel_edges.size(); ++i)
        if (!(panel_edges[i] < panel_edges[i + 1]))
            throw QuadratureError("panel edges not strictly increasing");
    if (panel_edges.front() < 0.0) throw QuadratureError("negative panel edge");
    if (panel_edges.back() != tail_cutoff) throw QuadratureError("last edge must equal tail cutoff");
    if (nodes_per_panel < 2) throw QuadratureError("too few nodes per panel");
    if (tail_bound > requested_tol)
        throw QuadratureError("certified tail bound exceeds requested tolerance");
}

QuadratureSpec QuadratureSpec::geometric(double scale, double hi, int nodes, int refine_down,
                                         double growth) {
    QuadratureSpec spec;
    spec.nodes_per_panel = nodes;
    spec.panel_edges.push_back(0.0);
    double lo = scale;
    for (int i = 0; i < refine_down; ++i) lo /= growth;
    for (double e = lo; e < hi; e *= growth) spec.panel_edges.push_back(e);
    spec.panel_edges.push_back(hi);
    spec.tail_cutoff = hi;
    return spec;
}

namespace {

// Kronrod 15-point extension of Gauss 7 (positive half; symmetric).
constexpr double kronrod_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kronrod_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double gauss7_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEval {
    cplx k15;
    double err;
};

PanelEval gk15(const std::function<cplx(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx fk[15];
    for (int i = 0; i < 7; ++i) {
        fk[i] = f(mid - half * kronrod_x[i]);
        fk[14 - i] = f(mid + half * kronrod_x[i]);
    }
    fk[7] = f(mid);
    cplx k15{}, g7{};
    for (int i = 0; i < 7; ++i) k15 += kronrod_w[i] * (fk[i] + fk[14 - i]);
    k15 += kronrod_w[7] * fk[7];
    // Gauss-7 nodes are the odd-index Kronrod nodes.
    for (int i = 0; i < 3; ++i) g7 += gauss7_w[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
    g7 += gauss7_w[3] * fk[7];
    k15 *= half;
    g7 *= half;
    return {k15, std::abs(k15 - g7)};
}

void adapt(const std::function<cplx(double)>& f, double a, double b, double tol, int depth,
           int max_depth, cplx& acc, double& err_acc, int& evals) {
    const PanelEval pe = gk15(f, a, b);
    evals += 15;
    if (pe.err <= tol || depth >= max_depth) {
        acc += pe.k15;
        err_acc += pe.err;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth, acc, err_acc, evals);
    adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth, acc, err_acc, evals);
}

} // namespace

AdaptiveResult adaptive_gk(const std::function<cplx(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, int max_depth) {
    const PanelEval first = gk15(f, a, b);
    double tol = std::max(abs_tol, rel_tol * std::abs(first.k15));
    cplx acc{};
    double err = 0.0;
    int evals = 15;
    if (first.err <= tol) return {first.k15, first.err, evals};
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, 1, max_depth, acc, err, evals);
    adapt(f, mid, b, 0.5 * tol, 1, max_depth, acc, err, evals);
    return {acc, err, evals};
}

} // namespace fracdisp::quad
