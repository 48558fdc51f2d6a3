#ifndef FRACDISP_QUADRATURE_HPP
#define FRACDISP_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace fracdisp::quad {

using cplx = std::complex<double>;

// Gauss-Legendre rule on [-1, 1]; cached per node count.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
auto gauss_panel(const F& f, double a, double b, int n) -> decltype(f(0.0)) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

enum class Substitution { PowerLaw, None }; // PowerLaw: u = r^alpha applied upstream

// Panelized rule for a semi-infinite integral that has already been
// substituted onto [0, R].  tail_bound certifies the discarded mass beyond R.
struct QuadratureSpec {
    Substitution substitution = Substitution::None;
    std::vector<double> panel_edges; // strictly increasing, last edge == tail_cutoff
    int nodes_per_panel = 32;
    double tail_cutoff = 0.0;
    double tail_bound = 0.0;

    void validate(double requested_tol) const; // throws QuadratureError

    // Geometric panels from `lo` through `hi`, refined toward zero below
    // `scale` with `refine_down` extra sub-octaves.
    static QuadratureSpec geometric(double scale, double hi, int nodes, int refine_down = 10,
                                    double growth = 2.0);
};

template <class F>
cplx integrate(const QuadratureSpec& spec, const F& f) {
    cplx acc{};
    for (std::size_t p = 0; p + 1 < spec.panel_edges.size(); ++p)
        acc += gauss_panel(f, spec.panel_edges[p], spec.panel_edges[p + 1], spec.nodes_per_panel);
    return acc;
}

// Adaptive Gauss-Kronrod (G7,K15) for complex integrands on [a, b].
struct AdaptiveResult {
    cplx value;
    double error_estimate;
    int evaluations;
};
AdaptiveResult adaptive_gk(const std::function<cplx(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, int max_depth = 48);

} // namespace fracdisp::quad

#endif
