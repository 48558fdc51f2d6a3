#ifndef FRACDISP_MLF_SYMBOLS_HPP
#define FRACDISP_MLF_SYMBOLS_HPP

#include <complex>
#include <memory>
#include <vector>

namespace fracdisp::mlf {

using cplx = std::complex<double>;

// Fast evaluator for the two propagator symbols as functions of the scalar
// phase variable tau = t |xi|^delta:
//   e1(tau) = E_{a,1}((-i)^a tau^a),  ea(tau) = E_{a,a}((-i)^a tau^a).
// Three regimes: power series for tau <= 1, piecewise-Chebyshev fits (in
// log tau) of the smooth heat integrals on [1, 1e7], and the large-argument
// expansion beyond.  Construction samples the direct quadrature route and
// self-validates against it; accuracy ~1e-9 relative to the symbol size.
// Mode loops over a grid hit this millions of times per solve, which is why
// the direct quadrature is not called per mode.
class SymbolTable {
public:
    explicit SymbolTable(double alpha, double tol = 1e-9);

    double alpha() const { return alpha_; }
    cplx e1(double tau) const;
    cplx ea(double tau) const;

    // Process-wide cache keyed by alpha.
    static std::shared_ptr<const SymbolTable> get(double alpha);

private:
    struct ChebPiece {
        double lo = 0.0, hi = 0.0; // in s = ln tau
        std::vector<cplx> coeff;
    };

    cplx eval_piece(const std::vector<ChebPiece>& pieces, double s) const;
    cplx series(const std::vector<double>& coeff, cplx z) const;

    double alpha_;
    double tau_series_ = 1.0;
    double tau_asym_ = 1e7;
    std::vector<double> series_e1_, series_ea_; // 1/Gamma(a n + b) tables
    std::vector<ChebPiece> h1_, ha_;            // scaled heat integrals G1, Ga
    std::vector<cplx> asym_e1_, asym_ea_;       // 1/Gamma(b - a j) phases
};

} // namespace fracdisp::mlf

#endif
