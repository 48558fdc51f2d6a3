#ifndef FRACDISP_SPECTRAL_HPP
#define FRACDISP_SPECTRAL_HPP

#include <functional>
#include <vector>

#include "fracdisp/grid.hpp"
#include "fracdisp/params.hpp"

namespace fracdisp::spectral {

// Radial Fourier multiplier m(|k|), described as a product of primitive
// factors so specs can serve as cache keys and be checked for finiteness.
struct SymbolSpec {
    enum class Kind { Power, Heat, Schrodinger, Mlf1, Mlf2 };
    struct Atom {
        Kind kind;
        double theta = 0.0; // Power: |k|^theta; also the derivative order in Heat
        double t = 0.0;     // evolution time
        double delta = 0.0; // dispersion order (Heat, Schrodinger)
        double alpha = 0.0; // Mlf kinds
        double beta = 0.0;  // Mlf kinds
    };
    std::vector<Atom> atoms;

    static SymbolSpec power(double theta);
    static SymbolSpec heat(double t, double delta, double theta = 0.0);
    static SymbolSpec schrodinger(double t, double delta);
    static SymbolSpec mlf1(double t, double alpha, double beta);
    static SymbolSpec mlf2(double t, double alpha, double beta);
    SymbolSpec operator*(const SymbolSpec& other) const;

    cplx evaluate(double k_mag) const; // throws SymbolNonFinite on non-finite value
};

// F^{-1}( m(|k|) . F f ); input unmodified.
Field apply_multiplier(const Field& f, const SymbolSpec& m);

// Internal helper shared by the named operators; fn must be finite on the grid.
Field apply_radial(const Field& f, const std::function<cplx(double)>& fn);

// (-Lap)^{theta/2}: multiplier |k|^theta, zero mode mapped to zero for theta>0.
Field fractional_laplacian(const Field& f, double theta);

// e^{-it D^delta}; preserves the discrete L2 norm.
Field schrodinger_group(const Field& f, double t, double delta);

// D^theta e^{-t D^delta}, t > 0.
Field fractional_heat(const Field& f, double t, double delta, double theta = 0.0);

// Mittag-Leffler propagators E_{a,1}((-it)^a D^b) and E_{a,a}((-it)^a D^b).
// Symbols are memoized per (t, alpha, beta, grid signature).
Field mlf_propagator_1(const Field& f, double t, const FracParams& params);
Field mlf_propagator_2(const Field& f, double t, const FracParams& params);

// Frequency truncation keeping |k_axis| <= (2/3) k_max on every axis.
Field dealias_two_thirds(const Field& f);

// Convenience: round trip through frequency space applying fn.
Field to_physical(const Field& f);
Field to_frequency(const Field& f);

} // namespace fracdisp::spectral

#endif
