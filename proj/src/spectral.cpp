#include "fracdisp/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "fracdisp/errors.hpp"
#include "fracdisp/mlf_symbols.hpp"
#include "fracdisp/special.hpp"
#include "fracdisp/threading.hpp"

namespace fracdisp::spectral {

SymbolSpec SymbolSpec::power(double theta) {
    if (theta < 0.0) throw DomainError("negative multiplier powers are not supported");
    SymbolSpec s;
    s.atoms.push_back({Kind::Power, theta, 0, 0, 0, 0});
    return s;
}

SymbolSpec SymbolSpec::heat(double t, double delta, double theta) {
    if (!(t > 0.0)) throw DomainError("heat flow requires t > 0");
    SymbolSpec s;
    s.atoms.push_back({Kind::Heat, theta, t, delta, 0, 0});
    return s;
}

SymbolSpec SymbolSpec::schrodinger(double t, double delta) {
    SymbolSpec s;
    s.atoms.push_back({Kind::Schrodinger, 0, t, delta, 0, 0});
    return s;
}

SymbolSpec SymbolSpec::mlf1(double t, double alpha, double beta) {
    SymbolSpec s;
    s.atoms.push_back({Kind::Mlf1, 0, t, beta / alpha, alpha, beta});
    return s;
}

SymbolSpec SymbolSpec::mlf2(double t, double alpha, double beta) {
    SymbolSpec s;
    s.atoms.push_back({Kind::Mlf2, 0, t, beta / alpha, alpha, beta});
    return s;
}

SymbolSpec SymbolSpec::operator*(const SymbolSpec& other) const {
    SymbolSpec s = *this;
    s.atoms.insert(s.atoms.end(), other.atoms.begin(), other.atoms.end());
    return s;
}

cplx SymbolSpec::evaluate(double k) const {
    cplx m(1.0, 0.0);
    for (const Atom& a : atoms) {
        switch (a.kind) {
            case Kind::Power:
                m *= (a.theta == 0.0) ? 1.0 : std::pow(k, a.theta);
                break;
            case Kind::Heat:
                m *= ((a.theta == 0.0) ? 1.0 : std::pow(k, a.theta)) *
                     std::exp(-a.t * std::pow(k, a.delta));
                break;
            case Kind::Schrodinger:
                m *= std::exp(cplx(0.0, -a.t * std::pow(k, a.delta)));
                break;
            case Kind::Mlf1:
                m *= mlf::SymbolTable::get(a.alpha)->e1(a.t * std::pow(k, a.delta));
                break;
            case Kind::Mlf2:
                m *= mlf::SymbolTable::get(a.alpha)->ea(a.t * std::pow(k, a.delta));
                break;
        }
    }
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
        throw SymbolNonFinite("multiplier evaluated non-finite");
    return m;
}

namespace {

// Distinct |k| values appear many times on a grid (all axes share the
// frequency set), so symbols are sampled once per distinct magnitude.
// Cached per (spec signature, grid signature).
class MultiplierCache {
public:
    static MultiplierCache& instance() {
        static MultiplierCache c;
        return c;
    }

    std::shared_ptr<const std::vector<cplx>> get(const Field& f, const SymbolSpec& spec,
                                                 bool cacheable) {
        const std::string key = make_key(f, spec);
        if (cacheable) {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        auto values = std::make_shared<std::vector<cplx>>(f.grid->size());
        const Grid& g = *f.grid;
        parallel_for(g.size(), [&](std::size_t i) { (*values)[i] = spec.evaluate(g.freq_mag(i)); });
        if (cacheable) {
            std::lock_guard<std::mutex> lock(mutex_);
            cache_.emplace(key, values);
            if (cache_.size() > 512) cache_.clear(); // crude bound; rebuilt on demand
        }
        return values;
    }

private:
    static std::string make_key(const Field& f, const SymbolSpec& spec) {
        std::ostringstream os;
        os.precision(17);
        os << f.grid->signature();
        for (const auto& a : spec.atoms)
            os << "|" << static_cast<int>(a.kind) << ":" << a.theta << ":" << a.t << ":"
               << a.delta << ":" << a.alpha << ":" << a.beta;
        return os.str();
    }

    std::map<std::string, std::shared_ptr<const std::vector<cplx>>> cache_;
    std::mutex mutex_;
};

bool has_mlf_atom(const SymbolSpec& spec) {
    for (const auto& a : spec.atoms)
        if (a.kind == SymbolSpec::Kind::Mlf1 || a.kind == SymbolSpec::Kind::Mlf2) return true;
    return false;
}

Field apply_sampled(const Field& f, const std::vector<cplx>& symbol) {
    const bool was_physical = (f.space == Space::Physical);
    Field fhat = was_physical ? transform(f, Direction::Forward) : f;
    for (std::size_t i = 0; i < fhat.values.size(); ++i) fhat.values[i] *= symbol[i];
    return was_physical ? transform(fhat, Direction::Inverse) : fhat;
}

} // namespace

Field apply_multiplier(const Field& f, const SymbolSpec& m) {
    // Power symbols with positive exponent send the zero mode to zero.
    auto symbol = MultiplierCache::instance().get(f, m, has_mlf_atom(m));
    return apply_sampled(f, *symbol);
}

Field apply_radial(const Field& f, const std::function<cplx(double)>& fn) {
    const Grid& g = *f.grid;
    std::vector<cplx> symbol(g.size());
    parallel_for(g.size(), [&](std::size_t i) { symbol[i] = fn(g.freq_mag(i)); });
    for (const cplx& v : symbol)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw SymbolNonFinite("radial symbol evaluated non-finite");
    return apply_sampled(f, symbol);
}

Field fractional_laplacian(const Field& f, double theta) {
    if (theta < 0.0) throw DomainError("fractional Laplacian requires theta >= 0");
    if (theta == 0.0) return f;
    return apply_multiplier(f, SymbolSpec::power(theta));
}

Field schrodinger_group(const Field& f, double t, double delta) {
    return apply_multiplier(f, SymbolSpec::schrodinger(t, delta));
}

Field fractional_heat(const Field& f, double t, double delta, double theta) {
    return apply_multiplier(f, SymbolSpec::heat(t, delta, theta));
}

Field mlf_propagator_1(const Field& f, double t, const FracParams& params) {
    if (t < 0.0) throw DomainError("propagator requires t >= 0");
    params.validate();
    if (t == 0.0) return f;
    return apply_multiplier(f, SymbolSpec::mlf1(t, params.alpha, params.beta));
}

Field mlf_propagator_2(const Field& f, double t, const FracParams& params) {
    if (!(t > 0.0)) throw DomainError("second propagator requires t > 0");
    params.validate();
    return apply_multiplier(f, SymbolSpec::mlf2(t, params.alpha, params.beta));
}

Field dealias_two_thirds(const Field& f) {
    const bool was_physical = (f.space == Space::Physical);
    Field fhat = was_physical ? transform(f, Direction::Forward) : f;
    const Grid& g = *fhat.grid;
    const std::size_t n = g.n_per_axis();
    const double k_cut = (2.0 / 3.0) * g.freq_spacing() * static_cast<double>(n / 2);
    for (std::size_t i = 0; i < fhat.values.size(); ++i) {
        std::size_t rem = i;
        for (int axis = 0; axis < g.dim(); ++axis) {
            const std::size_t j = rem % n;
            rem /= n;
            if (std::abs(g.freq(j)) > k_cut) {
                fhat.values[i] = cplx{};
                break;
            }
        }
    }
    return was_physical ? transform(fhat, Direction::Inverse) : fhat;
}

Field to_physical(const Field& f) {
    return (f.space == Space::Physical) ? f : transform(f, Direction::Inverse);
}

Field to_frequency(const Field& f) {
    return (f.space == Space::Frequency) ? f : transform(f, Direction::Forward);
}

} // namespace fracdisp::spectral
