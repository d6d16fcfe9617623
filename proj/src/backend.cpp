#include "ftnlab/backend.hpp"

#include "ftnlab/analytic.hpp"
#include "ftnlab/error.hpp"

#include <cmath>

namespace ftnlab {

Backend parse_backend(const std::string& s) {
    if (s == "exact") return Backend::Exact;
    if (s == "freefermion") return Backend::FreeFermion;
    if (s == "analytic2q") return Backend::Analytic2q;
    if (s == "auto") return Backend::Auto;
    throw ConfigError("unknown backend '" + s + "' (expected exact, freefermion, analytic2q or auto)");
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Exact: return "exact";
        case Backend::FreeFermion: return "freefermion";
        case Backend::Analytic2q: return "analytic2q";
        case Backend::Auto: return "auto";
    }
    return "?";
}

namespace {

bool zero_temperature(const ProblemSpec& s) { return !s.beta || std::isinf(*s.beta); }

bool integrable_probe_pair(const ProblemSpec& s) {
    return s.params.h_x == 0.0 && s.v.axis == Axis::Z && s.w.axis == Axis::Z && s.v.site == s.w.site &&
           zero_temperature(s);
}

}  // namespace

void check_compatible(const ProblemSpec& spec, Backend b) {
    const int N = spec.params.N;
    for (const Probe* p : {&spec.v, &spec.w}) {
        if (p->site < 1 || p->site > N) {
            throw ConfigError("probe site " + std::to_string(p->site) + " outside 1.." + std::to_string(N));
        }
    }
    switch (b) {
        case Backend::Exact:
            if (N > spec.exact_cap) {
                throw ConfigError("backend=exact requires N <= " + std::to_string(spec.exact_cap) + " (exact_cap), got N=" +
                                  std::to_string(N));
            }
            return;
        case Backend::FreeFermion:
            if (!integrable_probe_pair(spec)) {
                throw ConfigError("backend=freefermion requires h_x = 0, Z-axes, m = n and zero temperature");
            }
            return;
        case Backend::Analytic2q:
            if (N != 2 || !integrable_probe_pair(spec)) {
                throw ConfigError("backend=analytic2q requires N = 2, h_x = 0, Z-axes, m = n and zero temperature");
            }
            if (spec.params.J == 0.0) throw ConfigError("backend=analytic2q requires J != 0");
            return;
        case Backend::Auto: check_compatible(spec, resolve_backend(spec)); return;
    }
}

Backend resolve_backend(const ProblemSpec& spec) {
    if (spec.backend != Backend::Auto) return spec.backend;
    if (spec.params.N <= spec.exact_cap) return Backend::Exact;
    if (integrable_probe_pair(spec)) return Backend::FreeFermion;
    throw ConfigError("backend=auto: N=" + std::to_string(spec.params.N) + " exceeds exact_cap " +
                      std::to_string(spec.exact_cap) + " and the free-fermion backend requires h_x = 0, Z-axes, m = n and zero temperature");
}

template <class T, class F>
std::shared_ptr<const T> SystemCache::lookup(std::map<std::string, std::shared_future<std::shared_ptr<const T>>>& m,
                                             const std::string& key, F&& make) {
    std::promise<std::shared_ptr<const T>> promise;
    std::shared_future<std::shared_ptr<const T>> fut;
    bool owner = false;
    {
        std::lock_guard lock(mu_);
        auto it = m.find(key);
        if (it == m.end()) {
            fut = promise.get_future().share();
            m.emplace(key, fut);
            owner = true;
        } else {
            fut = it->second;
        }
    }
    if (owner) {
        try {
            promise.set_value(make());
        } catch (...) {
            promise.set_exception(std::current_exception());
            std::lock_guard lock(mu_);
            m.erase(key);
        }
    }
    return fut.get();
}

std::shared_ptr<const Spectrum> SystemCache::spectrum(const ChainParams& p, int exact_cap) {
    return lookup<Spectrum>(spectra_, p.key(), [&] {
        return std::make_shared<const Spectrum>(spectral_decompose(build_hamiltonian(p, exact_cap)));
    });
}

std::shared_ptr<const ModeSet> SystemCache::modes(const ChainParams& p) {
    return lookup<ModeSet>(modes_, p.key(), [&] { return std::make_shared<const ModeSet>(solve_modes(p)); });
}

std::size_t SystemCache::size() const {
    std::lock_guard lock(mu_);
    return spectra_.size() + modes_.size();
}

QuantumState make_state(const ProblemSpec& spec, const Spectrum& s) {
    if (zero_temperature(spec)) return ground_state(s);
    return gibbs_state(s, *spec.beta);
}

std::unique_ptr<KdTrace> make_trace(const ProblemSpec& spec, SystemCache& cache) {
    const Backend b = resolve_backend(spec);
    check_compatible(spec, b);
    switch (b) {
        case Backend::Exact: {
            const auto s = cache.spectrum(spec.params, spec.exact_cap);
            return std::make_unique<ExactKdTrace>(make_state(spec, *s), *s, spec.v, spec.w);
        }
        case Backend::FreeFermion:
            return std::make_unique<FreeFermionKdTrace>(*cache.modes(spec.params), spec.v.site);
        case Backend::Analytic2q: return std::make_unique<TwoQubitKdTrace>(spec.params.J, spec.params.h_z);
        case Backend::Auto: break;
    }
    throw ConfigError("unresolved backend");
}

}  // namespace ftnlab
