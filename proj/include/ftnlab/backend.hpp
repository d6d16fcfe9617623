#pragma once

#include "ftnlab/dynamics.hpp"
#include "ftnlab/freefermion.hpp"
#include "ftnlab/model.hpp"
#include "ftnlab/quasiprob.hpp"

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace ftnlab {

enum class Backend { Exact, FreeFermion, Analytic2q, Auto };

Backend parse_backend(const std::string& s);
std::string backend_name(Backend b);

/// One KD evaluation problem: chain, initial state, probe pair.
struct ProblemSpec {
    ChainParams params;
    std::optional<double> beta;  ///< nullopt: ground state
    Probe v;
    Probe w;
    Backend backend = Backend::Auto;
    int exact_cap = kDefaultExactCap;
};

/// Throws ConfigError when `b` cannot serve `spec`. Free fermion needs
/// h_x = 0, Z probes on one site and zero temperature; analytic2q needs the
/// same with N = 2; exact needs N <= exact_cap.
void check_compatible(const ProblemSpec& spec, Backend b);

/// Auto picks exact up to the cap, then free fermion when compatible.
Backend resolve_backend(const ProblemSpec& spec);

/// Thread-safe memo of Spectrum / ModeSet per ChainParams::key(). A value is
/// computed once; concurrent requests for the same key wait for it.
class SystemCache {
public:
    std::shared_ptr<const Spectrum> spectrum(const ChainParams& p, int exact_cap = kDefaultExactCap);
    std::shared_ptr<const ModeSet> modes(const ChainParams& p);
    std::size_t size() const;

private:
    template <class T, class F>
    std::shared_ptr<const T> lookup(std::map<std::string, std::shared_future<std::shared_ptr<const T>>>& m,
                                    const std::string& key, F&& make);

    mutable std::mutex mu_;
    std::map<std::string, std::shared_future<std::shared_ptr<const Spectrum>>> spectra_;
    std::map<std::string, std::shared_future<std::shared_ptr<const ModeSet>>> modes_;
};

/// Dense initial state for the exact backend.
QuantumState make_state(const ProblemSpec& spec, const Spectrum& s);

std::unique_ptr<KdTrace> make_trace(const ProblemSpec& spec, SystemCache& cache);

}  // namespace ftnlab
