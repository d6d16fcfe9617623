#include "doctest.h"

#include "ftnlab/backend.hpp"
#include "ftnlab/error.hpp"

#include <thread>
#include <vector>

using namespace ftnlab;

namespace {

ProblemSpec problem(int N, double hz, double hx = 0.0) {
    ProblemSpec p;
    p.params = {N, 1.0, hz, hx};
    p.v = {1, Axis::Z};
    p.w = {1, Axis::Z};
    return p;
}

}  // namespace

TEST_CASE("backend names round-trip") {
    for (Backend b : {Backend::Exact, Backend::FreeFermion, Backend::Analytic2q, Backend::Auto}) {
        CHECK(parse_backend(backend_name(b)) == b);
    }
    CHECK_THROWS_AS(parse_backend("dmrg"), ConfigError);
}

TEST_CASE("backend resolution and compatibility") {
    CHECK(resolve_backend(problem(8, 1.0)) == Backend::Exact);
    CHECK(resolve_backend(problem(50, 1.0)) == Backend::FreeFermion);
    CHECK_THROWS_AS(resolve_backend(problem(50, 1.0, 0.1)), ConfigError);

    ProblemSpec ff = problem(8, 1.0, 0.1);
    CHECK_THROWS_AS(check_compatible(ff, Backend::FreeFermion), ConfigError);
    ff = problem(8, 1.0);
    ff.w.site = 2;
    CHECK_THROWS_AS(check_compatible(ff, Backend::FreeFermion), ConfigError);
    ff = problem(8, 1.0);
    ff.v.axis = ff.w.axis = Axis::X;
    CHECK_THROWS_AS(check_compatible(ff, Backend::FreeFermion), ConfigError);
    ff = problem(8, 1.0);
    ff.beta = 3.0;
    CHECK_THROWS_AS(check_compatible(ff, Backend::FreeFermion), ConfigError);
    CHECK_NOTHROW(check_compatible(problem(8, 1.0), Backend::FreeFermion));

    CHECK_THROWS_AS(check_compatible(problem(14, 1.0), Backend::Exact), ConfigError);
    CHECK_THROWS_AS(check_compatible(problem(3, 1.0), Backend::Analytic2q), ConfigError);
    CHECK_NOTHROW(check_compatible(problem(2, 1.0), Backend::Analytic2q));
    ProblemSpec bad = problem(4, 1.0);
    bad.v.site = 5;
    CHECK_THROWS_AS(check_compatible(bad, Backend::Exact), ConfigError);
}

TEST_CASE("traces from all backends agree on the overlap") {
    SystemCache cache;
    ProblemSpec p = problem(2, 0.8);
    p.backend = Backend::Exact;
    const auto ex = make_trace(p, cache);
    p.backend = Backend::FreeFermion;
    const auto ff = make_trace(p, cache);
    p.backend = Backend::Analytic2q;
    const auto an = make_trace(p, cache);
    CHECK(ex->backend() == "exact");
    CHECK(ff->backend() == "freefermion");
    CHECK(an->backend() == "analytic2q");
    for (double t : {0.0, 0.5, 3.0}) {
        CHECK(std::abs(ex->kd_mm(t) - ff->kd_mm(t)) < 1e-10);
        CHECK(std::abs(ex->kd_mm(t).real() - an->kd_mm(t).real()) < 1e-12);
    }
    CHECK(std::isnan(an->table(0.3).kd[0].imag()));
}

TEST_CASE("system cache memoises and is thread safe") {
    SystemCache cache;
    const ChainParams p{6, 1.0, 0.5, 0.0};
    std::vector<std::shared_ptr<const Spectrum>> got(8);
    std::vector<std::thread> th;
    for (int i = 0; i < 8; ++i) th.emplace_back([&, i] { got[static_cast<std::size_t>(i)] = cache.spectrum(p); });
    for (auto& t : th) t.join();
    for (const auto& g : got) CHECK(g.get() == got[0].get());
    CHECK(cache.modes(p).get() == cache.modes(p).get());
    CHECK(cache.size() == 2);
    CHECK_THROWS_AS(cache.spectrum({14, 1.0, 0.5, 0.0}), CapacityError);
    CHECK(cache.size() == 2);
}
