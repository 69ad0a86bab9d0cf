#ifndef PROXGRAD_DICTLEARN_HPP
#define PROXGRAD_DICTLEARN_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "proxgrad/prox.hpp"
#include "proxgrad/rng.hpp"
#include "proxgrad/solver.hpp"

namespace proxgrad {

namespace detail {

// Column-major kernels sized for the benchmark instances (tens of rows).

// out(n x m) = A(n x k) * B(k x m)
inline void matmul_nn(int n, int k, int m, const double* a, const double* b, double* out) {
    for (int j = 0; j < m; ++j) {
        double* col = out + static_cast<std::size_t>(j) * n;
        for (int i = 0; i < n; ++i) col[i] = 0.0;
        for (int t = 0; t < k; ++t) {
            const double btj = b[t + static_cast<std::size_t>(j) * k];
            const double* acol = a + static_cast<std::size_t>(t) * n;
            for (int i = 0; i < n; ++i) col[i] += acol[i] * btj;
        }
    }
}

// out(n x l) = A(n x m) * B(l x m)^T
inline void matmul_nt(int n, int m, int l, const double* a, const double* b, double* out) {
    for (int j = 0; j < l; ++j) {
        double* col = out + static_cast<std::size_t>(j) * n;
        for (int i = 0; i < n; ++i) col[i] = 0.0;
        for (int s = 0; s < m; ++s) {
            const double bjs = b[j + static_cast<std::size_t>(s) * l];
            const double* acol = a + static_cast<std::size_t>(s) * n;
            for (int i = 0; i < n; ++i) col[i] += acol[i] * bjs;
        }
    }
}

// out(l x m) = A(n x l)^T * B(n x m)
inline void matmul_tn(int n, int l, int m, const double* a, const double* b, double* out) {
    for (int j = 0; j < m; ++j) {
        const double* bcol = b + static_cast<std::size_t>(j) * n;
        double* col = out + static_cast<std::size_t>(j) * l;
        for (int t = 0; t < l; ++t) {
            const double* acol = a + static_cast<std::size_t>(t) * n;
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += acol[i] * bcol[i];
            col[t] = s;
        }
    }
}

}  // namespace detail

// A synthetic factorization task Y = D_true * C_true with unit-norm planted
// atoms and exactly nnz_per_signal nonzeros per coefficient column, plus the
// raw normally distributed starting matrices d0/c0. All matrices are
// column-major flat arrays; everything is regenerated from the seed.
struct DictLearnInstance {
    DictBlockLayout layout;
    int nnz_per_signal = 0;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> y;       // n x signals
    std::vector<double> d_true;  // n x atoms
    std::vector<double> c_true;  // atoms x signals
    std::vector<double> d0;
    std::vector<double> c0;
};

// Draw order (one mt19937_64 stream): D_true column by column, then per
// signal a shuffled support of nnz_per_signal rows followed by their values
// (ascending row order), then d0, then c0.
inline DictLearnInstance generate_instance(int n, int atoms, int signals, int nnz_per_signal,
                                           double lambda, std::uint64_t seed) {
    if (n <= 0 || atoms <= 0 || signals <= 0)
        throw std::invalid_argument("generate_instance: dimensions must be positive");
    if (nnz_per_signal <= 0 || nnz_per_signal > atoms)
        throw std::invalid_argument("generate_instance: need 0 < nonzeros per signal <= atoms");

    DictLearnInstance inst;
    inst.layout = {n, atoms, signals};
    inst.nnz_per_signal = nnz_per_signal;
    inst.lambda = lambda;
    inst.seed = seed;
    Rng rng(seed);

    inst.d_true.resize(inst.layout.d_size());
    for (double& v : inst.d_true) v = rng.normal();
    inst.d_true = prox_unit_sphere_columns(inst.d_true, n, atoms);

    inst.c_true.assign(inst.layout.c_size(), 0.0);
    std::vector<int> rows(atoms);
    for (int j = 0; j < signals; ++j) {
        std::iota(rows.begin(), rows.end(), 0);
        rng.shuffle(rows);
        std::sort(rows.begin(), rows.begin() + nnz_per_signal);
        for (int t = 0; t < nnz_per_signal; ++t) {
            double v = rng.normal();
            while (v == 0.0) v = rng.normal();
            inst.c_true[rows[t] + static_cast<std::size_t>(j) * atoms] = v;
        }
    }

    inst.y.resize(static_cast<std::size_t>(n) * signals);
    detail::matmul_nn(n, atoms, signals, inst.d_true.data(), inst.c_true.data(), inst.y.data());

    inst.d0.resize(inst.layout.d_size());
    for (double& v : inst.d0) v = rng.normal();
    inst.c0.resize(inst.layout.c_size());
    for (double& v : inst.c0) v = rng.normal();
    return inst;
}

// f(D, C) = 0.5 || Y - D C ||_F^2 over the packed point [vec(D); vec(C)],
// with gradient ((DC - Y) C^T, D^T (DC - Y)). g couples the unit-norm
// constraint on the atoms with the cardinality cost lambda ||C||_0.
inline Problem dictlearn_problem(const DictLearnInstance& instance) {
    const auto data = std::make_shared<const DictLearnInstance>(instance);
    const DictBlockLayout lay = data->layout;

    SmoothTerm f;
    f.dim = lay.total();
    f.value = [data, lay](const Point& x) {
        std::vector<double> r(data->y.size());
        detail::matmul_nn(lay.n, lay.atoms, lay.signals, x.data(), x.data() + lay.d_size(),
                          r.data());
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double d = r[i] - data->y[i];
            s += d * d;
        }
        return 0.5 * s;
    };
    f.gradient = [data, lay](const Point& x) {
        const double* d = x.data();
        const double* c = x.data() + lay.d_size();
        std::vector<double> r(data->y.size());
        detail::matmul_nn(lay.n, lay.atoms, lay.signals, d, c, r.data());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= data->y[i];
        Point grad(lay.total());
        detail::matmul_nt(lay.n, lay.signals, lay.atoms, r.data(), c, grad.data());
        detail::matmul_tn(lay.n, lay.atoms, lay.signals, d, r.data(),
                          grad.data() + lay.d_size());
        return grad;
    };

    return Problem(std::move(f), make_dictlearn_term(lay, data->lambda));
}

// Starting point: the raw normal (D0, C0) with the dictionary columns
// normalized so that the run begins inside dom g.
inline Point feasible_start(const DictLearnInstance& instance) {
    Point x0 = prox_unit_sphere_columns(instance.d0, instance.layout.n, instance.layout.atoms);
    x0.insert(x0.end(), instance.c0.begin(), instance.c0.end());
    return x0;
}

// ----- benchmark suite ---------------------------------------------------

inline std::string variant_name(StepsizeKind kind, MeritFlavor flavor) {
    std::string s = kind == StepsizeKind::plain ? "plain_" : "spectral_";
    switch (flavor) {
        case MeritFlavor::monotone: s += "monotone"; break;
        case MeritFlavor::average: s += "average"; break;
        case MeritFlavor::max: s += "max"; break;
    }
    return s;
}

// The six solver variants: {plain, spectral} stepsizes crossed with the
// three merit flavors, all other parameters at their defaults.
inline std::vector<std::pair<std::string, SolverConfig>> variant_configs(double epsilon) {
    std::vector<std::pair<std::string, SolverConfig>> out;
    for (StepsizeKind kind : {StepsizeKind::plain, StepsizeKind::spectral})
        for (MeritFlavor flavor :
             {MeritFlavor::monotone, MeritFlavor::average, MeritFlavor::max}) {
            SolverConfig cfg;
            cfg.stepsize = kind;
            cfg.flavor = flavor;
            cfg.epsilon = epsilon;
            out.emplace_back(variant_name(kind, flavor), cfg);
        }
    return out;
}

struct RunRow {
    std::uint64_t instance_seed = 0;
    std::string variant;
    SolveStatus status = SolveStatus::max_iters;
    std::int64_t iters = 0;
    std::uint64_t prox_evals = 0;
    std::uint64_t grad_evals = 0;
    double phi_final = 0.0;
    double residual_final = 0.0;
};

// Runs every instance under every variant. Each run owns its Problem (and
// thus its counters); rows come back in (instance, variant) order regardless
// of the number of worker threads.
inline std::vector<RunRow> run_suite(const std::vector<DictLearnInstance>& instances,
                                     const std::vector<std::pair<std::string, SolverConfig>>& variants,
                                     int parallelism = 1) {
    const std::size_t total = instances.size() * variants.size();
    std::vector<RunRow> rows(total);
    if (total == 0) return rows;

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= total) return;
            const DictLearnInstance& inst = instances[job / variants.size()];
            const auto& [name, cfg] = variants[job % variants.size()];
            Problem problem = dictlearn_problem(inst);
            const SolveResult res = solve(problem, feasible_start(inst), cfg);
            RunRow& row = rows[job];
            row.instance_seed = inst.seed;
            row.variant = name;
            row.status = res.status;
            row.iters = res.trace.empty() ? 0 : res.trace.back().k;
            row.prox_evals = problem.counters().prox_evals;
            row.grad_evals = problem.counters().grad_evals;
            row.phi_final = res.phi_final;
            row.residual_final = res.final_residual;
        }
    };

    const int threads = std::max(1, parallelism);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

struct ProfileCurve {
    std::string variant;
    std::vector<double> budgets;
    std::vector<double> fractions;
};

enum class ProfileMetric { prox_evals, final_objective };

// Fraction-of-instances-solved curves. For the evaluation metric an
// instance counts as solved within budget b when its run converged with at
// most b proximal evaluations; for the objective metric, when its final
// objective is at most the threshold. Budgets sweep the union of observed
// values across variants so the curves share one grid.
inline std::vector<ProfileCurve> performance_profile(const std::vector<RunRow>& rows,
                                                     ProfileMetric metric) {
    if (rows.empty()) throw std::invalid_argument("performance_profile: empty result table");

    std::vector<double> grid;
    for (const RunRow& r : rows) {
        if (metric == ProfileMetric::prox_evals) {
            if (r.status == SolveStatus::converged)
                grid.push_back(static_cast<double>(r.prox_evals));
        } else if (std::isfinite(r.phi_final)) {
            grid.push_back(r.phi_final);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::map<std::string, std::vector<const RunRow*>> by_variant;
    for (const RunRow& r : rows) by_variant[r.variant].push_back(&r);

    std::vector<ProfileCurve> curves;
    for (const auto& [variant, vrows] : by_variant) {
        ProfileCurve curve;
        curve.variant = variant;
        curve.budgets = grid;
        curve.fractions.reserve(grid.size());
        const double denom = static_cast<double>(vrows.size());
        for (double b : grid) {
            std::size_t solved = 0;
            for (const RunRow* r : vrows) {
                if (metric == ProfileMetric::prox_evals)
                    solved += r->status == SolveStatus::converged &&
                              static_cast<double>(r->prox_evals) <= b;
                else
                    solved += std::isfinite(r->phi_final) && r->phi_final <= b;
            }
            curve.fractions.push_back(static_cast<double>(solved) / denom);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

}  // namespace proxgrad

#endif
