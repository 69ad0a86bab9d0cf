#ifndef PROXGRAD_BENCH_IO_HPP
#define PROXGRAD_BENCH_IO_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proxgrad/dictlearn.hpp"
#include "proxgrad/trace_io.hpp"

namespace proxgrad {

inline constexpr std::string_view kResultsHeader =
    "instance_seed,variant,status,iters,prox_evals,grad_evals,phi_final,residual_final";

// Leading '#' lines carry free-form metadata (generator dimensions, the
// feasible-start note); readers skip them.
inline void write_results_csv(std::ostream& os, const std::vector<RunRow>& rows,
                              const std::vector<std::string>& metadata = {}) {
    for (const std::string& m : metadata) os << "# " << m << '\n';
    os << kResultsHeader << '\n';
    std::string line;
    for (const RunRow& r : rows) {
        line.clear();
        line += std::to_string(r.instance_seed);
        line += ',';
        line += r.variant;
        line += ',';
        line += to_string(r.status);
        line += ',';
        line += std::to_string(r.iters);
        line += ',';
        line += std::to_string(r.prox_evals);
        line += ',';
        line += std::to_string(r.grad_evals);
        line += ',';
        detail::append_double(line, r.phi_final);
        line += ',';
        detail::append_double(line, r.residual_final);
        line += '\n';
        os << line;
    }
}

inline SolveStatus status_from_string(std::string_view s) {
    if (s == "converged") return SolveStatus::converged;
    if (s == "max_iters") return SolveStatus::max_iters;
    if (s == "max_backtracks") return SolveStatus::max_backtracks;
    if (s == "infeasible_start") return SolveStatus::infeasible_start;
    throw std::runtime_error("results parse error: unknown status '" + std::string(s) + "'");
}

inline std::vector<RunRow> read_results_csv(std::istream& is) {
    std::string line;
    bool saw_header = false;
    std::vector<RunRow> rows;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!saw_header) {
            if (line != kResultsHeader)
                throw std::runtime_error("results parse error: unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        const auto f = detail::split_csv(line);
        if (f.size() != 8)
            throw std::runtime_error("results parse error: expected 8 fields, got " +
                                     std::to_string(f.size()));
        RunRow r;
        r.instance_seed = detail::parse_int<std::uint64_t>(f[0]);
        r.variant = std::string(f[1]);
        r.status = status_from_string(f[2]);
        r.iters = detail::parse_int<std::int64_t>(f[3]);
        r.prox_evals = detail::parse_int<std::uint64_t>(f[4]);
        r.grad_evals = detail::parse_int<std::uint64_t>(f[5]);
        r.phi_final = detail::parse_double(f[6]);
        r.residual_final = detail::parse_double(f[7]);
        rows.push_back(std::move(r));
    }
    if (!saw_header) throw std::runtime_error("results parse error: missing header");
    return rows;
}

inline std::vector<RunRow> read_results_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open results file: " + path);
    return read_results_csv(is);
}

// One gnuplot-friendly two-column file per variant: budget and fraction
// solved, named <variant>.dat inside out_dir.
inline std::vector<std::string> write_profile_data(const std::vector<ProfileCurve>& curves,
                                                   const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    for (const ProfileCurve& curve : curves) {
        const std::string path =
            (std::filesystem::path(out_dir) / (curve.variant + ".dat")).string();
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open profile file for writing: " + path);
        std::string line;
        for (std::size_t i = 0; i < curve.budgets.size(); ++i) {
            line.clear();
            detail::append_double(line, curve.budgets[i]);
            line += ' ';
            detail::append_double(line, curve.fractions[i]);
            line += '\n';
            os << line;
        }
        if (!os) throw std::runtime_error("failed writing profile file: " + path);
        written.push_back(path);
    }
    return written;
}

}  // namespace proxgrad

#endif
