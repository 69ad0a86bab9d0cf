#ifndef PROXGRAD_TRACE_IO_HPP
#define PROXGRAD_TRACE_IO_HPP

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "proxgrad/solver.hpp"

namespace proxgrad {

inline constexpr std::string_view kTraceHeader =
    "k,gamma,phi,Phi,residual,backtracks,step_norm,prox_evals,grad_evals,f_evals,g_evals";

namespace detail {

inline void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("trace parse error: bad float '" + std::string(s) + "'");
    return v;
}

template <typename Int>
inline Int parse_int(std::string_view s) {
    Int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("trace parse error: bad integer '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

}  // namespace detail

// Shortest-round-trip formatting: reading the file back reproduces every
// value bit-exactly.
inline void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace) {
    std::string line;
    os << kTraceHeader << '\n';
    for (const IterationRecord& r : trace) {
        line.clear();
        line += std::to_string(r.k);
        line += ',';
        detail::append_double(line, r.gamma);
        line += ',';
        detail::append_double(line, r.phi);
        line += ',';
        detail::append_double(line, r.merit);
        line += ',';
        detail::append_double(line, r.residual);
        line += ',';
        line += std::to_string(r.backtracks);
        line += ',';
        detail::append_double(line, r.step_norm);
        line += ',';
        line += std::to_string(r.prox_evals);
        line += ',';
        line += std::to_string(r.grad_evals);
        line += ',';
        line += std::to_string(r.f_evals);
        line += ',';
        line += std::to_string(r.g_evals);
        line += '\n';
        os << line;
    }
}

inline std::vector<IterationRecord> read_trace_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("trace parse error: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceHeader)
        throw std::runtime_error("trace parse error: unexpected header '" + line + "'");
    std::vector<IterationRecord> trace;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = detail::split_csv(line);
        if (f.size() != 11)
            throw std::runtime_error("trace parse error: expected 11 fields, got " +
                                     std::to_string(f.size()));
        IterationRecord r;
        r.k = detail::parse_int<std::int64_t>(f[0]);
        r.gamma = detail::parse_double(f[1]);
        r.phi = detail::parse_double(f[2]);
        r.merit = detail::parse_double(f[3]);
        r.residual = detail::parse_double(f[4]);
        r.backtracks = detail::parse_int<int>(f[5]);
        r.step_norm = detail::parse_double(f[6]);
        r.prox_evals = detail::parse_int<std::uint64_t>(f[7]);
        r.grad_evals = detail::parse_int<std::uint64_t>(f[8]);
        r.f_evals = detail::parse_int<std::uint64_t>(f[9]);
        r.g_evals = detail::parse_int<std::uint64_t>(f[10]);
        trace.push_back(r);
    }
    return trace;
}

inline void write_trace_file(const std::string& path, const std::vector<IterationRecord>& trace) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open trace file for writing: " + path);
    write_trace_csv(os, trace);
    if (!os) throw std::runtime_error("failed writing trace file: " + path);
}

inline std::vector<IterationRecord> read_trace_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open trace file: " + path);
    return read_trace_csv(is);
}

}  // namespace proxgrad

#endif
