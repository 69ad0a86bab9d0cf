#ifndef PROXGRAD_PROXGRAD_HPP
#define PROXGRAD_PROXGRAD_HPP

#include "proxgrad/bench_io.hpp"
#include "proxgrad/diagnostics.hpp"
#include "proxgrad/dictlearn.hpp"
#include "proxgrad/merit.hpp"
#include "proxgrad/problem.hpp"
#include "proxgrad/problems.hpp"
#include "proxgrad/prox.hpp"
#include "proxgrad/rng.hpp"
#include "proxgrad/solver.hpp"
#include "proxgrad/stepsize.hpp"
#include "proxgrad/trace_io.hpp"
#include "proxgrad/vec.hpp"

#endif
