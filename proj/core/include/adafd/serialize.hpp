#pragma once

#include <string>

#include "adafd/interval_search.hpp"
#include "adafd/optimizer.hpp"
#include "adafd/scheme.hpp"
#include "adafd/testing_ratio.hpp"

namespace adafd {

/// {label, d, shifts: ["p/q"...], weights: [...], q} plus c_q and the
/// closed-form bound expressions.
std::string scheme_json(const Scheme& s, int indent = 2);

/// Scheme JSON with the ratio stencil, c_r, alpha, A, r*, and bounds.
std::string ratio_json(const TestingRatio& r, int indent = 2);

std::string search_result_json(const SearchResult& r, int indent = 2);

std::string opt_run_json(const OptRun& run, const std::string& problem, int n, double eps_f,
                         const LBFGSConfig& cfg, std::uint64_t seed, int indent = 2);

}  // namespace adafd
