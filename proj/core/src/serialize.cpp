#include "adafd/serialize.hpp"

#include <cmath>

#include <json.hpp>

namespace adafd {

namespace {

using nlohmann::json;

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

json scheme_obj(const Scheme& s) {
  const auto exprs = closed_form_expressions(s);
  json j;
  j["label"] = s.label;
  j["d"] = s.d;
  j["shifts"] = rationals_json(s.shifts);
  j["weights"] = rationals_json(s.weights);
  j["q"] = s.q;
  j["c_q"] = s.c_q.str();
  j["bounds"] = {{"deterministic", exprs.deterministic_bound},
                 {"deterministic_optimal_h", exprs.deterministic_optimal_h},
                 {"stochastic_mse", exprs.stochastic_bound},
                 {"stochastic_optimal_h", exprs.stochastic_optimal_h}};
  return j;
}

json finite_or_string(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return json(v);
}

}  // namespace

std::string scheme_json(const Scheme& s, int indent) { return scheme_obj(s).dump(indent); }

std::string ratio_json(const TestingRatio& r, int indent) {
  json j;
  j["scheme"] = scheme_obj(r.base);
  j["ratio"] = {{"shifts", rationals_json(r.shifts)},
                {"weights", rationals_json(r.weights)},
                {"q", r.q},
                {"c_r", r.c_r.str()},
                {"alpha", r.alpha.str()},
                {"norm_A", r.norm_A.str()},
                {"r_star", optimal_ratio(r)}};
  const RatioBounds b = select_bounds(optimal_ratio(r));
  j["ratio"]["r_l"] = b.r_l;
  j["ratio"]["r_u"] = b.r_u;
  return j.dump(indent);
}

std::string search_result_json(const SearchResult& r, int indent) {
  json j;
  j["h_dagger"] = r.h_dagger;
  j["final_ratio"] = r.final_ratio;
  j["iterations"] = r.iterations;
  j["new_evals"] = r.new_evals;
  j["cached_hits"] = r.cached_hits;
  j["status"] = to_string(r.status);
  j["bracket"] = {{"lower", finite_or_string(r.bracket_lower)},
                  {"upper", finite_or_string(r.bracket_upper)}};
  return j.dump(indent);
}

std::string opt_run_json(const OptRun& run, const std::string& problem, int n, double eps_f,
                         const LBFGSConfig& cfg, std::uint64_t seed, int indent) {
  json j;
  j["problem"] = problem;
  j["n"] = n;
  j["eps_f"] = eps_f;
  j["strategy"] = to_string(cfg.strategy);
  j["scheme"] = to_string(cfg.scheme);
  j["seed"] = seed;
  j["status"] = to_string(run.status);
  j["iterations"] = run.iterations;
  j["evals"] = run.evals;
  j["final_true_gap"] = finite_or_string(run.final_true_gap);
  return j.dump(indent);
}

}  // namespace adafd
