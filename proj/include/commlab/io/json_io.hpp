#pragma once

#include <json.hpp>

#include "commlab/core/protocol.hpp"
#include "commlab/numeric/exact_dist.hpp"
#include "commlab/reductions/ghse.hpp"
#include "commlab/simulate/amplify.hpp"
#include "commlab/sumequal/distributions.hpp"

namespace commlab::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const core::CostReport& r) {
  Json j;
  j["per_message_bits"] = r.per_message_bits;
  j["max_message_bits"] = r.max_message_bits;
  j["total_bits"] = r.total_bits;
  j["error_estimate"] = r.error_estimate;
  j["error_kind"] = core::CostReport::error_kind_name(r.error_kind);
  if (r.error_kind == core::CostReport::ErrorKind::monte_carlo) {
    j["trials"] = r.trials;
    j["seed"] = r.seed;
  }
  if (r.declared_max_message_bits >= 0)
    j["declared_max_message_bits"] = r.declared_max_message_bits;
  return j;
}

inline Json to_json(const numeric::ExactDist& d) {
  Json j;
  j["support"] = d.support();
  Json probs = Json::array();
  if (d.mode() == numeric::ExactDist::Mode::exact) {
    for (std::size_t i = 0; i < d.size(); ++i)
      probs.push_back(numeric::rat_str(d.prob_exact(i)));
  } else {
    for (std::size_t i = 0; i < d.size(); ++i) probs.push_back(d.prob(i));
  }
  j["probs"] = probs;
  j["mode"] = d.mode() == numeric::ExactDist::Mode::exact ? "exact" : "float";
  return j;
}

inline numeric::ExactDist exact_dist_from_json(const Json& j) {
  std::vector<std::pair<numeric::Value, numeric::Rat>> pmf;
  const auto& support = j.at("support");
  const auto& probs = j.at("probs");
  for (std::size_t i = 0; i < support.size(); ++i) {
    numeric::Rat p;
    if (probs.at(i).is_string())
      p = numeric::Rat(probs.at(i).get<std::string>());
    else
      p = numeric::Rat(probs.at(i).get<double>());
    p.canonicalize();
    pmf.emplace_back(support.at(i).get<numeric::Value>(), p);
  }
  return numeric::ExactDist::from_exact(std::move(pmf));
}

/// {arity, alphabets, rows} with rows row-major (last coordinate fastest),
/// or {builtin, arity, param}.
inline core::FunctionTable function_table_from_json(const Json& j) {
  if (j.contains("builtin"))
    return core::FunctionTable::builtin(j.at("builtin").get<std::string>(),
                                        j.at("arity").get<int>(),
                                        j.value("param", core::Value{2}));
  const int arity = j.at("arity").get<int>();
  auto alphabets = j.at("alphabets").get<std::vector<int>>();
  if (static_cast<int>(alphabets.size()) != arity)
    throw ConfigError("alphabets must list one size per coordinate");
  auto rows = j.at("rows").get<std::vector<core::Value>>();
  const bool symmetric = j.value("symmetric", false);
  return core::FunctionTable::from_table(std::move(alphabets), std::move(rows),
                                         symmetric);
}

inline Json to_json(const simulate::AmplifierPlan& p) {
  Json j;
  j["delta"] = p.delta;
  j["epsilon"] = p.epsilon;
  j["t"] = p.t;
  j["copies"] = p.copies;
  return j;
}

inline Json to_json(const sumequal::SumEqualInstance& s) {
  Json j;
  j["k"] = s.k;
  j["mode"] = s.integer_mode ? "integers" : "mod";
  if (s.integer_mode)
    j["magnitude"] = s.magnitude;
  else
    j["modulus"] = s.modulus;
  j["target"] = s.target;
  j["inputs"] = s.inputs;
  return j;
}

inline sumequal::SumEqualInstance sum_equal_instance_from_json(const Json& j) {
  const auto inputs = j.at("inputs").get<std::vector<core::Value>>();
  const auto target = j.value("target", core::Value{0});
  const int k = j.at("k").get<int>();
  if (j.at("mode") == "integers")
    return sumequal::SumEqualInstance::integers(
        k, j.at("magnitude").get<core::Value>(), inputs, target);
  return sumequal::SumEqualInstance::mod(k, j.at("modulus").get<core::Value>(),
                                         inputs, target);
}

inline Json to_json(const sumequal::DirectSumSample& s) {
  Json j;
  j["k"] = s.k;
  j["p"] = s.p;
  j["m"] = s.m;
  j["rows"] = s.rows;
  j["coin"] = s.coin;
  j["outside_paper_regime"] = s.outside_paper_regime;
  return j;
}

inline sumequal::DirectSumSample direct_sum_sample_from_json(const Json& j) {
  sumequal::DirectSumSample s;
  s.k = j.at("k").get<int>();
  s.p = j.at("p").get<core::Value>();
  s.m = j.at("m").get<long>();
  s.rows = j.at("rows").get<std::vector<std::vector<core::Value>>>();
  s.coin = j.at("coin").get<std::vector<int>>();
  s.outside_paper_regime = j.at("outside_paper_regime").get<bool>();
  s.verify();
  return s;
}

inline Json to_json(const sumequal::AugIndexSample& s) {
  Json j;
  j["k"] = s.k;
  j["m"] = s.m;
  j["a"] = s.a;
  j["big_m"] = s.big_m;
  j["rows"] = s.rows;
  j["coin"] = s.coin;
  j["queried"] = s.queried;
  j["m_bound_ok"] = s.m_bound_ok;
  return j;
}

inline sumequal::AugIndexSample aug_index_sample_from_json(const Json& j) {
  sumequal::AugIndexSample s;
  s.k = j.at("k").get<int>();
  s.m = j.at("m").get<long>();
  s.a = j.at("a").get<long>();
  s.big_m = j.at("big_m").get<std::uint64_t>();
  s.rows = j.at("rows").get<std::vector<std::vector<core::Value>>>();
  s.coin = j.at("coin").get<std::vector<int>>();
  s.queried = j.at("queried").get<long>();
  s.m_bound_ok = j.at("m_bound_ok").get<bool>();
  s.verify();
  return s;
}

inline Json to_json(const reductions::BiasReport& r) {
  Json j;
  j["n_prime"] = r.n_prime;
  j["n_dprime"] = r.n_dprime;
  j["pad"] = r.pad;
  j["exact_bias"] = numeric::rat_str(r.exact_bias);
  j["exact_bias_value"] = numeric::to_double(r.exact_bias);
  j["closed_form"] = numeric::rat_str(r.closed_form);
  j["expected_hse_equal"] = numeric::to_double(r.expected_hse_equal);
  j["expected_hse_unequal"] = numeric::to_double(r.expected_hse_unequal);
  j["variance_bound"] = r.variance_bound;
  j["outside_regime"] = r.outside_regime;
  return j;
}

}  // namespace commlab::io
