#pragma once

#include <json.hpp>
#include <set>
#include <string>

#include "sesq/vqe.hpp"

namespace sesq {

/// Strict reader for the run configuration. Recognized keys: ansatz,
/// protocol, shots (integer or "exact"), optimizer, max_evaluations, seed,
/// layers, prep ("incremental" | "from_zero"), penalty ({"c_p": x} or
/// "default"), plateau_tolerance, plateau_window_per_param, simplex
/// {initial_step, collapse_tolerance}, spsa {a, c, alpha, gamma,
/// stability_fraction}. Any other key must appear in `extra_keys`, otherwise
/// std::invalid_argument names the offending key.
VqeConfig vqe_config_from_json(const nlohmann::json& doc, const std::set<std::string>& extra_keys = {});

/// Inverse of vqe_config_from_json over the recognized keys.
nlohmann::json to_json(const VqeConfig& cfg);

}  // namespace sesq
