#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "sesq/measurement.hpp"
#include "sesq/resources.hpp"
#include "sesq/vqe.hpp"

namespace sesq {

inline constexpr const char* kVersion = "0.1.0";

/// Provenance block embedded in every report.
struct RunManifest {
  std::string command;
  std::string config_path;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  int threads = 1;
  double wall_time_seconds = 0.0;
};

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const AmplitudeProfile& p, const EncodingMap* map = nullptr);
nlohmann::json to_json(const PhaseGraph& g);
nlohmann::json to_json(const ReconstructionDiagnostics& d);
nlohmann::json to_json(const SettingEstimates& s);
nlohmann::json to_json(const EnergyEstimate& e, const EncodingMap* map = nullptr);
nlohmann::json to_json(const VqeResult& r);
nlohmann::json to_json(const VolumetricReport& r);
nlohmann::json to_json(const AsymptoticTable& t);

/// "evaluation,energy,best_so_far" rows.
std::string trace_csv(const VqeResult& r);

}  // namespace sesq
