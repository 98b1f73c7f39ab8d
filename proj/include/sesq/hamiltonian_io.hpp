#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "sesq/hamiltonian.hpp"

namespace sesq {

/// {"n_sites": N, "entries": [[row, col, re, im], ...]} over the upper
/// triangle and diagonal; `extra` keys (generator settings, seeds) are merged
/// in at top level.
nlohmann::json hamiltonian_to_json(const SiteHamiltonian& h, const nlohmann::json& extra = nlohmann::json::object());
/// Mirrors every entry Hermitianly and validates. Lower-triangle entries are
/// accepted and conjugated; a position given twice is an error.
SiteHamiltonian hamiltonian_from_json(const nlohmann::json& doc);

SiteHamiltonian load_hamiltonian(const std::filesystem::path& path);
void save_hamiltonian(const std::filesystem::path& path, const SiteHamiltonian& h,
                      const nlohmann::json& extra = nlohmann::json::object());

}  // namespace sesq
