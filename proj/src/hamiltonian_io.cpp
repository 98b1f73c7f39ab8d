#include "sesq/hamiltonian_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace sesq {

nlohmann::json hamiltonian_to_json(const SiteHamiltonian& h, const nlohmann::json& extra) {
  nlohmann::json doc = extra.is_object() ? extra : nlohmann::json::object();
  doc["n_sites"] = h.size();
  auto entries = nlohmann::json::array();
  for (int j = 0; j < h.size(); ++j)
    for (int k = j; k < h.size(); ++k) {
      const Complex v = h(j, k);
      if (v == Complex{}) continue;
      entries.push_back({j, k, v.real(), v.imag()});
    }
  doc["entries"] = std::move(entries);
  return doc;
}

SiteHamiltonian hamiltonian_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("Hamiltonian document must be an object");
  if (!doc.contains("n_sites") || !doc["n_sites"].is_number_integer())
    throw std::invalid_argument("Hamiltonian document: 'n_sites' must be an integer");
  const auto n_signed = doc["n_sites"].get<long long>();
  if (n_signed < 1 || n_signed > kMaxDenseSites)
    throw std::invalid_argument("Hamiltonian document: 'n_sites' must be in [1, " + std::to_string(kMaxDenseSites) + "]");
  const int n = static_cast<int>(n_signed);
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw std::invalid_argument("Hamiltonian document: 'entries' must be an array");
  std::vector<Complex> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::set<std::pair<int, int>> seen;
  std::size_t index = 0;
  for (const auto& row : doc["entries"]) {
    const std::string where = "Hamiltonian document: entries[" + std::to_string(index++) + "]";
    if (!row.is_array() || row.size() != 4 || !row[0].is_number_integer() || !row[1].is_number_integer() ||
        !row[2].is_number() || !row[3].is_number())
      throw std::invalid_argument(where + " must be [row, col, re, im]");
    int j = row[0].get<int>(), k = row[1].get<int>();
    Complex v{row[2].get<double>(), row[3].get<double>()};
    if (j < 0 || k < 0 || j >= n || k >= n) throw std::invalid_argument(where + " index out of range");
    if (j > k) {
      std::swap(j, k);
      v = std::conj(v);
    }
    if (!seen.emplace(j, k).second) throw std::invalid_argument(where + " repeats position (" + std::to_string(j) + ", " + std::to_string(k) + ")");
    if (j == k && v.imag() != 0.0) throw std::invalid_argument(where + " diagonal entry must be real");
    e[static_cast<std::size_t>(j * n + k)] = v;
    e[static_cast<std::size_t>(k * n + j)] = std::conj(v);
  }
  return SiteHamiltonian::validate(n, std::move(e));
}

SiteHamiltonian load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return hamiltonian_from_json(doc);
}

void save_hamiltonian(const std::filesystem::path& path, const SiteHamiltonian& h, const nlohmann::json& extra) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write Hamiltonian file " + path.string());
  out << hamiltonian_to_json(h, extra).dump(2) << '\n';
}

}  // namespace sesq
