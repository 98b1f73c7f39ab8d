#include "sesq/hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sesq {

namespace {

Eigen::MatrixXcd to_eigen(const SiteHamiltonian& h) {
  const int n = h.size();
  Eigen::MatrixXcd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = h(j, k);
  return m;
}

void check_budget(const SiteHamiltonian& h) {
  if (h.size() > kMaxDenseSites)
    throw std::invalid_argument("dense diagonalization limited to " + std::to_string(kMaxDenseSites) + " sites");
}

}  // namespace

SiteHamiltonian SiteHamiltonian::validate(int n_sites, std::vector<Complex> entries, double tolerance) {
  if (n_sites < 1) throw std::invalid_argument("Hamiltonian needs at least one site");
  if (entries.size() != static_cast<std::size_t>(n_sites) * static_cast<std::size_t>(n_sites))
    throw std::invalid_argument("Hamiltonian entries do not form a square matrix");
  for (int j = 0; j < n_sites; ++j)
    for (int k = j; k < n_sites; ++k) {
      const Complex a = entries[static_cast<std::size_t>(j * n_sites + k)];
      const Complex b = entries[static_cast<std::size_t>(k * n_sites + j)];
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw std::invalid_argument("Hamiltonian has a non-finite entry");
      if (std::abs(a - std::conj(b)) > tolerance)
        throw std::invalid_argument("Hamiltonian is not Hermitian at (" + std::to_string(j) + ", " +
                                    std::to_string(k) + ")");
    }
  return SiteHamiltonian(n_sites, std::move(entries));
}

SiteHamiltonian SiteHamiltonian::validate(const std::vector<std::vector<Complex>>& rows, double tolerance) {
  const int n = static_cast<int>(rows.size());
  std::vector<Complex> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw std::invalid_argument("Hamiltonian entries do not form a square matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return validate(n, std::move(flat), tolerance);
}

double SiteHamiltonian::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

PauliTermList pauli_decompose(const SiteHamiltonian& h) {
  const int n = h.size();
  PauliTermList out;
  out.width = n;
  for (int k = 0; k < n; ++k) {
    const double e = h(k, k).real();
    if (e == 0.0) continue;
    out.constant_offset += e / 2;
    out.terms.push_back({-e / 2, PauliString::single(n, k, Pauli::Z)});
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const Complex v = h(j, k);
      if (v.real() != 0.0) {
        out.terms.push_back({v.real() / 2, PauliString::pair(n, j, Pauli::X, k, Pauli::X)});
        out.terms.push_back({v.real() / 2, PauliString::pair(n, j, Pauli::Y, k, Pauli::Y)});
      }
      if (v.imag() != 0.0) {
        out.terms.push_back({v.imag() / 2, PauliString::pair(n, j, Pauli::Y, k, Pauli::X)});
        out.terms.push_back({-v.imag() / 2, PauliString::pair(n, j, Pauli::X, k, Pauli::Y)});
      }
    }
  return out;
}

std::vector<Complex> ses_projection(const PauliTermList& terms) {
  const int n = terms.width;
  if (n > 64) throw std::invalid_argument("one-hot projection limited to 64 qubits");
  std::vector<Complex> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k * n + k)] += terms.constant_offset;
  for (const auto& t : terms.terms) {
    const auto m = t.string.masks();
    const Complex c = t.coefficient * t.string.coefficient();
    for (int k = 0; k < n; ++k) {
      const BasisIndex ket = BasisIndex{1} << k;
      const BasisIndex bra = ket ^ m.flip_mask;
      if (std::popcount(bra) != 1) continue;
      const int j = std::countr_zero(bra);
      out[static_cast<std::size_t>(j * n + k)] += c * kernels::pauli_phase(ket, m);
    }
  }
  return out;
}

std::vector<Complex> dense_operator(const PauliTermList& terms) {
  const int w = terms.width;
  if (w > 12) throw std::invalid_argument("dense operator limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << w;
  std::vector<Complex> out(dim * dim);
  for (std::size_t b = 0; b < dim; ++b) out[b * dim + b] += terms.constant_offset;
  for (const auto& t : terms.terms) {
    const auto m = t.string.masks();
    const Complex c = t.coefficient * t.string.coefficient();
    for (BasisIndex b = 0; b < dim; ++b) out[(b ^ m.flip_mask) * dim + b] += c * kernels::pauli_phase(b, m);
  }
  return out;
}

double default_penalty_strength(const SiteHamiltonian& h) {
  const auto spec = exact_spectrum(h);
  const double lo = spec.front(), hi = spec.back();
  const double range = hi - lo;
  double c_p = 10.0 * range;
  // A shifted spectrum (all energies large and positive) or a flat one can
  // leave 10 x range at or below the physical levels; lift C_p clear of them.
  if (c_p <= hi) {
    const double scale = std::max({range, std::abs(hi), std::abs(lo), 1.0});
    c_p = hi + 10.0 * scale;
  }
  return c_p;
}

PenaltyConfig default_penalty(const SiteHamiltonian& h, int n) { return {default_penalty_strength(h), n}; }

SiteHamiltonian extend_with_penalty(const SiteHamiltonian& h, const PenaltyConfig& cfg) {
  if (!(cfg.c_p > 0.0)) throw std::invalid_argument("penalty strength C_p must be positive");
  if (cfg.n < 1 || cfg.n > 12) throw std::invalid_argument("penalty register width must be in [1, 12]");
  const int dim = 1 << cfg.n;
  if (dim < h.size()) throw std::invalid_argument("2^n is smaller than the number of sites");
  std::vector<Complex> e(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
  for (int j = 0; j < h.size(); ++j)
    for (int k = 0; k < h.size(); ++k) e[static_cast<std::size_t>(j * dim + k)] = h(j, k);
  for (int j = h.size(); j < dim; ++j) e[static_cast<std::size_t>(j * dim + j)] = cfg.c_p;
  return SiteHamiltonian::validate(dim, std::move(e));
}

std::vector<double> exact_spectrum(const SiteHamiltonian& h) {
  check_budget(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::pair<std::vector<double>, std::vector<Complex>> exact_eigensystem(const SiteHamiltonian& h) {
  check_budget(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h));
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  const auto& ev = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  const int n = h.size();
  std::vector<Complex> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) flat[static_cast<std::size_t>(r * n + c)] = vecs(r, c);
  return {{ev.data(), ev.data() + ev.size()}, std::move(flat)};
}

double ground_energy(const SiteHamiltonian& h) { return exact_spectrum(h).front(); }

double quadratic_form(const SiteHamiltonian& h, std::span<const Complex> alpha) {
  const int n = h.size();
  if (static_cast<int>(alpha.size()) != n) throw std::invalid_argument("amplitude vector length differs from N");
  Complex acc{};
  for (int j = 0; j < n; ++j) {
    Complex row{};
    for (int k = 0; k < n; ++k) row += h(j, k) * alpha[static_cast<std::size_t>(k)];
    acc += std::conj(alpha[static_cast<std::size_t>(j)]) * row;
  }
  return acc.real();
}

double energy_from_profile(const SiteHamiltonian& h, const AmplitudeProfile& p) {
  const int n = h.size();
  if (p.size() != n) throw std::invalid_argument("profile length differs from N");
  if (p.total_weight() > 1.0 + 1e-6) throw std::invalid_argument("profile weight exceeds 1");
  double e = 0.0;
  for (int k = 0; k < n; ++k) {
    const double m = p.magnitudes[static_cast<std::size_t>(k)];
    e += h(k, k).real() * m * m;
  }
  for (int j = 0; j < n; ++j) {
    if (!p.active[static_cast<std::size_t>(j)]) continue;
    for (int k = j + 1; k < n; ++k) {
      if (!p.active[static_cast<std::size_t>(k)]) continue;
      const Complex v = h(j, k);
      if (v == Complex{}) continue;
      const double d = p.phases[static_cast<std::size_t>(k)] - p.phases[static_cast<std::size_t>(j)];
      const double mm = p.magnitudes[static_cast<std::size_t>(j)] * p.magnitudes[static_cast<std::size_t>(k)];
      e += 2.0 * mm * (v.real() * std::cos(d) - v.imag() * std::sin(d));
    }
  }
  return e;
}

std::vector<std::pair<int, int>> unresolved_pairs(const SiteHamiltonian& h, const AmplitudeProfile& p) {
  std::vector<std::pair<int, int>> out;
  const int n = h.size();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const auto uj = static_cast<std::size_t>(j), uk = static_cast<std::size_t>(k);
      if (!p.active[uj] || !p.active[uk] || h(j, k) == Complex{}) continue;
      if (p.component[uj] != p.component[uk]) out.emplace_back(j, k);
    }
  return out;
}

SiteHamiltonian make_chain(int n_sites, double t, double disorder, std::uint64_t seed) {
  if (n_sites < 1) throw std::invalid_argument("chain needs at least one site");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> onsite(-disorder / 2, disorder / 2);
  const auto n = static_cast<std::size_t>(n_sites);
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[j * n + j] = disorder > 0 ? onsite(rng) : 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    e[j * n + j + 1] = t;
    e[(j + 1) * n + j] = t;
  }
  return SiteHamiltonian::validate(n_sites, std::move(e));
}

SiteHamiltonian make_random_hermitian(int n_sites, std::uint64_t seed) {
  if (n_sites < 1) throw std::invalid_argument("random Hamiltonian needs at least one site");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> diag(0.0, 1.0);
  std::normal_distribution<double> off(0.0, std::sqrt(0.5));
  const auto n = static_cast<std::size_t>(n_sites);
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j * n + j] = diag(rng);
    for (std::size_t k = j + 1; k < n; ++k) {
      const double re = off(rng);
      const double im = off(rng);
      e[j * n + k] = {re, im};
      e[k * n + j] = {re, -im};
    }
  }
  return SiteHamiltonian::validate(n_sites, std::move(e));
}

SiteHamiltonian make_complex_ring(int n_sites, double t, double phi, double disorder, std::uint64_t seed) {
  if (n_sites < 1) throw std::invalid_argument("ring needs at least one site");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> onsite(0.0, disorder > 0 ? disorder : 1.0);
  const auto n = static_cast<std::size_t>(n_sites);
  std::vector<Complex> e(n * n);
  for (std::size_t j = 0; j < n; ++j) e[j * n + j] = disorder > 0 ? onsite(rng) : 0.0;
  const Complex hop = std::polar(t, phi);
  const std::size_t bonds = n == 1 ? 0 : (n == 2 ? 1 : n);
  for (std::size_t j = 0; j < bonds; ++j) {
    const std::size_t k = (j + 1) % n;
    e[j * n + k] += hop;
    e[k * n + j] += std::conj(hop);
  }
  return SiteHamiltonian::validate(n_sites, std::move(e));
}

}  // namespace sesq
