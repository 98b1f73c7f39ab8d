#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sesq/profile.hpp"
#include "sesq/statevector.hpp"

namespace sesq {

/// Hermitian N x N site matrix of on-site energies and hoppings, immutable
/// after validation.
class SiteHamiltonian {
 public:
  /// Row-major entries. Throws if the size is not a positive square or if
  /// |h_jk - conj(h_kj)| exceeds `tolerance` anywhere (diagonal included).
  static SiteHamiltonian validate(int n_sites, std::vector<Complex> entries, double tolerance = 1e-12);
  static SiteHamiltonian validate(const std::vector<std::vector<Complex>>& rows, double tolerance = 1e-12);

  int size() const { return n_; }
  Complex operator()(int j, int k) const { return entries_[static_cast<std::size_t>(j * n_ + k)]; }
  std::span<const Complex> entries() const { return entries_; }
  /// Largest entry magnitude; a cheap scale for relative tolerances.
  double max_abs() const;

 private:
  SiteHamiltonian(int n, std::vector<Complex> entries) : n_(n), entries_(std::move(entries)) {}
  int n_ = 0;
  std::vector<Complex> entries_;
};

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

struct PauliTermList {
  int width = 0;
  std::vector<PauliTerm> terms;
  double constant_offset = 0.0;
};

/// One-hot qubit form on N qubits: h_kk (1 - Z_k)/2, Re(h_jk)/2 (X_j X_k + Y_j Y_k)
/// and Im(h_jk)/2 (Y_j X_k - X_j Y_k). Zero coefficients are dropped.
PauliTermList pauli_decompose(const SiteHamiltonian& h);

/// <e_j| H |e_k> of a term list restricted to the one-hot states, evaluated
/// term by term from the Pauli action (no dense 2^N operator).
std::vector<Complex> ses_projection(const PauliTermList& terms);

/// Dense 2^w x 2^w operator of a term list, row-major. w <= 12.
std::vector<Complex> dense_operator(const PauliTermList& terms);

struct PenaltyConfig {
  double c_p = 0.0;
  int n = 0;
};

/// Default strength: 10 x spectral range, raised when needed so that C_p
/// exceeds the largest eigenvalue of h (see README).
double default_penalty_strength(const SiteHamiltonian& h);
PenaltyConfig default_penalty(const SiteHamiltonian& h, int n);

/// 2^n x 2^n extension: h in the top-left block, C_p on the remaining diagonal.
SiteHamiltonian extend_with_penalty(const SiteHamiltonian& h, const PenaltyConfig& cfg);

inline constexpr int kMaxDenseSites = 4096;

/// Ascending eigenvalues. Throws above kMaxDenseSites.
std::vector<double> exact_spectrum(const SiteHamiltonian& h);
/// Ascending eigenvalues with unit eigenvectors (column j of the row-major
/// matrix belongs to eigenvalue j).
std::pair<std::vector<double>, std::vector<Complex>> exact_eigensystem(const SiteHamiltonian& h);
double ground_energy(const SiteHamiltonian& h);

/// alpha^dagger h alpha, without normalization.
double quadratic_form(const SiteHamiltonian& h, std::span<const Complex> alpha);

/// Energy functional over magnitudes and phases: diagonal terms for every
/// site, cross terms 2|a_j||a_k| (Re h_jk cos d - Im h_jk sin d), d = theta_k - theta_j,
/// for pairs with both endpoints active.
double energy_from_profile(const SiteHamiltonian& h, const AmplitudeProfile& p);

/// Pairs (j < k) with h_jk != 0 whose endpoints are both active but lie in
/// different phase components, so their relative phase was never measured.
std::vector<std::pair<int, int>> unresolved_pairs(const SiteHamiltonian& h, const AmplitudeProfile& p);

// Instance generators. All are deterministic in their arguments.

/// Open chain with hopping `t` on every bond (j, j+1) and on-site energies
/// uniform in [-disorder/2, disorder/2].
SiteHamiltonian make_chain(int n_sites, double t, double disorder, std::uint64_t seed);
/// Independent Gaussian entries: real diagonal N(0,1), off-diagonal real and
/// imaginary parts N(0, 1/2).
SiteHamiltonian make_random_hermitian(int n_sites, std::uint64_t seed);
/// Ring with hopping t e^{i phi} on (j, j+1 mod N) and Gaussian on-site
/// energies of standard deviation `disorder`. N = 2 has a single bond.
SiteHamiltonian make_complex_ring(int n_sites, double t, double phi, double disorder, std::uint64_t seed);

}  // namespace sesq
