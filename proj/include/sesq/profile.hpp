#pragma once

#include <span>
#include <vector>

#include "sesq/kernels.hpp"

namespace sesq {

/// Per-site magnitudes and relative phases of a single-excitation state.
/// Phases are meaningful only where `active` is set; the reference site is
/// the lowest active index and carries phase 0. `component[j]` labels the
/// phase-connected component of an active site (-1 when inactive).
struct AmplitudeProfile {
  std::vector<double> magnitudes;
  std::vector<double> phases;
  std::vector<bool> active;
  std::vector<int> component;
  int reference_site = -1;

  int size() const { return static_cast<int>(magnitudes.size()); }

  /// Profile of explicit amplitudes, phases taken relative to the first site
  /// with |alpha| > eps. All active sites share component 0.
  static AmplitudeProfile from_amplitudes(std::span<const Complex> alpha, double eps = 1e-12);
  /// m_j e^{i theta_j} on active sites, 0 elsewhere.
  std::vector<Complex> to_amplitudes() const;
  double total_weight() const;
};

}  // namespace sesq
