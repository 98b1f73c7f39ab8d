#include "sesq/profile.hpp"

#include <cmath>
#include <numeric>

namespace sesq {

AmplitudeProfile AmplitudeProfile::from_amplitudes(std::span<const Complex> alpha, double eps) {
  AmplitudeProfile p;
  const std::size_t n = alpha.size();
  p.magnitudes.resize(n);
  p.phases.assign(n, 0.0);
  p.active.assign(n, false);
  p.component.assign(n, -1);
  double ref_arg = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    p.magnitudes[j] = std::abs(alpha[j]);
    if (p.magnitudes[j] <= eps) continue;
    if (p.reference_site < 0) {
      p.reference_site = static_cast<int>(j);
      ref_arg = std::arg(alpha[j]);
    }
    p.active[j] = true;
    p.component[j] = 0;
    p.phases[j] = std::arg(alpha[j] * std::polar(1.0, -ref_arg));
  }
  return p;
}

std::vector<Complex> AmplitudeProfile::to_amplitudes() const {
  std::vector<Complex> a(magnitudes.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    if (active[j]) a[j] = std::polar(magnitudes[j], phases[j]);
  return a;
}

double AmplitudeProfile::total_weight() const {
  return std::accumulate(magnitudes.begin(), magnitudes.end(), 0.0,
                         [](double acc, double m) { return acc + m * m; });
}

}  // namespace sesq
