#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sesq/circuit.hpp"

namespace sesq {

/// width x depth x settings, either measured from a circuit or evaluated from
/// an asymptotic formula.
struct VolumetricReport {
  std::string approach;
  double width = 0;
  double depth = 0;
  double settings = 0;
  double volume = 0;
  /// Asymptotic rows only.
  std::int64_t n_sites = 0;
  int n = 0;
  std::string formula;
};

VolumetricReport volumetric_cost(const Circuit& c, int n_settings, std::string approach = {});

struct SpeedupRow {
  std::string approach;
  /// Original volume divided by this approach's volume.
  double ratio = 0.0;
  /// floor(log10(ratio)).
  int bucket = 0;
};

struct AsymptoticTable {
  std::int64_t n_sites = 0;
  int n = 0;
  /// Unit constants inside every O(.): Original N*N*3, HE n*n*(2n+1),
  /// Full n*N*(2n+1), Gray n*(N n)*(2n+1).
  std::vector<VolumetricReport> rows;
  std::vector<SpeedupRow> unit_speedups;
  /// Constants dropped entirely: Original N^2 against HE n^3, Full N n^2 and
  /// Gray N n^3.
  std::vector<SpeedupRow> constants_free_speedups;
};

AsymptoticTable asymptotic_table(std::int64_t n_sites);

/// Aligned plain-text rendering of both conventions.
std::string format_table(const AsymptoticTable& t);

}  // namespace sesq
