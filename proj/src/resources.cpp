#include "sesq/resources.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sesq/encoding.hpp"

namespace sesq {

namespace {

SpeedupRow speedup(std::string approach, double original, double other) {
  const double ratio = original / other;
  return {std::move(approach), ratio, static_cast<int>(std::floor(std::log10(ratio)))};
}

int ceil_log2(std::int64_t n_sites) {
  int n = 0;
  while ((std::int64_t{1} << n) < n_sites) ++n;
  return std::max(n, 1);
}

}  // namespace

VolumetricReport volumetric_cost(const Circuit& c, int n_settings, std::string approach) {
  if (n_settings < 1) throw std::invalid_argument("number of settings must be >= 1");
  const GateCounts m = circuit_metadata(c);
  VolumetricReport r;
  r.approach = approach.empty() ? c.label() : std::move(approach);
  r.width = m.width;
  r.depth = m.depth;
  r.settings = n_settings;
  r.volume = r.width * r.depth * r.settings;
  r.formula = "measured";
  return r;
}

AsymptoticTable asymptotic_table(std::int64_t n_sites) {
  if (n_sites < 2) throw std::invalid_argument("asymptotic table needs N >= 2");
  if (n_sites > (std::int64_t{1} << 40)) throw std::invalid_argument("asymptotic table limited to N <= 2^40");
  AsymptoticTable t;
  t.n_sites = n_sites;
  t.n = ceil_log2(n_sites);
  const double N = static_cast<double>(n_sites);
  const double n = t.n;
  const double s = 2 * n + 1;
  const auto row = [&](std::string name, double w, double d, double k, std::string formula) {
    t.rows.push_back({std::move(name), w, d, k, w * d * k, n_sites, t.n, std::move(formula)});
  };
  row("original", N, N, 3, "N * N * 3");
  row("hardware_efficient", n, n, s, "n * n * (2n+1)");
  row("full", n, N, s, "n * N * (2n+1)");
  row("gray_ses", n, N * n, s, "n * (N n) * (2n+1)");
  const double orig = t.rows[0].volume;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    t.unit_speedups.push_back(speedup(t.rows[i].approach, orig, t.rows[i].volume));
  const double orig_cf = N * N;
  t.constants_free_speedups.push_back(speedup("hardware_efficient", orig_cf, n * n * n));
  t.constants_free_speedups.push_back(speedup("full", orig_cf, N * n * n));
  t.constants_free_speedups.push_back(speedup("gray_ses", orig_cf, N * n * n * n));
  return t;
}

std::string format_table(const AsymptoticTable& t) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "N = %lld, n = %d\n\n", static_cast<long long>(t.n_sites), t.n);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-20s %14s %14s %8s %16s  %s\n", "approach", "width", "depth", "settings", "volume",
                "formula");
  out += buf;
  for (const auto& r : t.rows) {
    std::snprintf(buf, sizeof buf, "%-20s %14.6g %14.6g %8.0f %16.6e  %s\n", r.approach.c_str(), r.width, r.depth,
                  r.settings, r.volume, r.formula.c_str());
    out += buf;
  }
  const auto ratios = [&](const char* title, const std::vector<SpeedupRow>& rows) {
    out += '\n';
    out += title;
    out += '\n';
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "  original / %-20s %14.6g   (10^%d)\n", r.approach.c_str(), r.ratio, r.bucket);
      out += buf;
    }
  };
  ratios("speedup, unit constants:", t.unit_speedups);
  ratios("speedup, constants dropped (N^2 vs n^3, N n^2, N n^3):", t.constants_free_speedups);
  return out;
}

}  // namespace sesq
