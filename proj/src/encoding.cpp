#include "sesq/encoding.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "sesq/sampling.hpp"

namespace sesq {

int register_width(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("number of sites must be >= 1");
  int n = 0;
  while ((std::uint64_t{1} << n) < static_cast<std::uint64_t>(n_sites)) ++n;
  return std::max(n, 1);
}

EncodingMap EncodingMap::build(int n_sites, EncodingMode mode) {
  EncodingMap m;
  m.n_sites_ = n_sites;
  m.n_ = register_width(n_sites);
  m.mode_ = mode;
  const BasisIndex dim = BasisIndex{1} << m.n_;
  m.inverse_.assign(dim, -1);
  m.table_.resize(static_cast<std::size_t>(n_sites));
  for (int k = 0; k < n_sites; ++k) {
    const BasisIndex c = mode == EncodingMode::Shifted ? (static_cast<BasisIndex>(k) + 1) % dim
                                                       : static_cast<BasisIndex>(k);
    m.table_[static_cast<std::size_t>(k)] = c;
    m.inverse_[c] = k;
  }
  return m;
}

std::optional<int> EncodingMap::site_of(BasisIndex codeword) const {
  if (codeword >= inverse_.size() || inverse_[codeword] < 0) return std::nullopt;
  return inverse_[codeword];
}

std::vector<BasisIndex> EncodingMap::unused_codewords() const {
  std::vector<BasisIndex> out;
  for (BasisIndex c = 0; c < inverse_.size(); ++c)
    if (inverse_[c] < 0) out.push_back(c);
  return out;
}

std::string EncodingMap::codeword_string(int site) const { return to_bitstring(codeword(site), n_); }

std::vector<BasisIndex> gray_sequence(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("Gray sequence width must be in [1, 30]");
  std::vector<BasisIndex> seq(std::size_t{1} << n);
  for (BasisIndex i = 0; i < seq.size(); ++i) seq[i] = i ^ (i >> 1);
  return seq;
}

DiffSets diff_sets(BasisIndex a, BasisIndex b, int width) {
  if (width < 1 || width > 64) throw std::invalid_argument("codeword width must be in [1, 64]");
  if (width < 64 && ((a | b) >> width) != 0) throw std::invalid_argument("codeword wider than the stated width");
  DiffSets d;
  for (int q = 0; q < width; ++q) {
    const int ba = static_cast<int>(a >> q & 1);
    const int bb = static_cast<int>(b >> q & 1);
    if (ba != bb) d.differ.push_back(q);
    else d.same.emplace_back(q, ba);
  }
  return d;
}

std::vector<HypercubeEdge> hypercube_edges(const EncodingMap& map) {
  std::vector<HypercubeEdge> edges;
  for (int j = 0; j < map.num_sites(); ++j)
    for (int l = 0; l < map.num_qubits(); ++l) {
      const auto k = map.site_of(map.codeword(j) ^ (BasisIndex{1} << l));
      if (k && *k > j) edges.push_back({j, *k, l});
    }
  return edges;
}

}  // namespace sesq
