#pragma once

#include "gact/complex.hpp"

#include <vector>

namespace gact {

/// The standard n-simplex with base vertices "0".."n" (color i, unit coordinates) on a fresh table.
ChromaticComplex standard_simplex(int n);

/// Every ordered partition of {0..k-1}, as the block index of each element.
std::vector<std::vector<int>> ordered_partitions(int k);

/// Maximal simplices of the chromatic subdivision of one simplex (vertices are interned).
std::vector<Simplex> chr_simplex(VertexTable& t, const Simplex& sigma);

/// One round of standard chromatic subdivision of every simplex of c.
ChromaticComplex chr(const ChromaticComplex& c);
ChromaticComplex chr_iter(const ChromaticComplex& c, int m);

/// Carrier of a level-`from` simplex in the level-`to` complex (to <= from), computed combinatorially.
Simplex carrier_of(const VertexTable& t, const Simplex& s, int from, int to);

/// Smallest face of the base complex containing the simplex.
Simplex base_carrier(const VertexTable& t, const Simplex& s);

struct SubdivisionStats {
  std::vector<std::size_t> simplices_by_dim;
  std::size_t vertices = 0;
  Rational total_volume;  ///< sum of |volume| of top-dimensional simplices, per base face spanned
};
SubdivisionStats subdivision_stats(const ChromaticComplex& c);

}  // namespace gact
