#pragma once

#include "gact/complex.hpp"

#include <map>
#include <string>
#include <vector>

namespace gact {

/**
 * Colorless-free task (I, O, Δ). Input and output share one vertex table; Δ maps each
 * input simplex to a subcomplex of O (absent entries mean the empty image).
 */
struct TaskSpec {
  ChromaticComplex input;
  ChromaticComplex output;
  std::map<Simplex, ChromaticComplex> delta;

  int n() const { return input.dimension(); }
  /// Δ(σ); the empty complex when σ has no entry.
  ChromaticComplex image(const Simplex& sigma) const;
  bool image_contains(const Simplex& sigma, const Simplex& out) const;
};

std::vector<std::string> validate_task(const TaskSpec& t);

/// Δ(σ) = closure of σ, with I = O.
TaskSpec identity_task(const ChromaticComplex& input);

/// Δ(t) = L ∩ Chr^k t for every face t of s. L must be pure of dimension n and every image pure.
TaskSpec affine_task(const ChromaticComplex& s, const ChromaticComplex& l);

/// Top simplices of Chr² s whose vertex carrier dimensions are a permutation of 0..n.
TaskSpec total_order_task(int n);

/// Simplices of Chr² s with every vertex on a face of dimension at least n - t.
TaskSpec lt_task(int n, int t);

/// One no-output vertex per color; images padded within the colors of each input simplex.
TaskSpec plus_completion(const TaskSpec& t);

/// Dimension of the smallest face of the base simplex containing v.
int carrier_dimension(const VertexTable& t, VertexId v);

}  // namespace gact
