// Equality cases of the local inequality for zonotopes: the measure condition,
// the generator graph, direct-sum certificates and cone volume measures.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "logbm/arith.hpp"
#include "logbm/bodies.hpp"
#include "logbm/mixedvol.hpp"

namespace logbm {

struct MeasureEqualityReport {
  AtomicSphericalMeasure lhs{1};
  AtomicSphericalMeasure rhs{1};
  bool matched = false;
  Scalar max_discrepancy;
  Scalar a;  // V(L, K, ..., K) / Vol(K)
};

/// h_K dS_{f,K,...,K} against -(1/(n-1)) f dS_{K,...,K} for
/// f = h_L - a h_K, both built as rational atoms and compared exactly.
MeasureEqualityReport check_alexandrov_condition(const Zonotope& k, const Body& l);

struct GeneratorGraph {
  std::vector<Vec> vertices;  // canonical generator directions of K
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> components;  // sorted, by smallest index
};

/// u ~ v when some atom x of S_{K,...,K} has <u, x> != 0 and <v, x> != 0.
GeneratorGraph generator_graph(const Zonotope& k);

struct DecompositionCertificate {
  bool valid = false;
  std::vector<std::vector<std::size_t>> components;  // generator indices of K
  std::vector<std::size_t> dims;
  std::vector<Scalar> scales;
  std::string reason;              // why the attempt failed
  std::vector<Vec> witness_atoms;  // atoms at which it failed
};

/// Tries to write K = C_1 + ... + C_m as a direct sum along the components of
/// the generator graph with h_L = sum a_i h_{C_i} on the atoms of S_{K,...,K}
/// and S_{L',K,...,K}, L' = sum a_i C_i. Does not evaluate the inequality.
DecompositionCertificate attempt_decomposition(const Zonotope& k, const Body& l);

/// A certificate when equality holds in the local inequality, otherwise a
/// refutation ("inequality strict" or the failing step of the decomposition).
DecompositionCertificate certify_equality(const Zonotope& k, const Body& l);

struct ConeVolumeProbe {
  bool equal_measures = false;
  bool same_body = false;
  AtomicSphericalMeasure k_measure{1};
  AtomicSphericalMeasure l_measure{1};
};

ConeVolumeProbe cone_volume_uniqueness_probe(const Zonotope& k, const Zonotope& l);

}  // namespace logbm
