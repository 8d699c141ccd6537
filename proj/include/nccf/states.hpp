#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "nccf/charfunc.hpp"

namespace nccf {

/// The 3x3-system bound entangled state family, 9x9, parameter a in [0,1].
DensityMatrix horodecki_3x3(double a);

/// Transcription variants of the closed-form characteristic function of
/// horodecki_3x3 on spin-1 ⊗ spin-1. The printed source leaves the scope of
/// the overall 1/(8a+1) prefactor over the two trailing terms ambiguous;
/// PrefactorScoped (the default and the only normalized reading, cross-
/// checked against the trace transform) keeps them inside it, LiteralTail
/// leaves them outside.
enum class HorodeckiReading { PrefactorScoped, LiteralTail };

Cplx horodecki_charfunc(double a, const SU2Element& g1, const SU2Element& g2,
                        HorodeckiReading reading = HorodeckiReading::PrefactorScoped);

// --- standard reference states (oracle fodder) ---

/// (|01> - |10>)/sqrt(2) on 2⊗2.
Vector singlet_vector();
DensityMatrix singlet();

/// Bell basis: 0 -> phi+, 1 -> phi-, 2 -> psi+, 3 -> psi- (the singlet).
Vector bell_vector(int which);

/// p · |psi-><psi-| + (1-p) I/4, p in [0,1].
DensityMatrix werner(double p);

/// p · |phi+_d><phi+_d| + (1-p) I/d^2 on d⊗d, p in [0,1].
DensityMatrix isotropic(double p, int d);

DensityMatrix product_pure(const Vector& u, const Vector& v);
DensityMatrix max_mixed(int dim);

/// sqrt(lambda)|00> + sqrt(1-lambda)|11> on 2⊗2, lambda in [0,1].
Vector schmidt_pair_vector(double lambda);
DensityMatrix schmidt_pair(double lambda);

/// Ginibre-sampled rank-r state: normalize G G^dagger for a d x rank matrix
/// of standard complex Gaussians. The generator (mt19937_64 plus an inline
/// Box-Muller) is fully specified, so a seed pins the matrix bit-for-bit.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);

/// Haar-like random unit vector / unitary from the same generator.
Vector random_pure(int dim, std::uint64_t seed);
Matrix random_unitary(int dim, std::uint64_t seed);

/// Deterministic complex-Gaussian source used by the samplers above;
/// mt19937_64 is fully specified by the standard, and the Box-Muller step is
/// done here on explicit 53-bit uniforms instead of std::normal_distribution
/// (whose output is implementation-defined).
class GaussianRng {
public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}
  double normal();
  Cplx complex_normal();  // variance 1 per complex entry

private:
  double uniform01();  // in (0,1]
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nccf
