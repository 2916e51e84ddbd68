#pragma once

// Atomic operators: T π = Φ(π) T for every order projection π.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oac/config.hpp"
#include "oac/operator.hpp"
#include "oac/partitions.hpp"
#include "oac/projection.hpp"

namespace oac {

enum class AtomicMode { singleton, full };

struct AtomicityWitness {
  PointSet carrier;
  Element element;
  Element left;   // T(π x)
  Element right;  // Φ(π)(T x)
};

struct AtomicityReport {
  bool verdict = true;
  AtomicMode mode = AtomicMode::singleton;
  std::size_t checks = 0;
  std::vector<AtomicityWitness> witnesses;
};

/// singleton: kernel[s][t] must vanish on {1} ∪ grid whenever point_map(t) != s;
///   each offending entry yields the witness π = π_{s}, x = r·e_s. This is
///   T π_{s} = Φ(π_{s}) T on the test elements r·e_s, which suffices for
///   orthogonally additive T.
/// full: T π_A x = Φ(π_A) T x evaluated directly for every carrier A and a
///   fixed family of test elements; requires |source| <= config.full_mode_cap.
AtomicityReport is_atomic(const KernelOperator& T, const BooleanHom& h, AtomicMode mode = AtomicMode::singleton,
                          const Config& config = {});

/// Pointwise lattice formulas for operators atomic subordinate to h:
///   (T∨S)x = Tx ∨ Sx, (T∧S)x = Tx ∧ Sx, T⁺x = (Tx)⁺, T⁻x = (Tx)⁻, |T|x = |Tx|,
/// realized symbolically on the kernel. Throws PreconditionError unless the
/// inputs pass is_atomic.
KernelOperator pointwise_lattice_op(OperatorLatticeKind kind, const KernelOperator& T, const KernelOperator* S,
                                    const BooleanHom& h, const Config& config = {});

/// First hom under which every operator passes the singleton check, found by
/// reading the point map off the non-vanishing kernel entries.
std::optional<BooleanHom> find_common_hom(std::span<const KernelOperator* const> ops, const Config& config = {});

enum class BandMode { closed_form, brute };

/// Σ_i Φ(π_i) T π_i x for the partition with the given blocks.
Element partition_sum(const KernelOperator& T, const BooleanHom& h, const SetPartition& partition, const Element& x);

struct PartitionRow {
  Element x;
  Element closed_form;
  Element brute_min;
  std::size_t attaining = 0;  // partitions whose sum equals brute_min
  bool singleton_attains = false;
};

struct BandProjection {
  KernelOperator result;
  BandMode mode = BandMode::closed_form;
  std::size_t partition_count = 0;
  std::vector<PartitionRow> rows;
  bool verified = true;
};

/// Component of a positive T in the band of operators atomic subordinate to h:
///   R(T) = inf { Σ Φ(π_i) T π_i : (π_i) a finite partition of the identity }.
/// The closed form keeps kernel[s][t] iff point_map(t) = s. Brute mode also
/// enumerates every set partition of the source points and tabulates the
/// pointwise minimum on `samples` (or 20 seeded samples when empty).
/// Throws PreconditionError if T is not positive on the grid, CapExceeded if
/// brute mode exceeds config.partition_cap.
BandProjection band_projection(const KernelOperator& T, const BooleanHom& h, BandMode mode = BandMode::closed_form,
                               const Config& config = {}, std::span<const Element> samples = {});

struct NamedCheck {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::string witness;
};

struct PropertyReport {
  bool passed = true;
  std::vector<NamedCheck> checks;
  void add(NamedCheck c) {
    passed = passed && c.passed;
    checks.push_back(std::move(c));
  }
};

/// 0 <= R(T)x <= Tx, R(T1+T2) = R(T1)+R(T2), R(R(T)) = R(T), and
/// R(T) = T iff is_atomic(T), each on sampled elements and the grid.
PropertyReport band_projection_properties(const KernelOperator& T1, const KernelOperator& T2, const BooleanHom& h,
                                          const Config& config = {}, std::size_t samples = 20);

/// x ⊥ y ⇒ Tx ⊥ Ty on random disjoint pairs, and T(F_x) ⊆ F_{Tx} with
/// |Ty| <= |Tx| on random fragments.
PropertyReport check_locality(const KernelOperator& T, std::size_t samples, std::uint64_t seed,
                              std::size_t cap = kDefaultSupportCap);

}  // namespace oac
