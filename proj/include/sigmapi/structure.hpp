#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sigmapi/ode.hpp"

namespace sigmapi {

/// Admissible values of one coordinate. Ordered as a meet-semilattice:
/// unrestricted is the top, open-positive the bottom, and
/// nonzero ∧ closed-positive = open-positive.
enum class DomainClass { Unrestricted, ClosedPositive, OpenPositive, Nonzero };

const char* to_string(DomainClass c);

DomainClass meet(DomainClass a, DomainClass b);

/// Domain of x^p on the real line.
DomainClass exponent_class(const Exponent& p);

struct DomainDescriptor {
  std::vector<DomainClass> classes;
  std::vector<std::size_t> macro_orthant;        // open- or closed-positive
  std::vector<std::size_t> removed_hyperplanes;  // nonzero

  /// x lies in the domain.
  bool contains(std::span<const double> x) const;
};

struct StructureReport {
  std::vector<std::size_t> criticality;               // I*
  std::vector<std::size_t> singularity;               // I_s
  std::vector<std::size_t> nonsingular_criticality;   // I* \ I_s
};

/// `ambient` (empty or one class per index) is an inherited constraint met
/// with the ODE's own classification; projected stages carry their parent's.
DomainDescriptor analyze_domain(const SigmaPiOde& ode, std::span<const DomainClass> ambient = {});

StructureReport structure(const SigmaPiOde& ode, std::span<const DomainClass> ambient = {});

struct Projection {
  SigmaPiOde ode;
  std::vector<std::size_t> original_index;  // new index -> old index
  std::vector<DomainClass> ambient;         // parent constraint on the kept indices
};

/// Restriction to the invariant set {x_j = 0, j in drop}. `drop` must be a
/// subset of the singularity indices; otherwise DomainError(InvalidProjection).
Projection project(const SigmaPiOde& ode, std::span<const std::size_t> drop,
                   std::span<const DomainClass> ambient = {});

struct DecompositionStage {
  SigmaPiOde ode;
  std::vector<std::size_t> original_index;  // stage index -> index of the input ODE
  std::vector<DomainClass> ambient;
  StructureReport report;
  std::vector<std::size_t> dropped;  // input-ODE indices removed to reach the next stage
};

/// Cascade of projections onto the singular parts. Ends at the first regular
/// stage, or at the empty (n = 0) system once every index has been dropped.
std::vector<DecompositionStage> decompose_global(const SigmaPiOde& ode);

}  // namespace sigmapi
