#include "sigmapi/structure.hpp"

#include <algorithm>
#include <string>

#include "sigmapi/errors.hpp"

namespace sigmapi {

const char* to_string(DomainClass c) {
  switch (c) {
    case DomainClass::Unrestricted: return "unrestricted";
    case DomainClass::ClosedPositive: return "closed-positive";
    case DomainClass::OpenPositive: return "open-positive";
    case DomainClass::Nonzero: return "nonzero";
  }
  return "unknown";
}

DomainClass meet(DomainClass a, DomainClass b) {
  if (a == b || b == DomainClass::Unrestricted) return a;
  if (a == DomainClass::Unrestricted) return b;
  // any two distinct restricted classes meet in the open half-line
  return DomainClass::OpenPositive;
}

DomainClass exponent_class(const Exponent& p) {
  const double v = p.value();
  if (v == 0.0) return DomainClass::Unrestricted;
  const bool odd = p.rational() && p.rational()->odd_denominator();
  if (odd) return v > 0.0 ? DomainClass::Unrestricted : DomainClass::Nonzero;
  return v > 0.0 ? DomainClass::ClosedPositive : DomainClass::OpenPositive;
}

bool DomainDescriptor::contains(std::span<const double> x) const {
  for (std::size_t j = 0; j < classes.size() && j < x.size(); ++j) {
    switch (classes[j]) {
      case DomainClass::Unrestricted: break;
      case DomainClass::ClosedPositive:
        if (!(x[j] >= 0.0)) return false;
        break;
      case DomainClass::OpenPositive:
        if (!(x[j] > 0.0)) return false;
        break;
      case DomainClass::Nonzero:
        if (x[j] == 0.0) return false;
        break;
    }
  }
  return true;
}

namespace {

void check_ambient(const SigmaPiOde& ode, std::span<const DomainClass> ambient) {
  if (!ambient.empty() && ambient.size() != ode.dim())
    throw Error(ErrorCode::InvalidArgument, "ambient domain has the wrong dimension");
}

}  // namespace

DomainDescriptor analyze_domain(const SigmaPiOde& ode, std::span<const DomainClass> ambient) {
  check_ambient(ode, ambient);
  DomainDescriptor d;
  d.classes.assign(ode.dim(), DomainClass::Unrestricted);
  if (!ambient.empty()) d.classes.assign(ambient.begin(), ambient.end());
  for (const auto& eq : ode.equations())
    for (const auto& term : eq)
      for (const auto& [j, p] : term.monomial.factors())
        d.classes[j] = meet(d.classes[j], exponent_class(p));
  for (std::size_t j = 0; j < ode.dim(); ++j) {
    switch (d.classes[j]) {
      case DomainClass::ClosedPositive:
      case DomainClass::OpenPositive: d.macro_orthant.push_back(j); break;
      case DomainClass::Nonzero: d.removed_hyperplanes.push_back(j); break;
      case DomainClass::Unrestricted: break;
    }
  }
  return d;
}

StructureReport structure(const SigmaPiOde& ode, std::span<const DomainClass> ambient) {
  const auto domain = analyze_domain(ode, ambient);
  StructureReport r;
  for (std::size_t j = 0; j < ode.dim(); ++j) {
    if (domain.classes[j] != DomainClass::Unrestricted) continue;
    r.criticality.push_back(j);
    const auto eq = ode.equation(j);
    const bool singular = std::all_of(eq.begin(), eq.end(), [j](const Term& term) {
      return term.coeff.is_zero() || term.monomial.exponent(j).value() > 0.0;
    });
    (singular ? r.singularity : r.nonsingular_criticality).push_back(j);
  }
  return r;
}

Projection project(const SigmaPiOde& ode, std::span<const std::size_t> drop,
                   std::span<const DomainClass> ambient) {
  const std::size_t n = ode.dim();
  const auto report = structure(ode, ambient);
  std::vector<bool> dropped(n, false);
  for (std::size_t j : drop) {
    if (j >= n || !std::binary_search(report.singularity.begin(), report.singularity.end(), j))
      throw DomainError(ErrorCode::InvalidProjection,
                        "x" + std::to_string(j + 1) + " is not a singularity index");
    dropped[j] = true;
  }
  Projection out;
  std::vector<std::size_t> renumber(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (dropped[j]) continue;
    renumber[j] = out.original_index.size();
    out.original_index.push_back(j);
  }
  const auto parent = analyze_domain(ode, ambient).classes;
  for (std::size_t j : out.original_index) out.ambient.push_back(parent[j]);

  std::vector<std::vector<Term>> eqs;
  for (std::size_t i : out.original_index) {
    std::vector<Term> kept;
    for (const auto& term : ode.equation(i)) {
      bool vanishes = false;
      for (const auto& [j, p] : term.monomial.factors()) {
        if (!dropped[j]) continue;
        if (p.value() < 0.0)
          throw DomainError(ErrorCode::InvalidProjection,
                            "x" + std::to_string(j + 1) + " has a negative exponent in equation " +
                                std::to_string(i + 1));
        vanishes = true;
      }
      if (!vanishes) kept.push_back({term.coeff, term.monomial.renumbered(renumber)});
    }
    eqs.push_back(std::move(kept));
  }
  out.ode = SigmaPiOde(std::move(eqs));
  return out;
}

std::vector<DecompositionStage> decompose_global(const SigmaPiOde& ode) {
  std::vector<DecompositionStage> chain;
  DecompositionStage stage;
  stage.ode = ode;
  for (std::size_t j = 0; j < ode.dim(); ++j) stage.original_index.push_back(j);
  while (true) {
    stage.report = structure(stage.ode, stage.ambient);
    const auto& drop = stage.report.singularity;
    if (drop.empty() || stage.ode.dim() == 0) {
      chain.push_back(std::move(stage));
      break;
    }
    auto next_proj = project(stage.ode, drop, stage.ambient);
    for (std::size_t j : drop) stage.dropped.push_back(stage.original_index[j]);
    DecompositionStage next;
    next.ode = std::move(next_proj.ode);
    next.ambient = std::move(next_proj.ambient);
    for (std::size_t j : next_proj.original_index) next.original_index.push_back(stage.original_index[j]);
    chain.push_back(std::move(stage));
    stage = std::move(next);
  }
  return chain;
}

}  // namespace sigmapi
