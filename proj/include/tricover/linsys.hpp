#pragma once

// h^0 of divisor classes on blow-ups of P^2, computed as the nullity of the
// interpolation matrix of plane curves over a large prime field at random
// point configurations, plus a catalog-relative nef/big test.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tricover/modp.hpp"
#include "tricover/picard.hpp"

namespace tricover {

struct H0Options {
  std::uint64_t prime = 2147483647;
  std::uint64_t seed = 0;
  int trials = 5;
};

/// Coordinates realizing a BlowupSurface over F_p. Proper points are in the
/// affine chart z = 1; an infinitely-near point stores the slope of its
/// tangent direction at the parent (in local coordinates u = x - px,
/// v = y - py the direction is v = slope * u).
struct ConcreteConfiguration {
  BlowupSurface surface;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::vector<std::array<modp::Elem, 2>> points;
  std::vector<modp::Elem> slopes;
};

/// Deterministic in (surface, prime, seed). Imposes exactly the declared
/// collinearities and direction tags; rejects samples with unforced
/// collinear triples, unforced co-conic sextuples or coinciding directions.
/// Throws InputError when prime <= 10^6 or is not prime, when a point is
/// infinitely near to an infinitely-near point, or when no valid sample is
/// found after bounded retries.
ConcreteConfiguration sample_configuration(const BlowupSurface& s, std::uint64_t prime,
                                           std::uint64_t seed);

/// `opts.trials` configurations with seeds opts.seed, opts.seed + 1, ...
std::vector<ConcreteConfiguration> sample_configurations(const BlowupSurface& s,
                                                         const H0Options& opts);

/// Removes fixed exceptional components: afterwards every leaf multiplicity
/// is >= 0 and every parent multiplicity dominates the sum of its children.
/// The result has the same h^0.
DivisorClass unload(const DivisorClass& c, const BlowupSurface& s);

/// h^0 at one configuration.
int h0(const DivisorClass& c, const ConcreteConfiguration& cfg);
/// Minimum over the given configurations (the generic value).
int h0(const DivisorClass& c, std::span<const ConcreteConfiguration> cfgs);
/// Samples opts.trials configurations of `s` and takes the minimum.
int h0(const DivisorClass& c, const BlowupSurface& s, const H0Options& opts);

struct CatalogCurve {
  std::string name;
  DivisorClass cls;
};

/// Effective classes of negative self-intersection used to certify nefness:
/// exceptional curves, strict exceptionals, lines through pairs of proper
/// points and declared collinear groups, conics through five proper points.
struct NegativeCurveCatalog {
  std::vector<CatalogCurve> curves;
};

NegativeCurveCatalog negative_curve_catalog(std::span<const ConcreteConfiguration> cfgs);

struct NefBig {
  bool nef = false;
  bool big = false;
  /// Name of the first curve with negative intersection, when not nef.
  std::string obstruction;
};

/// Nef relative to the catalog (and to l); big means nef with positive square.
NefBig is_nef_big(const DivisorClass& c, const NegativeCurveCatalog& catalog);

}  // namespace tricover
