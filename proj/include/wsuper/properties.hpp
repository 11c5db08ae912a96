#pragma once

#include <cstdint>
#include <string>

#include "wsuper/lambda.hpp"
#include "wsuper/random.hpp"
#include "wsuper/report.hpp"
#include "wsuper/text.hpp"

namespace wsuper {

/// Randomized axioms of the supercommutative differential algebra: associativity, Koszul commutativity,
/// distributivity, the Leibniz rule for ∂, nilpotency of odd elements and text round trip. Five identities per case.
inline CheckReport check_diffpoly_axioms(const SpacePtr& space, std::uint64_t seed, std::size_t cases,
                                         RandomSpec spec = {}) {
  CheckReport rep{"diffpoly axioms"};
  RandomPolys rnd(space, seed, spec);
  bool has_odd = false;
  for (std::size_t i = 0; i < space->size(); ++i) has_odd |= space->parity(i) == 1;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t n = 0; n < cases; ++n) {
    ++rep.checked;
    int pa = has_odd && coin(rnd.rng()), pb = has_odd && coin(rnd.rng());
    DiffPoly a = rnd.homogeneous(pa), b = rnd.homogeneous(pb), c = rnd.poly();
    std::string where = " for a = " + a.str() + ", b = " + b.str();
    if ((a * b) * c != a * (b * c)) rep.fail("associativity" + where);
    if (a * b != b * a * Scalar((pa & pb) ? -1 : 1)) rep.fail("Koszul commutativity" + where);
    if (a * (b + c) != a * b + a * c) rep.fail("distributivity" + where);
    if ((a * c).partial() != a.partial() * c + a * c.partial()) rep.fail("Leibniz rule for ∂" + where);
    if (pa && !(a * a).is_zero()) rep.fail("odd square" + where);
    if (parse_poly(space, c.str()) != c) rep.fail("text round trip of " + c.str());
  }
  return rep;
}

/// Skewsymmetry and Jacobi of the extended λ-bracket on random parity-homogeneous triples.
inline CheckReport check_pva_axioms(const LambdaEngine& eng, std::uint64_t seed, std::size_t triples,
                                    RandomSpec spec = {}) {
  CheckReport rep{"PVA axioms on " + eng.space()->label()};
  RandomPolys rnd(eng.space(), seed, spec);
  bool has_odd = false;
  for (std::size_t i = 0; i < eng.space()->size(); ++i) has_odd |= eng.space()->parity(i) == 1;
  std::bernoulli_distribution coin(0.5);
  auto pick = [&] { return rnd.homogeneous(has_odd && coin(rnd.rng())); };
  for (std::size_t n = 0; n < triples; ++n) {
    DiffPoly a = pick(), b = pick(), c = pick();
    ++rep.checked;
    LambdaPoly s = skew_residual(eng, a, b);
    if (!s.is_zero()) rep.fail("skewsymmetry for " + a.str() + ", " + b.str() + ": " + s.str());
    ++rep.checked;
    BiLambdaPoly j = jacobi_residual(eng, a, b, c);
    if (!j.empty()) rep.fail("Jacobi for " + a.str() + ", " + b.str() + ", " + c.str());
  }
  return rep;
}

}  // namespace wsuper
