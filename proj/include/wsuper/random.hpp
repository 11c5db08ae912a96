#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wsuper/diffpoly.hpp"
#include "wsuper/errors.hpp"
#include "wsuper/lambda.hpp"

namespace wsuper {

struct RandomSpec {
  unsigned max_degree = 3;
  unsigned max_order = 2;
  unsigned max_terms = 3;
  int max_coefficient = 3;
  bool symbolic_coefficients = false;
};

/// Reproducible random elements of S(C[∂]⊗V) for property tests.
class RandomPolys {
 public:
  RandomPolys(SpacePtr space, std::uint64_t seed, RandomSpec spec = {})
      : space_(std::move(space)), rng_(seed), spec_(spec) {}

  std::mt19937_64& rng() { return rng_; }

  Scalar coefficient() {
    std::uniform_int_distribution<int> num(-spec_.max_coefficient, spec_.max_coefficient);
    std::uniform_int_distribution<int> den(1, 3);
    int n = 0;
    while (n == 0) n = num(rng_);
    Rational q(n, den(rng_));
    q.canonicalize();
    Scalar c(q);
    if (spec_.symbolic_coefficients) {
      std::uniform_int_distribution<int> e(-1, 1);
      c = c * Scalar::monomial(1, e(rng_));
    }
    return c;
  }

  Sym symbol() {
    std::uniform_int_distribution<std::size_t> gen(0, space_->size() - 1);
    std::uniform_int_distribution<unsigned> ord(0, spec_.max_order);
    std::size_t g = gen(rng_);
    return make_sym(g, ord(rng_), space_->parity(g));
  }

  Monomial monomial(unsigned degree) {
    Monomial m;
    for (unsigned i = 0; i < degree; ++i) m.push_back(symbol());
    return m;
  }

  /// Sum of up to max_terms random monomials of degree 1..max_degree; parities may be mixed.
  DiffPoly poly() {
    std::uniform_int_distribution<unsigned> nterms(1, spec_.max_terms), deg(1, spec_.max_degree);
    DiffPoly p(space_);
    unsigned n = nterms(rng_);
    for (unsigned i = 0; i < n; ++i) p += DiffPoly::term(space_, coefficient(), monomial(deg(rng_)));
    return p;
  }

  /// Sum of random terms all of the given parity.
  DiffPoly homogeneous(int parity) {
    bool has_odd = false;
    for (std::size_t i = 0; i < space_->size(); ++i) has_odd |= space_->parity(i) == 1;
    if (parity == 1 && !has_odd) throw Error("no odd generators in " + space_->label());
    std::uniform_int_distribution<unsigned> nterms(1, spec_.max_terms);
    unsigned n = nterms(rng_);
    DiffPoly p(space_);
    while (p.is_zero() || n > 0) {
      DiffPoly t = homogeneous();
      if (t.parity() != parity) continue;
      p += t;
      if (n > 0) --n;
    }
    return p;
  }

  /// A single nonzero term, hence parity-homogeneous.
  DiffPoly homogeneous() {
    std::uniform_int_distribution<unsigned> deg(1, spec_.max_degree);
    while (true) {
      DiffPoly p = DiffPoly::term(space_, coefficient(), monomial(deg(rng_)));
      if (!p.is_zero()) return p;
    }
  }

 private:
  SpacePtr space_;
  std::mt19937_64 rng_;
  RandomSpec spec_;
};

}  // namespace wsuper
