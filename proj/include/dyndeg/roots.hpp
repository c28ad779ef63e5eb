#pragma once

#include "dyndeg/matrix.hpp"

#include <vector>

namespace dyndeg {

// A disc {|z - center| <= radius} holding exactly one distinct root of the
// polynomial, repeated `multiplicity` times.
struct RootEnclosure {
  Rat re, im;
  double radius = 0.0; // upper bound
  Interval modulus;
  unsigned multiplicity = 1;
  bool real = false; // certified real
};

// Certified isolation of all complex roots of an integer polynomial given
// highest degree first. Modulus intervals have width <= eps * max(1, modulus).
// NonConvergence after 10^4 refinement steps.
std::vector<RootEnclosure> isolate_roots(const std::vector<Int> &coeffs, double eps);

struct SpectralReport {
  std::vector<Int> char_poly;       // monic up to a positive scale, highest first
  std::vector<Interval> root_moduli; // descending, with multiplicity
  Interval radius;
  std::vector<RootEnclosure> roots;
};

SpectralReport spectral_report(const std::vector<Int> &char_poly, double eps);
SpectralReport spectral_report(const IntMatrix &m, double eps);
SpectralReport spectral_report(const RatMatrix &m, double eps);

Interval spectral_radius_certified(const IntMatrix &m, double eps);

// Integer polynomial with the same roots as a rational one.
std::vector<Int> clear_denominators(const std::vector<Rat> &coeffs);

} // namespace dyndeg
