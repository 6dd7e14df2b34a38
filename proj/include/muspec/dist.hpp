#ifndef MUSPEC_DIST_HPP
#define MUSPEC_DIST_HPP

#include "muspec/mpnum.hpp"
#include "muspec/spectra.hpp"

#include <string>
#include <vector>

namespace muspec {

/// Empirical distribution of a log-spectrum: a jump of 1/m at every point.
/// Mass lost to zero eigenvalues is reported, never renormalised.
struct StepDistribution {
	int l = 0;
	int m = 0;
	std::vector<BigReal> jumps;   // ascending, repeated for coincident points
	int missing = 0;              // zero eigenvalues excluded from the measure
	std::string warning;

	double total_mass () const { return m == 0 ? 0.0 : static_cast<double>(jumps.size()) / m; }
	double missing_mass () const { return m == 0 ? 0.0 : static_cast<double>(missing) / m; }
};

struct TailSums {
	BigReal neg;   // (1/m) sum of negative points
	BigReal pos;   // (1/m) sum of positive points
};

StepDistribution from_log_spectrum (const LogSpectrum& ls);

/// F(x): mass of the points <= x.
double evaluate (const StepDistribution& f, const BigReal& x);
double evaluate (const StepDistribution& f, double x);

TailSums tail_sums (const StepDistribution& f);
/// Integral of x dF; defined as tail.neg + tail.pos so the two always add up.
BigReal mean (const StepDistribution& f);

/// sup_x |F(x) - G(x)| over the merged jump set, in exact rational arithmetic.
double sup_distance (const StepDistribution& f, const StepDistribution& g);

/// Distribution CSV: x,F with one row per distinct jump location.
std::string distribution_csv (const StepDistribution& f, int digits);

} // namespace muspec

#endif // MUSPEC_DIST_HPP
