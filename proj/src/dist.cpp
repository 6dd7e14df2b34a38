#include "muspec/dist.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace muspec {

namespace {

Precision working_bits (const StepDistribution& f) {
	Precision p = BigReal::kMinPrecision;
	for (const auto& x : f.jumps) p = std::max(p, x.precision());
	return p;
}

// Number of jumps <= x.
long count_le (const std::vector<BigReal>& jumps, const BigReal& x) {
	return static_cast<long>(std::upper_bound(jumps.begin(), jumps.end(), x,
		[](const BigReal& a, const BigReal& b) { return mpfr_less_p(a.get(), b.get()); }) - jumps.begin());
}

} // namespace

StepDistribution from_log_spectrum (const LogSpectrum& ls) {
	StepDistribution f;
	f.l = ls.l;
	f.m = ls.m;
	f.jumps = ls.points;
	std::sort(f.jumps.begin(), f.jumps.end(), [](const BigReal& a, const BigReal& b) { return mpfr_less_p(a.get(), b.get()); });
	f.missing = ls.zero_count;
	if (f.jumps.empty()) f.warning = "no nonzero eigenvalues: zero measure";
	else if (f.missing > 0) f.warning = std::to_string(f.missing) + " zero eigenvalue(s) excluded; total mass below 1";
	return f;
}

double evaluate (const StepDistribution& f, const BigReal& x) {
	if (f.m == 0) return 0.0;
	return static_cast<double>(count_le(f.jumps, x)) / f.m;
}

double evaluate (const StepDistribution& f, double x) {
	return evaluate(f, BigReal(x, working_bits(f)));
}

TailSums tail_sums (const StepDistribution& f) {
	const Precision p = working_bits(f) + 32;
	TailSums t{BigReal(p), BigReal(p)};
	for (const auto& x : f.jumps) {
		if (x.sign() < 0) t.neg += x;
		else if (x.sign() > 0) t.pos += x;
	}
	if (f.m > 0) {
		const BigReal m(static_cast<long>(f.m), p);
		t.neg /= m;
		t.pos /= m;
	}
	return t;
}

BigReal mean (const StepDistribution& f) {
	const TailSums t = tail_sums(f);
	return t.neg + t.pos;
}

double sup_distance (const StepDistribution& f, const StepDistribution& g) {
	if (f.m == 0 || g.m == 0) throw Error("sup_distance: distribution with m = 0");
	std::vector<const BigReal*> merged;
	for (const auto& x : f.jumps) merged.push_back(&x);
	for (const auto& x : g.jumps) merged.push_back(&x);
	std::sort(merged.begin(), merged.end(), [](const BigReal* a, const BigReal* b) { return mpfr_less_p(a->get(), b->get()); });
	// F = a/m, G = b/n; compare |a n - b m| exactly on every merged location
	long best = 0;
	for (const BigReal* x : merged) {
		const long a = count_le(f.jumps, *x);
		const long b = count_le(g.jumps, *x);
		best = std::max(best, std::labs(a * g.m - b * f.m));
	}
	return static_cast<double>(best) / (static_cast<double>(f.m) * g.m);
}

std::string distribution_csv (const StepDistribution& f, int digits) {
	std::ostringstream out;
	out.precision(17);
	out << "x,F\n";
	const std::size_t d = static_cast<std::size_t>(std::max(digits, 1));
	for (std::size_t i = 0; i < f.jumps.size(); ++i) {
		if (i + 1 < f.jumps.size() && f.jumps[i+1] == f.jumps[i]) continue;
		out << f.jumps[i].to_string(d) << "," << (static_cast<double>(i + 1) / f.m) << "\n";
	}
	return out.str();
}

} // namespace muspec
