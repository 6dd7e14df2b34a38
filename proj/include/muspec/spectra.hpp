#ifndef MUSPEC_SPECTRA_HPP
#define MUSPEC_SPECTRA_HPP

#include "muspec/coeffs.hpp"
#include "muspec/hankel.hpp"
#include "muspec/mpnum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace muspec {

/// The mu-spectrum of M_{l,m}(f).
struct SpectrumRecord {
	int l = 0;
	int m = 0;
	std::string function_id;
	std::vector<BigReal> eigenvalues;   // ascending
	BigReal determinant;                // det_lu(M) at precision_used
	BigReal trace;
	Precision precision_used = 0;
	int target_digits = 0;
};

/// ln|mu| over the nonzero eigenvalues, plotted at (ln|mu|, m).
struct LogSpectrum {
	int l = 0;
	int m = 0;
	std::vector<BigReal> points;        // ascending
	int zero_count = 0;
};

enum class SplitPolicyKind { largest_gap, threshold, quantile };

struct SplitPolicy {
	SplitPolicyKind kind = SplitPolicyKind::largest_gap;
	double parameter = 0.0;

	static SplitPolicy largest_gap () { return {}; }
	static SplitPolicy threshold (double c) { return {SplitPolicyKind::threshold, c}; }
	static SplitPolicy quantile (double q) { return {SplitPolicyKind::quantile, q}; }
	/// "largest-gap", "threshold:C", "quantile:Q"
	static SplitPolicy parse (const std::string& text);
	std::string id () const;
};

/// Lower (electrons) and upper (trains) parts of a log-spectrum.
struct SplitSpectrum {
	std::vector<BigReal> electrons;
	std::vector<BigReal> trains;
	std::string policy_id;
	double cut = 0.0;
	std::string warning;
};

struct PairingStats {
	double intra_median = 0.0;
	double inter_median = 0.0;
	double ratio = 0.0;
};

struct SpectrumOptions {
	Precision start_bits = 256;
	Precision cap_bits = 8192;
	/// Relative tolerance of the product-of-eigenvalues vs determinant check.
	int identity_digits = 30;
};

/// Builds M_{l,m}, solves it adaptively and validates prod(mu) = det(M).
/// Streams from analytic generators never have eigenvalues flushed to zero;
/// a tiny eigenvalue there forces more precision instead.
SpectrumRecord compute_spectrum (const CoeffStream& stream, int l, int m, int target_digits, const SpectrumOptions& opts = {});

LogSpectrum log_spectrum (const SpectrumRecord& rec);

SplitSpectrum split (const LogSpectrum& ls, const SplitPolicy& policy = SplitPolicy::largest_gap());

/// Consecutive disjoint pairs of the sorted points: (1,2), (3,4), ...
PairingStats pairing_stats (std::vector<BigReal> trains);

struct SweepResult {
	int m = 0;
	std::optional<SpectrumRecord> record;
	std::string error;
};

/// One spectrum per m in [m_first, m_last], computed on `jobs` threads;
/// output is ordered by m and independent of `jobs`. Failures are recorded
/// per m and do not abort the sweep.
std::vector<SweepResult> sweep (const CoeffStream& stream, int l, int m_first, int m_last, int target_digits,
                                int jobs = 1, const SpectrumOptions& opts = {});
std::vector<SweepResult> sweep (const CoeffStream& stream, int l, const std::vector<int>& m_values, int target_digits,
                                int jobs = 1, const SpectrumOptions& opts = {});

/// Spectra CSV: l,m,n,mu,ln_abs_mu,precision_bits. Values carry `digits`
/// significant decimal digits.
std::string spectra_csv (const std::vector<SpectrumRecord>& records, int digits);
std::string spectra_csv_header ();

} // namespace muspec

#endif // MUSPEC_SPECTRA_HPP
