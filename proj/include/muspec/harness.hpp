#ifndef MUSPEC_HARNESS_HPP
#define MUSPEC_HARNESS_HPP

#include "muspec/dist.hpp"
#include "muspec/mpnum.hpp"
#include "muspec/spectra.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace muspec {

enum class Verdict { supported, inconclusive, contradicted, unavailable };

std::string to_string (Verdict v);

/// Thresholds used by the trend checks. Every report records the values it used.
struct Thresholds {
	double growth_delta = 0.5;          // 2A/2B: minimum rise between dyadic checkpoints
	double rate_stability = 1e-3;       // est_rate: relative spread of the tail estimates
	double rate_match = 1e-2;           // v3/v5: |limit - W| / W
	double constant_dispersion = 0.05;  // est_constant: stddev / |mean| of the tail
	double geometric_drift = 1e-2;      // est_constant: mean per-step log drift
	double mean_tolerance = 1e-2;       // v6: |mean - log W|
	double tail_growth = 0.05;          // 2D: minimum relative growth per level
	int identity_digits = 25;           // v5: |prod mu|^(1/m) vs |det|^(1/m)
};

struct Series {
	std::string name;
	std::vector<int> m;
	std::vector<BigReal> values;
};

/// Outcome of one numerical check over a sequence in m.
struct TrendReport {
	std::string check_id;
	std::vector<int> l;
	std::vector<int> m_grid;
	std::vector<Series> series;
	std::string estimator_id;
	std::optional<BigReal> limit;
	std::optional<double> stability;
	std::map<std::string, double> thresholds;
	Verdict verdict = Verdict::inconclusive;
	std::vector<std::pair<std::string, Verdict>> parts;
	std::vector<std::string> notes;

	const Series* find_series (const std::string& name) const;
	nlohmann::json to_json (int digits = 30) const;
};

/// W_l (and optionally R_l) supplied by configuration.
struct ReferenceConstants {
	struct Entry {
		std::string value;
		std::string note;
	};
	std::map<int, Entry> W;
	std::map<int, Entry> R;

	/// {"W": {"1": {"value": "...", "note": "..."}}, "R": {...}}
	static ReferenceConstants from_json (const nlohmann::json& j);
	static ReferenceConstants load (const std::filesystem::path& path);
	std::optional<BigReal> w (int l, Precision bits) const;
};

using DetSequence = std::vector<std::pair<int, BigReal>>;

/// Growth rate of det(M_{l,m}): the root sequence |d_m|^(1/m) is reported,
/// the limit comes from Aitken's delta-squared applied to the per-step ratios
/// (|d_m'| / |d_m|)^(1/(m'-m)).
TrendReport est_rate (DetSequence dets, const Thresholds& th = {});

/// d_m / W^m: tail mean and dispersion estimate R_l.
TrendReport est_constant (DetSequence dets, const BigReal& w, const Thresholds& th = {});

/// est_rate compared against W_l when it is known.
TrendReport check_version3 (DetSequence dets, const std::optional<BigReal>& w, const Thresholds& th = {});
/// est_constant, or UNAVAILABLE without W_l.
TrendReport check_version2 (DetSequence dets, const std::optional<BigReal>& w, const Thresholds& th = {});

/// |prod mu|^(1/m) per record, checked against |det|^(1/m); trend via est_rate.
TrendReport check_version5 (const std::vector<SpectrumRecord>& records, const std::optional<BigReal>& w = std::nullopt,
                            const Thresholds& th = {});

/// mean(F_{l,m}) against log W_l.
TrendReport check_version6 (const std::vector<StepDistribution>& dists, const std::optional<BigReal>& w,
                            const Thresholds& th = {});

/// max (2A) and -min (2B) of the log-spectra across dyadic checkpoints.
std::pair<TrendReport, TrendReport> check_2A_2B (const std::vector<LogSpectrum>& spectra, const Thresholds& th = {});
TrendReport check_growth (const std::string& id, const std::vector<int>& ms, const std::vector<BigReal>& values,
                          const Thresholds& th = {});

/// sup_distance(F_{l,m}, F_{l,2m}) across dyadic levels.
TrendReport check_2C (const std::vector<StepDistribution>& dists, const Thresholds& th = {});
TrendReport check_2C_sequence (const std::vector<int>& ms, const std::vector<double>& distances);

/// |tail.neg| and tail.pos across dyadic levels.
TrendReport check_2D (const std::vector<StepDistribution>& dists, const Thresholds& th = {});
TrendReport check_2D_sequence (const std::vector<int>& ms, const std::vector<BigReal>& neg, const std::vector<BigReal>& pos,
                               const Thresholds& th = {});

/// Pairwise sup_distance(F_{l,m}, F_{l',m}) along a common m grid.
TrendReport check_2E (const std::map<int, std::vector<StepDistribution>>& by_l);
TrendReport check_2E_sequence (const std::vector<int>& ms, const std::map<std::pair<int, int>, std::vector<double>>& distances);

} // namespace muspec

#endif // MUSPEC_HARNESS_HPP
