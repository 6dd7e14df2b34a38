#include "muspec/harness.hpp"
#include "muspec/hashing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace muspec {

std::string to_string (Verdict v) {
	switch (v) {
		case Verdict::supported: return "SUPPORTED";
		case Verdict::inconclusive: return "INCONCLUSIVE";
		case Verdict::contradicted: return "CONTRADICTED";
		case Verdict::unavailable: return "UNAVAILABLE";
	}
	return "?";
}

const Series* TrendReport::find_series (const std::string& name) const {
	for (const auto& s : series)
		if (s.name == name) return &s;
	return nullptr;
}

nlohmann::json TrendReport::to_json (int digits) const {
	const std::size_t d = static_cast<std::size_t>(std::max(digits, 1));
	nlohmann::json j;
	j["check"] = check_id;
	j["l"] = l;
	j["m_grid"] = m_grid;
	nlohmann::json ser = nlohmann::json::object();
	for (const auto& s : series) {
		nlohmann::json arr = nlohmann::json::array();
		for (std::size_t i = 0; i < s.m.size(); ++i)
			arr.push_back({{"m", s.m[i]}, {"value", s.values[i].to_string(d)}});
		ser[s.name] = arr;
	}
	j["series"] = ser;
	j["estimator"] = estimator_id;
	j["thresholds"] = thresholds;
	j["verdict"] = to_string(verdict);
	if (limit) j["limit"] = limit->to_string(d);
	if (stability) j["stability"] = *stability;
	if (!parts.empty()) {
		nlohmann::json p = nlohmann::json::object();
		for (const auto& [name, v] : parts) p[name] = to_string(v);
		j["parts"] = p;
	}
	if (!notes.empty()) j["notes"] = notes;
	return j;
}

ReferenceConstants ReferenceConstants::from_json (const nlohmann::json& j) {
	ReferenceConstants rc;
	auto read = [](const nlohmann::json& obj, std::map<int, Entry>& into, bool positive) {
		for (auto it = obj.begin(); it != obj.end(); ++it) {
			const int l = std::stoi(it.key());
			Entry e;
			if (it.value().is_string()) e.value = it.value().get<std::string>();
			else {
				e.value = it.value().at("value").get<std::string>();
				e.note = it.value().value("note", std::string());
			}
			const BigReal v = BigReal::from_string(e.value, 128);
			if (positive && v.sign() <= 0) throw Error("W_" + std::to_string(l) + " must be positive");
			into[l] = e;
		}
	};
	if (j.contains("W")) read(j["W"], rc.W, true);
	if (j.contains("R")) read(j["R"], rc.R, false);
	return rc;
}

ReferenceConstants ReferenceConstants::load (const std::filesystem::path& path) {
	return from_json(nlohmann::json::parse(read_file(path)));
}

std::optional<BigReal> ReferenceConstants::w (int l, Precision bits) const {
	auto it = W.find(l);
	if (it == W.end()) return std::nullopt;
	return BigReal::from_string(it->second.value, bits);
}

namespace {

Precision seq_bits (const DetSequence& d) {
	Precision p = 128;
	for (const auto& [m, v] : d) p = std::max(p, v.precision());
	return p;
}

void sort_by_m (DetSequence& d) {
	std::sort(d.begin(), d.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

// Aitken delta-squared on (a, b, c); falls back to c when the correction is
// not supported by the local differences.
BigReal aitken (const BigReal& a, const BigReal& b, const BigReal& c) {
	const BigReal d1 = b - a;
	const BigReal d2 = c - b;
	const BigReal den = d2 - d1;
	if (den.is_zero()) return c;
	const BigReal corr = d2 * d2 / den;
	const BigReal bound = std::max(abs(d1), abs(d2)) * BigReal(10L, c.precision());
	if (abs(corr) > bound) return c;
	return c - corr;
}

BigReal median (std::vector<BigReal> v) {
	std::sort(v.begin(), v.end(), [](const BigReal& x, const BigReal& y) { return mpfr_less_p(x.get(), y.get()); });
	const std::size_t n = v.size();
	if (n % 2) return v[n/2];
	return (v[n/2 - 1] + v[n/2]) / BigReal(2L, v[0].precision());
}

bool is_power_of_two (int m) { return m > 0 && std::has_single_bit(static_cast<unsigned>(m)); }

// Indices of the dyadic entries of an ascending m list; all indices when
// fewer than three are dyadic.
std::vector<std::size_t> dyadic_indices (const std::vector<int>& ms) {
	std::vector<std::size_t> idx;
	for (std::size_t i = 0; i < ms.size(); ++i)
		if (is_power_of_two(ms[i])) idx.push_back(i);
	if (idx.size() < 3) {
		idx.clear();
		for (std::size_t i = 0; i < ms.size(); ++i) idx.push_back(i);
	}
	return idx;
}

// Non-increasing with an overall drop (or identically zero) -> SUPPORTED,
// strictly increasing -> CONTRADICTED, anything else -> INCONCLUSIVE.
Verdict decreasing_verdict (const std::vector<double>& d) {
	if (d.size() < 2) return Verdict::inconclusive;
	bool nonincreasing = true, increasing = true;
	for (std::size_t i = 1; i < d.size(); ++i) {
		if (d[i] > d[i-1]) nonincreasing = false;
		if (!(d[i] > d[i-1])) increasing = false;
	}
	const bool all_zero = std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0; });
	if (nonincreasing && (d.back() < d.front() || all_zero)) return Verdict::supported;
	if (increasing || d.back() > d.front()) return Verdict::contradicted;
	return Verdict::inconclusive;
}

} // namespace

TrendReport est_rate (DetSequence dets, const Thresholds& th) {
	if (dets.size() < 4) throw Error("est_rate: need at least 4 determinants, got " + std::to_string(dets.size()));
	sort_by_m(dets);
	const Precision p = seq_bits(dets);
	TrendReport r;
	r.check_id = "rate";
	r.estimator_id = "aitken-delta2-on-step-ratios";
	r.thresholds = {{"rate_stability", th.rate_stability}};

	Series root{"root", {}, {}};
	int negatives = 0;
	for (const auto& [m, d] : dets) {
		if (m < 1) throw Error("est_rate: m must be positive");
		if (d.is_zero()) throw Error("est_rate: zero determinant at m = " + std::to_string(m));
		if (d.sign() < 0) ++negatives;
		r.m_grid.push_back(m);
		root.m.push_back(m);
		root.values.push_back(exp(log(abs(BigReal(d, p))) / BigReal(static_cast<long>(m), p)));
	}
	if (negatives > 0) {
		bool alternating = true;
		for (std::size_t i = 1; i < dets.size(); ++i)
			if (dets[i].second.sign() == dets[i-1].second.sign()) alternating = false;
		r.notes.push_back(std::string("sign: ") + (negatives == static_cast<int>(dets.size()) ? "all negative" :
			alternating ? "alternating" : "mixed") + "; rate estimated from |d_m|");
	}

	Series ratio{"step_ratio", {}, {}};
	for (std::size_t i = 1; i < dets.size(); ++i) {
		const long step = dets[i].first - dets[i-1].first;
		if (step <= 0) throw Error("est_rate: repeated m = " + std::to_string(dets[i].first));
		const BigReal lr = log(abs(BigReal(dets[i].second, p))) - log(abs(BigReal(dets[i-1].second, p)));
		ratio.m.push_back(dets[i].first);
		ratio.values.push_back(exp(lr / BigReal(step, p)));
	}
	Series ait{"aitken", {}, {}};
	for (std::size_t i = 2; i < ratio.values.size(); ++i) {
		ait.m.push_back(ratio.m[i]);
		ait.values.push_back(aitken(ratio.values[i-2], ratio.values[i-1], ratio.values[i]));
	}
	const std::size_t tail = std::min<std::size_t>(5, ait.values.size());
	std::vector<BigReal> last(ait.values.end() - static_cast<std::ptrdiff_t>(tail), ait.values.end());
	const BigReal est = median(last);
	auto [lo, hi] = std::minmax_element(last.begin(), last.end(),
		[](const BigReal& x, const BigReal& y) { return mpfr_less_p(x.get(), y.get()); });
	const double spread = est.is_zero() ? INFINITY : ((*hi - *lo) / abs(est)).to_double();
	r.limit = est;
	r.stability = spread;
	r.verdict = spread <= th.rate_stability ? Verdict::supported : Verdict::inconclusive;
	r.series = {std::move(root), std::move(ratio), std::move(ait)};
	return r;
}

TrendReport est_constant (DetSequence dets, const BigReal& w, const Thresholds& th) {
	if (w.sign() <= 0) throw Error("est_constant: W must be positive");
	if (dets.size() < 4) throw Error("est_constant: need at least 4 determinants, got " + std::to_string(dets.size()));
	sort_by_m(dets);
	const Precision p = std::max(seq_bits(dets), w.precision());
	TrendReport r;
	r.check_id = "constant";
	r.estimator_id = "tail-mean-of-d/W^m";
	r.thresholds = {{"constant_dispersion", th.constant_dispersion}, {"geometric_drift", th.geometric_drift}};

	Series scaled{"scaled", {}, {}};
	const BigReal lw = log(BigReal(w, p));
	for (const auto& [m, d] : dets) {
		if (d.is_zero()) throw Error("est_constant: zero determinant at m = " + std::to_string(m));
		r.m_grid.push_back(m);
		scaled.m.push_back(m);
		// d / W^m with the sign of d, via logs so huge m never overflows
		BigReal mag = exp(log(abs(BigReal(d, p))) - lw * BigReal(static_cast<long>(m), p));
		scaled.values.push_back(d.sign() < 0 ? -mag : mag);
	}
	const std::size_t n = scaled.values.size();
	const std::size_t start = n - std::max<std::size_t>(3, n / 2);
	BigReal sum(p), sumsq(p);
	for (std::size_t i = start; i < n; ++i) {
		sum += scaled.values[i];
		sumsq += scaled.values[i] * scaled.values[i];
	}
	const BigReal cnt(static_cast<long>(n - start), p);
	const BigReal tail_mean = sum / cnt;
	BigReal var = sumsq / cnt - tail_mean * tail_mean;
	if (var.sign() < 0) var = BigReal(p);
	const double dispersion = tail_mean.is_zero() ? INFINITY : (sqrt(var) / abs(tail_mean)).to_double();

	std::vector<double> drift;
	for (std::size_t i = start + 1; i < n; ++i) {
		const double step = scaled.m[i] - scaled.m[i-1];
		drift.push_back((log(abs(scaled.values[i])) - log(abs(scaled.values[i-1]))).to_double() / step);
	}
	double mean_drift = 0.0;
	for (double g : drift) mean_drift += g;
	mean_drift /= static_cast<double>(drift.size());
	const bool one_signed = std::all_of(drift.begin(), drift.end(), [](double g) { return g > 0; }) ||
	                        std::all_of(drift.begin(), drift.end(), [](double g) { return g < 0; });

	r.limit = tail_mean;
	r.stability = dispersion;
	if (one_signed && std::fabs(mean_drift) > th.geometric_drift) {
		r.verdict = Verdict::contradicted;
		r.notes.push_back("d_m / W^m drifts geometrically (mean log step " + std::to_string(mean_drift) + "); W looks misspecified");
	} else {
		r.verdict = dispersion <= th.constant_dispersion ? Verdict::supported : Verdict::inconclusive;
	}
	r.series = {std::move(scaled)};
	return r;
}

TrendReport check_version3 (DetSequence dets, const std::optional<BigReal>& w, const Thresholds& th) {
	TrendReport r = est_rate(std::move(dets), th);
	r.check_id = "v3";
	if (!w) {
		r.notes.push_back("W_l not configured; verdict reflects stability of the rate only");
		return r;
	}
	r.thresholds["rate_match"] = th.rate_match;
	const double rel = (abs(*r.limit - *w) / *w).to_double();
	if (rel <= th.rate_match) r.verdict = Verdict::supported;
	else if (r.verdict == Verdict::supported) r.verdict = Verdict::contradicted;
	else r.verdict = Verdict::inconclusive;
	r.notes.push_back("relative distance of the rate from W_l: " + std::to_string(rel));
	return r;
}

TrendReport check_version2 (DetSequence dets, const std::optional<BigReal>& w, const Thresholds& th) {
	if (!w) {
		TrendReport r;
		r.check_id = "v2";
		r.estimator_id = "tail-mean-of-d/W^m";
		r.verdict = Verdict::unavailable;
		for (const auto& [m, d] : dets) r.m_grid.push_back(m);
		std::sort(r.m_grid.begin(), r.m_grid.end());
		r.notes.push_back("W_l not configured (--wl-file)");
		return r;
	}
	TrendReport r = est_constant(std::move(dets), *w, th);
	r.check_id = "v2";
	return r;
}

TrendReport check_version5 (const std::vector<SpectrumRecord>& records, const std::optional<BigReal>& w, const Thresholds& th) {
	if (records.empty()) throw Error("check_version5: no spectrum records");
	std::vector<const SpectrumRecord*> sorted;
	for (const auto& r : records) sorted.push_back(&r);
	std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->m < b->m; });

	Series roots{"root_prod_mu", {}, {}};
	Series det_roots{"root_det", {}, {}};
	DetSequence dets;
	std::vector<std::string> notes;
	for (const SpectrumRecord* rec : sorted) {
		const Precision p = rec->precision_used + 32;
		BigReal prod(1L, p);
		for (const auto& mu : rec->eigenvalues) prod *= mu;
		const BigReal inv_m = BigReal(1L, p) / BigReal(static_cast<long>(rec->m), p);
		roots.m.push_back(rec->m);
		det_roots.m.push_back(rec->m);
		if (prod.is_zero()) {
			roots.values.push_back(BigReal(p));
			det_roots.values.push_back(pow(abs(BigReal(rec->determinant, p)), inv_m));
			notes.push_back("m=" + std::to_string(rec->m) + ": zero eigenvalue(s), det numerically zero");
			continue;
		}
		const BigReal rp = pow(abs(prod), inv_m);
		const BigReal rd = pow(abs(BigReal(rec->determinant, p)), inv_m);
		if (!rel_close(rp, rd, ten_pow(-th.identity_digits, p)))
			throw Error("check_version5: |prod mu|^(1/m) and |det|^(1/m) differ beyond 1e-" + std::to_string(th.identity_digits) +
				" at m = " + std::to_string(rec->m) + "; raise the precision");
		roots.values.push_back(rp);
		det_roots.values.push_back(rd);
		dets.emplace_back(rec->m, rec->determinant);
	}

	TrendReport r;
	if (dets.size() >= 4) {
		r = w ? check_version3(dets, w, th) : est_rate(dets, th);
	} else {
		r.verdict = Verdict::inconclusive;
		r.estimator_id = "aitken-delta2-on-step-ratios";
		r.notes.push_back("fewer than 4 nonzero determinants; no trend estimate");
		if (roots.values.size() == 1) r.limit = roots.values[0];
	}
	r.check_id = "v5";
	r.m_grid = roots.m;
	r.l = {sorted.front()->l};
	r.thresholds["identity_digits"] = th.identity_digits;
	r.series.insert(r.series.begin(), std::move(det_roots));
	r.series.insert(r.series.begin(), std::move(roots));
	r.notes.insert(r.notes.end(), notes.begin(), notes.end());
	return r;
}

TrendReport check_version6 (const std::vector<StepDistribution>& dists, const std::optional<BigReal>& w, const Thresholds& th) {
	TrendReport r;
	r.check_id = "v6";
	r.estimator_id = "mean-vs-log-W";
	r.thresholds = {{"mean_tolerance", th.mean_tolerance}};
	std::vector<const StepDistribution*> sorted;
	for (const auto& d : dists) sorted.push_back(&d);
	std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->m < b->m; });
	Series means{"mean", {}, {}};
	for (const auto* d : sorted) {
		r.m_grid.push_back(d->m);
		means.m.push_back(d->m);
		means.values.push_back(mean(*d));
	}
	if (!sorted.empty()) r.l = {sorted.front()->l};
	if (!w) {
		r.verdict = Verdict::unavailable;
		r.notes.push_back("W_l not configured (--wl-file)");
		r.series = {std::move(means)};
		return r;
	}
	if (w->sign() <= 0) throw Error("check_version6: W must be positive");
	Series diff{"abs_mean_minus_log_W", {}, {}};
	const Precision p = std::max<Precision>(w->precision(), 128);
	const BigReal lw = log(BigReal(*w, p));
	std::vector<double> dd;
	for (std::size_t i = 0; i < means.values.size(); ++i) {
		diff.m.push_back(means.m[i]);
		diff.values.push_back(abs(means.values[i] - lw));
		dd.push_back(diff.values.back().to_double());
	}
	r.limit = means.values.empty() ? std::optional<BigReal>() : means.values.back();
	if (dd.empty()) {
		r.verdict = Verdict::inconclusive;
	} else if (dd.back() <= th.mean_tolerance) {
		r.verdict = Verdict::supported;
	} else if (dd.size() >= 3) {
		const std::vector<double> last(dd.end() - 3, dd.end());
		if (last[2] < last[1] && last[1] < last[0]) r.verdict = Verdict::supported;
		else if (last[2] > last[1] && last[1] > last[0]) r.verdict = Verdict::contradicted;
		else r.verdict = Verdict::inconclusive;
	} else {
		r.verdict = Verdict::inconclusive;
	}
	r.series = {std::move(means), std::move(diff)};
	return r;
}

TrendReport check_growth (const std::string& id, const std::vector<int>& ms, const std::vector<BigReal>& values, const Thresholds& th) {
	TrendReport r;
	r.check_id = id;
	r.estimator_id = "dyadic-checkpoint-growth";
	r.thresholds = {{"growth_delta", th.growth_delta}};
	r.m_grid = ms;
	r.series = {Series{"value", ms, values}};
	const auto idx = dyadic_indices(ms);
	if (idx.size() < 3) {
		r.verdict = Verdict::inconclusive;
		r.notes.push_back("fewer than 3 checkpoints");
		return r;
	}
	const double v1 = values[idx[idx.size()-3]].to_double();
	const double v2 = values[idx[idx.size()-2]].to_double();
	const double v3 = values[idx[idx.size()-1]].to_double();
	Series cp{"checkpoints", {ms[idx[idx.size()-3]], ms[idx[idx.size()-2]], ms[idx[idx.size()-1]]},
	          {values[idx[idx.size()-3]], values[idx[idx.size()-2]], values[idx[idx.size()-1]]}};
	r.series.push_back(std::move(cp));
	if (v2 - v1 >= th.growth_delta && v3 - v2 >= th.growth_delta) r.verdict = Verdict::supported;
	else if (v3 <= v1) r.verdict = Verdict::contradicted;
	else r.verdict = Verdict::inconclusive;
	return r;
}

std::pair<TrendReport, TrendReport> check_2A_2B (const std::vector<LogSpectrum>& spectra, const Thresholds& th) {
	std::vector<const LogSpectrum*> sorted;
	for (const auto& s : spectra)
		if (!s.points.empty()) sorted.push_back(&s);
	std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->m < b->m; });
	std::vector<int> ms;
	std::vector<BigReal> maxes, neg_mins;
	for (const auto* s : sorted) {
		ms.push_back(s->m);
		maxes.push_back(s->points.back());
		neg_mins.push_back(-s->points.front());
	}
	TrendReport a = check_growth("2A", ms, maxes, th);
	TrendReport b = check_growth("2B", ms, neg_mins, th);
	a.series[0].name = "max";
	b.series[0].name = "neg_min";
	if (!sorted.empty()) a.l = b.l = {sorted.front()->l};
	return {std::move(a), std::move(b)};
}

TrendReport check_2C_sequence (const std::vector<int>& ms, const std::vector<double>& distances) {
	TrendReport r;
	r.check_id = "2C";
	r.estimator_id = "sup-distance-m-vs-2m";
	r.m_grid = ms;
	Series s{"sup_distance_m_2m", ms, {}};
	for (double d : distances) s.values.emplace_back(d, 64);
	r.series = {std::move(s)};
	if (distances.size() < 3) {
		r.verdict = Verdict::inconclusive;
		r.notes.push_back("fewer than 3 dyadic levels");
		return r;
	}
	r.verdict = decreasing_verdict(distances);
	return r;
}

TrendReport check_2C (const std::vector<StepDistribution>& dists, const Thresholds&) {
	std::map<int, const StepDistribution*> by_m;
	for (const auto& d : dists) by_m[d.m] = &d;
	std::vector<int> ms;
	std::vector<double> ds;
	for (const auto& [m, d] : by_m) {
		auto it = by_m.find(2*m);
		if (it == by_m.end()) continue;
		ms.push_back(m);
		ds.push_back(sup_distance(*d, *it->second));
	}
	TrendReport r = check_2C_sequence(ms, ds);
	if (!dists.empty()) r.l = {dists.front().l};
	return r;
}

TrendReport check_2D_sequence (const std::vector<int>& ms, const std::vector<BigReal>& neg, const std::vector<BigReal>& pos,
                               const Thresholds& th) {
	TrendReport r;
	r.check_id = "2D";
	r.estimator_id = "tail-sum-growth";
	r.thresholds = {{"tail_growth", th.tail_growth}};
	r.m_grid = ms;
	std::vector<BigReal> neg_abs;
	for (const auto& v : neg) neg_abs.push_back(abs(v));
	r.series = {Series{"neg_tail_abs", ms, neg_abs}, Series{"pos_tail", ms, pos}};
	if (ms.size() < 3) {
		r.verdict = Verdict::inconclusive;
		r.notes.push_back("fewer than 3 levels");
		return r;
	}
	auto growing = [&](const std::vector<BigReal>& v) {
		for (std::size_t i = 1; i < v.size(); ++i) {
			const double prev = v[i-1].to_double(), cur = v[i].to_double();
			if (!(cur > prev) || cur - prev < th.tail_growth * std::fabs(prev)) return false;
		}
		return true;
	};
	const Verdict vn = growing(neg_abs) ? Verdict::supported : Verdict::inconclusive;
	const Verdict vp = growing(pos) ? Verdict::supported : Verdict::inconclusive;
	r.parts = {{"negative_tail", vn}, {"positive_tail", vp}};
	r.verdict = (vn == Verdict::supported && vp == Verdict::supported) ? Verdict::supported : Verdict::inconclusive;
	return r;
}

TrendReport check_2D (const std::vector<StepDistribution>& dists, const Thresholds& th) {
	std::map<int, const StepDistribution*> by_m;
	for (const auto& d : dists) by_m[d.m] = &d;
	std::vector<int> all;
	for (const auto& [m, d] : by_m) all.push_back(m);
	std::vector<int> ms;
	std::vector<BigReal> neg, pos;
	for (std::size_t i : dyadic_indices(all)) {
		const TailSums t = tail_sums(*by_m[all[i]]);
		ms.push_back(all[i]);
		neg.push_back(t.neg);
		pos.push_back(t.pos);
	}
	TrendReport r = check_2D_sequence(ms, neg, pos, th);
	if (!dists.empty()) r.l = {dists.front().l};
	return r;
}

TrendReport check_2E_sequence (const std::vector<int>& ms, const std::map<std::pair<int, int>, std::vector<double>>& distances) {
	TrendReport r;
	r.check_id = "2E";
	r.estimator_id = "pairwise-sup-distance-across-l";
	r.m_grid = ms;
	std::set<int> ls;
	bool any_contra = false, all_supported = !distances.empty();
	for (const auto& [pair, ds] : distances) {
		ls.insert(pair.first);
		ls.insert(pair.second);
		Series s{"l" + std::to_string(pair.first) + "_vs_l" + std::to_string(pair.second), ms, {}};
		for (double d : ds) s.values.emplace_back(d, 64);
		r.series.push_back(std::move(s));
		const Verdict v = decreasing_verdict(ds);
		r.parts.emplace_back(r.series.back().name, v);
		if (v == Verdict::contradicted) any_contra = true;
		if (v != Verdict::supported) all_supported = false;
	}
	r.l.assign(ls.begin(), ls.end());
	if (ms.size() < 2) {
		r.verdict = Verdict::inconclusive;
		r.notes.push_back("fewer than 2 common m values");
	} else {
		r.verdict = any_contra ? Verdict::contradicted : all_supported ? Verdict::supported : Verdict::inconclusive;
	}
	return r;
}

TrendReport check_2E (const std::map<int, std::vector<StepDistribution>>& by_l) {
	if (by_l.size() < 2) throw Error("check_2E: need distributions for at least 2 values of l");
	std::map<int, std::map<int, const StepDistribution*>> index;
	for (const auto& [l, ds] : by_l)
		for (const auto& d : ds) index[l][d.m] = &d;
	std::vector<int> ms;
	for (const auto& [m, d] : index.begin()->second) {
		bool everywhere = true;
		for (const auto& [l, byms] : index)
			if (!byms.count(m)) everywhere = false;
		if (everywhere) ms.push_back(m);
	}
	std::map<std::pair<int, int>, std::vector<double>> distances;
	for (auto a = index.begin(); a != index.end(); ++a)
		for (auto b = std::next(a); b != index.end(); ++b)
			for (int m : ms)
				distances[{a->first, b->first}].push_back(sup_distance(*a->second.at(m), *b->second.at(m)));
	return check_2E_sequence(ms, distances);
}

} // namespace muspec
