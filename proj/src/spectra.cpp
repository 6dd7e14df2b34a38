#include "muspec/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>

namespace muspec {

namespace {

BigReal product (const std::vector<BigReal>& values, Precision bits) {
	BigReal p(1L, bits);
	for (const auto& v : values) p *= v;
	return p;
}

bool any_zero (const std::vector<BigReal>& values) {
	return std::any_of(values.begin(), values.end(), [](const BigReal& v) { return v.is_zero(); });
}

// Size below which a determinant is indistinguishable from zero at `bits`.
BigReal det_floor (const BigReal& norm, std::size_t m, Precision bits) {
	const long slack = 16 + 2*static_cast<long>(std::bit_width(m));
	return pow(norm, static_cast<long>(m)) * BigReal::two_pow(-(static_cast<long>(bits) - slack), bits);
}

double median (std::vector<double> v) {
	std::sort(v.begin(), v.end());
	const std::size_t n = v.size();
	return n % 2 ? v[n/2] : 0.5 * (v[n/2 - 1] + v[n/2]);
}

} // namespace

SpectrumRecord compute_spectrum (const CoeffStream& stream, int l, int m, int target_digits, const SpectrumOptions& opts) {
	widen_exponent_range();
	const SignedHankel M = build_M(stream, l, m);
	const bool analytic = stream.spec.kind == FunctionKind::analytic;
	const BigReal norm = M.matrix.frobenius_norm();

	AdaptiveOptions ao;
	ao.start_bits = opts.start_bits;
	ao.cap_bits = opts.cap_bits;
	ao.allow_zero = !analytic;

	std::string last_failure;
	while (ao.start_bits * 2 <= ao.cap_bits) {
		EigenResult eig = adaptive_solve(M.matrix, target_digits, ao);
		const Precision p = eig.precision_used;
		BigReal det = det_lu(M.matrix, p);

		bool ok;
		if (any_zero(eig.eigenvalues)) {
			ok = abs(det) <= det_floor(BigReal(norm, p), static_cast<std::size_t>(m), p);
			if (!ok) last_failure = "zero eigenvalue reported but det(M) = " + det.to_string(10) + " is resolvable";
		} else {
			const BigReal prod = product(eig.eigenvalues, p + 32);
			ok = rel_close(prod, det, ten_pow(-opts.identity_digits, p));
			if (!ok) last_failure = "prod(mu) = " + prod.to_string(20) + " but det(M) = " + det.to_string(20);
		}
		if (ok) {
			SpectrumRecord rec;
			rec.l = l;
			rec.m = m;
			rec.function_id = stream.spec.name;
			rec.eigenvalues = std::move(eig.eigenvalues);
			rec.determinant = std::move(det);
			rec.trace = BigReal(M.matrix.trace(), p);
			rec.precision_used = p;
			rec.target_digits = target_digits;
			return rec;
		}
		ao.start_bits = p * 2;
	}
	throw Error("compute_spectrum: eigenvalue product does not match det(M_{" + std::to_string(l) + "," +
		std::to_string(m) + "}) below the precision cap: " + last_failure);
}

LogSpectrum log_spectrum (const SpectrumRecord& rec) {
	LogSpectrum ls;
	ls.l = rec.l;
	ls.m = rec.m;
	for (const auto& mu : rec.eigenvalues) {
		if (mu.is_zero()) {
			++ls.zero_count;
			continue;
		}
		ls.points.push_back(log(abs(mu)));
	}
	std::sort(ls.points.begin(), ls.points.end(),
		[](const BigReal& a, const BigReal& b) { return mpfr_less_p(a.get(), b.get()); });
	return ls;
}

SplitPolicy SplitPolicy::parse (const std::string& text) {
	if (text == "largest-gap") return largest_gap();
	const auto colon = text.find(':');
	const std::string head = text.substr(0, colon);
	if (colon == std::string::npos) throw Error("split policy '" + text + "' needs a parameter");
	double v = 0.0;
	try {
		v = std::stod(text.substr(colon + 1));
	} catch (const std::exception&) {
		throw Error("bad split policy parameter in '" + text + "'");
	}
	if (head == "threshold") return threshold(v);
	if (head == "quantile") {
		if (!(v >= 0.0 && v <= 1.0)) throw Error("quantile must lie in [0, 1]");
		return quantile(v);
	}
	throw Error("unknown split policy '" + text + "'");
}

std::string SplitPolicy::id () const {
	std::ostringstream s;
	switch (kind) {
		case SplitPolicyKind::largest_gap: return "largest-gap";
		case SplitPolicyKind::threshold: s << "threshold:" << parameter; break;
		case SplitPolicyKind::quantile: s << "quantile:" << parameter; break;
	}
	return s.str();
}

SplitSpectrum split (const LogSpectrum& ls, const SplitPolicy& policy) {
	if (ls.points.empty()) throw Error("split: log-spectrum has no points");
	SplitSpectrum out;
	out.policy_id = policy.id();
	const auto& pts = ls.points;
	const std::size_t n = pts.size();

	// index of the first train
	std::size_t first_train = 0;
	if (n == 1) {
		out.warning = "single point: everything assigned to trains";
		first_train = 0;
		out.cut = pts[0].to_double();
	} else if (policy.kind == SplitPolicyKind::largest_gap) {
		std::size_t best = 0;
		BigReal best_gap(pts[0].precision());
		std::size_t ties = 0;
		for (std::size_t i = 0; i + 1 < n; ++i) {
			BigReal gap = pts[i+1] - pts[i];
			if (gap > best_gap) {
				best_gap = gap;
				best = i;
				ties = 1;
			} else if (gap == best_gap) {
				++ties;
			}
		}
		if (best_gap.is_zero()) {
			out.warning = "all points coincide: degenerate split, everything assigned to trains";
			first_train = 0;
			out.cut = pts[0].to_double();
		} else {
			first_train = best + 1;
			out.cut = 0.5 * (pts[best].to_double() + pts[best+1].to_double());
			if (ties > 1) out.warning = "widest gap is not unique; lowest one used";
		}
	} else if (policy.kind == SplitPolicyKind::threshold) {
		const BigReal c(policy.parameter, pts[0].precision());
		first_train = static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), c) - pts.begin());
		out.cut = policy.parameter;
	} else {
		first_train = static_cast<std::size_t>(std::floor(policy.parameter * static_cast<double>(n)));
		first_train = std::min(first_train, n);
		// keep ties together on the train side
		while (first_train > 0 && first_train < n && pts[first_train - 1] == pts[first_train]) --first_train;
		out.cut = first_train < n ? pts[first_train].to_double() : pts[n-1].to_double();
	}
	if (n > 1 && (first_train == 0 || first_train == n) && out.warning.empty())
		out.warning = "all points fall on one side of the cut";
	out.electrons.assign(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(first_train));
	out.trains.assign(pts.begin() + static_cast<std::ptrdiff_t>(first_train), pts.end());
	return out;
}

PairingStats pairing_stats (std::vector<BigReal> trains) {
	if (trains.size() < 4) throw Error("pairing_stats: need at least 4 train points, got " + std::to_string(trains.size()));
	std::sort(trains.begin(), trains.end(), [](const BigReal& a, const BigReal& b) { return mpfr_less_p(a.get(), b.get()); });
	std::vector<double> intra, inter;
	for (std::size_t i = 0; i + 1 < trains.size(); i += 2) {
		intra.push_back((trains[i+1] - trains[i]).to_double());
		if (i + 2 < trains.size()) inter.push_back((trains[i+2] - trains[i+1]).to_double());
	}
	PairingStats st;
	st.intra_median = median(intra);
	st.inter_median = median(inter);
	st.ratio = st.inter_median == 0.0 ? (st.intra_median == 0.0 ? 1.0 : INFINITY) : st.intra_median / st.inter_median;
	return st;
}

std::vector<SweepResult> sweep (const CoeffStream& stream, int l, const std::vector<int>& m_values, int target_digits,
                                int jobs, const SpectrumOptions& opts) {
	for (int m : m_values)
		if (stream.max_index < l + m - 1)
			throw Error("sweep: stream lacks theta_" + std::to_string(l + m - 1));
	std::vector<SweepResult> results(m_values.size());
	std::atomic<std::size_t> next{0};
	auto worker = [&]() {
		widen_exponent_range();
		for (std::size_t i = next++; i < m_values.size(); i = next++) {
			results[i].m = m_values[i];
			try {
				results[i].record = compute_spectrum(stream, l, m_values[i], target_digits, opts);
			} catch (const std::exception& e) {
				results[i].error = e.what();
			}
		}
		mpfr_free_cache();
	};
	const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(m_values.size())));
	if (threads == 1) {
		worker();
	} else {
		std::vector<std::jthread> pool;
		for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
	}
	return results;
}

std::vector<SweepResult> sweep (const CoeffStream& stream, int l, int m_first, int m_last, int target_digits,
                                int jobs, const SpectrumOptions& opts) {
	if (m_first < 1 || m_last < m_first) throw Error("sweep: invalid m range");
	std::vector<int> ms;
	for (int m = m_first; m <= m_last; ++m) ms.push_back(m);
	return sweep(stream, l, ms, target_digits, jobs, opts);
}

std::string spectra_csv_header () { return "l,m,n,mu,ln_abs_mu,precision_bits\n"; }

std::string spectra_csv (const std::vector<SpectrumRecord>& records, int digits) {
	std::ostringstream out;
	out << spectra_csv_header();
	const std::size_t d = static_cast<std::size_t>(std::max(digits, 1));
	for (const auto& rec : records) {
		for (std::size_t n = 0; n < rec.eigenvalues.size(); ++n) {
			const BigReal& mu = rec.eigenvalues[n];
			out << rec.l << "," << rec.m << "," << (n + 1) << "," << mu.to_string(d) << ","
			    << (mu.is_zero() ? std::string("ZERO") : log(abs(mu)).to_string(d)) << ","
			    << rec.precision_used << "\n";
		}
	}
	return out.str();
}

} // namespace muspec
