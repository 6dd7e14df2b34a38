// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when an unconditional criterion fails, or when criterion 7 fails on a
// transcribed zeta-star spec. On the placeholder, criterion 7 is reported
// with its measurements but cannot gate the run.

#include "oracles.hpp"

#include "muspec/cli.hpp"
#include "muspec/dist.hpp"
#include "muspec/harness.hpp"
#include "muspec/hankel.hpp"
#include "muspec/spectra.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

using namespace muspec;

namespace {

// pinned tolerances
constexpr long kEigenTolExp = -40;
constexpr double kEigenSeconds = 120.0;
constexpr long kCatalanTolExp = -50;
constexpr long kProductTolExp = -30;
constexpr long kPermTolExp = -30;
constexpr long kMeanTolExp = -25;
constexpr double kRateTol = 1e-3;
constexpr long kZetaTolExp = -50;
constexpr double kSweepSeconds = 600.0;
constexpr double kLobe = 5.0;
constexpr double kPairRatio = 0.2;

using Clock = std::chrono::steady_clock;

double seconds_since (Clock::time_point t0) {
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
	bool pass = false;
	std::string detail;
};

int failures = 0;

void report (int id, const std::string& title, const Outcome& o, bool gating = true) {
	std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
	std::fflush(stdout);
	if (!o.pass && gating) ++failures;
}

std::string sci (double x) {
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3g", x);
	return buf;
}

// log10 of |a-b| / max(|a|,|b|); -inf when equal
double rel_err_log10 (const BigReal& a, const BigReal& b) {
	if (a == b) return -INFINITY;
	const BigReal den = std::max(abs(a), abs(b));
	const BigReal r = abs(a - b) / den;
	return std::log10(r.to_double() > 0 ? r.to_double() : 0.0);
}

double worst (double a, double b) { return std::max(a, b); }

Outcome eigensolver_identities () {
	const auto t0 = Clock::now();
	const Precision p = 256;
	std::mt19937_64 rng(20240601);
	std::uniform_real_distribution<double> u(-1.0, 1.0);
	double w_trace = -INFINITY, w_frob = -INFINITY, w_det = -INFINITY;
	for (int trial = 0; trial < 200; ++trial) {
		const std::size_t m = 1 + static_cast<std::size_t>(trial % 32);
		RealMatrix a(m, p);
		for (std::size_t i = 0; i < m; ++i)
			for (std::size_t j = i; j < m; ++j) a(i, j) = a(j, i) = BigReal(u(rng), p);
		a.mark_symmetric();
		const auto ev = sym_eigenvalues(a, p, BigReal::two_pow(-static_cast<long>(p), p)).eigenvalues;
		BigReal tr(p), sq(p), prod(1L, p);
		for (const auto& v : ev) {
			tr += v;
			sq += v * v;
			prod *= v;
		}
		const BigReal f = a.frobenius_norm();
		w_trace = worst(w_trace, rel_err_log10(tr, a.trace()));
		w_frob = worst(w_frob, rel_err_log10(sq, f * f));
		w_det = worst(w_det, rel_err_log10(prod, det_lu(a, p)));
	}
	const double secs = seconds_since(t0);
	const double lim = static_cast<double>(kEigenTolExp);
	Outcome o;
	o.pass = w_trace <= lim && w_frob <= lim && w_det <= lim && secs < kEigenSeconds;
	o.detail = "200 matrices, worst log10 rel err trace " + sci(w_trace) + ", frobenius " + sci(w_frob) +
		", det " + sci(w_det) + " (limit " + sci(lim) + "), " + sci(secs) + " s (limit " + sci(kEigenSeconds) + ")";
	return o;
}

Outcome catalan_determinants () {
	std::vector<mpz_class> c(24);
	c[0] = 1;
	for (std::size_t n = 1; n < c.size(); ++n) c[n] = c[n-1] * 2 * (2 * static_cast<long>(n) - 1) / (static_cast<long>(n) + 1);
	const Precision p = 256;
	const BigReal tol = ten_pow(kCatalanTolExp, p);
	double w = -INFINITY;
	bool ok = true;
	for (int n = 1; n <= 12; ++n) {
		std::vector<std::vector<mpz_class>> h(n, std::vector<mpz_class>(n));
		RealMatrix a(static_cast<std::size_t>(n), p);
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j) {
				h[i][j] = c[i + j];
				mpfr_set_z(a(i, j).get(), c[i + j].get_mpz_t(), MPFR_RNDN);
			}
		const BigReal d = det_lu(a, p);
		const BigReal err = abs(d - BigReal(1L, p));
		if (err > tol) ok = false;
		if (!err.is_zero()) w = worst(w, std::log10(err.to_double()));
		if (n <= 8 && oracle::cofactor_det(h) != 1) ok = false;
	}
	return {ok, "sizes 1..12, worst log10 |det-1| " + sci(w) + " (limit " + sci(static_cast<double>(kCatalanTolExp)) +
		"), cofactor oracle agrees for sizes 1..8"};
}

struct Sampled {
	std::string family;
	SpectrumRecord rec;
	BigReal det_ref;   // recomputed at 1024 bits
};

std::vector<Sampled> sample_records () {
	std::vector<Sampled> out;
	const std::vector<std::string> families{"catalan", "exponential", "rational2:2,1", "geometric:0.5", "zeta-star"};
	const std::vector<int> ms{1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 40, 48};
	for (const auto& fam : families) {
		const CoeffStream s = generate(FunctionSpec::parse(fam), 3 + 48, 320);
		for (int l = 1; l <= 3; ++l)
			for (int m : ms) {
				Sampled x{fam, compute_spectrum(s, l, m, 30), BigReal(1024)};
				x.det_ref = det_lu(build_M(s, l, m).matrix, 1024);
				out.push_back(std::move(x));
			}
	}
	return out;
}

Outcome product_identity (const std::vector<Sampled>& recs) {
	double w = -INFINITY;
	int checked = 0, with_zeros = 0;
	std::map<std::string, int> excluded;
	bool ok = true;
	for (const auto& x : recs) {
		if (log_spectrum(x.rec).zero_count > 0) {
			++with_zeros;
			++excluded[x.family];
			continue;
		}
		BigReal prod(1L, x.rec.precision_used);
		for (const auto& v : x.rec.eigenvalues) prod *= v;
		const double e = rel_err_log10(prod, BigReal(x.det_ref, x.rec.precision_used));
		if (e > static_cast<double>(kProductTolExp)) ok = false;
		w = worst(w, e);
		++checked;
	}
	std::string ex;
	for (const auto& [f, n] : excluded) ex += (ex.empty() ? "" : ", ") + f + ":" + std::to_string(n);
	return {ok && checked > 0, std::to_string(checked) + " records (5 families, l=1..3, m<=48), worst log10 rel err " +
		sci(w) + " (limit " + sci(static_cast<double>(kProductTolExp)) + "), " + std::to_string(with_zeros) +
		" low-rank records with exact zeros excluded (" + ex + ")"};
}

Outcome permutation_sign () {
	std::mt19937_64 rng(99);
	std::uniform_int_distribution<int> num(-999, 999);
	double w = -INFINITY;
	bool ok = true;
	int cases = 0;
	for (int trial = 0; trial < 40; ++trial) {
		std::vector<std::string> vals;
		std::vector<mpq_class> q;
		for (int k = 0; k < 24; ++k) {
			const int v = num(rng);
			vals.push_back(std::to_string(v) + "e-3");
			q.emplace_back(v, 1000);
		}
		const CoeffStream s = generate(FunctionSpec::user_moments(vals), 23, 256);
		const int l = 1 + trial % 3;
		for (int m = 1; m <= 10; ++m) {
			const BigReal dh = det_lu(unsigned_hankel_core(s, l, m), 256);
			const BigReal dt = det_lu(raw_toeplitz(s, l, m), 256);
			const int sign = (m * (m - 1) / 2) % 2 ? -1 : 1;
			const BigReal rhs = sign > 0 ? dt : -dt;
			if (dh.is_zero() && rhs.is_zero()) continue;
			const double e = rel_err_log10(dh, rhs);
			if (e > static_cast<double>(kPermTolExp)) ok = false;
			w = worst(w, e);
			++cases;
			if (m <= 6) {
				// exact rational determinant of the Hankel core
				oracle::QMatrix hq(m, std::vector<mpq_class>(m));
				for (int i = 1; i <= m; ++i)
					for (int j = 1; j <= m; ++j) {
						const int k = l + m + 1 - i - j;
						hq[i-1][j-1] = k < 0 ? mpq_class(0) : q[k];
					}
				const mpq_class ex = oracle::cofactor_det(hq);
				BigReal exr(512);
				mpfr_set_q(exr.get(), ex.get_mpq_t(), MPFR_RNDN);
				if (!(ex == 0 && dh.is_zero()) && rel_err_log10(BigReal(dh, 512), exr) > static_cast<double>(kPermTolExp)) ok = false;
			}
		}
	}
	return {ok, std::to_string(cases) + " (stream, l, m) cases with m<=10, worst log10 rel err " + sci(w) +
		" (limit " + sci(static_cast<double>(kPermTolExp)) + "), exact oracle for m<=6"};
}

Outcome mean_consistency (const std::vector<Sampled>& recs) {
	double w = -INFINITY;
	int checked = 0;
	bool ok = true;
	for (const auto& x : recs) {
		const LogSpectrum ls = log_spectrum(x.rec);
		if (ls.zero_count > 0) continue;
		const BigReal ref = log(abs(x.det_ref)) / BigReal(static_cast<long>(x.rec.m), 1024);
		const BigReal diff = abs(mean(from_log_spectrum(ls)) - BigReal(ref, x.rec.precision_used));
		if (diff > ten_pow(kMeanTolExp, 256)) ok = false;
		if (!diff.is_zero()) w = worst(w, std::log10(diff.to_double()));
		++checked;
	}
	return {ok && checked > 0, std::to_string(checked) + " records with zero_count = 0, worst log10 |mean - ln|det|/m| " +
		sci(w) + " (limit " + sci(static_cast<double>(kMeanTolExp)) + ")"};
}

Outcome rate_fixtures () {
	const Precision p = 256;
	std::mt19937_64 rng(5);
	std::uniform_real_distribution<double> eps(-1e-6, 1e-6);
	double w = 0.0;
	int runs = 0;
	for (const char* wt : {"0.5", "2.0", "3.7"})
		for (const char* r : {"0.9", "1", "2.5", "0.01"})
			for (int rep = 0; rep < 4; ++rep) {
				const BigReal W = BigReal::from_string(wt, p), R = BigReal::from_string(r, p);
				DetSequence d;
				for (int m = 1; m <= 64; ++m) {
					const double e = rep == 0 ? 1e-6 * std::sin(1.7 * m) : eps(rng);
					d.emplace_back(m, pow(W, static_cast<long>(m)) * (R + BigReal(e, p)));
				}
				const auto rep_ = est_rate(d);
				const double err = rep_.limit ? std::fabs(rep_.limit->to_double() - W.to_double()) : INFINITY;
				w = std::max(w, err);
				++runs;
			}
	return {w <= kRateTol, std::to_string(runs) + " fixtures (W in {0.5, 2.0, 3.7}, m<=64), worst |estimate - W| " +
		sci(w) + " (limit " + sci(kRateTol) + ")"};
}

Outcome zeta_values () {
	const Precision p = 256;
	auto z = [&](long s) { return zeta_em(BigComplex(BigReal(s, p), BigReal(p)), p).re(); };
	const BigReal z2 = BigReal::from_string("1.6449340668482264364724151666460251892189499012067984377355582293700074704", p);
	const BigReal z3 = BigReal::from_string("1.2020569031595942853997381615114499907649862923404988817922715553418382057", p);
	const BigReal tol = ten_pow(kZetaTolExp, p);
	const BigReal e2 = abs(z(2) - z2) / z2, e3 = abs(z(3) - z3) / z3;
	// "exact to working precision": a few ulps at 256 bits
	const BigReal ulps = BigReal::two_pow(-static_cast<long>(p) + 4, p);
	const BigReal e0 = abs(z(0) + BigReal(0.5, p)) / BigReal(0.5, p);
	const BigReal twelfth = BigReal(1L, p) / BigReal(12L, p);
	const BigReal em1 = abs(z(-1) + twelfth) / twelfth;
	const bool ok = e2 <= tol && e3 <= tol && e0 <= ulps && em1 <= ulps;
	return {ok, "rel err zeta(2) " + sci(e2.to_double()) + ", zeta(3) " + sci(e3.to_double()) + " (limit 1e-50); zeta(0) " +
		sci(e0.to_double()) + ", zeta(-1) " + sci(em1.to_double()) + " (limit 2^-252)"};
}

std::string run_cli_capture (std::vector<std::string> args, int& rc) {
	args.insert(args.begin(), "muspec");
	std::vector<const char*> argv;
	for (const auto& a : args) argv.push_back(a.c_str());
	std::ostringstream out, err;
	rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
	return out.str();
}

Outcome sweep_performance () {
	const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
	const std::string jobs = std::to_string(std::min(cores, 4u));
	const std::vector<std::string> args{"sweep", "--func", "zeta-star", "--l", "1", "--m-max", "64", "--prec", "320",
		"--jobs", jobs};
	int rc1 = 0, rc2 = 0;
	const auto t0 = Clock::now();
	const std::string a = run_cli_capture(args, rc1);
	const double secs = seconds_since(t0);
	const std::string b = run_cli_capture(args, rc2);
	const bool same = a == b && !a.empty();
	Outcome o;
	o.pass = rc1 == 0 && rc2 == 0 && same && secs < kSweepSeconds;
	o.detail = "l=1, m=1..64 at 320 bits with " + jobs + " job(s) on " + std::to_string(cores) + " core(s): " + sci(secs) +
		" s (limit " + sci(kSweepSeconds) + "), second run " + (same ? "byte-identical" : "DIFFERS") + " (" +
		std::to_string(a.size()) + " bytes)";
	return o;
}

// Qualitative trends on a dyadic grid.
Outcome figure_trends (const FunctionSpec& spec) {
	const std::vector<int> dyadic{1, 2, 4, 8, 16, 32, 64, 128};
	const CoeffStream s = generate(spec, 2 + 128, 320);
	std::map<int, LogSpectrum> l1, l2;
	for (auto& r : sweep(s, 1, dyadic, 30)) {
		if (!r.record) return {false, "m=" + std::to_string(r.m) + ": " + r.error};
		l1[r.m] = log_spectrum(*r.record);
	}
	for (auto& r : sweep(s, 2, std::vector<int>{32, 64, 128}, 30)) {
		if (!r.record) return {false, "l=2, m=" + std::to_string(r.m) + ": " + r.error};
		l2[r.m] = log_spectrum(*r.record);
	}
	std::vector<double> mx, mn;
	for (int m : dyadic) {
		const auto& p = l1[m].points;
		mx.push_back(p.empty() ? 0.0 : p.back().to_double());
		mn.push_back(p.empty() ? 0.0 : p.front().to_double());
	}
	bool grow = true;
	for (std::size_t i = 1; i < mx.size(); ++i) grow = grow && mx[i] >= mx[i-1] && mn[i] <= mn[i-1];
	const bool lobes = mx.back() > kLobe && mn.back() < -kLobe;

	double ratio = INFINITY;
	std::string pair_note;
	try {
		ratio = pairing_stats(split(l1[64]).trains).ratio;
	} catch (const Error& e) {
		pair_note = std::string(" (") + e.what() + ")";
	}

	auto F = [&](const LogSpectrum& ls) { return from_log_spectrum(ls); };
	std::vector<double> d2c;
	for (int m : {16, 32, 64}) d2c.push_back(sup_distance(F(l1[m]), F(l1[2 * m])));
	const bool c2 = d2c[1] < d2c[0] && d2c[2] < d2c[1];

	bool d2 = true;
	std::vector<double> neg, pos;
	for (int m : dyadic) {
		const auto t = tail_sums(F(l1[m]));
		neg.push_back(std::fabs(t.neg.to_double()));
		pos.push_back(std::fabs(t.pos.to_double()));
	}
	for (std::size_t i = 1; i < neg.size(); ++i) d2 = d2 && neg[i] > neg[i-1] && pos[i] > pos[i-1];

	std::vector<double> d2e;
	for (int m : {32, 64, 128}) d2e.push_back(sup_distance(F(l1[m]), F(l2[m])));
	const bool e2 = d2e[1] < d2e[0] && d2e[2] < d2e[1];

	Outcome o;
	o.pass = lobes && grow && ratio < kPairRatio && c2 && d2 && e2;
	std::ostringstream ss;
	ss << (spec.placeholder() ? "[zeta-star is the PLACEHOLDER provider, criterion not gating] " : "")
	   << "m=128 log-spectrum range [" << sci(mn.back()) << ", " << sci(mx.back()) << "] (need beyond +-" << kLobe << ")"
	   << ", dyadic growth " << (grow ? "yes" : "no")
	   << "; pairing ratio at m=64 " << sci(ratio) << pair_note << " (need < " << kPairRatio << ")"
	   << "; 2C sup distances " << sci(d2c[0]) << "," << sci(d2c[1]) << "," << sci(d2c[2]) << (c2 ? " decreasing" : " not decreasing")
	   << "; 2D tails " << (d2 ? "increasing" : "not increasing") << " (|neg| at m=128 " << sci(neg.back()) << ", pos " << sci(pos.back()) << ")"
	   << "; 2E sup distances " << sci(d2e[0]) << "," << sci(d2e[1]) << "," << sci(d2e[2]) << (e2 ? " decreasing" : " not decreasing");
	o.detail = ss.str();
	return o;
}

}

int main (int argc, char** argv) {
	widen_exponent_range();
	CLI::App app{"acceptance run"};
	std::string zeta_spec = "zeta-star";
	app.add_option("--zeta-spec", zeta_spec, "function spec used for the figure trends (e.g. @zeta.json)");
	CLI11_PARSE(app, argc, argv);

	try {
		report(1, "eigensolver identities", eigensolver_identities());
		report(2, "Catalan Hankel determinants", catalan_determinants());
		const auto recs = sample_records();
		report(3, "eigenvalue product equals determinant", product_identity(recs));
		report(4, "Hankel/Toeplitz permutation sign", permutation_sign());
		report(5, "distribution mean equals ln|det|/m", mean_consistency(recs));
		report(6, "rate estimator fixtures", rate_fixtures());
		const FunctionSpec spec = FunctionSpec::parse(zeta_spec);
		report(7, "figure trends", figure_trends(spec), !spec.placeholder());
		report(8, "zeta evaluator", zeta_values());
		report(9, "sweep performance and determinism", sweep_performance());
	} catch (const std::exception& e) {
		std::printf("FAIL aborted: %s\n", e.what());
		return 1;
	}
	return failures == 0 ? 0 : 1;
}
