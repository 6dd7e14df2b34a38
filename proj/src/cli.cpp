#include "muspec/cli.hpp"
#include "muspec/coeffs.hpp"
#include "muspec/dist.hpp"
#include "muspec/figio.hpp"
#include "muspec/harness.hpp"
#include "muspec/hashing.hpp"
#include "muspec/spectra.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace muspec {

namespace {

struct Options {
	std::string func = "zeta-star";
	std::vector<int> l{1};
	int m = 0;
	int m_max = 0;
	int n = 0;
	int digits = 30;
	long prec = 320;
	long prec_cap = 8192;
	std::string policy = "largest-gap";
	std::string wl_file;
	std::string cache_dir;
	std::string out;
	int jobs = 1;
	std::string format;
	std::string check_id;
	std::string figure_kind = "spectra";
};

class Context {
  public:
	Context (const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {
		spec_ = FunctionSpec::parse(o.func);
		if (o.digits < 1) throw Error("--digits must be positive");
		if (o.jobs < 1) throw Error("--jobs must be positive");
		if (o.prec < BigReal::kMinPrecision) throw Error("--prec must be at least 64");
		for (int l : o.l)
			if (l < 1) throw Error("--l must be at least 1");
		if (!o.wl_file.empty()) refs_ = ReferenceConstants::load(o.wl_file);
		std::string dir = o.cache_dir;
		if (dir.empty())
			if (const char* env = std::getenv("MUSPEC_CACHE_DIR"); env && *env) dir = env;
		if (!dir.empty()) cache_.emplace(dir);
		if (spec_.placeholder()) err_ << "note: zeta-star uses the placeholder provider (s-1)zeta(s) at s0=0\n";
	}

	const Options& opt () const { return o_; }
	const FunctionSpec& spec () const { return spec_; }
	std::ostream& err () { return err_; }

	CoeffStream stream (int max_index) {
		const Precision bits = static_cast<Precision>(o_.prec);
		if (cache_) return cache_->load_or_generate(spec_, max_index, bits);
		return generate(spec_, max_index, bits);
	}

	SpectrumOptions spectrum_options () const {
		SpectrumOptions so;
		so.cap_bits = static_cast<Precision>(o_.prec_cap);
		so.start_bits = std::min<Precision>(so.start_bits, so.cap_bits / 2);
		return so;
	}

	std::optional<BigReal> w (int l) const {
		if (!refs_) return std::nullopt;
		return refs_->w(l, static_cast<Precision>(o_.prec));
	}

	int m_max_required () const {
		const int mm = o_.m_max > 0 ? o_.m_max : o_.m;
		if (mm < 1) throw Error("--m-max is required");
		return mm;
	}

	/// Spectra for m = 1..m_max; any failed m is an error.
	std::vector<SpectrumRecord> records (int l, int m_max) {
		return collect(l, [&] { std::vector<int> v; for (int m = 1; m <= m_max; ++m) v.push_back(m); return v; }());
	}

	std::vector<SpectrumRecord> collect (int l, const std::vector<int>& ms) {
		const int top = *std::max_element(ms.begin(), ms.end());
		const CoeffStream s = stream(l + top);
		std::vector<SpectrumRecord> recs;
		std::string failures;
		for (auto& r : sweep(s, l, ms, o_.digits, o_.jobs, spectrum_options())) {
			if (r.record) recs.push_back(std::move(*r.record));
			else failures += "\n  m=" + std::to_string(r.m) + ": " + r.error;
		}
		if (!failures.empty()) throw Error("sweep failed for" + failures);
		return recs;
	}

	void emit (const std::string& text) {
		if (o_.out.empty()) out_ << text;
		else write_file_atomic(o_.out, text);
	}

  private:
	Options o_;
	std::ostream& out_;
	std::ostream& err_;
	FunctionSpec spec_;
	std::optional<ReferenceConstants> refs_;
	std::optional<CoeffCache> cache_;
};

std::string fmt_or (const Options& o, const std::string& fallback) { return o.format.empty() ? fallback : o.format; }

nlohmann::json record_json (const SpectrumRecord& r, int digits) {
	const std::size_t d = static_cast<std::size_t>(digits);
	nlohmann::json j;
	j["l"] = r.l;
	j["m"] = r.m;
	j["function_id"] = r.function_id;
	j["precision_bits"] = r.precision_used;
	j["target_digits"] = r.target_digits;
	j["determinant"] = r.determinant.to_string(d);
	j["trace"] = r.trace.to_string(d);
	nlohmann::json ev = nlohmann::json::array();
	for (const auto& mu : r.eigenvalues) ev.push_back(mu.to_string(d));
	j["eigenvalues"] = ev;
	return j;
}

nlohmann::json dist_json (const StepDistribution& f, int digits) {
	const std::size_t d = static_cast<std::size_t>(digits);
	nlohmann::json j;
	j["l"] = f.l;
	j["m"] = f.m;
	j["missing"] = f.missing;
	j["total_mass"] = f.total_mass();
	nlohmann::json jumps = nlohmann::json::array();
	for (const auto& x : f.jumps) jumps.push_back(x.to_string(d));
	j["jumps"] = jumps;
	const TailSums t = tail_sums(f);
	j["tail_neg"] = t.neg.to_string(d);
	j["tail_pos"] = t.pos.to_string(d);
	if (!f.warning.empty()) j["warning"] = f.warning;
	return j;
}

std::vector<StepDistribution> distributions (const std::vector<SpectrumRecord>& recs) {
	std::vector<StepDistribution> out;
	for (const auto& r : recs) out.push_back(from_log_spectrum(log_spectrum(r)));
	return out;
}

int cmd_coeffs (Context& c) {
	const Options& o = c.opt();
	const int n = o.n > 0 ? o.n : (o.m_max > 0 || o.m > 0 ? o.l.front() + std::max(o.m_max, o.m) : 64);
	const CoeffStream s = c.stream(n);
	const std::size_t d = static_cast<std::size_t>(o.digits);
	if (fmt_or(o, "csv") == "json") {
		nlohmann::json j;
		j["spec"] = s.spec.to_json();
		j["spec_hash"] = s.spec.hash();
		j["bits"] = s.precision_bits;
		j["provenance"] = s.provenance;
		nlohmann::json v = nlohmann::json::array();
		for (const auto& x : s.values) v.push_back(x.to_string(d));
		j["values"] = v;
		c.emit(j.dump(2) + "\n");
	} else if (fmt_or(o, "csv") == "csv") {
		std::ostringstream out;
		out << "k,theta\n";
		for (int k = 0; k <= s.max_index; ++k) out << k << "," << s.values[static_cast<std::size_t>(k)].to_string(d) << "\n";
		c.emit(out.str());
	} else {
		throw Error("coeffs supports --format csv or json");
	}
	return 0;
}

int cmd_spectrum (Context& c) {
	const Options& o = c.opt();
	if (o.m < 1) throw Error("spectrum needs --m");
	const auto recs = c.collect(o.l.front(), {o.m});
	const std::string f = fmt_or(o, "csv");
	if (f == "csv") c.emit(spectra_csv(recs, o.digits));
	else if (f == "json") c.emit(record_json(recs.front(), o.digits).dump(2) + "\n");
	else throw Error("spectrum supports --format csv or json");
	return 0;
}

int cmd_sweep (Context& c) {
	const Options& o = c.opt();
	const auto recs = c.records(o.l.front(), c.m_max_required());
	const std::string f = fmt_or(o, "csv");
	if (f == "csv") {
		c.emit(spectra_csv(recs, o.digits));
	} else if (f == "json") {
		nlohmann::json arr = nlohmann::json::array();
		for (const auto& r : recs) arr.push_back(record_json(r, o.digits));
		c.emit(arr.dump(2) + "\n");
	} else {
		std::vector<LogSpectrum> ls;
		for (const auto& r : recs) ls.push_back(log_spectrum(r));
		c.emit(render_spectra(ls, FigureConfig{}, SplitPolicy::parse(o.policy)));
	}
	return 0;
}

int cmd_dist (Context& c) {
	const Options& o = c.opt();
	if (o.m < 1) throw Error("dist needs --m");
	const auto recs = c.collect(o.l.front(), {o.m});
	const StepDistribution f = from_log_spectrum(log_spectrum(recs.front()));
	if (!f.warning.empty()) c.err() << "warning: " << f.warning << "\n";
	const std::string fm = fmt_or(o, "csv");
	if (fm == "csv") c.emit(distribution_csv(f, o.digits));
	else if (fm == "json") c.emit(dist_json(f, o.digits).dump(2) + "\n");
	else c.emit(render_distribution(f, FigureConfig{}));
	return 0;
}

int cmd_check (Context& c) {
	const Options& o = c.opt();
	const std::string& id = o.check_id;
	const int m_max = c.m_max_required();
	const int l = o.l.front();
	Thresholds th;
	th.identity_digits = std::min(25, o.digits);
	TrendReport report;

	auto dets = [](const std::vector<SpectrumRecord>& recs) {
		DetSequence d;
		for (const auto& r : recs) d.emplace_back(r.m, r.determinant);
		return d;
	};

	if (id == "v5") {
		report = check_version5(c.records(l, m_max), c.w(l), th);
	} else if (id == "v3") {
		report = check_version3(dets(c.records(l, m_max)), c.w(l), th);
	} else if (id == "v2") {
		report = check_version2(dets(c.records(l, m_max)), c.w(l), th);
	} else if (id == "v6") {
		report = check_version6(distributions(c.records(l, m_max)), c.w(l), th);
	} else if (id == "2A" || id == "2B") {
		std::vector<LogSpectrum> ls;
		for (const auto& r : c.records(l, m_max)) ls.push_back(log_spectrum(r));
		auto [a, b] = check_2A_2B(ls, th);
		report = id == "2A" ? a : b;
	} else if (id == "2C") {
		report = check_2C(distributions(c.records(l, m_max)), th);
	} else if (id == "2D") {
		report = check_2D(distributions(c.records(l, m_max)), th);
	} else if (id == "2E") {
		if (o.l.size() < 2) throw Error("check 2E needs at least two values of --l, e.g. --l 1,2");
		std::vector<int> ms;
		for (int m = 1; m <= m_max; m *= 2) ms.push_back(m);
		std::map<int, std::vector<StepDistribution>> by_l;
		for (int li : o.l) by_l[li] = distributions(c.collect(li, ms));
		report = check_2E(by_l);
	} else {
		throw Error("unknown check '" + id + "' (2A|2B|2C|2D|2E|v2|v3|v5|v6)");
	}
	nlohmann::json j = report.to_json(o.digits);
	j["function"] = c.spec().to_json();
	j["spec_hash"] = c.spec().hash();
	if (c.spec().placeholder()) j["provider"] = "PLACEHOLDER";
	c.emit(j.dump(2) + "\n");
	c.err() << id << ": " << to_string(report.verdict) << "\n";
	return report.verdict == Verdict::contradicted ? 1 : 0;
}

int cmd_figure (Context& c) {
	const Options& o = c.opt();
	if (!o.format.empty() && o.format != "svg") throw Error("figure only writes --format svg");
	const int l = o.l.front();
	std::string svg;
	std::vector<int> ms;
	if (o.figure_kind == "spectra") {
		const auto recs = c.records(l, c.m_max_required());
		std::vector<LogSpectrum> ls;
		for (const auto& r : recs) {
			ls.push_back(log_spectrum(r));
			ms.push_back(r.m);
		}
		svg = render_spectra(ls, FigureConfig{}, SplitPolicy::parse(o.policy));
	} else if (o.figure_kind == "dist") {
		if (o.m < 1) throw Error("figure dist needs --m");
		const auto recs = c.collect(l, {o.m});
		ms.push_back(o.m);
		svg = render_distribution(from_log_spectrum(log_spectrum(recs.front())), FigureConfig{});
	} else {
		throw Error("figure kind must be spectra or dist");
	}
	c.emit(svg);
	if (!o.out.empty()) {
		const std::filesystem::path out(o.out);
		const std::filesystem::path base = out.parent_path().empty() ? std::filesystem::path(".") : out.parent_path();
		Manifest man;
		man.spec_hash = c.spec().hash();
		man.l = {l};
		man.m_grid = ms;
		man.precision_policy = "stream " + std::to_string(o.prec) + " bits; adaptive eigen solve to " +
			std::to_string(o.digits) + " digits, cap " + std::to_string(o.prec_cap) + " bits";
		man.add_file(base, out.filename().string());
		man.write(base / (out.filename().string() + ".manifest.json"));
	}
	return 0;
}

} // namespace

int run_cli (int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
	Options o;
	CLI::App app{"Signed Hankel matrices of Taylor coefficients: spectra, distributions and trend checks", "muspec"};
	app.require_subcommand(1);
	app.option_defaults()->always_capture_default();
	app.add_option("--func", o.func, "function spec: geometric:R, exponential, rational2:A,B, catalan, moments:..., zeta-star, analytic:GEN[:r=R][:s0=X][:pole=TAG], @file.json");
	app.add_option("--l", o.l, "l (comma separated list for check 2E)")->delimiter(',');
	app.add_option("--m", o.m, "matrix size");
	app.add_option("--m-max", o.m_max, "largest m of a sweep");
	app.add_option("--n", o.n, "coeffs: highest coefficient index");
	app.add_option("--digits", o.digits, "target significant digits");
	app.add_option("--prec", o.prec, "coefficient precision in bits");
	app.add_option("--prec-cap", o.prec_cap, "precision cap in bits");
	app.add_option("--policy", o.policy, "split policy: largest-gap, threshold:C, quantile:Q");
	app.add_option("--wl-file", o.wl_file, "JSON with W_l (and R_l) values");
	app.add_option("--cache-dir", o.cache_dir, "coefficient cache directory (default $MUSPEC_CACHE_DIR, else no cache)");
	app.add_option("--out", o.out, "output file (default stdout)");
	app.add_option("--jobs", o.jobs, "worker threads");
	app.add_option("--format", o.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));

	auto* coeffs = app.add_subcommand("coeffs", "generate or extend a coefficient stream")->fallthrough();
	auto* spectrum = app.add_subcommand("spectrum", "mu-spectrum of a single M_{l,m}")->fallthrough();
	auto* sweep_cmd = app.add_subcommand("sweep", "spectra for m = 1..m-max")->fallthrough();
	auto* dist = app.add_subcommand("dist", "distribution function F_{l,m}")->fallthrough();
	auto* check = app.add_subcommand("check", "run a trend check")->fallthrough();
	check->add_option("id", o.check_id, "2A|2B|2C|2D|2E|v2|v3|v5|v6")->required();
	auto* figure = app.add_subcommand("figure", "render an SVG figure")->fallthrough();
	figure->add_option("kind", o.figure_kind, "spectra or dist");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		out << app.help();
		return 0;
	} catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << "\n" << app.help();
		return 2;
	}

	try {
		widen_exponent_range();
		Context c(o, out, err);
		if (*coeffs) return cmd_coeffs(c);
		if (*spectrum) return cmd_spectrum(c);
		if (*sweep_cmd) return cmd_sweep(c);
		if (*dist) return cmd_dist(c);
		if (*check) return cmd_check(c);
		if (*figure) return cmd_figure(c);
	} catch (const std::exception& e) {
		err << "error: " << e.what() << "\n";
		return 2;
	}
	return 2;
}

} // namespace muspec
