#include "muspec/figio.hpp"
#include "muspec/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace fs = std::filesystem;

namespace muspec {

void FigureConfig::validate () const {
	if (width <= 0 || height <= 0) throw Error("figure dimensions must be positive");
	if (!(marker_size > 0.0)) throw Error("marker size must be positive");
	for (const auto* r : {&x_range, &y_range}) {
		if (!*r) continue;
		if (!std::isfinite((*r)->first) || !std::isfinite((*r)->second) || !((*r)->first < (*r)->second))
			throw Error("fixed axis range must be finite and increasing");
	}
}

namespace {

constexpr double kMargin = 60.0;

struct Frame {
	double x0, x1, y0, y1;
	double w, h;

	double px (double x) const { return kMargin + (x - x0) / (x1 - x0) * (w - 2*kMargin); }
	double py (double y) const { return h - kMargin - (y - y0) / (y1 - y0) * (h - 2*kMargin); }
};

std::pair<double, double> padded (double lo, double hi) {
	if (!(lo < hi)) {
		const double c = lo;
		return {c - 1.0, c + 1.0};
	}
	const double pad = 0.05 * (hi - lo);
	return {lo - pad, hi + pad};
}

std::string num (double v) {
	std::ostringstream s;
	s << std::setprecision(10) << v;
	return s.str();
}

void header (std::ostringstream& out, const FigureConfig& cfg, const Frame& fr, const std::string& xlabel,
             const std::string& ylabel) {
	out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
	    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << cfg.width << "\" height=\""
	    << cfg.height << "\" viewBox=\"0 0 " << cfg.width << " " << cfg.height << "\">\n"
	    << "<style>.electron{fill:#1f5fbf}.train{fill:#c0392b}.point{fill:#222}"
	       ".step{fill:none;stroke:#222;stroke-width:1.5}.axis{stroke:#555;stroke-width:1}"
	       "text{font-family:sans-serif;font-size:14px}</style>\n"
	    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
	const double l = kMargin, r = cfg.width - kMargin, t = kMargin, b = cfg.height - kMargin;
	out << "<g class=\"frame\">"
	    << "<line class=\"axis\" x1=\"" << l << "\" y1=\"" << b << "\" x2=\"" << r << "\" y2=\"" << b << "\"/>"
	    << "<line class=\"axis\" x1=\"" << l << "\" y1=\"" << b << "\" x2=\"" << l << "\" y2=\"" << t << "\"/>";
	if (fr.x0 < 0 && fr.x1 > 0) {
		const double zx = fr.px(0.0);
		out << "<line class=\"axis\" stroke-dasharray=\"4 4\" x1=\"" << num(zx) << "\" y1=\"" << b << "\" x2=\"" << num(zx)
		    << "\" y2=\"" << t << "\"/>";
	}
	out << "<text x=\"" << l << "\" y=\"" << b + 20 << "\">" << num(fr.x0) << "</text>"
	    << "<text x=\"" << r << "\" y=\"" << b + 20 << "\" text-anchor=\"end\">" << num(fr.x1) << "</text>"
	    << "<text x=\"" << l - 6 << "\" y=\"" << b << "\" text-anchor=\"end\">" << num(fr.y0) << "</text>"
	    << "<text x=\"" << l - 6 << "\" y=\"" << t + 10 << "\" text-anchor=\"end\">" << num(fr.y1) << "</text>"
	    << "<text x=\"" << (l + r) / 2 << "\" y=\"" << b + 40 << "\" text-anchor=\"middle\">" << xlabel << "</text>"
	    << "<text x=\"" << 16 << "\" y=\"" << (t + b) / 2 << "\">" << ylabel << "</text>"
	    << "</g>\n";
}

void finish (std::ostringstream& out, const FigureConfig& cfg) {
	out << "</svg>\n";
	if (!cfg.output.empty()) write_file_atomic(cfg.output, out.str());
}

} // namespace

std::string render_spectra (const std::vector<LogSpectrum>& spectra, const FigureConfig& cfg,
                            const std::optional<SplitPolicy>& policy) {
	cfg.validate();
	if (spectra.empty()) throw Error("render_spectra: no records");
	double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
	int mmin = spectra.front().m, mmax = spectra.front().m;
	for (const auto& s : spectra) {
		mmin = std::min(mmin, s.m);
		mmax = std::max(mmax, s.m);
		for (const auto& p : s.points) {
			const double x = p.to_double();
			xmin = std::min(xmin, x);
			xmax = std::max(xmax, x);
		}
	}
	if (!std::isfinite(xmin)) xmin = xmax = 0.0;
	const auto xr = cfg.x_range ? *cfg.x_range : padded(xmin, xmax);
	const auto yr = cfg.y_range ? *cfg.y_range : padded(mmin, mmax);
	const Frame fr{xr.first, xr.second, yr.first, yr.second, double(cfg.width), double(cfg.height)};

	std::ostringstream out;
	header(out, cfg, fr, "ln|mu|", "m");
	out << "<g class=\"markers\">\n";
	for (const auto& s : spectra) {
		std::size_t first_train = 0;
		if (policy && !s.points.empty()) first_train = split(s, *policy).electrons.size();
		for (std::size_t i = 0; i < s.points.size(); ++i) {
			const double x = s.points[i].to_double();
			const char* cls = !policy ? "point" : i < first_train ? "electron" : "train";
			out << "<circle class=\"" << cls << "\" cx=\"" << num(fr.px(x)) << "\" cy=\"" << num(fr.py(s.m)) << "\" r=\""
			    << num(cfg.marker_size) << "\" data-x=\"" << num(x) << "\" data-m=\"" << s.m << "\"/>\n";
		}
	}
	out << "</g>\n";
	finish(out, cfg);
	return out.str();
}

std::string render_distribution (const StepDistribution& f, const FigureConfig& cfg) {
	cfg.validate();
	if (f.jumps.empty()) throw Error("render_distribution: distribution has no jumps");
	const double lo = f.jumps.front().to_double(), hi = f.jumps.back().to_double();
	const auto xr = cfg.x_range ? *cfg.x_range : padded(lo, hi);
	const auto yr = cfg.y_range ? *cfg.y_range : std::pair<double, double>{0.0, 1.0};
	const Frame fr{xr.first, xr.second, yr.first, yr.second, double(cfg.width), double(cfg.height)};

	// distinct jump locations with cumulative counts
	std::vector<std::pair<double, std::size_t>> steps;
	for (std::size_t i = 0; i < f.jumps.size(); ++i) {
		if (i + 1 < f.jumps.size() && f.jumps[i + 1] == f.jumps[i]) continue;
		steps.emplace_back(f.jumps[i].to_double(), i + 1);
	}
	const double mm = f.m;
	std::ostringstream d, data;
	d << "M " << num(fr.px(xr.first)) << " " << num(fr.py(0.0));
	data << num(xr.first) << ",0";
	double level = 0.0;
	for (const auto& [x, count] : steps) {
		d << " L " << num(fr.px(x)) << " " << num(fr.py(level));
		data << ";" << num(x) << "," << num(level);
		level = static_cast<double>(count) / mm;
		d << " L " << num(fr.px(x)) << " " << num(fr.py(level));
		data << ";" << num(x) << "," << num(level);
	}
	d << " L " << num(fr.px(xr.second)) << " " << num(fr.py(level));
	data << ";" << num(xr.second) << "," << num(level);

	std::ostringstream out;
	header(out, cfg, fr, "x", "F(x)");
	out << "<path class=\"step\" d=\"" << d.str() << "\" data-xy=\"" << data.str() << "\" data-steps=\"" << steps.size()
	    << "\"/>\n";
	finish(out, cfg);
	return out.str();
}

void Manifest::add_file (const fs::path& base, const std::string& path) {
	const std::string h = sha256_file(base / path);
	for (auto& f : files)
		if (f.path == path) {
			f.sha256 = h;
			return;
		}
	files.push_back({path, h});
}

std::vector<std::string> Manifest::verify (const fs::path& base) const {
	std::vector<std::string> problems;
	for (const auto& f : files) {
		const fs::path p = base / f.path;
		if (!fs::exists(p)) {
			problems.push_back(f.path + ": missing");
			continue;
		}
		if (sha256_file(p) != f.sha256) problems.push_back(f.path + ": hash mismatch");
	}
	return problems;
}

nlohmann::json Manifest::to_json () const {
	nlohmann::json j;
	j["tool_version"] = tool_version;
	j["spec_hash"] = spec_hash;
	j["l"] = l;
	j["m_grid"] = m_grid;
	j["precision_policy"] = precision_policy;
	nlohmann::json fl = nlohmann::json::array();
	for (const auto& f : files) fl.push_back({{"path", f.path}, {"sha256", f.sha256}});
	j["files"] = fl;
	return j;
}

Manifest Manifest::from_json (const nlohmann::json& j) {
	Manifest m;
	m.tool_version = j.at("tool_version").get<std::string>();
	m.spec_hash = j.at("spec_hash").get<std::string>();
	m.l = j.at("l").get<std::vector<int>>();
	m.m_grid = j.at("m_grid").get<std::vector<int>>();
	m.precision_policy = j.at("precision_policy").get<std::string>();
	for (const auto& f : j.at("files")) m.files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
	return m;
}

void Manifest::write (const fs::path& path) const { write_file_atomic(path, to_json().dump(2) + "\n"); }

Manifest Manifest::load (const fs::path& path) { return from_json(nlohmann::json::parse(read_file(path))); }

} // namespace muspec
