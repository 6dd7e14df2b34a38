#ifndef MUSPEC_FIGIO_HPP
#define MUSPEC_FIGIO_HPP

#include "muspec/dist.hpp"
#include "muspec/spectra.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace muspec {

inline constexpr const char* kToolVersion = "0.3.1";

struct FigureConfig {
	int width = 1200;
	int height = 800;
	std::optional<std::pair<double, double>> x_range;   // auto when empty
	std::optional<std::pair<double, double>> y_range;
	double marker_size = 2.0;
	std::filesystem::path output;                      // nothing written when empty

	void validate () const;
};

/// Scatter of (ln|mu|, m). With a policy, markers get class "electron" or "train".
std::string render_spectra (const std::vector<LogSpectrum>& spectra, const FigureConfig& cfg,
                            const std::optional<SplitPolicy>& policy = std::nullopt);

/// Right-continuous step plot of F, rising from 0 to the total mass.
std::string render_distribution (const StepDistribution& f, const FigureConfig& cfg);

struct Manifest {
	struct File {
		std::string path;     // relative to the manifest directory
		std::string sha256;
	};
	std::string tool_version = kToolVersion;
	std::string spec_hash;
	std::vector<int> l;
	std::vector<int> m_grid;
	std::string precision_policy;
	std::vector<File> files;

	/// Hashes `path` (relative to `base`) and records it, replacing an older entry.
	void add_file (const std::filesystem::path& base, const std::string& path);
	/// Problems found, empty when every file exists and matches.
	std::vector<std::string> verify (const std::filesystem::path& base) const;

	nlohmann::json to_json () const;
	static Manifest from_json (const nlohmann::json& j);
	void write (const std::filesystem::path& path) const;
	static Manifest load (const std::filesystem::path& path);
};

} // namespace muspec

#endif // MUSPEC_FIGIO_HPP
