#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace graphmetro::cli {

inline const std::vector<std::string> kFigures{"fig2", "fig3", "fig4", "fig5", "fig6"};

/// Writes the CSV datasets of one figure into `outdir` and returns the file paths.
/// Throws ValidationError for unknown figure ids.
std::vector<std::filesystem::path> reproduce(const std::string& figure,
                                             const std::filesystem::path& outdir,
                                             std::uint64_t seed, std::ostream& log);

}  // namespace graphmetro::cli
