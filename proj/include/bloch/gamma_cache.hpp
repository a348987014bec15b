#pragma once

#include <filesystem>
#include <optional>

#include "bloch/spin_algebra.hpp"

namespace bloch {

/// Binary cache of a constructed GammaSet.  Layout: magic "BLOCHGAM", u32
/// format version, u32 k, u32 twoS, u32 parity, u64 dim, u32 matrix count,
/// u32 has_chirality, 32-byte construction tag, then row-major complex
/// entries (two little-endian f64 each) for every gamma, the generators, and
/// the chirality block when present.
void save_gamma_set(const std::filesystem::path& file, const GammaSet& g);
GammaSet load_gamma_set(const std::filesystem::path& file);

std::string gamma_set_to_json(const GammaSet& g);

/// Cache filename for (group, twoS, construction).
std::filesystem::path cache_path(const std::filesystem::path& dir, Group group, int twoS,
                                 const std::string& construction);

/// Loads from cache if present; otherwise builds via `make` and stores the
/// result with an atomic rename.
GammaSet cached_gamma_set(const std::filesystem::path& dir, Group group, int twoS,
                          const std::string& construction,
                          const std::function<GammaSet()>& make);

}  // namespace bloch
