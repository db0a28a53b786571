#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "wrb/rb/reduced_space.hpp"

namespace wrb::cli {

/// Reduced space plus free-form metadata (config hash, discretization, greedy
/// summary), as stored in a space container.
struct StoredSpace {
  rb::ReducedSpace space;
  nlohmann::json meta = nlohmann::json::object();
};

/// Container layout: "WRBSPACE", u32 version, u64 header length, JSON header,
/// then the arrays listed in the header as little-endian f64, column-major.
void save_space(const std::string& path, const StoredSpace& stored);
StoredSpace load_space(const std::string& path);

inline constexpr std::uint32_t kSpaceFormatVersion = 1;

}  // namespace wrb::cli
