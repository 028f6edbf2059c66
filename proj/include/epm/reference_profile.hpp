#pragma once

#include <string>
#include <vector>

namespace epm {

// Two-column reference data with strictly increasing abscissae: a Ghia-style
// velocity profile (coordinate, velocity) or a sensor time series (t, P).
struct ReferenceProfile {
  std::vector<double> abscissa;
  std::vector<double> value;
  std::size_t size() const { return abscissa.size(); }
};

enum class ProfileKind { Ghia, Sensor };

// CSV loader: optional '#' comment lines and one optional non-numeric header
// row; errors carry the 1-based line number.
ReferenceProfile load_reference_profile(const std::string& path, ProfileKind kind);

// 17-significant-digit writer; round-trips losslessly through the loader.
void save_reference_profile(const ReferenceProfile& p, const std::string& path);

}  // namespace epm
