#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace wrcw::tool {

inline constexpr std::string_view kToolVersion = "0.1.0";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed 15-significant-digit formatting; every float in CSV output goes
// through here so reruns are byte-identical.
std::string format_g15(double v);

// Run metadata that accompanies every output file.  The data files
// themselves stay deterministic; the wall clock lives only in the sidecar.
struct Manifest {
  std::string subcommand;
  nlohmann::ordered_json parameters;
  nlohmann::ordered_json tolerances;
};

nlohmann::ordered_json manifest_payload(const Manifest& m);

class CommandTimer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void write_file(const std::string& path, std::string_view content);

// Writes content to `out` (stdout when unset) and, for file outputs, a
// sidecar `<out>.manifest.json` carrying the manifest plus the wall clock.
void emit_output(const std::optional<std::string>& out,
                 std::string_view content, const Manifest& manifest,
                 const CommandTimer& timer);

}  // namespace wrcw::tool
