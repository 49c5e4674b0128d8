#include "output_format.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace wrcw::tool {

std::string format_g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

nlohmann::ordered_json manifest_payload(const Manifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = "wrcw";
  j["version"] = std::string(kToolVersion);
  j["subcommand"] = m.subcommand;
  j["parameters"] = m.parameters;
  j["tolerances"] = m.tolerances;
  return j;
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

void emit_output(const std::optional<std::string>& out,
                 std::string_view content, const Manifest& manifest,
                 const CommandTimer& timer) {
  if (!out) {
    std::cout << content;
    return;
  }
  write_file(*out, content);
  auto sidecar = manifest_payload(manifest);
  sidecar["wall_clock_seconds"] = timer.seconds();
  write_file(*out + ".manifest.json", sidecar.dump(2) + "\n");
}

}  // namespace wrcw::tool
