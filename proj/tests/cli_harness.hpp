#pragma once

// Helpers for driving the installed CLI binary from tests: run a command
// line, capture stdout and the exit code, and compare JSON output against
// golden fixtures with volatile fields removed.

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace cli_harness {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

inline RunResult run_cli(const std::string& args) {
  const std::string command = std::string(DIGITLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Timing fields differ run to run; everything else in the schema is
// deterministic for a fixed build.
inline void scrub_volatile(nlohmann::ordered_json& j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [key, value] : j.items()) scrub_volatile(value);
  } else if (j.is_array()) {
    for (auto& value : j) scrub_volatile(value);
  }
}

inline nlohmann::ordered_json parse_scrubbed(const std::string& text) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
  scrub_volatile(j);
  return j;
}

inline nlohmann::ordered_json load_golden(const std::string& name) {
  const std::string path = std::string(DIGITLAB_GOLDEN_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing golden fixture: " + path);
  nlohmann::ordered_json j;
  in >> j;
  scrub_volatile(j);
  return j;
}

}  // namespace cli_harness
