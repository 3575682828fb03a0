#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "chlab/config.hpp"

namespace chlab::cli {

/// Executes one command, writing its artifacts and manifest.json under
/// cfg.out. Returns the process exit status; breakdown is a result and
/// still returns 0. Messages go to `log`.
int run(const config::RunConfig& cfg, std::ostream& log);

/// Full front door: --config PATH, --out DIR, --seed U64, --set key=value.
/// Invalid configuration exits with status 2 naming the key.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace chlab::cli
