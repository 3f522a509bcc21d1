#pragma once

#include <filesystem>
#include <string>

#include "degenop/serialization.hpp"

namespace degenop {

struct RunOptions {
    std::string command;                 // analyze | reduce | solve | verify | selftest
    std::filesystem::path config_path;   // required except verify/selftest
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 20240915;
    int threads = 1;
    std::string format = "csv";  // csv | json (solution payload)
};

/// Executes one command; writes artifacts under out_dir. Exit-status
/// convention: 0 ok, 1 schema error, 2 non-generating configuration,
/// 3 numerical failure.
int run(const RunOptions& options);

}  // namespace degenop
