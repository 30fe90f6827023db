#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtor {

enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_usage = 2, exit_error = 3 };

struct RunConfig {
    std::vector<std::string> command;  // e.g. {"rep", "s5", "check"}
    int n = 3;
    int ell = 1;
    std::optional<std::int64_t> lmin, lmax;
    int smax = 1;
    int L = 1;
    int rmax = 3;
    std::vector<int> ms{1, -1, 2, -2};
    std::vector<std::string> rels;  // empty: all
    int order = 6;
    bool all = false;
    bool check = false;
    std::int64_t jmin = 0, jmax = 0;
    std::optional<int> level2_smax;
    std::string format = "json";
    std::string out;  // empty: stdout
    std::string config;
};

// parses argv (without the program name), merging the key=value config file under the flags
RunConfig parse_args(const std::vector<std::string>& args);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args + run; usage errors map to exit_usage
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qtor
