#pragma once

#include <filesystem>
#include <optional>

#include "bloch/types.hpp"

namespace bloch {

/// Parsed command-line request.  Round-trips through JSON.
struct RunConfig {
    std::string command;       // gamma|spectrum|qgt|wz|chern|entropy|bures|harmonics|check
    std::string group = "so3";
    int twoS = 1;
    std::optional<double> lambda;      // physical lambda (half-integers allowed)
    std::vector<int> grid;             // per-command meaning
    std::vector<double> chart_angles;  // explicit chart point, when given
    std::string format = "csv";        // csv|json
    std::string out_path;              // empty -> stdout
    std::string cache_dir;             // empty -> BLOCHGEO_CACHE or ./cache
    int threads = 1;
    double tol = 1e-8;
    unsigned long long seed = 12345;
    bool numeric = false;  // chern: also integrate numerically
    bool table = false;    // bures: emit the f/g table normalization

    std::string to_json() const;
    static RunConfig from_json(const std::string& s);
};

/// Exit codes: 0 success, 1 usage error, 2 domain/parity error, 3 tolerance breach.
enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kToleranceBreach = 3 };

int run_command(const RunConfig& cfg);

}  // namespace bloch
