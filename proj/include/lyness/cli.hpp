#pragma once

#include "lyness/flow.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lyness::cli {

enum class Format { csv, json };

enum Exit : int { ok = 0, numeric_failure = 1, usage_error = 2 };

struct RunConfig {
    std::string command;
    std::optional<double> a;  // unset means the command's default
    double tol = default_tol;
    std::string out;
    Format format = Format::csv;
    bool strict = false;
    int threads = 1;
    std::string emit_plot;
    std::optional<int> samples;
};

// Printed rows of the four tables; absent cells are NaN.
struct ReferenceRow {
    double t;
    double x, y, z;
    double T, tau, rho_F, rho_F2;
};

struct ReferenceTable {
    int id;
    double a;
    PathKind kind;
    std::vector<ReferenceRow> rows;
};

const ReferenceTable& reference_table(int id);

std::vector<TableRow> compute_table(int id, const RunConfig& cfg);

int run_table(int id, std::ostream& out, const RunConfig& cfg);
int run_verify(const std::string& suite, std::ostream& out, const RunConfig& cfg);
int run_find_periodic(Point3 seed, int n, double a, std::ostream& out, const RunConfig& cfg);

// Full command-line entry point; returns the process exit code.
int main(int argc, char** argv);

}  // namespace lyness::cli
