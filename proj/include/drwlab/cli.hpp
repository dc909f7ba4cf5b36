#pragma once

// Batch front door: job configuration, JSON serialization of models, and the
// compute / verify drivers behind tools/drwlab.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "drwlab/drw.hpp"

namespace drwlab {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "drw-lab/1";

enum class ExitCode { Pass = 0, Fail = 1, Usage = 2, Resource = 3 };

struct JobConfig {
    std::string command = "verify";  // compute | verify
    std::string target;              // compute model or verify suite
    long p = 2;
    int prec = 8;
    std::string kind = "laurent";  // laurent | affine | cusp
    std::size_t n = 1;
    int s = 1;  // depth
    int R = 1;  // levels
    long wmin = -2;
    long wmax = 2;
    int r = 2;               // Witt length
    std::string op = "sum";  // Witt operation
    std::uint64_t seed = 0;
    std::size_t count = 50;
    std::string out;  // empty: stdout
    bool window_auto = false;
    /// Single-block rerun: restrict the report to this weight.
    std::optional<std::vector<Rat>> block;
};

inline const std::vector<std::string>& compute_targets() {
    static const std::vector<std::string> t{"torus", "derham", "witt-polys", "cusp-witness", "saturation"};
    return t;
}

inline const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> s{"etap", "gamma", "cartier", "tower", "nygaard", "nu", "oracle", "cusp", "witt"};
    return s;
}

/// Invalid combinations as InvalidArgument, before any computation.
void validate_config(const JobConfig& c);

/// Window growth of --window-auto: every requested weight becomes testable.
JobConfig apply_window_auto(const JobConfig& c);

// ---------------------------------------------------------------- JSON

Json to_json(const JobConfig& c);
JobConfig config_from_json(const Json& j);

Json int_json(const Int& z);
/// {"v": valuation | "inf", "u": unit residue mod p^(prec - v), "prec": prec}.
Json pscalar_json(const Rat& x, long p, int prec);
/// [{"num": string, "denexp": e}] for coordinates num / p^e.
Json weight_json(const Weight& w, long p);
std::vector<Rat> weight_from_json(const Json& j, long p);
/// {"rows", "cols", "prec", "entries": row-major PScalars}.
Json matrix_json(const PMatrix& m);
Json lattice_json(const Lattice& l);
Json complex_json(const BasedComplex& c);

// ---------------------------------------------------------------- reports

enum class CheckStatus { Pass, Fail, Untestable };

struct Check {
    std::string id;
    CheckStatus status = CheckStatus::Pass;
    std::optional<int> degree;
    std::optional<Weight> weight;
    std::string message;
};

struct Report {
    JobConfig job;
    std::vector<Check> checks;
    Json data = Json::object();  // compute artifacts and suite details
    int prec_consumed = 0;

    void add(std::string id, bool ok, std::string message = {}, std::optional<int> degree = {},
             std::optional<Weight> weight = {});
    void untestable(std::string id, std::string message, std::optional<int> degree = {},
                    std::optional<Weight> weight = {});
    bool passed() const;
    Json to_json() const;
};

struct JobResult {
    Json output;
    ExitCode code = ExitCode::Pass;
};

Report run_compute(const JobConfig& c);
Report run_verify(const JobConfig& c);

/// Validation, dispatch, and the error object for exit codes 2 and 3.
JobResult run_job(const JobConfig& c);

Json error_json(ErrorKind kind, const std::string& message);
ExitCode exit_code_for(ErrorKind kind);

}  // namespace drwlab
