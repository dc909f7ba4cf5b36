#include "drwlab/cli.hpp"

#include <algorithm>

namespace drwlab {

namespace {

bool one_of(const std::string& s, const std::vector<std::string>& xs) {
    return std::find(xs.begin(), xs.end(), s) != xs.end();
}

void bad(const std::string& msg) { fail(ErrorKind::InvalidArgument, msg); }

const char* status_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Untestable: return "untestable";
    }
    return "?";
}

std::string block_flag(const Weight& w) {
    std::string s;
    for (const auto& x : w.coords) s += (s.empty() ? "" : ",") + x.get_str();
    return "--block " + s;
}

bool inside(const Weight& w, long lo, long hi) {
    return std::all_of(w.coords.begin(), w.coords.end(), [&](const Rat& x) { return x >= lo && x <= hi; });
}

}  // namespace

void validate_config(const JobConfig& c) {
    if (c.command == "compute") {
        if (!one_of(c.target, compute_targets())) bad("unknown compute target '" + c.target + "'");
    } else if (c.command == "verify") {
        if (!one_of(c.target, verify_suites())) bad("unknown verify suite '" + c.target + "'");
    } else {
        bad("command must be compute or verify");
    }
    require_prime(c.p);
    if (c.p > 13) bad("p must be at most 13");
    if (c.prec < 1 || c.prec > 64) bad("prec must lie in [1, 64]");
    if (!one_of(c.kind, {"laurent", "affine", "cusp"})) bad("kind must be laurent, affine or cusp");
    if (c.n < 1 || c.n > 3) bad("n must lie in [1, 3]");
    if (c.kind == "cusp" && c.n != 1) bad("the cusp has n = 1");
    if (c.s < 0 || c.s > 6) bad("depth must lie in [0, 6]");
    if (c.R < 0 || c.R > 6) bad("levels must lie in [0, 6]");
    if (c.wmin > c.wmax) bad("wmin exceeds wmax");
    if (c.kind != "laurent" && c.wmin < 0) bad("affine and cusp windows start at 0");
    if (c.r < 1 || c.r > 4) bad("Witt length r must lie in [1, 4]");
    if (!one_of(c.op, {"sum", "product", "frobenius", "neg"})) bad("op must be sum, product, frobenius or neg");
    if (c.count > 10000) bad("count must be at most 10000");
    if (c.block && c.block->size() != c.n) bad("block weight must have n coordinates");
}

JobConfig apply_window_auto(const JobConfig& c) {
    if (!c.window_auto) return c;
    JobConfig out = c;
    int k = 0;
    if (c.target == "tower") {
        out.s = std::max(c.s, c.R);
        k = c.R;
    } else if (c.target == "nu" || c.target == "nygaard" || c.target == "cartier") {
        k = 1;
    } else if (c.target == "torus" && c.R > 0) {
        out.s = std::max(c.s, c.R);
        k = c.R;
    }
    const long f = ipow(c.p, static_cast<unsigned>(k)).get_si();
    out.wmin = c.wmin * f;
    out.wmax = c.wmax * f;
    return out;
}

// ---------------------------------------------------------------- JSON

Json to_json(const JobConfig& c) {
    Json j;
    j["command"] = c.command;
    j["target"] = c.target;
    j["p"] = c.p;
    j["prec"] = c.prec;
    j["kind"] = c.kind;
    j["n"] = c.n;
    j["depth"] = c.s;
    j["levels"] = c.R;
    j["wmin"] = c.wmin;
    j["wmax"] = c.wmax;
    j["r"] = c.r;
    j["op"] = c.op;
    j["seed"] = std::to_string(c.seed);
    j["count"] = c.count;
    j["out"] = c.out;
    j["window_auto"] = c.window_auto;
    j["block"] = c.block ? weight_json(Weight(*c.block), c.p) : Json(nullptr);
    return j;
}

JobConfig config_from_json(const Json& in) {
    const Json& j = in.contains("job") ? in.at("job") : in;
    if (!j.is_object()) bad("config must be a JSON object");
    if (in.contains("schema") && in.at("schema") != kSchema) bad("unsupported schema " + in.at("schema").dump());
    JobConfig c;
    try {
        if (j.contains("command")) c.command = j.at("command").get<std::string>();
        if (j.contains("target")) c.target = j.at("target").get<std::string>();
        if (j.contains("p")) c.p = j.at("p").get<long>();
        if (j.contains("prec")) c.prec = j.at("prec").get<int>();
        if (j.contains("kind")) c.kind = j.at("kind").get<std::string>();
        if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
        if (j.contains("depth")) c.s = j.at("depth").get<int>();
        if (j.contains("levels")) c.R = j.at("levels").get<int>();
        if (j.contains("wmin")) c.wmin = j.at("wmin").get<long>();
        if (j.contains("wmax")) c.wmax = j.at("wmax").get<long>();
        if (j.contains("r")) c.r = j.at("r").get<int>();
        if (j.contains("op")) c.op = j.at("op").get<std::string>();
        if (j.contains("seed")) c.seed = std::stoull(j.at("seed").is_string() ? j.at("seed").get<std::string>() : j.at("seed").dump());
        if (j.contains("count")) c.count = j.at("count").get<std::size_t>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
        if (j.contains("window_auto")) c.window_auto = j.at("window_auto").get<bool>();
        if (j.contains("block") && !j.at("block").is_null()) c.block = weight_from_json(j.at("block"), c.p);
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("malformed config: ") + e.what());
    } catch (const std::logic_error& e) {
        bad(std::string("malformed config: ") + e.what());
    }
    return c;
}

Json int_json(const Int& z) { return z.get_str(); }

Json pscalar_json(const Rat& x, long p, int prec) {
    Json j;
    j["prec"] = prec;
    if (x == 0) {
        j["v"] = "inf";
        j["u"] = "0";
        return j;
    }
    const int v = valuation(x, p);
    j["v"] = v;
    const Rat unit = x / ppow(p, v);
    const Int mod = ipow(p, static_cast<unsigned>(std::max(prec - v, 0)));
    Int inv;
    Int den = unit.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    Int u = Int(unit.get_num() * inv) % mod;
    if (u < 0) u += mod;
    if (mod == 1) u = 0;
    j["u"] = u.get_str();
    return j;
}

Json weight_json(const Weight& w, long p) {
    Json a = Json::array();
    for (const auto& x : w.coords) {
        const Int den = x.get_den();
        const int e = valuation(den, p);
        if (ipow(p, static_cast<unsigned>(e)) != den) bad("weight denominator is not a power of p");
        a.push_back({{"num", Int(x.get_num()).get_str()}, {"denexp", e}});
    }
    return a;
}

std::vector<Rat> weight_from_json(const Json& j, long p) {
    std::vector<Rat> out;
    for (const auto& c : j) {
        Rat x(Int(c.at("num").get<std::string>()), ipow(p, static_cast<unsigned>(c.at("denexp").get<int>())));
        x.canonicalize();
        out.push_back(x);
    }
    return out;
}

Json matrix_json(const PMatrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["prec"] = m.prec();
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(pscalar_json(m(i, k), m.p(), m.prec()));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

Json lattice_json(const Lattice& l) {
    Json j;
    j["ambient_rank"] = l.basis().rows();
    j["rank"] = l.basis().cols();
    j["basis"] = matrix_json(l.basis());
    return j;
}

Json complex_json(const BasedComplex& c) {
    Json j;
    j["p"] = c.p();
    j["prec"] = c.prec();
    j["d_min"] = c.d_min();
    j["d_max"] = c.d_max();
    Json win;
    win["exhaustive"] = c.window.exhaustive;
    win["depth"] = c.window.depth;
    win["depth_exhaustive"] = c.window.depth_exhaustive;
    win["nonnegative"] = c.window.nonnegative;
    win["lo"] = weight_json(Weight(c.window.lo), c.p());
    win["hi"] = weight_json(Weight(c.window.hi), c.p());
    j["window"] = win;
    Json blocks = Json::array();
    for (const auto& [w, b] : c.blocks()) {
        Json bj;
        bj["weight"] = weight_json(w, c.p());
        bj["ranks"] = b.rank;
        Json ds = Json::array();
        for (const auto& m : b.d) ds.push_back(matrix_json(m));
        bj["d"] = ds;
        blocks.push_back(bj);
    }
    j["blocks"] = blocks;
    return j;
}

// ---------------------------------------------------------------- reports

void Report::add(std::string id, bool ok, std::string message, std::optional<int> degree,
                 std::optional<Weight> weight) {
    checks.push_back({std::move(id), ok ? CheckStatus::Pass : CheckStatus::Fail, degree, std::move(weight),
                      std::move(message)});
}

void Report::untestable(std::string id, std::string message, std::optional<int> degree,
                        std::optional<Weight> weight) {
    checks.push_back({std::move(id), CheckStatus::Untestable, degree, std::move(weight), std::move(message)});
}

bool Report::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; });
}

Json Report::to_json() const {
    Json j;
    j["schema"] = kSchema;
    j["job"] = drwlab::to_json(job);
    j["job"].erase("out");  // where the report goes is not part of it
    std::size_t counts[3] = {0, 0, 0};
    Json cs = Json::array();
    for (const auto& c : checks) {
        ++counts[static_cast<int>(c.status)];
        Json cj;
        cj["id"] = c.id;
        cj["status"] = status_string(c.status);
        if (c.degree) cj["degree"] = *c.degree;
        if (c.weight) {
            cj["weight"] = weight_json(*c.weight, job.p);
            if (c.status == CheckStatus::Fail) cj["rerun"] = block_flag(*c.weight);
        }
        if (!c.message.empty()) cj["message"] = c.message;
        cs.push_back(cj);
    }
    j["checks"] = cs;
    j["summary"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"untestable", counts[2]}};
    j["status"] = passed() ? "pass" : "fail";
    j["precision"] = {{"input", job.prec}, {"consumed", prec_consumed}};
    j["data"] = data;
    return j;
}

Json error_json(ErrorKind kind, const std::string& message) {
    Json j;
    j["schema"] = kSchema;
    j["status"] = "error";
    j["error"] = {{"kind", to_string(kind)}, {"message", message}};
    return j;
}

ExitCode exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::PrecisionExhausted:
        case ErrorKind::WindowTooSmall:
        case ErrorKind::CostGuard: return ExitCode::Resource;
        case ErrorKind::InvalidArgument:
        case ErrorKind::ShapeMismatch: return ExitCode::Usage;
        default: return ExitCode::Fail;
    }
}

JobResult run_job(const JobConfig& in) {
    JobResult res;
    try {
        validate_config(in);
        const JobConfig c = apply_window_auto(in);
        Report rep = c.command == "compute" ? run_compute(c) : run_verify(c);
        rep.job = c;
        auto keep = [&](const Check& ch) {
            if (!ch.weight) return true;
            if (in.block && ch.weight->coords != *in.block) return false;
            if (in.window_auto && !inside(*ch.weight, in.wmin, in.wmax)) return false;
            return true;
        };
        std::vector<Check> kept;
        for (auto& ch : rep.checks)
            if (keep(ch)) kept.push_back(std::move(ch));
        rep.checks = std::move(kept);
        if (in.window_auto) rep.data["requested_window"] = {{"wmin", in.wmin}, {"wmax", in.wmax}};
        res.output = rep.to_json();
        res.code = rep.passed() ? ExitCode::Pass : ExitCode::Fail;
    } catch (const Error& e) {
        res.output = error_json(e.kind(), e.what());
        res.code = exit_code_for(e.kind());
    }
    return res;
}

}  // namespace drwlab
