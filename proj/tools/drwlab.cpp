#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "drwlab/cli.hpp"

using namespace drwlab;

namespace {

int emit(const Json& j, const std::string& out) {
    const std::string text = j.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out);
    if (!f) return 1;
    f << text;
    return f ? 0 : 1;
}

int usage_error(const std::string& msg) {
    std::cerr << "drwlab: " << msg << "\n";
    std::cout << error_json(ErrorKind::InvalidArgument, msg).dump(2) << "\n";
    return static_cast<int>(ExitCode::Usage);
}

std::optional<std::string> config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
        if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
    }
    return std::nullopt;
}

std::vector<Rat> parse_block(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Rat x;
        if (x.set_str(tok, 10) != 0) fail(ErrorKind::InvalidArgument, "bad block coordinate '" + tok + "'");
        x.canonicalize();
        out.push_back(x);
    }
    return out;
}

void add_job_options(CLI::App* sub, JobConfig& c, std::string& block, std::string& config) {
    sub->add_option("target", c.target, "model (compute) or suite (verify)");
    sub->add_option("--p", c.p, "prime");
    sub->add_option("--prec", c.prec, "p-adic precision budget");
    sub->add_option("--kind", c.kind, "laurent | affine | cusp");
    sub->add_option("--n", c.n, "number of variables");
    sub->add_option("--depth,-s", c.s, "saturation / integral-forms depth s");
    sub->add_option("--levels,-R", c.R, "tower levels R");
    sub->add_option("--wmin", c.wmin, "window lower bound per coordinate");
    sub->add_option("--wmax", c.wmax, "window upper bound per coordinate");
    sub->add_option("--r", c.r, "Witt vector length");
    sub->add_option("--op", c.op, "Witt operation: sum | product | frobenius | neg");
    sub->add_option("--seed", c.seed, "seed for random corpora");
    sub->add_option("--count", c.count, "corpus size / sample count");
    sub->add_option("--out", c.out, "write JSON here instead of stdout");
    sub->add_option("--config", config, "JSON job config (flags override it)");
    sub->add_flag("--window-auto", c.window_auto, "grow the window so requested weights are testable");
    sub->add_option("--block", block, "report only this weight, e.g. 1/2,0");
}

}  // namespace

int main(int argc, char** argv) {
    JobConfig cfg;
    if (auto path = config_path(argc, argv)) {
        std::ifstream f(*path);
        if (!f) return usage_error("cannot read config " + *path);
        try {
            cfg = config_from_json(Json::parse(f));
        } catch (const Error& e) {
            return usage_error(e.what());
        } catch (const nlohmann::json::exception& e) {
            return usage_error(std::string("config is not JSON: ") + e.what());
        }
    }

    CLI::App app{"drwlab: saturated de Rham-Witt complexes of monomial rings"};
    app.require_subcommand(1);
    std::string block, config;
    auto* compute = app.add_subcommand("compute", "emit a model as JSON");
    auto* verify = app.add_subcommand("verify", "run a property suite");
    add_job_options(compute, cfg, block, config);
    add_job_options(verify, cfg, block, config);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return usage_error(e.what());
    }
    cfg.command = compute->parsed() ? "compute" : "verify";
    try {
        if (!block.empty()) cfg.block = parse_block(block);
    } catch (const Error& e) {
        return usage_error(e.what());
    }

    const auto t0 = std::chrono::steady_clock::now();
    JobResult res = run_job(cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "drwlab: " << cfg.command << " " << cfg.target << " finished in " << ms << " ms\n";
    if (emit(res.output, cfg.out) != 0) {
        std::cerr << "drwlab: cannot write " << cfg.out << "\n";
        return static_cast<int>(ExitCode::Usage);
    }
    return static_cast<int>(res.code);
}
