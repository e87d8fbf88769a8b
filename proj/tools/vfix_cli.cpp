#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "report.hpp"

using namespace vfix;
using report::Json;

namespace {

int emit(const Json& j, const std::string& json_path, double seconds)
{
    if (json_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << report::human(j) << "time: " << seconds << " s\n";
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            if (!out)
                throw report::UsageError("cannot write " + json_path);
            out << j.dump(2) << "\n";
        }
    }
    return j.value("pass", false) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for Frobenius-fixed bundles on genus-2 curves in characteristic 2"};
    app.require_subcommand(1);

    std::string curve, claim, json_path, matrix_path;
    std::uint64_t seed = 42;
    int cap = 0, n_max = 0;

    auto* info = app.add_subcommand("curve-info", "branch points, ordinarity, point counts and zeta data");
    info->add_option("--curve", curve, "curve spec, e.g. \"d=2;t=0x2;n=0\"")->required();
    info->add_option("--json", json_path, "write the JSON report to this path (\"-\" for stdout)");

    auto* verify = app.add_subcommand("verify", "run one claim check");
    verify->add_option("--claim", claim, "claim id")->required()->check(CLI::IsMember(report::claim_ids()));
    verify->add_option("--curve", curve, "curve spec");
    verify->add_option("--seed", seed, "seed for randomized suites")->capture_default_str();
    verify->add_option("--cap", cap, "search bound (lemma-3.1, thm-1.2) or order cap (section-2)");
    verify->add_option("--json", json_path, "write the JSON report to this path (\"-\" for stdout)");

    auto* mono = app.add_subcommand("monodromy", "order profile, strictness and rho(Frob) of a module");
    mono->add_option("--matrix", matrix_path, "JSON file with q, n, matrix")->required()->check(CLI::ExistingFile);
    mono->add_option("--n-max", n_max, "largest truncation (default: n)");
    mono->add_option("--cap", cap, "order cap (default 4096)");
    mono->add_option("--json", json_path, "write the JSON report to this path (\"-\" for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
        if (info->parsed()) {
            Json j = report::curve_info(report::parse_curve(curve));
            return emit(j, json_path, elapsed());
        }
        if (verify->parsed()) {
            report::Options opt;
            if (!curve.empty())
                opt.curve = curve;
            opt.seed = seed;
            if (verify->count("--cap"))
                opt.cap = cap;
            Json j = report::verify(claim, opt);
            return emit(j, json_path, elapsed());
        }
        std::ifstream in(matrix_path);
        nlohmann::json spec;
        try {
            in >> spec;
        } catch (const std::exception& e) {
            throw report::UsageError(std::string("invalid JSON in ") + matrix_path + ": " + e.what());
        }
        FrobPeriodicModule mod = report::parse_module(spec);
        if (!mono->count("--n-max"))
            n_max = mod.truncation();
        if (!mono->count("--cap"))
            cap = 4096;
        if (cap < 1)
            throw report::UsageError("--cap must be positive");
        Json j = report::monodromy(mod, n_max, cap);
        return emit(j, json_path, elapsed());
    } catch (const report::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
}
