#pragma once

// Command-line front end: montecarlo, saturation, verify.
//
// Exit codes: 0 success, 1 a bound or invariant failed, 2 I/O failure,
// 64 usage error. QRE_THREADS caps the worker threads of the Monte Carlo
// sweep (output does not depend on it).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "qre/io.hpp"
#include "qre/montecarlo.hpp"
#include "qre/verify.hpp"

namespace qre::cli {

enum ExitCode : int { kOk = 0, kScientificFailure = 1, kIoFailure = 2, kUsage = 64 };

struct MonteCarloArgs {
    std::size_t n = 10000;
    std::uint64_t seed = 42;
    std::string out;
    io::Format format = io::Format::Csv;
    unsigned threads = 1;
};

struct SaturationArgs {
    std::vector<double> eps{0.1, 0.5, 1.0, 2.0, 4.0};
    double omega = 1.0;
    std::string out;
    io::Format format = io::Format::Csv;
};

struct VerifyArgs {
    std::string suite = "all";
    std::size_t draws = 1000;
    std::uint64_t seed = 7;
};

inline unsigned threads_from_env() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* v = std::getenv("QRE_THREADS")) {
        try {
            const long cap = std::stol(v);
            if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
        }
    }
    return hw;
}

inline int write_table(const std::string& path, const io::Table& t, io::Format f, std::ostream& err) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << path << "' for writing\n";
        return kIoFailure;
    }
    io::write(file, t, f);
    file.flush();
    if (!file) {
        err << "error: failed writing '" << path << "'\n";
        return kIoFailure;
    }
    return kOk;
}

inline int cmd_montecarlo(const MonteCarloArgs& a, std::ostream& out, std::ostream& err) {
    const auto records = mc::run_experiment(a.n, a.seed, a.threads);
    const auto sum = mc::summarize(records);
    if (const int rc = write_table(a.out, io::records_table(records, a.seed), a.format, err); rc != kOk) return rc;
    out << "records: " << sum.records << '\n'
        << "violations: " << sum.violations << '\n'
        << "classical violations: " << sum.classical_violations << '\n'
        << "redraws: " << sum.redraws << '\n'
        << "min u - f(s_tilde): " << io::format_real(sum.min_gap) << '\n';
    return sum.violations == 0 ? kOk : kScientificFailure;
}

inline int cmd_saturation(const SaturationArgs& a, std::ostream& out, std::ostream& err) {
    const auto pts = mc::saturation_family(a.eps, a.omega);
    if (const int rc = write_table(a.out, io::saturation_table(pts, a.omega), a.format, err); rc != kOk) return rc;
    bool ok = true;
    for (const auto& p : pts) {
        const bool tight = std::abs(p.gap) <= 1e-8;
        ok = ok && tight;
        out << "eps " << io::format_real(p.eps) << "  u " << io::format_real(p.u) << "  gap "
            << io::format_real(p.gap) << (tight ? "" : "  NOT SATURATED") << '\n';
    }
    return ok ? kOk : kScientificFailure;
}

inline void print_suite(const verify::SuiteResult& s, std::ostream& out) {
    out << "suite " << s.suite << '\n';
    for (const auto& r : s.invariants) {
        out << "  [" << (r.passed() ? "PASS" : "FAIL") << "] " << r.name << "  worst=" << io::format_real(r.worst)
            << " tol=" << io::format_real(r.tolerance) << " checked=" << r.checked;
        if (r.skipped) out << " skipped=" << r.skipped;
        out << '\n';
    }
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    verify::Options o;
    o.draws = a.draws;
    o.seed = a.seed;
    bool ok = true;
    for (const auto& s : verify::run(a.suite, o)) {
        print_suite(s, out);
        ok = ok && s.passed();
    }
    out << (ok ? "all invariants hold" : "INVARIANT FAILURE") << '\n';
    return ok ? kOk : kScientificFailure;
}

/// Parses argv and dispatches to a subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Quantum relative entropy uncertainty relation: experiments and verification", "qre"};
    app.require_subcommand(1);

    const std::map<std::string, io::Format> formats{{"csv", io::Format::Csv}, {"json", io::Format::Json}};

    MonteCarloArgs mca;
    auto* mc_cmd = app.add_subcommand("montecarlo", "Random-qubit experiment; writes one row per draw");
    mc_cmd->add_option("-n,--n", mca.n, "number of records")->check(CLI::PositiveNumber)->capture_default_str();
    mc_cmd->add_option("--seed", mca.seed, "64-bit seed")->capture_default_str();
    mc_cmd->add_option("-o,--out", mca.out, "output path")->required();
    mc_cmd->add_option("--format", mca.format, "csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("csv");

    SaturationArgs sa;
    auto* sat_cmd = app.add_subcommand("saturation", "Two-level family that meets the bound with equality");
    sat_cmd->add_option("--eps", sa.eps, "comma-separated epsilon values (> 0)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sat_cmd->add_option("--omega", sa.omega, "observable scale (> 0)")->check(CLI::PositiveNumber)->capture_default_str();
    sat_cmd->add_option("-o,--out", sa.out, "output path")->required();
    sat_cmd->add_option("--format", sa.format, "csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("csv");

    VerifyArgs va;
    auto* ver_cmd = app.add_subcommand("verify", "Run randomized invariant suites");
    std::vector<std::string> choices{"all"};
    for (const auto& s : verify::suite_names()) choices.push_back(s);
    ver_cmd->add_option("--suite", va.suite, "suite name")->check(CLI::IsMember(choices))->capture_default_str();
    ver_cmd->add_option("--draws", va.draws, "random draws per invariant")->check(CLI::PositiveNumber)->capture_default_str();
    ver_cmd->add_option("--seed", va.seed, "64-bit seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (mc_cmd->parsed()) {
            mca.threads = threads_from_env();
            return cmd_montecarlo(mca, out, err);
        }
        if (sat_cmd->parsed()) return cmd_saturation(sa, out, err);
        return cmd_verify(va, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kScientificFailure;
    }
}

} // namespace qre::cli
