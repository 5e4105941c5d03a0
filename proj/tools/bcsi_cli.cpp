// bcsi: bounds for the three-receiver Gaussian broadcast channel with
// receiver message side information.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "bcsi/index_coding.hpp"
#include "bcsi/outer_bound.hpp"
#include "bcsi/reporting.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string config;
    double power = 10.0;
    double n1 = 0.2, n2 = 0.5, n3 = 1.0;
    std::string base = "2";
    int grid = bcsi::kDefaultRayGrid;
    int directions = bcsi::kDefaultDirections;
    bool random = false;
    std::uint64_t seed = bcsi::kDefaultSeed;
    std::string out;

    std::vector<std::uint64_t> sizes{4, 4, 2};
    std::vector<std::uint64_t> message{0, 0, 0};
    bool one_based = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bcsi::Channel channel(const Options& o)
{
    bcsi::Channel ch{o.power, {o.n1, o.n2, o.n3}, bcsi::parse_log_base(o.base)};
    ch.validate();
    return ch;
}

bcsi::RoutingMatrix routing(const Options& o)
{
    if (o.config.empty()) throw UsageError("--config is required for this command");
    return bcsi::RoutingMatrix::parse(o.config);
}

std::vector<bcsi::RateTuple> directions(const Options& o)
{
    if (o.directions < 0) throw UsageError("--directions must be nonnegative");
    if (o.random) {
        auto d = bcsi::random_directions(o.directions, o.seed);
        d.push_back({1.0, 0.0, 0.0});
        d.push_back({0.0, 1.0, 0.0});
        d.push_back({0.0, 0.0, 1.0});
        return d;
    }
    return bcsi::octant_directions(o.directions);
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw UsageError("cannot open " + path + " for writing");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

int run_index(const Options& o, std::ostream& out)
{
    using namespace bcsi;
    if (o.sizes.size() != 3 || o.message.size() != 3)
        throw UsageError("--sizes and --message take three values");
    const auto a = routing(o);
    const std::uint64_t off = o.one_based ? 1 : 0;
    MessageTuple w{};
    for (int k = 0; k < 3; ++k) {
        if (o.one_based && o.message[k] == 0) throw UsageError("one-based messages start at 1");
        w[k] = o.message[k] - off;
    }
    const auto space = MessageSpace::for_config(a, {o.sizes[0], o.sizes[1], o.sizes[2]});
    const bool pair = space.kind == MessageSpace::Kind::PairXor;
    const auto k = index_message(w, space);
    out << "scheme " << (pair ? "pair-xor" : "mixed-radix");
    if (pair) out << " pair {" << space.pair[0] << "," << space.pair[1] << "} modulus " << space.modulus();
    out << "\nsubcodebooks " << subcodebook_count(space) << "\nindex " << k + off << "\n";
    for (int i = 1; i <= 3; ++i) {
        SideInfo known{};
        std::string side = "none";
        if (pair && i != space.third()) {
            const int other = i == space.pair[0] ? space.pair[1] : space.pair[0];
            known[other - 1] = w[other - 1];
            side = "w" + std::to_string(other) + "=" + std::to_string(w[other - 1] + off);
        }
        const auto got = recover_message(k, known, space, i);
        out << "receiver " << i << " side " << side << " recovers w" << i << "=" << got + off
            << (got == w[i - 1] ? "" : " MISMATCH") << "\n";
        if (got != w[i - 1]) return kExitVerifyFailed;
    }
    return kExitOk;
}

int run_verify(const Options& o, std::ostream& out)
{
    const auto results = bcsi::verify_all(channel(o), o.seed);
    bool all = true;
    for (const auto& r : results) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " checks=" << r.checks
            << " failures=" << r.failures << " worst=" << bcsi::format_number(r.worst);
        if (!r.passed()) out << " first: " << r.detail;
        out << "\n";
        all = all && r.passed();
    }
    return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Inner and outer bounds for the 3-receiver Gaussian broadcast channel with "
                 "receiver message side information"};
    app.set_config("--config-file", "", "key=value file supplying any of the flags (flags win)");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--config", o.config, "configuration id 0..63 or 6-bit string a12,a13,a21,a23,a31,a32");
    app.add_option("--P", o.power, "transmit power")->capture_default_str();
    app.add_option("--N1", o.n1, "noise variance at receiver 1")->capture_default_str();
    app.add_option("--N2", o.n2, "noise variance at receiver 2")->capture_default_str();
    app.add_option("--N3", o.n3, "noise variance at receiver 3")->capture_default_str();
    app.add_option("--base", o.base, "logarithm base")->check(CLI::IsMember({"2", "e"}))->capture_default_str();
    app.add_option("--grid", o.grid, "split grid resolution for ray extents")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--directions", o.directions, "number of sampled octant directions (axes are added)")->capture_default_str();
    app.add_flag("--random-directions", o.random, "sample directions uniformly using --seed");
    app.add_option("--seed", o.seed, "seed for sampled directions and verification")->capture_default_str();
    app.add_option("--out", o.out, "output file (default stdout)");

    auto* classify = app.add_subcommand("classify", "matrix families, degraded sequences and tightness (JSON)");
    auto* bounds = app.add_subcommand("bounds", "inner maximiser and outer extent per weight direction (CSV)");
    auto* inner = app.add_subcommand("inner", "inner-bound frontier with optimal power splits (CSV)");
    auto* outer = app.add_subcommand("outer", "outer-bound frontier by ray extent (CSV)");
    auto* report = app.add_subcommand("report-all", "one summary row per configuration (CSV)");
    auto* verify = app.add_subcommand("verify", "run the consistency suites");
    auto* index = app.add_subcommand("index", "index-coding round trip for one message tuple");
    index->add_option("--sizes", o.sizes, "message set sizes L1 L2 L3")->expected(3);
    index->add_option("--message", o.message, "message tuple w1 w2 w3")->expected(3);
    index->add_flag("--one-based", o.one_based, "messages and index are 1-based");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Output sink(o.out);
        auto& out = sink.stream();
        if (*classify) {
            out << bcsi::classify_json(routing(o)).dump(2) << "\n";
        } else if (*bounds) {
            bcsi::write_csv(out, bcsi::bounds_rows(routing(o), channel(o), directions(o), o.grid));
        } else if (*inner) {
            bcsi::write_csv(out, bcsi::inner_rows(routing(o), channel(o), directions(o)));
        } else if (*outer) {
            bcsi::write_csv(out, bcsi::outer_rows(routing(o), channel(o), directions(o)));
        } else if (*report) {
            bcsi::write_csv(out, bcsi::report_all(channel(o), directions(o), o.grid));
        } else if (*verify) {
            return run_verify(o, out);
        } else if (*index) {
            return run_index(o, out);
        }
    } catch (const UsageError& e) {
        std::cerr << "bcsi: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bcsi: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "bcsi: internal error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}
