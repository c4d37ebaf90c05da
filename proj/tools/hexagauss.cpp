#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hexagauss/rotations.hpp"
#include "hexagauss/scene_io.hpp"

namespace hg = hexagauss;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string space;
    long long count = 1;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;
    std::string out;
    std::string format = "json";
    std::string csv;
    std::string input;
};

void check_tolerance(double t) {
    if (!(t > 0.0 && t < 1e-2)) throw UsageError("tolerance must lie in (0, 0.01)");
}

double default_tolerance() {
    if (const char* env = std::getenv("HEXAGAUSS_TOL")) {
        char* end = nullptr;
        double t = std::strtod(env, &end);
        if (end == env || *end != '\0') throw UsageError("HEXAGAUSS_TOL is not a number");
        check_tolerance(t);
        return t;
    }
    return 1e-8;
}

// Writes through a sibling temporary so a failed run never leaves a partial file.
void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        std::cout.flush();
        return;
    }
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << data;
        f.flush();
        if (!f) {
            f.close();
            fs::remove(tmp);
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int cmd_gen(const RunConfig& c) {
    auto scenes = hg::generate_scenes(hg::parse_space(c.space), c.seed, static_cast<std::uint64_t>(c.count));
    std::string data = c.format == "json" ? hg::scenes_to_json(scenes, c.seed).dump(2) + "\n" : hg::scenes_to_text(scenes, c.seed);
    write_output(c.out, data);
    return kExitPass;
}

std::string report_text(const std::vector<hg::SceneReport>& reports, double tol, std::size_t passed) {
    std::ostringstream o;
    o << "# hexagauss verify rng=" << hg::kRngName << " tolerance=" << hg::format_double(tol) << "\n";
    for (const auto& r : reports) {
        double m = 0.0;
        for (const auto& f : r.formulas) m = std::max(m, f.second);
        o << "instance " << r.index << " " << hg::space_name(r.space);
        if (r.space == hg::Space::H3 || r.space == hg::Space::H4) o << " eps=" << (r.epsilon > 0 ? "+1" : "-1");
        o << " max_residual=" << hg::format_double(m) << (r.pass ? " pass" : " FAIL") << "\n";
        for (const auto& [k, v] : r.formulas)
            if (!(v < tol)) o << "  failing " << k << " " << hg::format_double(v) << "\n";
        if (r.error) o << "  error " << *r.error << "\n";
    }
    o << "summary " << passed << "/" << reports.size() << " passed\n";
    return o.str();
}

int cmd_verify(const RunConfig& c) {
    std::vector<hg::Scene> scenes;
    if (!c.input.empty() || c.space.empty()) {
        try {
            scenes = hg::parse_scenes(read_input(c.input));
        } catch (const hg::Error& e) {
            throw UsageError(e.what());
        }
    } else {
        scenes = hg::generate_scenes(hg::parse_space(c.space), c.seed, static_cast<std::uint64_t>(c.count));
    }
    if (scenes.empty()) throw UsageError("no scenes to verify");

    std::vector<hg::SceneReport> reports;
    std::size_t passed = 0;
    for (const auto& s : scenes) {
        reports.push_back(hg::verify_scene(s, c.tolerance));
        passed += reports.back().pass ? 1 : 0;
    }
    const bool all = passed == reports.size();

    std::string data;
    if (c.format == "json") {
        hg::json j{{"rng", hg::kRngName}, {"tolerance", c.tolerance}, {"count", reports.size()}, {"passed", passed}, {"pass", all}};
        j["instances"] = hg::json::array();
        for (const auto& r : reports) j["instances"].push_back(hg::to_json(r, c.tolerance));
        data = j.dump(2) + "\n";
    } else {
        data = report_text(reports, c.tolerance, passed);
    }
    write_output(c.out, data);

    if (!c.csv.empty()) {
        std::ostringstream o;
        o << "index,space,formula,residual\n";
        for (const auto& r : reports)
            for (const auto& [k, v] : r.formulas)
                o << r.index << "," << hg::space_name(r.space) << "," << k << "," << hg::format_double(v) << "\n";
        write_output(c.csv, o.str());
    }
    return all ? kExitPass : kExitFail;
}

int cmd_euler(const std::vector<double>& q, const std::string& format) {
    if (q.size() != 4) throw UsageError("euler expects four coefficients a0 a1 a2 a12");
    hg::Multivector a = hg::Multivector::a2(q[0], q[1], q[2], q[3]);
    if (a.norm() == 0.0) throw UsageError("euler: zero quaternion");
    a = a / a.norm();
    hg::EulerDecomposition d = hg::euler_decompose(a);
    auto residual = [&](double al, double be, double ga) { return (hg::euler_compose(al, be, ga) - a).max_abs(); };

    if (format == "json") {
        hg::json j{{"input", hg::to_string(a)}, {"regular", d.regular()}};
        if (d.regular()) {
            j["solutions"] = hg::json::array();
            for (const auto& s : d.solutions)
                j["solutions"].push_back(
                    {{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}, {"residual", residual(s.alpha, s.beta, s.gamma)}});
        } else {
            const bool sum = d.family->kind == hg::EulerFamily::Kind::SumFixed;
            j["family"] = {{"fixed", sum ? "alpha+gamma" : "gamma-alpha"}, {"members", hg::json::array()}};
            for (const auto& [b, v] : d.family->members) {
                const double al = sum ? 0.0 : -v, ga = sum ? v : 0.0;
                j["family"]["members"].push_back({{"beta", b}, {"value", v}, {"residual", residual(al, b, ga)}});
            }
        }
        std::cout << j.dump(2) << "\n";
        return kExitPass;
    }
    std::cout << "a = " << hg::to_string(a) << "\n";
    if (d.regular()) {
        std::cout << "alpha beta gamma residual\n";
        for (const auto& s : d.solutions)
            std::cout << hg::format_double(s.alpha) << " " << hg::format_double(s.beta) << " " << hg::format_double(s.gamma) << " "
                      << hg::format_double(residual(s.alpha, s.beta, s.gamma)) << "\n";
    } else {
        const bool sum = d.family->kind == hg::EulerFamily::Kind::SumFixed;
        std::cout << "degenerate: one-parameter family, " << (sum ? "alpha+gamma" : "gamma-alpha") << " fixed\n";
        std::cout << "beta " << (sum ? "alpha+gamma" : "gamma-alpha") << " residual\n";
        for (const auto& [b, v] : d.family->members) {
            const double al = sum ? 0.0 : -v, ga = sum ? v : 0.0;
            std::cout << hg::format_double(b) << " " << hg::format_double(v) << " " << hg::format_double(residual(al, b, ga))
                      << "\n";
        }
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clifford-algebra hyperbolic geometry: hexagon generation and Delambre-Gauss verification"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::vector<double> quat;
    std::string euler_format = "text";
    const std::vector<std::string> spaces{"h3", "h4", "triangle-spherical", "triangle-hyperbolic", "planar-hexagon"};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--count", cfg.count, "number of instances")->check(CLI::Range(1LL, 100000000LL).description("at least 1"));
        sub->add_option("--seed", cfg.seed, "64-bit seed");
        sub->add_option("--tolerance", cfg.tolerance, "residual tolerance (default 1e-8 or $HEXAGAUSS_TOL)");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };
    auto* gen = app.add_subcommand("gen", "generate random scenes");
    gen->add_option("--space", cfg.space, "geometry")->required()->check(CLI::IsMember(spaces));
    common(gen);
    auto* verify = app.add_subcommand("verify", "verify scenes read from a file or stdin, or generated on the fly");
    verify->add_option("--space", cfg.space, "generate instances of this geometry")->check(CLI::IsMember(spaces));
    verify->add_option("input", cfg.input, "scene file, '-' for stdin");
    verify->add_option("--emit-csv", cfg.csv, "also write per-formula residuals as CSV");
    common(verify);
    auto* euler = app.add_subcommand("euler", "Euler decomposition of a quaternion a0 + a1 e1 + a2 e2 + a12 e12");
    euler->add_option("coefficients", quat, "a0 a1 a2 a12")->expected(4)->required();
    euler->add_option("--format", euler_format, "json or text")->check(CLI::IsMember({"json", "text"}));

    try {
        cfg.tolerance = default_tolerance();
        app.parse(argc, argv);
        check_tolerance(cfg.tolerance);
        if (*gen) return cmd_gen(cfg);
        if (*verify) {
            if (!cfg.input.empty() && !cfg.space.empty()) throw UsageError("give either an input file or --space, not both");
            return cmd_verify(cfg);
        }
        return cmd_euler(quat, euler_format);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "hexagauss: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hg::Error& e) {
        std::cerr << "hexagauss: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "hexagauss: " << e.what() << "\n";
        return kExitUsage;
    }
}
