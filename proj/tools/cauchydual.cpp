// cauchydual: command-line front end.
//
//   cauchydual analyze -m "0,1/3,2/3:1,1,1" [--oracle] [--out report.json]
//   cauchydual paper-check [-m SPEC] [--rotate 1/7]
//   cauchydual sweep [--grid 12] [--weights "1,1,1;1,1,2"] [--jobs 4]
//   cauchydual kernel -m SPEC --z 0.3,0.1 --lam -0.2,0.4
//
// Exit status: 0 on success, 1 on a pipeline error, 2 when paper-check has a
// failing item, CLI11's code on a usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cauchydual/error.hpp"
#include "cauchydual/pipeline.hpp"
#include "json.hpp"

namespace cd = cauchydual;

namespace {

struct CommonOptions {
    std::string policy_file;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> lmax;
    std::optional<int> ntrunc;
    bool exhaustive_psd = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cd::Error(cd::ErrorKind::ParseError, "cli_reports", "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string strip_at(const std::string& s) { return !s.empty() && s[0] == '@' ? s.substr(1) : s; }

cd::NumericPolicy load_policy(const CommonOptions& o) {
    cd::NumericPolicy p;
    if (!o.policy_file.empty()) {
        try {
            p = nlohmann::json::parse(read_file(strip_at(o.policy_file))).get<cd::NumericPolicy>();
        } catch (const nlohmann::json::exception& e) {
            throw cd::Error(cd::ErrorKind::ParseError, "cli_reports", std::string("policy file: ") + e.what());
        }
    }
    if (o.seed) p.seed = *o.seed;
    if (o.lmax) p.l_max = *o.lmax;
    if (o.ntrunc) p.n_trunc = *o.ntrunc;
    if (o.exhaustive_psd) p.exhaustive_psd = true;
    p.validate();
    return p;
}

cd::Measure load_measure(const std::string& spec, const cd::NumericPolicy& p) {
    if (!spec.empty() && spec[0] == '@') return cd::parse_measure(read_file(spec.substr(1)), p);
    return cd::parse_measure(spec, p);
}

cd::CScalar parse_point(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return {std::stod(text), 0.0};
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw cd::Error(cd::ErrorKind::ParseError, "cli_reports", "point must be \"re,im\": " + text);
    }
}

std::vector<std::array<double, 3>> parse_weights(const std::string& text) {
    std::vector<std::array<double, 3>> out;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::stringstream parts(group);
        std::string item;
        std::vector<double> vals;
        while (std::getline(parts, item, ',')) {
            try {
                vals.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw cd::Error(cd::ErrorKind::ParseError, "cli_reports", "bad weight: " + item);
            }
        }
        if (vals.size() != 3)
            throw cd::Error(cd::ErrorKind::ParseError, "cli_reports", "weight triple expected: " + group);
        const std::array<double, 3> w{vals[0], vals[1], vals[2]};
        out.push_back(w);
    }
    if (out.empty()) throw cd::Error(cd::ErrorKind::ParseError, "cli_reports", "no weight triples given");
    return out;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw cd::Error(cd::ErrorKind::ParseError, "cli_reports", "cannot write " + out);
    f << text;
}

void add_common(CLI::App* app, CommonOptions& o) {
    app->add_option("--policy", o.policy_file, "Policy overrides, JSON (@file.json or a path)");
    app->add_option("--out", o.out, "Write the report here instead of stdout");
    app->add_option("--seed", o.seed, "Seed for randomized checks");
    app->add_option("--lmax", o.lmax, "Largest order for the truncation probes");
    app->add_option("--ntrunc", o.ntrunc, "Truncation size for the truncation probes");
    app->add_flag("--exhaustive-psd", o.exhaustive_psd, "Run every truncation probe even after a violation");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cauchy dual subnormality toolkit for Dirichlet-type spaces"};
    app.require_subcommand(1);

    CommonOptions analyze_opts, check_opts, sweep_opts, kernel_opts;

    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on one measure");
    std::string analyze_measure;
    bool oracle = false, timings = false;
    analyze->add_option("-m,--measure", analyze_measure, "Inline \"turns:weights\" or @file.json")->required();
    analyze->add_flag("--oracle", oracle, "Also run the truncated operator model checks");
    analyze->add_flag("--timings", timings, "Include stage timings in the report");
    add_common(analyze, analyze_opts);

    auto* paper = app.add_subcommand("paper-check", "Regression of the displayed three-point constants");
    std::string paper_measure, rotate;
    paper->add_option("-m,--measure", paper_measure, "Measure to check instead of the equi-spaced triple");
    paper->add_option("--rotate", rotate, "Rotate the measure by this many turns first");
    add_common(paper, check_opts);

    auto* sweep = app.add_subcommand("sweep", "Three-atom sweep over a grid of angles");
    int grid = 12, jobs = 0;
    std::string weights = "1,1,1";
    sweep->add_option("--grid", grid, "Angles a/grid turns for the second and third atom")->check(CLI::PositiveNumber);
    sweep->add_option("--weights", weights, "Weight triples separated by ';'");
    sweep->add_option("--jobs", jobs, "Worker threads (0: hardware concurrency)");
    add_common(sweep, sweep_opts);

    auto* kernel = app.add_subcommand("kernel", "Evaluate the reproducing kernels at one pair of points");
    std::string kernel_measure, z_text, lam_text;
    kernel->add_option("-m,--measure", kernel_measure, "Inline \"turns:weights\" or @file.json")->required();
    kernel->add_option("--z", z_text, "First point, \"re,im\"")->required();
    kernel->add_option("--lam", lam_text, "Second point, \"re,im\"")->required();
    add_common(kernel, kernel_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            const auto policy = load_policy(analyze_opts);
            const auto m = load_measure(analyze_measure, policy);
            const auto report = cd::cmd_analyze(m, policy, {oracle, timings});
            emit(nlohmann::json(report).dump(2) + "\n", analyze_opts.out);
            return 0;
        }
        if (*paper) {
            const auto policy = load_policy(check_opts);
            std::optional<cd::Measure> m;
            if (!paper_measure.empty()) m = load_measure(paper_measure, policy);
            std::optional<cd::Turns> rot;
            if (!rotate.empty()) rot = cd::parse_turns(rotate);
            const auto report = cd::cmd_paper_check(m, rot, policy);
            emit(nlohmann::json(report).dump(2) + "\n", check_opts.out);
            for (const auto& item : report.items)
                std::cerr << cd::to_string(item.status) << "  " << item.name << "\n";
            return report.passed() ? 0 : 2;
        }
        if (*sweep) {
            const auto policy = load_policy(sweep_opts);
            cd::SweepSpec spec;
            spec.grid = grid;
            spec.jobs = jobs;
            spec.weights = parse_weights(weights);
            const auto rows = cd::cmd_sweep(spec, policy);
            emit(cd::sweep_csv(rows), sweep_opts.out);
            std::size_t errors = 0, review = 0;
            for (const auto& r : rows) {
                if (!r.error.empty()) ++errors;
                if (r.verdict == "SubnormalNumeric") {
                    ++review;
                    std::cerr << "REVIEW: SubnormalNumeric at theta2=" << r.theta2.str()
                              << " theta3=" << r.theta3.str() << " weights=" << r.w[0] << "," << r.w[1] << ","
                              << r.w[2] << "\n";
                }
            }
            std::cerr << rows.size() << " cells, " << errors << " error rows, " << review
                      << " SubnormalNumeric rows\n";
            return 0;
        }
        if (*kernel) {
            const auto policy = load_policy(kernel_opts);
            const auto m = load_measure(kernel_measure, policy);
            const auto report = cd::cmd_kernel(m, parse_point(z_text), parse_point(lam_text), policy);
            emit(nlohmann::json(report).dump(2) + "\n", kernel_opts.out);
            return 0;
        }
    } catch (const cd::Error& e) {
        std::cerr << "error [" << e.module() << "] " << cd::to_string(e.kind()) << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
