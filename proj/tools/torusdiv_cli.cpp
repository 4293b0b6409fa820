// Command-line front end: inspect the subdivision rule, generate subdivided
// or lattice-derived sphere complexes in JSON/OFF/DOT form, and run the
// consistency check suite.

#include <CLI11.hpp>

#include <torusdiv/cover.hpp>
#include <torusdiv/io.hpp>
#include <torusdiv/rule.hpp>
#include <torusdiv/verify.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using torusdiv::Rational;
namespace cover = torusdiv::cover;
namespace geom = torusdiv::geom;
namespace io = torusdiv::io;
namespace rule = torusdiv::rule;
namespace verify = torusdiv::verify;

Rational tile_volume(const rule::Tile& t) {
    geom::Complex c(t.type.n - 1);
    rule::add_tile_cell(c, t);
    return c.cell_volume(c.cells().front());
}

int write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open " << out << " for writing\n";
        return 1;
    }
    f << text;
    return f.good() ? 0 : 1;
}

int cmd_rule_show(int n) {
    const auto r = rule::make_subdivision_rule(n);
    std::cout << "subdivision rule for n=" << n << ": " << n
              << " tile type(s), cells of dimension " << (n - 1) << "\n";
    for (const auto& tpl : r.templates) {
        const auto children = tpl.children();
        std::cout << "template (p,q)=(" << tpl.parent.p << "," << tpl.parent.q
                  << "): parent volume "
                  << torusdiv::rat_str(tile_volume(rule::model_tile(tpl.parent))) << ", "
                  << children.size() << " child(ren)"
                  << (tpl.identity ? " (identity)" : "") << "\n";
        for (size_t i = 0; i < children.size(); ++i)
            std::cout << "  child " << i << ": type (" << children[i].type.p << ","
                      << children[i].type.q << "), volume "
                      << torusdiv::rat_str(tile_volume(children[i])) << "\n";
    }
    return 0;
}

int emit_complex(geom::Complex complex, int n, int k, const std::string& format,
                 const std::string& out) {
    io::ComplexDocument doc;
    doc.n = n;
    doc.k = k;
    doc.complex = std::move(complex);
    std::string text;
    if (format == "json")
        text = io::serialize(doc);
    else if (format == "off")
        text = io::to_off(doc);
    else
        text = io::to_dot(doc);
    return write_output(text, out);
}

int cmd_subdivide(int n, int k, const std::string& format, const std::string& out) {
    auto c = rule::iterate(rule::initial_sphere(n), rule::make_subdivision_rule(n), k);
    return emit_complex(std::move(c), n, k, format, out);
}

int cmd_oracle(int n, int k, const std::string& format, const std::string& out) {
    auto tiling = cover::refine_exposed(n, k);
    return emit_complex(std::move(tiling.complex), n, k, format, out);
}

int cmd_verify(int max_n, int max_k, const verify::SuiteOptions& options) {
    const auto reports = verify::run_suite(max_n, max_k, options);
    int passed = 0, failed = 0, skipped = 0;
    for (const auto& r : reports) {
        std::cout << verify::format_report(r) << "\n";
        switch (r.status) {
            case verify::Status::pass: ++passed; break;
            case verify::Status::fail: ++failed; break;
            case verify::Status::skip: ++skipped; break;
        }
    }
    std::cout << "suite: " << passed << " passed, " << failed << " failed, " << skipped
              << " skipped\n";
    return verify::all_passed(reports) ? 0 : 1;
}

bool parse_checks(const std::string& checks, verify::SuiteOptions& options) {
    options.templates = options.counts = options.euler = options.iso = false;
    std::stringstream ss(checks);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token == "counts")
            options.counts = true;
        else if (token == "euler")
            options.euler = true;
        else if (token == "iso")
            options.iso = true;
        else if (token == "template")
            options.templates = true;
        else
            return false;
    }
    return options.templates || options.counts || options.euler || options.iso;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subdivision tilings of boundary spheres in the cubulated n-torus lattice"};
    app.require_subcommand(1);

    int n = 2;
    int k = 1;
    std::string format = "json";
    std::string out;
    int max_n = 2;
    int max_k = 2;
    std::string checks = "counts,euler,iso,template";
    double budget_seconds = 60.0;

    auto add_format_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "lattice dimension")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--k", k, "number of subdivision steps / ball radius")
            ->required()
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "off", "dot"}));
        cmd->add_option("--out", out, "output file (default: stdout)");
    };

    auto* show = app.add_subcommand("rule-show", "print the subdivision templates for dimension n");
    show->add_option("--n", n, "lattice dimension")->required()->check(CLI::PositiveNumber);

    auto* subdivide =
        app.add_subcommand("subdivide", "subdivide the boundary sphere of the unit cube k times");
    add_format_flags(subdivide);

    auto* oracle = app.add_subcommand(
        "oracle", "tile the radius-k lattice sphere directly from the ball boundary");
    add_format_flags(oracle);

    auto* ver = app.add_subcommand("verify", "run the consistency check suite");
    ver->add_option("--max-n", max_n, "largest lattice dimension")->check(CLI::PositiveNumber);
    ver->add_option("--max-k", max_k, "largest subdivision depth")->check(CLI::NonNegativeNumber);
    ver->add_option("--checks", checks, "comma-separated subset of counts,euler,iso,template");
    ver->add_option("--budget-seconds", budget_seconds, "time budget per isomorphism instance")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (show->parsed()) return cmd_rule_show(n);
        if (subdivide->parsed() || oracle->parsed()) {
            if (format == "off" && n > 3) {
                std::cerr << "error: OFF output requires n <= 3 (got n=" << n << ")\n";
                return 2;
            }
            return subdivide->parsed() ? cmd_subdivide(n, k, format, out)
                                       : cmd_oracle(n, k, format, out);
        }
        verify::SuiteOptions options;
        options.budget_seconds = budget_seconds;
        if (!parse_checks(checks, options)) {
            std::cerr << "error: --checks must be a non-empty subset of counts,euler,iso,template\n";
            return 2;
        }
        return cmd_verify(max_n, max_k, options);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
