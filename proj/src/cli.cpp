#include "weightkit/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "weightkit/counterexamples.hpp"
#include "weightkit/errors.hpp"
#include "weightkit/io.hpp"
#include "weightkit/oracle.hpp"
#include "weightkit/pd_one.hpp"
#include "weightkit/report.hpp"
#include "weightkit/weights.hpp"

namespace weightkit {

namespace {

constexpr int exit_ok = 0;     // property holds / object produced
constexpr int exit_fails = 1;  // property definitively fails
constexpr int exit_usage = 2;  // input or usage error

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string complex_summary(const Complex& M) {
    if (M.is_zero_complex()) return "zero complex";
    std::string s = "degrees " + std::to_string(M.lo) + ".." + std::to_string(M.hi()) + ", dims";
    for (int i = M.lo; i <= M.hi(); ++i) s += " " + std::to_string(M.dim(i));
    return s;
}

KillCondition parse_mode(const std::string& s) {
    if (s == "1" || s == "composite") return KillCondition::composite;
    if (s == "3" || s == "factor-lower") return KillCondition::factor_lower;
    if (s == "5" || s == "factor-upper") return KillCondition::factor_upper;
    if (s == "7" || s == "completion") return KillCondition::completion;
    throw InvalidRange("unknown kill condition '" + s + "'");
}

std::string mode_name(KillCondition c) {
    switch (c) {
        case KillCondition::composite: return "composite";
        case KillCondition::factor_lower: return "factor-lower";
        case KillCondition::factor_upper: return "factor-upper";
        case KillCondition::completion: return "completion";
    }
    return "?";
}

void print_certificate(const KillCertificate& c, std::ostream& out) {
    out << "certificate: condition " << static_cast<int>(c.condition) << " ("
        << mode_name(c.condition) << ") verified\n";
    switch (c.condition) {
        case KillCondition::composite:
            out << "  w<=" << c.n << " of the source into w>=" << c.m
                << " of the target is null-homotopic\n";
            break;
        case KillCondition::factor_lower:
            out << "  the lower inclusion factors through w<=" << c.m - 1
                << " of the target up to homotopy\n";
            break;
        case KillCondition::factor_upper:
            out << "  the upper projection factors through w>=" << c.n + 1
                << " of the source up to homotopy\n";
            break;
        case KillCondition::completion:
            out << "  both truncation rows complete to a morphism of triangles\n";
            break;
    }
}

// Name the homological reasons a kill fails, weight by weight; over rings
// with Smith normal form the three-part criterion pins the culprit.
void print_kill_obstruction(const ChainMap& g, int m, int n, std::ostream& out) {
    bool pointwise_ok = true;
    for (int j = m; j <= n; ++j) {
        if (kills_weights(g, j, j)) continue;
        pointwise_ok = false;
        out << "obstruction at weight " << j << ":";
        if (g.src.ring.has_snf()) {
            bool any = false;
            if (!homology_map(g, j).is_zero()) {
                out << " H_" << j << "(map) != 0";
                any = true;
            }
            if (!ext_class_of(g, j).is_zero()) {
                out << (any ? "," : "") << " extension class between weights " << j - 1
                    << " and " << j << " != 0";
                any = true;
            }
            if (!factors_through_free(homology_map(g, j - 1))) {
                out << (any ? "," : "") << " H_" << j - 1
                    << "(map) does not factor through a projective";
                any = true;
            }
            if (!any) out << " the homotopy factorization system is unsolvable";
        } else {
            out << " the homotopy factorization system is unsolvable";
        }
        out << "\n";
    }
    if (pointwise_ok)
        out << "obstruction: every single weight is killed, but the band system is unsolvable\n";
}

int cmd_analyze(const std::string& path, bool as_json, bool with_certs, std::ostream& out,
                std::ostream& err) {
    FileContent file = load_file(path);
    if (file.complexes.empty()) {
        err << "no complexes in " << path << "\n";
        return exit_usage;
    }
    if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [name, M] : file.complexes)
            arr.push_back(nlohmann::json::parse(report_to_json(analyze(M, name, with_certs))));
        out << arr.dump(2) << "\n";
    } else {
        bool first = true;
        for (const auto& [name, M] : file.complexes) {
            if (!first) out << "\n";
            first = false;
            out << report_to_text(analyze(M, name, with_certs));
        }
    }
    return exit_ok;
}

int cmd_kills(const std::string& path, const std::string& map_name, int m, int n,
              const std::string& mode, std::ostream& out, std::ostream& err) {
    FileContent file = load_file(path);
    const NamedMap* nm = find_map(file, map_name);
    if (!nm) {
        err << "no map named '" << map_name << "' in " << path << "\n";
        return exit_usage;
    }
    auto cert = kills_weights(nm->map, m, n, parse_mode(mode));
    if (cert) {
        out << "kills: " << map_name << " kills weights " << m << ".." << n << "\n";
        print_certificate(*cert, out);
        return exit_ok;
    }
    out << "kills: " << map_name << " does not kill weights " << m << ".." << n << "\n";
    print_kill_obstruction(nm->map, m, n, out);
    return exit_fails;
}

int cmd_avoid(const std::string& path, const std::string& obj, int m, int n, std::ostream& out,
              std::ostream& err) {
    FileContent file = load_file(path);
    const Complex* M = find_complex(file, obj);
    if (!M) {
        err << "no complex named '" << obj << "' in " << path << "\n";
        return exit_usage;
    }
    auto w = without_weights(*M, m, n);
    if (!w) {
        out << "avoid: " << obj << " is not without weights " << m << ".." << n << "\n";
        if (M->ring.has_snf()) {
            for (int j = m; j <= n; ++j) {
                FgModule h = homology(*M, j);
                if (!h.is_zero()) out << "obstruction: H_" << j << " = " << h.to_string() << "\n";
            }
            FgModule below = homology(*M, m - 1);
            if (!below.torsion.empty())
                out << "obstruction: H_" << m - 1 << " = " << below.to_string()
                    << " is not projective\n";
        } else {
            out << "obstruction: the identity does not kill the band\n";
        }
        return exit_fails;
    }
    out << "avoid: " << obj << " is without weights " << m << ".." << n << "\n";
    print_certificate(*w, out);
    try {
        auto dec = avoiding_decomposition(*M, m, n);
        if (!dec) throw InvariantViolation("avoidance certified but no decomposition produced");
        out << "decomposition: X -> " << obj << " -> Y with X in w<=" << m - 1 << ", Y in w>="
            << n + 1 << "\n";
        out << "  X: " << complex_summary(dec->x) << "\n";
        out << "  Y: " << complex_summary(dec->y) << "\n";
    } catch (const UnsupportedRing&) {
        out << "decomposition: not constructed over this ring, certificate only\n";
    }
    return exit_ok;
}

int cmd_hom(const std::string& path, const std::string& src, const std::string& tgt,
            std::ostream& out, std::ostream& err) {
    FileContent file = load_file(path);
    const Complex* A = find_complex(file, src);
    const Complex* B = find_complex(file, tgt);
    if (!A || !B) {
        err << "no complex named '" << (A ? tgt : src) << "' in " << path << "\n";
        return exit_usage;
    }
    HomDecomposition d = hom_decomposition(*A, *B);
    out << "hom(" << src << ", " << tgt << ") = " << d.total.to_string() << "\n";
    out << "homology layer: " << d.hom_part.to_string() << "\n";
    out << "extension layer: " << d.ext_part.to_string() << "\n";
    if (!d.matches) throw InvariantViolation("hom layers do not add up to the hom group");
    return exit_ok;
}

int cmd_check_example(const std::string& which, std::ostream& out) {
    CoeffRing F = CoeffRing::prime_field(2);
    if (which == "a") {
        TripleObject Ma = degenerate_triple_example(F);
        TripleDegeneracyReport rep = triple_degeneracy_report(Ma);
        out << "triple (L, 0, L) over " << ring_token(F) << ", L one line in degree 0\n";
        out << "weight complex degenerate: " << yn(rep.degenerate) << "\n";
        out << "component parities: " << rep.left_parity << ", " << rep.right_parity << "\n";
        out << "splits inside the parity category: " << yn(rep.decomposable_in_category) << "\n";
        if (!rep.note.empty()) out << rep.note << "\n";
        bool holds = rep.degenerate && rep.left_parity == 1 && rep.right_parity == 1 &&
                     !rep.decomposable_in_category;
        if (!holds) {
            out << "expected obstruction did not manifest\n";
            return exit_fails;
        }
        return exit_ok;
    }
    EvenComplex Pb = even_without_weight_example(F);
    EvenObstructionReport rep = even_obstruction(Pb, 0, 0);
    out << "staircase complex over " << ring_token(F) << ", "
        << complex_summary(Pb.underlying) << "\n";
    out << "without weight 0: " << yn(rep.without) << "\n";
    out << "avoiding components have Euler characteristics " << rep.chi_x << ", " << rep.chi_y
        << " (both odd)\n";
    out << "decomposition exists inside the even category: " << yn(rep.exists_in_category)
        << "\n";
    if (!rep.note.empty()) out << rep.note << "\n";
    bool holds = rep.without && !rep.exists_in_category && rep.chi_x % 2 != 0 &&
                 rep.chi_y % 2 != 0;
    if (!holds) {
        out << "expected obstruction did not manifest\n";
        return exit_fails;
    }
    return exit_ok;
}

int cmd_oracle(const std::string& battery, long long trials, std::optional<uint64_t> seed_opt,
               std::ostream& out, std::ostream& err) {
    uint64_t seed = default_oracle_seed;
    if (seed_opt) {
        seed = *seed_opt;
    } else if (const char* env = std::getenv("WEIGHTKIT_SEED")) {
        errno = 0;
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (*env == '\0' || *env == '-' || end == nullptr || *end != '\0' || errno == ERANGE) {
            err << "WEIGHTKIT_SEED is not an unsigned integer: '" << env << "'\n";
            return exit_usage;
        }
        seed = v;
    }
    BatteryReport rep;
    try {
        rep = run_battery(battery, trials, seed);
    } catch (const UnknownBattery& e) {
        err << e.what() << "\navailable batteries:";
        for (const std::string& n : battery_names()) err << " " << n;
        err << "\n";
        return exit_usage;
    }
    out << rep.to_json() << "\n";
    return rep.pass ? exit_ok : exit_fails;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"weight-structure toolkit for bounded complexes of free modules"};
    app.name("weightkit");
    app.require_subcommand(1);

    std::string input, map_name, object_name, src_name, tgt_name, which, battery;
    std::string mode = "composite";
    std::vector<int> range;
    bool as_json = false, with_certs = false;
    long long trials = 100;
    uint64_t seed_val = 0;

    CLI::App* c_analyze = app.add_subcommand(
        "analyze", "homology, pieces, avoided weights and skeleton bounds");
    c_analyze->add_option("--input", input, "complex file")->required();
    c_analyze->add_flag("--json", as_json, "emit the report as JSON");
    c_analyze->add_flag("--certificates", with_certs, "re-verify and list certificates");

    CLI::App* c_kills = app.add_subcommand("kills", "decide whether a map kills a weight band");
    c_kills->add_option("--input", input, "complex file")->required();
    c_kills->add_option("--map", map_name, "map name")->required();
    c_kills->add_option("--range", range, "weights m n")->expected(2)->required();
    c_kills->add_option("--mode", mode, "kill condition: 1|3|5|7 or its name")
        ->check(CLI::IsMember({"1", "3", "5", "7", "composite", "factor-lower", "factor-upper",
                               "completion"}));

    CLI::App* c_avoid =
        app.add_subcommand("avoid", "decide whether an object is without a weight band");
    c_avoid->add_option("--input", input, "complex file")->required();
    c_avoid->add_option("--object", object_name, "complex name")->required();
    c_avoid->add_option("--range", range, "weights m n")->expected(2)->required();

    CLI::App* c_hom = app.add_subcommand("hom", "hom group in the homotopy category");
    c_hom->add_option("--input", input, "complex file")->required();
    c_hom->add_option("--src", src_name, "source complex")->required();
    c_hom->add_option("--tgt", tgt_name, "target complex")->required();

    CLI::App* c_check =
        app.add_subcommand("check-example", "verify a built-in parity counterexample");
    c_check->add_option("which", which, "a = degenerate triple, b = even staircase")
        ->required()
        ->check(CLI::IsMember({"a", "b"}));

    CLI::App* c_oracle = app.add_subcommand("oracle", "run a randomized theorem battery");
    c_oracle->add_option("--battery", battery, "battery name")->required();
    c_oracle->add_option("--trials", trials, "trial budget")->check(CLI::PositiveNumber);
    CLI::Option* seed_opt = c_oracle->add_option("--seed", seed_val, "base seed");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (c_analyze->parsed()) return cmd_analyze(input, as_json, with_certs, out, err);
        if (c_kills->parsed())
            return cmd_kills(input, map_name, range[0], range[1], mode, out, err);
        if (c_avoid->parsed()) return cmd_avoid(input, object_name, range[0], range[1], out, err);
        if (c_hom->parsed()) return cmd_hom(input, src_name, tgt_name, out, err);
        if (c_check->parsed()) return cmd_check_example(which, out);
        if (c_oracle->parsed())
            return cmd_oracle(battery, trials,
                              seed_opt->count() ? std::optional<uint64_t>(seed_val) : std::nullopt,
                              out, err);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return exit_usage;
    }
    err << "no subcommand given\n";
    return exit_usage;
}

}  // namespace weightkit
