// Command-line front end: verify algebras, emit structure forms and brackets,
// build double extensions, compute Betti numbers, and check the chain maps.
//
// Exit codes: 0 success, 1 semantic failure, 2 parse or IO failure.

#include <iostream>
#include <random>

#include <CLI11.hpp>

#include <pinczon/io.hpp>

using namespace pinczon;
namespace pio = pinczon::io;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kParse = 2;

std::string one_based(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
    return s + ")";
}

void print(const ValidationReport& r) {
    for (const auto& c : r.checks) {
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name;
        if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
        if (c.witness) std::cout << "  witness " << one_based(*c.witness);
        std::cout << "\n";
    }
}

pio::AlgebraFile load_algebra(const std::string& path) { return pio::parse_algebra(pio::read_file(path)); }

// ------------------------------------------------------------ commands

int cmd_verify(const std::string& path) {
    auto raw = pio::parse_algebra_raw(pio::read_file(path));
    ValidationReport r;
    auto d = diagnose_pairing(*raw.basis, raw.b);
    r.add("b graded symmetric", d.square && !d.asymmetric, d.asymmetric ? "asymmetric" : "",
          d.asymmetric ? std::optional<Tuple>(Tuple{d.asymmetric->first, d.asymmetric->second}) : std::nullopt);
    r.add("b of degree 0", d.square && !d.off_degree, "",
          d.off_degree ? std::optional<Tuple>(Tuple{d.off_degree->first, d.off_degree->second}) : std::nullopt);
    r.add("b nondegenerate", d.square && d.nondegenerate);
    if (!d.ok()) {
        print(r);
        return kFail;
    }
    auto s = load_structure(raw.basis, raw.b, raw.flavor, raw.constants);
    r.append(check_invariance(s));
    r.append(flavor_constraints(s));
    r.append(structure_equation(s));
    if (is_homotopy(s.flavor)) r.append(validate_homotopy(s));
    print(r);
    std::cout << (r.passed() ? "verified" : "not verified") << "\n";
    return r.passed() ? kOk : kFail;
}

int cmd_structure_form(const std::string& path) {
    auto a = load_algebra(path);
    std::cout << pio::dump(pio::form_json(a.structure.structure_form()));
    return kOk;
}

int cmd_bracket(const std::string& f1, const std::string& f2, const std::string& alg) {
    auto raw = pio::parse_algebra_raw(pio::read_file(alg));
    BilinearPairing p(raw.basis, raw.b);
    auto f = pio::parse_form(pio::read_file(f1), raw.basis);
    auto g = pio::parse_form(pio::read_file(f2), raw.basis);
    // Lie kinds live on the symmetric quotient, everything else on cyclic forms.
    auto h = is_lie_type(raw.flavor) ? pinczon_bracket_sym(f, g, p) : pinczon_bracket(f, g, p);
    std::cout << pio::dump(pio::form_json(h));
    return kOk;
}

int cmd_double_extension(const std::string& alg, const std::string& mod) {
    auto a = load_algebra(alg);
    auto m = pio::parse_module(pio::read_file(mod), a.structure);
    auto dx = double_extension(a.structure, m);
    std::cout << pio::dump(pio::algebra_json(a.name.empty() ? "double-extension" : a.name + "-double-extension",
                                             dx.structure));
    return kOk;
}

CochainFlavor flavor_or_default(const std::string& given, Flavor f) {
    if (!given.empty()) return parse_cochain_flavor(given);
    if (is_lie_type(f)) return CochainFlavor::Chevalley;
    if (f == Flavor::Commutative) return CochainFlavor::Harrison;
    return CochainFlavor::Hochschild;
}

int cmd_cohomology(const std::string& alg, const std::string& mod, const std::string& flavor, int k,
                   std::size_t cap) {
    auto a = load_algebra(alg);
    auto m = pio::parse_module(pio::read_file(mod), a.structure);
    auto f = flavor_or_default(flavor, a.structure.flavor);
    auto d = cohomology_dims(a.structure, m, f, k, cap);
    std::cout << "flavor " << cochain_flavor_name(f) << "\n"
              << "degree " << k << "\n"
              << "dim cochains " << d.dim_cochains << "\n"
              << "dim ker " << d.dim_kernel << "\n"
              << "dim im " << d.dim_image << "\n"
              << "betti " << d.betti << "\n";
    return kOk;
}

int cmd_check_phi(const std::string& alg, const std::string& mod, const std::string& flavor, int k, int trials,
                  std::uint64_t seed) {
    auto a = load_algebra(alg);
    auto m = pio::parse_module(pio::read_file(mod), a.structure);
    auto f = flavor_or_default(flavor, a.structure.flavor);
    auto dx = double_extension(a.structure, m);
    PinczonDifferential dp(dx.structure);
    auto degrees = cochain_degrees(a.structure, m, k);
    if (degrees.empty()) degrees.push_back(0);
    std::mt19937_64 rng(seed);
    int passed = 0;
    std::set<std::string> constants;
    for (int t = 0; t < trials; ++t) {
        const int deg = degrees[static_cast<std::size_t>(t) % degrees.size()];
        auto c = random_cochain(a.structure, m, f, k, deg, rng);
        auto r = verify_phi(c, dx, &dp);
        if (r.report.passed()) ++passed;
        std::cout << "trial " << t + 1 << " degree " << deg << ": " << (r.report.passed() ? "PASS" : "FAIL");
        if (r.measured) {
            std::cout << "  constant " << format_rational(*r.measured);
            constants.insert(format_rational(*r.measured));
        }
        std::cout << "\n";
        if (!r.report.passed()) print(r.report);
    }
    std::cout << "expected constant " << format_rational(is_lie_type(a.structure.flavor) ? Rational(2 + k) : Rational(1))
              << "\n";
    if (!constants.empty()) {
        std::cout << "measured constants";
        for (const auto& c : constants) std::cout << " " << c;
        std::cout << "\n";
    }
    std::cout << "passed " << passed << "/" << trials << "\n";
    return passed == trials ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic algebras, cyclic forms and their cohomology"};
    app.require_subcommand(1);

    std::string alg, mod, form1, form2, flavor;
    int degree = 1, arity = 1, trials = 25;
    std::uint64_t seed = 1;
    std::size_t cap = 20000;

    auto* verify = app.add_subcommand("verify", "check pairing, invariance and structure equations");
    verify->add_option("algebra", alg, "algebra file")->required();

    auto* sform = app.add_subcommand("structure-form", "emit the structure form Omega as a form file");
    sform->add_option("algebra", alg, "algebra file")->required();

    auto* bracket = app.add_subcommand("bracket", "emit the bracket of two forms");
    bracket->add_option("form1", form1, "form file")->required();
    bracket->add_option("form2", form2, "form file")->required();
    bracket->add_option("algebra", alg, "algebra file supplying b")->required();

    auto* dext = app.add_subcommand("double-extension", "emit the double semidirect product algebra");
    dext->add_option("algebra", alg, "algebra file")->required();
    dext->add_option("module", mod, "module file")->required();

    auto flavor_check = CLI::IsMember({"hochschild", "harrison", "chevalley"});
    auto* coh = app.add_subcommand("cohomology", "Betti number of the classical complex");
    coh->add_option("algebra", alg, "algebra file")->required();
    coh->add_option("module", mod, "module file")->required();
    coh->add_option("--flavor", flavor, "hochschild | harrison | chevalley")->check(flavor_check);
    coh->add_option("--degree", degree, "cochain arity k")->check(CLI::NonNegativeNumber);
    coh->add_option("--size-cap", cap, "largest ambient cochain space allowed");

    auto* phi = app.add_subcommand("check-phi", "check the chain map on random cochains");
    phi->add_option("algebra", alg, "algebra file")->required();
    phi->add_option("module", mod, "module file")->required();
    phi->add_option("--flavor", flavor, "hochschild | harrison | chevalley")->check(flavor_check);
    phi->add_option("--arity", arity, "cochain arity k")->check(CLI::PositiveNumber);
    phi->add_option("--trials", trials, "number of random cochains")->check(CLI::NonNegativeNumber);
    phi->add_option("--seed", seed, "random seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*verify) return cmd_verify(alg);
        if (*sform) return cmd_structure_form(alg);
        if (*bracket) return cmd_bracket(form1, form2, alg);
        if (*dext) return cmd_double_extension(alg, mod);
        if (*coh) return cmd_cohomology(alg, mod, flavor, degree, cap);
        if (*phi) return cmd_check_phi(alg, mod, flavor, arity, trials, seed);
    } catch (const pio::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const pio::Json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kFail;
}
