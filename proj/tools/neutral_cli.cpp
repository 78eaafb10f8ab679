#include <iostream>

#include <CLI11.hpp>

#include "neutral/cli.hpp"

int main(int argc, char** argv) {
    using namespace neutral;
    CLI::App app{"Neutrality certificates for representations of finite abelian groups"};
    app.require_subcommand(1);

    std::string file, certfile;
    cli::CheckOptions check_opt;
    Int prime = 0;

    auto* check = app.add_subcommand("check", "run the criteria on every prime dividing |G|");
    check->add_option("file", file, "input JSON")->required();
    check->add_option("--prime", prime, "restrict to one prime");
    check->add_option("--cap", check_opt.cap, "bound on enumerated automorphisms");
    check->add_flag("--json", check_opt.json, "emit the JSON report");

    auto* blend = app.add_subcommand("blend", "print the blended orbit decomposition");
    blend->add_option("file", file, "input JSON")->required();
    blend->add_option("--cap", check_opt.cap, "bound on enumerated automorphisms");
    blend->add_flag("--json", check_opt.json, "emit JSON");

    auto* verify = app.add_subcommand("verify", "independently re-check certificates");
    verify->add_option("file", file, "input JSON")->required();
    verify->add_option("certfile", certfile, "certificate, certificate array, or check --json output")->required();
    verify->add_option("--cap", check_opt.cap, "bound on enumerated automorphisms");

    Int n = 0, genus = 0, dim = 0;
    std::string per_prime;
    bool moduli_json = false;
    auto* curve = app.add_subcommand("curve", "curve with cyclic automorphism group");
    curve->add_option("--n", n, "order of Aut(X)")->required();
    curve->add_option("--genus", genus, "genus of X")->required();
    curve->add_option("--quotient-genus", per_prime, "p=g(X/H_p),...")->required();
    curve->add_flag("--json", moduli_json, "emit JSON");

    auto* marked = app.add_subcommand("marked", "pointed variety with Aut(X, x0) = mu_n");
    marked->add_option("--n", n, "order of the group")->required();
    marked->add_option("--dim", dim, "dimension of X")->required();
    marked->add_option("--fixed-dim", per_prime, "p=dim X^{H_p},...")->required();
    marked->add_flag("--json", moduli_json, "emit JSON");

    cli::SearchOptions search_opt;
    auto* search = app.add_subcommand("search", "enumerate representations of Z/n");
    search->add_option("--cyclic", search_opt.n, "n")->required();
    search->add_option("--max-dim", search_opt.max_dim, "largest total dimension")->required();
    search->add_flag("--faithful", search_opt.faithful_only, "only faithful representations");
    search->add_flag("--include-trivial", search_opt.include_trivial, "allow the trivial character");
    search->add_option("--cap", search_opt.cap, "bound on enumerated automorphisms");
    search->add_flag("--json", search_opt.json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::kInputError;
    }

    if (*check) {
        if (check->count("--prime")) check_opt.prime = prime;
        return cli::run_check(file, check_opt, std::cout, std::cerr);
    }
    if (*blend) return cli::run_blend(file, check_opt, std::cout, std::cerr);
    if (*verify) return cli::run_verify(file, certfile, check_opt.cap, std::cout, std::cerr);
    if (*curve) return cli::run_curve(n, genus, per_prime, moduli_json, std::cout, std::cerr);
    if (*marked) return cli::run_marked(n, dim, per_prime, moduli_json, std::cout, std::cerr);
    return cli::run_search(search_opt, std::cout, std::cerr);
}
