#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hml/charsums.hpp"
#include "hml/report.hpp"

namespace fs = std::filesystem;
using namespace hml;

namespace {

// Invalid configuration: reported with exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

QuadField field_or_usage(i64 D) {
    if (!is_fundamental(D)) throw UsageError("D=" + std::to_string(D) + " is not a fundamental discriminant");
    return make_field(D);
}

void require_level(i64 D, i64 N) {
    if (N < 1) throw UsageError("N must be positive");
    if (gcd(D, N) != 1) throw UsageError("gcd(D, N) != 1 for D=" + std::to_string(D) + ", N=" + std::to_string(N));
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// Writes to the path, or to stdout when the path is empty.
void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

Mat2 parse_sigma(const std::string& s) {
    std::vector<i64> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stoll(tok));
    if (v.size() != 4) throw UsageError("--sigma expects a,b,c,d");
    const Mat2 m{v[0], v[1], v[2], v[3]};
    if (m.det() != 1) throw UsageError("--sigma must have determinant 1");
    return m;
}

struct Campaign {
    std::vector<i64> discriminants;
    std::vector<i64> levels{1};
    std::vector<std::string> modes;
    bool float_mode = false;
    std::string output_dir = "reports";
};

Campaign campaign_from_json(const json& j) {
    Campaign c;
    try {
        c.discriminants = j.at("discriminants").get<std::vector<i64>>();
        if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<i64>>();
        if (j.contains("modes")) c.modes = j.at("modes").get<std::vector<std::string>>();
        const std::string arith = j.value("arithmetic", std::string("exact"));
        if (arith != "exact" && arith != "float") throw UsageError("arithmetic must be exact or float");
        c.float_mode = arith == "float";
        c.output_dir = j.value("output_dir", c.output_dir);
    } catch (const json::exception& e) {
        throw UsageError(std::string("campaign config: ") + e.what());
    }
    return c;
}

int run_campaign(const Campaign& c, const RunOptions& base) {
    if (c.discriminants.empty()) throw UsageError("no discriminants given");
    std::vector<std::string> modes = c.modes.empty() ? check_modes() : c.modes;
    for (const std::string& m : modes)
        if (std::find(check_modes().begin(), check_modes().end(), m) == check_modes().end())
            throw UsageError("unknown mode " + m);
    std::vector<QuadField> fields;
    for (i64 D : c.discriminants) {
        fields.push_back(field_or_usage(D));
        for (i64 N : c.levels) require_level(D, N);
    }
    RunOptions opt = base;
    opt.float_mode = c.float_mode;
    bool all = true;
    for (const QuadField& F : fields)
        for (i64 N : c.levels)
            for (const std::string& mode : modes) {
                json r;
                try {
                    r = run_check(F, N, mode, opt);
                } catch (const std::exception& e) {
                    r = json{{"mode", mode}, {"D", F.D}, {"N", N}, {"passed", false}, {"error", e.what()}};
                }
                const bool ok = r.at("passed").get<bool>();
                all = all && ok;
                const std::string name = mode + "_D" + std::to_string(F.D) + "_N" + std::to_string(N) + ".json";
                emit(r, (fs::path(c.output_dir) / name).string());
                std::cout << (ok ? "PASS " : "FAIL ") << mode << " D=" << F.D << " N=" << N << '\n';
            }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermitian Maass lifts of general level: exact identities and verification campaigns"};
    app.require_subcommand(1);

    i64 D = 0, N = 1, p = 0, upto = 50;
    int k = 8;
    std::uint64_t seed = RunOptions{}.seed;
    unsigned threads = 0;
    std::string arithmetic = "exact", out, config, input, sigma;
    std::vector<std::string> modes;

    auto* verify = app.add_subcommand("verify", "Run verification checks and write one JSON report per (mode, D, N)");
    verify->add_option("--D", D, "Discriminant D of K = Q(sqrt(-D))");
    verify->add_option("--N", N, "Level N coprime to D");
    verify->add_option("--mode", modes, "Check modes (repeatable; default all)");
    verify->add_option("--arithmetic", arithmetic, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    verify->add_option("--k", k, "Weight for lift, hecke and ikeda checks");
    verify->add_option("--seed", seed, "Seed for every random draw");
    verify->add_option("--threads", threads, "Worker threads (0: all cores)");
    verify->add_option("--out", out, "Report directory");
    verify->add_option("--config", config, "Campaign JSON file");

    auto* lift = app.add_subcommand("lift", "Maass coefficient table of the lift of a plus form");
    lift->add_option("--D", D)->required();
    lift->add_option("--N", N);
    lift->add_option("--k", k);
    lift->add_option("--input", input, "Plus form JSON; default E*_k");
    lift->add_option("--upto", upto, "Bound on D l m for the table");
    lift->add_option("--out", out, "Output file (default stdout)");

    auto* theta = app.add_subcommand("theta-matrix", "Theta transformation matrix of sigma");
    theta->add_option("--D", D)->required();
    theta->add_option("--sigma", sigma, "a,b,c,d")->required();
    theta->add_option("--out", out);

    auto* gauss = app.add_subcommand("gauss", "Gauss sums of every admissible psi_m");
    gauss->add_option("--D", D)->required();
    gauss->add_option("--out", out);

    auto* reps = app.add_subcommand("hecke-reps", "Coset representatives for T_p at an inert prime");
    reps->add_option("--D", D)->required();
    reps->add_option("--p", p)->required();
    reps->add_option("--N", N);
    reps->add_option("--out", out);

    auto* ikeda = app.add_subcommand("ikeda", "Coefficients of f*[l] for an eigenform of weight k - 1");
    ikeda->add_option("--D", D)->required();
    ikeda->add_option("--N", N);
    ikeda->add_option("--k", k);
    ikeda->add_option("--input", input, "Eigen data JSON; default synthetic from --seed");
    ikeda->add_option("--seed", seed);
    ikeda->add_option("--upto", upto, "Largest M");
    ikeda->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            RunOptions opt;
            opt.seed = seed;
            opt.k = k;
            opt.threads = threads;
            Campaign c;
            if (!config.empty()) {
                c = campaign_from_json(read_json(config));
            } else {
                if (D == 0) throw UsageError("verify needs --D or --config");
                c.discriminants = {D};
                c.levels = {N};
                c.modes = modes;
                c.float_mode = arithmetic == "float";
            }
            if (!out.empty()) c.output_dir = out;
            return run_campaign(c, opt);
        }
        const QuadField F = field_or_usage(D);
        if (lift->parsed()) {
            require_level(D, N);
            if (k % 2 || k < 4) throw UsageError("k must be even and at least 4");
            const i64 need = upto;
            QExpansion g = input.empty() ? eisenstein_star_full(F, k, need) : qexp_from_json(F, read_json(input), need);
            if (g.weight != k - 1) throw UsageError("a plus form lifting to weight k has weight k - 1");
            if (!is_plus(F, g)) throw UsageError("input is not in the plus space");
            json t = maass_table_json(F, N, k, special_jacobi_alpha(F, N, g), upto);
            emit(t, out);
        } else if (theta->parsed()) {
            emit(theta_matrix_json(theta_matrix(F, parse_sigma(sigma))), out);
        } else if (gauss->parsed()) {
            emit(run_check(F, 1, "gauss", {}), out);
        } else if (reps->parsed()) {
            require_level(D, N);
            if (!is_prime(p) || !is_inert(F, p)) throw UsageError("p must be a prime inert in K");
            if (N % p == 0) throw UsageError("p must not divide N");
            emit(reps_json(F, p, N), out);
        } else if (ikeda->parsed()) {
            require_level(D, N);
            EigenData ed = input.empty() ? random_eigendata(F, k - 1, N, seed, upto) : eigen_from_json(F, read_json(input));
            const std::string why = eigen_invalid_reason(ed);
            if (!why.empty()) throw UsageError("invalid eigen data: " + why);
            json rows = json::array();
            for (i64 ell : {1, 2}) {
                if (gcd(ell, D) != 1) continue;
                for (i64 M = 1; M <= upto; ++M) rows.push_back(json{{"ell", ell}, {"M", M}, {"value", cyclo_json(fstar_coeff(ed, ell, M))}});
            }
            emit(json{{"eigen", eigen_json(ed)}, {"fstar", rows}}, out);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
