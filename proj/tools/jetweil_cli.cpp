// Command-line runner for the verification suites.  Every suite prints one
// versioned JSON report on standard output; the exit status is 0 when every
// case passes, 1 when an invariant fails, 2 on usage errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "jetweil/oscillator.hpp"
#include "jetweil/serialize.hpp"

using namespace jetweil;

namespace {

// Informational case required on every verify report: records the known
// divergence between the engine's order-3 sqrt jet and a printed table.
CheckCase sqrt_note_case() {
    return CheckCase::info(
        "note-sqrt-jet-order-3",
        "mult_matrix(sqrt(s)) at jet order 3, s0 = 1 has corner entry -1/8, the Taylor "
        "coefficient of eps^2; tables that print -1/4 list the unnormalized second "
        "derivative instead. The engine value satisfies sqrt(s)^2 = s exactly "
        "(emit matrix --op S --jet-order 3 --s0 1).");
}

int finish(const Report& rep, Json params) {
    std::cout << report_to_json(rep, std::move(params)).dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

std::string emit_csv(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += row[c];
        }
        out += "\n";
    }
    return out;
}

// sl(2)-triple cases embedded in the first symplectic coordinate.
void add_sl2_relation_cases(Report& rep, size_t n, const WeylContext<JetScalar>& ctx) {
    QMatrix zero(n, n), e11(n, n), s11(n, n);
    e11.at(0, 0) = 1;
    s11.at(0, 0) = 1;
    SpElement X(n, zero, s11, zero), Y(n, zero, zero, s11), H(n, e11, zero, zero);
    auto sx = dsigma(X, ctx), sy = dsigma(Y, ctx), sh = dsigma(H, ctx);
    auto check = [&](const std::string& name, const WeylOp<JetScalar>& lhs, const WeylOp<JetScalar>& rhs) {
        rep.add(lhs == rhs ? CheckCase::pass(name, to_string(lhs), to_string(rhs))
                           : CheckCase::fail(name, to_string(lhs), to_string(rhs)));
    };
    check("sl2-XY-equals-H", commutator(sx, sy), sh);
    check("sl2-HX-equals-2X", commutator(sh, sx), sx * Rational(2));
    check("sl2-HY-equals-minus-2Y", commutator(sh, sy), sy * Rational(-2));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification suites for the jet-valued oscillator calculus"};
    app.require_subcommand(1);

    std::string s0_str = "1";
    int jet_order = 2;
    unsigned vars = 1;
    unsigned samples = 100;
    std::uint64_t seed = 1;
    std::string probes_file, words_file, spec_file, format = "json", op;
    unsigned dim = 2, pairs = 1, degree_bound = 6;
    bool random_modules = false;
    unsigned cocycle_n = 1;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);

    auto* sl2 = verify->add_subcommand("sl2", "infinitesimal sp(2n) bracket homomorphism");
    sl2->add_option("--vars", vars, "number of symplectic pairs n")->default_val(1);
    sl2->add_option("--jet-order", jet_order, "jet order k")->default_val(2);
    sl2->add_option("--s0", s0_str, "base point as P/Q")->default_val("1");

    auto* fourier_cmd = verify->add_subcommand("fourier", "sigma(J)^2 = i * parity on probes");
    fourier_cmd->add_option("--jet-order", jet_order)->default_val(2);
    fourier_cmd->add_option("--s0", s0_str)->default_val("1");
    fourier_cmd->add_option("--probes", probes_file, "probe file (JSON)");

    auto* cocycle_cmd = verify->add_subcommand("cocycle", "projective sign consistency of generator words");
    cocycle_cmd->add_option("--n", cocycle_n)->check(CLI::IsMember({1, 2}))->default_val(1);
    cocycle_cmd->add_option("--samples", samples)->default_val(100);
    cocycle_cmd->add_option("--seed", seed)->default_val(1);
    cocycle_cmd->add_option("--words", words_file, "file of {w1, w2, w12} word triples");

    auto* heis = verify->add_subcommand("heisenberg", "group law, central character and covariance");
    heis->add_option("--samples", samples)->default_val(100);
    heis->add_option("--seed", seed)->default_val(1);

    auto* inter = verify->add_subcommand("intertwiners", "Lagrangian change, square class, involution, pairing");
    inter->add_option("--s0", s0_str)->default_val("1");
    inter->add_option("--jet-order", jet_order)->default_val(2);

    auto* kash = verify->add_subcommand("kashiwara", "invariants/induction equivalence at desk scale");
    kash->add_option("--spec", spec_file, "module spec file (JSON)");
    kash->add_flag("--random", random_modules, "use seeded random modules");
    kash->add_option("--dim", dim)->default_val(2);
    kash->add_option("--pairs", pairs)->default_val(1);
    kash->add_option("--degree-bound", degree_bound)->default_val(6);
    kash->add_option("--samples", samples)->default_val(5);
    kash->add_option("--seed", seed)->default_val(1);

    auto* emit = app.add_subcommand("emit", "emit operator matrices");
    auto* matrix = emit->add_subcommand("matrix", "jet-level operator matrix");
    matrix->add_option("--op", op, "S | rho-central | sigmaJ")
        ->required()
        ->check(CLI::IsMember({"S", "rho-central", "sigmaJ"}));
    matrix->add_option("--jet-order", jet_order)->default_val(2);
    matrix->add_option("--s0", s0_str)->default_val("1");
    matrix->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->default_val("json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        Rational s0 = parse_rational(s0_str);
        if (sgn(s0) == 0) throw ParseError("--s0 must be nonzero");
        if (jet_order < 1) throw ParseError("--jet-order must be >= 1");
        JetContext ctx{s0, jet_order};
        Json params{{"s0", s0_str}, {"jet_order", jet_order}};

        if (sl2->parsed()) {
            Report rep{"sl2", {}};
            auto wctx = jet_weyl_context(s0, jet_order);
            auto failures = bracket_homomorphism_failures(vars, wctx);
            std::string witness;
            for (const auto& f : failures) witness += f + "\n";
            size_t basis = sp_basis(vars).size();
            std::string name = "bracket-homomorphism-n" + std::to_string(vars);
            rep.add(failures.empty()
                        ? CheckCase::pass(name, std::to_string(basis * basis) + " pairs", "all equal")
                        : CheckCase::fail(name, witness, "dsigma of the matrix bracket",
                                          std::to_string(failures.size()) + " failing pairs"));
            add_sl2_relation_cases(rep, vars, wctx);
            rep.add(sqrt_note_case());
            params["vars"] = vars;
            return finish(rep, params);
        }
        if (fourier_cmd->parsed()) {
            std::vector<GaussVector> probes;
            if (!probes_file.empty()) {
                Json j = load_json_file(probes_file);
                for (const auto& item : j) probes.push_back(gauss_from_json(Json::array({item}), 1, ctx));
            } else {
                probes = hermite_probes(1, ctx, 6);
            }
            Report rep = fourier_inversion_check(ctx, probes);
            rep.add(sqrt_note_case());
            if (!probes_file.empty()) params["probes"] = probes_file;
            return finish(rep, params);
        }
        if (cocycle_cmd->parsed()) {
            Report rep{"cocycle", {}};
            if (!words_file.empty()) {
                Json j = load_json_file(words_file);
                int idx = 0;
                for (const auto& triple : j) {
                    GeneratorWord w1 = word_from_json(triple.at("w1"), cocycle_n);
                    GeneratorWord w2 = word_from_json(triple.at("w2"), cocycle_n);
                    GeneratorWord w12 = word_from_json(triple.at("w12"), cocycle_n);
                    rep.add(cocycle_case_auto("cocycle-file-" + std::to_string(idx++), w1, w2, w12, ctx,
                                              cocycle_n));
                }
            } else {
                rep = cocycle_check_suite(ctx, cocycle_n, samples, seed);
            }
            rep.add(sqrt_note_case());
            params["n"] = cocycle_n;
            params["samples"] = samples;
            params["seed"] = seed;
            return finish(rep, params);
        }
        if (heis->parsed()) {
            Report rep{"heisenberg", {}};
            for (size_t n : {size_t{1}, size_t{2}}) {
                Report sub = heisenberg_check(ctx, n, samples, seed + n);
                for (auto& c : sub.cases) {
                    c.name = "n" + std::to_string(n) + "-" + c.name;
                    rep.add(std::move(c));
                }
            }
            unsigned cov1 = std::max(50u, samples / 2), cov2 = 10;
            Report cov_a = covariance_check(ctx, 1, cov1, seed + 17);
            Report cov_b = covariance_check(ctx, 2, cov2, seed + 18);
            for (auto& c : cov_a.cases) {
                c.name = "n1-" + c.name;
                rep.add(std::move(c));
            }
            for (auto& c : cov_b.cases) {
                c.name = "n2-" + c.name;
                rep.add(std::move(c));
            }
            rep.add(sqrt_note_case());
            params["samples"] = samples;
            params["seed"] = seed;
            return finish(rep, params);
        }
        if (inter->parsed()) {
            Report rep = intertwiner_check(ctx, 1, 100, 20240810);
            Report pairing = pairing_invariance_check(ctx, 1, 12, 20240811);
            for (auto& c : pairing.cases) rep.add(std::move(c));
            rep.suite = "intertwiners";
            rep.add(sqrt_note_case());
            return finish(rep, params);
        }
        if (kash->parsed()) {
            Report rep{"kashiwara", {}};
            Json kparams;
            for (unsigned i = 0; i <= 5; ++i)
                rep.add(filt_algebra_case("filt-algebra-i" + std::to_string(i), i));
            if (!spec_file.empty()) {
                ModuleSpec spec = module_spec_from_json(load_json_file(spec_file));
                add_kashiwara_cases(rep, "module", ZModule::make(spec.z_matrix), spec.n, spec.degree_bound);
                kparams["spec"] = spec_file;
            } else {
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<long> num(-3, 3);
                unsigned produced = 0;
                while (produced < samples) {
                    QMatrix z(dim, dim);
                    for (auto& e : z.data) {
                        Rational q(num(rng), 1 + static_cast<long>(rng() % 3));
                        q.canonicalize();
                        e = q;
                    }
                    if (FieldOps<Rational>::is_zero(z.det())) continue;
                    add_kashiwara_cases(rep, "random-" + std::to_string(produced), ZModule::make(z), pairs,
                                        degree_bound);
                    ++produced;
                }
                kparams["random"] = true;
                kparams["dim"] = dim;
                kparams["pairs"] = pairs;
                kparams["degree_bound"] = degree_bound;
                kparams["samples"] = samples;
                kparams["seed"] = seed;
            }
            rep.add(kashiwara_negative_case("negative-test-z-zero"));
            rep.add(sqrt_note_case());
            return finish(rep, kparams);
        }
        if (matrix->parsed()) {
            if (op == "S") {
                auto m = mult_matrix(ctx.of_s().sqrt());
                if (format == "csv") {
                    std::vector<std::vector<std::string>> rows;
                    for (const auto& r : m) {
                        std::vector<std::string> row;
                        for (const auto& e : r)
                            row.push_back(e.is_rational() ? rational_str(e.as_rational()) : to_string(e));
                        rows.push_back(std::move(row));
                    }
                    std::cout << emit_csv(rows);
                } else {
                    Json out = Json::array();
                    for (const auto& r : m) {
                        Json row = Json::array();
                        for (const auto& e : r) row.push_back(rational_to_json(e.as_rational()));
                        out.push_back(std::move(row));
                    }
                    std::cout << out.dump() << "\n";
                }
                if (jet_order >= 3)
                    std::cerr << "note: the eps^2 diagonal entry is the Taylor coefficient (-1/8 at s0 = 1); "
                                 "tables printing -1/4 list the bare second derivative\n";
                return 0;
            }
            if (op == "rho-central") {
                // matrix of the central character at t = 1 with the formal
                // factor exp(2 pi i s0) removed: multiplication by the jet of
                // exp(2 tau i eps)
                JetScalar nil(ctx.s0, ctx.order);
                nil.coeff[0] = Scalar::one();
                Scalar step = Scalar::i() * Rational(2) * Scalar::tau(1);
                Rational fact(1);
                Scalar power = Scalar::one();
                for (int j = 1; j < ctx.order; ++j) {
                    power = power * step;
                    fact /= Rational(j);
                    nil.coeff[static_cast<size_t>(j)] = power * fact;
                }
                auto m = mult_matrix(nil);
                if (format == "csv") {
                    std::vector<std::vector<std::string>> rows;
                    for (const auto& r : m) {
                        std::vector<std::string> row;
                        for (const auto& e : r) row.push_back(to_string(e));
                        rows.push_back(std::move(row));
                    }
                    std::cout << emit_csv(rows);
                } else {
                    Json out;
                    out["op"] = "rho-central";
                    out["t"] = 1;
                    out["formal_factor"] = "exp(2 pi i s0 t)";
                    Json rows = Json::array();
                    for (const auto& r : m) {
                        Json row = Json::array();
                        for (const auto& e : r) row.push_back(scalar_to_json(e));
                        rows.push_back(std::move(row));
                    }
                    out["matrix"] = std::move(rows);
                    std::cout << out.dump(2) << "\n";
                }
                return 0;
            }
            // sigmaJ: upper-triangular Toeplitz with operator entries
            //   g_r = s0^{-r} sum_{a+b=r} binom(1/2, a) x^b d^b / b!
            // relative to the common factor zeta^n (classical inverse
            // transform at s0); at s0 = 1 and order 3 the entries are
            // 1, E, E^2/2 - E/2 in terms of the symmetrized Euler operator.
            std::vector<WeylOp<Scalar>> diag;
            Rational s0_pow(1);
            for (int r = 0; r < ctx.order; ++r) {
                WeylOp<Scalar> g(1);
                for (int a = 0; a <= r; ++a) {
                    int b = r - a;
                    Rational coeff = binomial(Rational(1, 2), static_cast<unsigned>(a)) /
                                     Rational(factorial(static_cast<unsigned>(b)));
                    g.add_term(MultiIndex{static_cast<unsigned>(b)}, MultiIndex{static_cast<unsigned>(b)},
                               Scalar(coeff * s0_pow));
                }
                diag.push_back(std::move(g));
                s0_pow /= s0;
            }
            if (format == "csv") {
                std::vector<std::vector<std::string>> rows;
                for (int r = 0; r < ctx.order; ++r) {
                    std::vector<std::string> row;
                    for (int c = 0; c < ctx.order; ++c)
                        row.push_back(c >= r ? to_string(diag[static_cast<size_t>(c - r)]) : "0");
                    rows.push_back(std::move(row));
                }
                std::cout << emit_csv(rows);
            } else {
                Json out;
                out["op"] = "sigmaJ";
                out["formal_factor"] = "zeta^n times the classical inverse transform at s0";
                Json rows = Json::array();
                for (int r = 0; r < ctx.order; ++r) {
                    Json row = Json::array();
                    for (int c = 0; c < ctx.order; ++c)
                        row.push_back(c >= r ? weylop_to_json(diag[static_cast<size_t>(c - r)]) : Json::array());
                    rows.push_back(std::move(row));
                }
                out["matrix"] = std::move(rows);
                std::cout << out.dump(2) << "\n";
            }
            return 0;
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
