//
// Project     : tpn
// Module      : tpn_cli
// Description : command-line front end: norm evaluation, preserver
//               verification and recovery, CCNR screening, demo fixtures.
//               Reports are reproducible JSON keyed by (inputs, seed,
//               tolerances); all files land under --out.
//

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <tpn/tpn.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// exit codes shared by all subcommands
constexpr int exit_ok = 0;
constexpr int exit_negative = 1;    // verification failed / not standard form / flagged
constexpr int exit_malformed = 2;
constexpr int exit_bad_spec = 3;
constexpr int exit_ambiguous = 4;

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
    return os.str();
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw tpn::io_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

std::string format_12sig(double value) {
    std::ostringstream os;
    os << std::setprecision(12) << std::showpoint << value;
    return os.str();
}

std::string flag_name(tpn::FactorFlag f) {
    return f == tpn::FactorFlag::identity ? "identity" : "transpose";
}

json flags_to_json(const std::vector<tpn::FactorFlag>& flags) {
    json arr = json::array();
    for (auto f : flags) arr.push_back(flag_name(f));
    return arr;
}

// Options shared by every subcommand.
struct GlobalOptions {
    std::uint64_t seed = 0;
    double tol = -1.0;          // negative = library default
    fs::path out = ".";
    bool json_output = false;
    std::string command_echo;
};

json default_tolerances() {
    return {{"tol_svd", tpn::tol::svd},
            {"tol_unitary", tpn::tol::unitary},
            {"tol_herm", tpn::tol::hermitian},
            {"tol_rank", tpn::tol::rank_rel},
            {"tol_ortho", tpn::tol::ortho},
            {"tol_verify", tpn::tol::verify},
            {"tol_ccnr", tpn::tol::ccnr}};
}

void emit_report(const GlobalOptions& g, const std::string& inputs_sha256,
                 const json& results, const std::string& verdict, const json& tolerances,
                 const std::string& human_text) {
    if (g.json_output) {
        json report = {{"command", g.command_echo},
                       {"inputs_sha256", inputs_sha256},
                       {"results", results},
                       {"verdict", verdict},
                       {"tolerances", tolerances},
                       {"seed", g.seed}};
        std::cout << report.dump(1) << '\n';
    } else {
        std::cout << human_text;
    }
}

// Exactly one norm selector must be chosen.
struct SpecFlags {
    long long ky_fan_k = -1;
    double schatten_p = -1.0;
    bool spectral = false;
    bool trace_norm = false;
    bool frobenius = false;

    void add_to(CLI::App* app) {
        app->add_option("--ky-fan", ky_fan_k, "Ky Fan k-norm");
        app->add_option("--schatten", schatten_p, "Schatten p-norm");
        app->add_flag("--spectral", spectral, "spectral norm");
        app->add_flag("--trace-norm", trace_norm, "trace norm");
        app->add_flag("--frobenius", frobenius, "Frobenius norm");
    }

    tpn::NormSpec resolve() const {
        int chosen = (ky_fan_k >= 0) + (schatten_p >= 0.0) + spectral + trace_norm + frobenius;
        if (chosen != 1)
            throw tpn::invalid_spec_error(
                "choose exactly one of --ky-fan K, --schatten P, --spectral, "
                "--trace-norm, --frobenius");
        if (ky_fan_k >= 0) {
            if (ky_fan_k < 1) throw tpn::invalid_spec_error("Ky Fan k must be >= 1");
            return tpn::NormSpec::ky_fan(static_cast<std::size_t>(ky_fan_k));
        }
        if (schatten_p >= 0.0) return tpn::NormSpec::schatten(schatten_p);
        if (spectral) return tpn::NormSpec::spectral();
        if (trace_norm) return tpn::NormSpec::trace_norm();
        return tpn::NormSpec::frobenius();
    }
};

// Parses "ky-fan:2", "schatten:1.5", "spectral", "trace-norm", "frobenius".
tpn::NormSpec parse_spec_string(const std::string& text) {
    if (text == "spectral") return tpn::NormSpec::spectral();
    if (text == "trace-norm") return tpn::NormSpec::trace_norm();
    if (text == "frobenius") return tpn::NormSpec::frobenius();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        const std::string tail = text.substr(colon + 1);
        try {
            if (head == "ky-fan") return tpn::NormSpec::ky_fan(std::stoul(tail));
            if (head == "schatten") return tpn::NormSpec::schatten(std::stod(tail));
        } catch (const std::exception&) {
            throw tpn::invalid_spec_error("cannot parse norm spec: " + text);
        }
    }
    throw tpn::invalid_spec_error("unknown norm spec: " + text);
}

std::optional<std::vector<std::size_t>> to_shape(const std::vector<std::size_t>& dims) {
    if (dims.empty()) return std::nullopt;
    return dims;
}

int run_norm(const GlobalOptions& g, const fs::path& file, const SpecFlags& flags) {
    const tpn::NormSpec spec = flags.resolve();
    const auto mf = tpn::load_matrix_file(file);
    const double value = tpn::norm(mf.matrix, spec);

    json results = {{"norm", value}, {"spec", spec.to_string()},
                    {"rows", mf.matrix.rows()}, {"cols", mf.matrix.cols()}};
    emit_report(g, sha256_file(file), results, "ok", default_tolerances(),
                format_12sig(value) + "\n");
    return exit_ok;
}

int run_verify(const GlobalOptions& g, const fs::path& file,
               const std::vector<std::size_t>& shape_dims, const SpecFlags& flags,
               std::size_t trials) {
    const tpn::NormSpec spec = flags.resolve();
    const auto phi = tpn::load_superoperator_file(file, to_shape(shape_dims));
    auto result = tpn::verify_on_products(phi, spec, trials, g.seed);
    if (g.tol >= 0.0) result.pass = result.max_deviation <= g.tol * result.scale;

    json tolerances = default_tolerances();
    tolerances["tol_verify_effective"] = g.tol >= 0.0 ? g.tol : tpn::tol::verify;
    json results = {{"max_deviation", result.max_deviation},
                    {"pass", result.pass},
                    {"scale", result.scale},
                    {"samples", result.samples},
                    {"spec", spec.to_string()},
                    {"trials", trials}};
    std::ostringstream human;
    human << (result.pass ? "PASS" : "FAIL") << "  spec=" << spec.to_string()
          << "  max deviation " << format_12sig(result.max_deviation)
          << " over " << result.samples << " product samples\n";
    emit_report(g, sha256_file(file), results, result.pass ? "pass" : "fail", tolerances,
                human.str());
    return result.pass ? exit_ok : exit_negative;
}

int run_recover(const GlobalOptions& g, const fs::path& file,
                const std::vector<std::size_t>& shape_dims) {
    const auto phi = tpn::load_superoperator_file(file, to_shape(shape_dims));
    const double tol_recover =
        g.tol >= 0.0 ? g.tol
                     : tpn::tol::recover_rel * static_cast<double>(phi.ambient_dim());
    json tolerances = default_tolerances();
    tolerances["tol_recover_effective"] = tol_recover;
    const std::string digest = sha256_file(file);

    try {
        const auto report = tpn::recover(phi, tol_recover);
        if (report.verdict == tpn::RecoveryVerdict::standard_form_found) {
            fs::create_directories(g.out);
            const fs::path u_path = g.out / "recovered_u.json";
            const fs::path v_path = g.out / "recovered_v.json";
            tpn::save_matrix_file(u_path, report.form->u, phi.shape().dims);
            tpn::save_matrix_file(v_path, report.form->v, phi.shape().dims);

            json results = {{"flags", flags_to_json(report.form->flags)},
                            {"residual", report.residual},
                            {"flags_tested", report.flags_tested},
                            {"u_file", u_path.string()},
                            {"v_file", v_path.string()}};
            std::ostringstream human;
            human << "StandardFormFound  residual " << format_12sig(report.residual)
                  << "\nflags:";
            for (auto f : report.form->flags) human << ' ' << flag_name(f);
            human << "\nU -> " << u_path.string() << "\nV -> " << v_path.string() << '\n';
            emit_report(g, digest, results, "StandardFormFound", tolerances, human.str());
            return exit_ok;
        }
        json results = {{"residual", report.residual},
                        {"flags_tested", report.flags_tested}};
        emit_report(g, digest, results, "NotStandardForm", tolerances,
                    "NotStandardForm\n");
        return exit_negative;
    } catch (const tpn::ambiguous_recovery_error& e) {
        fs::create_directories(g.out);
        json cand_list = json::array();
        for (std::size_t i = 0; i < e.candidates.size(); ++i) {
            const fs::path u_path = g.out / ("candidate_" + std::to_string(i) + "_u.json");
            const fs::path v_path = g.out / ("candidate_" + std::to_string(i) + "_v.json");
            tpn::save_matrix_file(u_path, e.candidates[i].u, phi.shape().dims);
            tpn::save_matrix_file(v_path, e.candidates[i].v, phi.shape().dims);
            cand_list.push_back({{"flags", flags_to_json(e.candidates[i].flags)},
                                 {"u_file", u_path.string()},
                                 {"v_file", v_path.string()}});
        }
        json results = {{"candidates", cand_list}};
        emit_report(g, digest, results, "AmbiguousRecovery", tolerances,
                    "AmbiguousRecovery: " + std::to_string(e.candidates.size()) +
                        " flag assignments accepted; candidates dumped\n");
        return exit_ambiguous;
    }
}

int run_ccnr(const GlobalOptions& g, const fs::path& file,
             const std::vector<std::size_t>& shape_dims) {
    if (shape_dims.size() != 2)
        throw tpn::invalid_spec_error("ccnr: --shape m,n with exactly two factors required");
    const auto mf = tpn::load_matrix_file(file);
    const auto report = tpn::ccnr_check(mf.matrix, shape_dims[0], shape_dims[1]);

    json results = {{"realignment_trace_norm", report.realignment_trace_norm},
                    {"flagged_entangled", report.flagged_entangled},
                    {"warnings", report.warnings}};
    std::ostringstream human;
    human << "realignment trace norm " << format_12sig(report.realignment_trace_norm)
          << "  ->  " << (report.flagged_entangled ? "ENTANGLED (certified)"
                                                   : "not flagged (inconclusive)")
          << '\n';
    for (const auto& w : report.warnings) human << "warning: " << w << '\n';
    emit_report(g, sha256_file(file), results, report.flagged_entangled ? "flagged" : "not-flagged",
                default_tolerances(), human.str());
    return report.flagged_entangled ? exit_negative : exit_ok;
}

int run_demo(const GlobalOptions& g, const std::string& which,
             const std::vector<std::size_t>& shape_dims, double r,
             const std::string& spec_text, bool pure) {
    fs::create_directories(g.out);
    json results;
    std::ostringstream human;
    const std::string digest =
        sha256_hex("demo:" + which + ":seed=" + std::to_string(g.seed) +
                   ":r=" + std::to_string(r) + ":pure=" + std::to_string(pure));

    if (which == "standard") {
        const tpn::TensorShape shape(shape_dims.empty()
                                         ? std::vector<std::size_t>{2, 2}
                                         : shape_dims);
        tpn::Rng rng(g.seed);
        tpn::StandardForm form;
        form.u = tpn::random_unitary(shape.total(), rng);
        form.v = tpn::random_unitary(shape.total(), rng);
        for (std::size_t s = 0; s < shape.factors(); ++s)
            form.flags.push_back(rng.uniform() < 0.5 ? tpn::FactorFlag::identity
                                                     : tpn::FactorFlag::transpose);
        const auto phi = tpn::build_standard_form(form, shape);
        const fs::path op_path = g.out / "standard_superop.json";
        tpn::save_superoperator_file(op_path, phi);
        tpn::save_matrix_file(g.out / "standard_u.json", form.u, shape.dims);
        tpn::save_matrix_file(g.out / "standard_v.json", form.v, shape.dims);
        results = {{"superop_file", op_path.string()},
                   {"flags", flags_to_json(form.flags)},
                   {"shape", shape.dims}};
        human << "standard-form superoperator -> " << op_path.string() << "\nflags:";
        for (auto f : form.flags) human << ' ' << flag_name(f);
        human << '\n';
    } else if (which == "swap") {
        const std::vector<std::size_t> dims =
            shape_dims.empty() ? std::vector<std::size_t>{2, 2} : shape_dims;
        if (dims.size() != 2)
            throw tpn::invalid_spec_error("demo swap: --shape m,n with two factors required");
        const auto phi = tpn::swap_corner_map(dims[0], dims[1]);
        const fs::path op_path = g.out / "swap_superop.json";
        tpn::save_superoperator_file(op_path, phi);
        results = {{"superop_file", op_path.string()}, {"shape", dims}};
        human << "corner-swap superoperator -> " << op_path.string() << '\n';
    } else if (which == "cr") {
        const auto c = tpn::c_r_matrix(r);
        const tpn::StandardForm pt{tpn::ComplexMatrix::identity(4),
                                   tpn::ComplexMatrix::identity(4),
                                   {tpn::FactorFlag::identity, tpn::FactorFlag::transpose}};
        const auto image = tpn::build_standard_form(pt, tpn::TensorShape{2, 2}).apply(c);
        const fs::path c_path = g.out / "cr_matrix.json";
        const fs::path pt_path = g.out / "cr_partial_transpose.json";
        tpn::save_matrix_file(c_path, c, std::vector<std::size_t>{2, 2});
        tpn::save_matrix_file(pt_path, image, std::vector<std::size_t>{2, 2});
        const tpn::NormSpec spec = parse_spec_string(spec_text);
        const double before = tpn::norm(c, spec);
        const double after = tpn::norm(image, spec);
        results = {{"r", r},
                   {"spec", spec.to_string()},
                   {"norm_cr", before},
                   {"norm_partial_transpose", after},
                   {"cr_file", c_path.string()},
                   {"pt_file", pt_path.string()}};
        human << "C_r with r = " << r << ", spec " << spec.to_string() << ":\n"
              << "  " << format_12sig(before) << " (C_r)  vs  " << format_12sig(after)
              << " ((Id x T)(C_r))\n";
    } else if (which == "entangled") {
        const fs::path path = g.out / "entangled_state.json";
        tpn::save_matrix_file(path, tpn::maximally_entangled_state(),
                              std::vector<std::size_t>{2, 2});
        results = {{"state_file", path.string()}};
        human << "maximally entangled two-qubit state -> " << path.string() << '\n';
    } else if (which == "product") {
        const fs::path path = g.out / "product_state.json";
        const tpn::ComplexMatrix state =
            pure ? tpn::random_pure_product_state(2, 2, g.seed)
                 : tpn::maximally_mixed_product_state();
        tpn::save_matrix_file(path, state, std::vector<std::size_t>{2, 2});
        results = {{"state_file", path.string()}, {"pure", pure}};
        human << (pure ? "pure" : "maximally mixed") << " product state -> "
              << path.string() << '\n';
    } else {
        throw tpn::invalid_spec_error(
            "demo: expected one of standard, swap, cr, entangled, product");
    }
    emit_report(g, digest, results, "ok", default_tolerances(), human.str());
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unitarily invariant norms and tensor-product norm preservers"};
    app.require_subcommand(1);

    GlobalOptions g;
    {
        std::ostringstream echo;
        for (int i = 1; i < argc; ++i) echo << (i > 1 ? " " : "") << argv[i];
        g.command_echo = echo.str();
    }

    // shared flags registered per subcommand so they can appear anywhere
    auto add_globals = [&g](CLI::App* cmd) {
        cmd->add_option("--seed", g.seed, "random seed");
        cmd->add_option("--tol", g.tol, "override the command's principal tolerance");
        cmd->add_option("--out", g.out, "output directory");
        cmd->add_flag("--json", g.json_output, "emit the RunReport as JSON");
    };

    // norm
    auto* norm_cmd = app.add_subcommand("norm", "evaluate a unitarily invariant norm");
    fs::path norm_file;
    SpecFlags norm_spec;
    norm_cmd->add_option("file", norm_file, "matrix JSON file")->required();
    norm_spec.add_to(norm_cmd);
    add_globals(norm_cmd);

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "check norm preservation on product matrices");
    fs::path verify_file;
    std::vector<std::size_t> verify_shape;
    SpecFlags verify_spec;
    std::size_t verify_trials = 100;
    verify_cmd->add_option("file", verify_file, "superoperator JSON file")->required();
    verify_cmd->add_option("--shape", verify_shape, "factor dimensions n1,n2,...")
        ->delimiter(',');
    verify_cmd->add_option("--trials", verify_trials, "number of random product trials");
    verify_spec.add_to(verify_cmd);
    add_globals(verify_cmd);

    // recover
    auto* recover_cmd =
        app.add_subcommand("recover", "recover the canonical form U(...)V of a preserver");
    fs::path recover_file;
    std::vector<std::size_t> recover_shape;
    recover_cmd->add_option("file", recover_file, "superoperator JSON file")->required();
    recover_cmd->add_option("--shape", recover_shape, "factor dimensions n1,n2,...")
        ->delimiter(',');
    add_globals(recover_cmd);

    // ccnr
    auto* ccnr_cmd = app.add_subcommand("ccnr", "CCNR realignment separability screen");
    fs::path ccnr_file;
    std::vector<std::size_t> ccnr_shape;
    ccnr_cmd->add_option("file", ccnr_file, "state JSON file")->required();
    ccnr_cmd->add_option("--shape", ccnr_shape, "bipartition m,n")->delimiter(',');
    add_globals(ccnr_cmd);

    // demo
    auto* demo_cmd = app.add_subcommand("demo", "write named fixture files");
    std::string demo_which;
    std::vector<std::size_t> demo_shape;
    double demo_r = 2.0;
    std::string demo_spec = "spectral";
    bool demo_pure = false;
    demo_cmd->add_option("which", demo_which, "standard | swap | cr | entangled | product")
        ->required();
    demo_cmd->add_option("--shape", demo_shape, "factor dimensions")->delimiter(',');
    demo_cmd->add_option("--r", demo_r, "C_r parameter");
    demo_cmd->add_option("--spec", demo_spec, "norm spec, e.g. ky-fan:2");
    demo_cmd->add_flag("--pure", demo_pure, "pure product state instead of maximally mixed");
    add_globals(demo_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);   // --help
        app.exit(e);
        return exit_bad_spec;
    }

    try {
        if (*norm_cmd) return run_norm(g, norm_file, norm_spec);
        if (*verify_cmd)
            return run_verify(g, verify_file, verify_shape, verify_spec, verify_trials);
        if (*recover_cmd) return run_recover(g, recover_file, recover_shape);
        if (*ccnr_cmd) return run_ccnr(g, ccnr_file, ccnr_shape);
        if (*demo_cmd) return run_demo(g, demo_which, demo_shape, demo_r, demo_spec, demo_pure);
    } catch (const tpn::invalid_spec_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_bad_spec;
    } catch (const tpn::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_malformed;
    } catch (const tpn::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_malformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_malformed;
    }
    return exit_bad_spec;
}
