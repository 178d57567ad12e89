#include "parametrix/cli_run.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "parametrix/catalog.hpp"
#include "parametrix/dsl.hpp"
#include "parametrix/json_io.hpp"

namespace parametrix {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

std::string read_stream(std::istream &in) {
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// load a system from a .das file, "-" (stdin), or a catalog name
OpMatrix load_system(const std::string &input, int n, const std::string &metric) {
    if (input == "-") {
        return parse_system(read_stream(std::cin)).matrix();
    }
    std::ifstream f(input);
    if (f.good()) {
        return parse_system(read_stream(f)).matrix();
    }
    return catalog_build(input, n, metric);
}

void emit_matrix(const OpMatrix &A, const std::string &name, bool as_json) {
    if (as_json) {
        std::cout << matrix_to_json(A).dump(2) << "\n";
    } else {
        std::cout << doc_from_matrix(name, A).print();
    }
}

struct CommonOpts {
    std::string input;
    bool json = false;
    uint64_t seed = 0;
    int max_order = 3;
    int r_max = 4;
    int n = 3;
    std::string metric = "euclidean";
};

void add_common(CLI::App *cmd, CommonOpts &o, bool needs_input = true) {
    if (needs_input)
        cmd->add_option("input", o.input, ".das file, '-' for stdin, or a catalog name")
            ->required();
    cmd->add_flag("--json", o.json, "JSON output");
    cmd->add_option("--seed", o.seed, "seed for coordinate-change searches");
    cmd->add_option("--max-order", o.max_order, "bound for annihilator searches");
    cmd->add_option("--r-max", o.r_max, "prolongation bound");
    cmd->add_option("--n", o.n, "dimension for catalog systems");
    cmd->add_option("--metric", o.metric, "euclidean | minkowski (catalog systems)");
}

} // namespace

int cli_main(int argc, char **argv) {
    CLI::App app{"symbolic parametrizability toolkit for linear OD/PD systems"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string verify_param, verify_system;
    bool minimal = false;
    int steps = -1;
    std::string catalog_action, catalog_name;

    auto *cmd_adjoint = app.add_subcommand("adjoint", "formal adjoint of the system matrix");
    add_common(cmd_adjoint, o);
    auto *cmd_cc = app.add_subcommand("cc", "generating compatibility conditions");
    add_common(cmd_cc, o);
    auto *cmd_res = app.add_subcommand("resolution", "iterated compatibility conditions");
    add_common(cmd_res, o);
    cmd_res->add_option("--steps", steps, "maximum number of CC steps (default n+1)");
    auto *cmd_inv = app.add_subcommand("involution", "solved-form involution test");
    add_common(cmd_inv, o);
    auto *cmd_board = app.add_subcommand("board", "Janet board of the completed system");
    add_common(cmd_board, o);
    auto *cmd_rank = app.add_subcommand("rank", "differential rank and characters");
    add_common(cmd_rank, o);
    auto *cmd_dual = app.add_subcommand("dualtest", "double duality torsion test");
    add_common(cmd_dual, o);
    auto *cmd_par = app.add_subcommand("parametrize", "canonical or minimal parametrizations");
    add_common(cmd_par, o);
    cmd_par->add_flag("--minimal", minimal, "search column-subset minimal parametrizations");
    auto *cmd_sp = app.add_subcommand("spencer", "symbol dimensions and delta-cohomology");
    add_common(cmd_sp, o);
    auto *cmd_fi = app.add_subcommand("fi", "formal integrability criterion");
    add_common(cmd_fi, o);
    auto *cmd_cat = app.add_subcommand("catalog", "list or emit built-in systems");
    cmd_cat->add_option("action", catalog_action, "list | emit")->required();
    cmd_cat->add_option("name", catalog_name, "catalog system name");
    cmd_cat->add_flag("--json", o.json, "JSON output");
    cmd_cat->add_option("--n", o.n, "dimension");
    cmd_cat->add_option("--metric", o.metric, "euclidean | minkowski");
    auto *cmd_ver = app.add_subcommand("verify", "check that one operator parametrizes another");
    cmd_ver->add_option("--param", verify_param, "parametrizing operator (.das or catalog name)")
        ->required();
    cmd_ver->add_option("--system", verify_system, "system to parametrize (.das or catalog name)")
        ->required();
    cmd_ver->add_flag("--json", o.json, "JSON output");
    cmd_ver->add_option("--n", o.n, "dimension for catalog systems");
    cmd_ver->add_option("--metric", o.metric, "euclidean | minkowski");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (cmd_adjoint->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            emit_matrix(A.adjoint(), "adjoint", o.json);
            return kExitOk;
        }
        if (cmd_cc->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            emit_matrix(generating_cc(A), "cc", o.json);
            return kExitOk;
        }
        if (cmd_res->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            Resolution r = free_resolution(A, steps);
            if (o.json) {
                std::cout << resolution_to_json(r).dump(2) << "\n";
            } else {
                std::cout << "dims:";
                for (auto d : r.dims) std::cout << " " << d;
                std::cout << (r.complete ? "" : " (incomplete: step budget exhausted)") << "\n";
            }
            return r.complete ? kExitOk : kExitNegative;
        }
        if (cmd_inv->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            InvolutionReport rep = system_involution(A);
            if (o.json) {
                nlohmann::json j;
                j["involutive"] = rep.involutive;
                j["dim_all_prolongations"] = rep.dim_all;
                j["dim_multiplicative_prolongations"] = rep.dim_mult;
                j["board"] = board_to_json(rep.board);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << (rep.involutive ? "involutive" : "not involutive")
                          << " (all prolongations span " << rep.dim_all
                          << ", multiplicative span " << rep.dim_mult << ")\n"
                          << rep.board.render();
            }
            return rep.involutive ? kExitOk : kExitNegative;
        }
        if (cmd_board->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            auto reg = delta_regularize(A, {}, 8, o.seed);
            if (o.json) {
                nlohmann::json j;
                j["board"] = board_to_json(reg.basis.board());
                j["characters"] = characters_to_json(reg.chars);
                j["identity_frame"] = reg.identity;
                j["certified"] = reg.certified;
                std::cout << j.dump(2) << "\n";
            } else {
                if (!reg.identity) std::cout << "(after a linear change of coordinates)\n";
                std::cout << reg.basis.board().render();
            }
            return kExitOk;
        }
        if (cmd_rank->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            auto reg = delta_regularize(A, {}, 8, o.seed);
            long long dr = A.is_zero() ? 0
                           : reg.basis.is_full_module() ? A.cols()
                                                        : reg.chars.beta_n();
            if (o.json) {
                nlohmann::json j;
                j["differential_rank"] = dr;
                j["module_rank"] = A.cols() - dr;
                j["characters"] = characters_to_json(reg.chars);
                j["certified"] = reg.certified;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "differential rank " << dr << ", module rank " << (A.cols() - dr)
                          << "\n";
            }
            return kExitOk;
        }
        if (cmd_dual->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            DualityReport rep = double_duality(A, o.max_order, o.seed);
            if (o.json) {
                std::cout << duality_to_json(rep).dump(2) << "\n";
            } else {
                std::cout << "double duality test (stages 1-5)\n";
                std::cout << " 1. input D1: " << rep.D1.rows() << " equations, " << rep.D1.cols()
                          << " unknowns, order " << rep.D1.order() << "\n";
                std::cout << " 2. ad(D1): " << rep.adD1.rows() << " x " << rep.adD1.cols() << "\n";
                std::cout << " 3. ad(D) = CC(ad(D1)): " << rep.adD.rows() << " rows, order "
                          << rep.adD.order() << "\n";
                std::cout << " 4. D = ad(ad(D)): " << rep.D.rows() << " x " << rep.D.cols()
                          << ", order " << rep.D.order() << "\n";
                std::cout << " 5. D1' = CC(D): " << rep.D1prime.rows() << " rows vs "
                          << rep.D1.rows() << " input rows\n";
                std::cout << "verdict: " << (rep.torsion_free ? "torsion-free" : "torsion") << "\n";
                for (auto &w : rep.witnesses) {
                    std::cout << "  witness: " << row_to_jetexpr(w.row).str(rep.D1.col_labels);
                    if (w.annihilator) std::cout << "   annihilator: " << w.annihilator->str();
                    else std::cout << "   annihilator: none up to order " << rep.witness_max_order;
                    std::cout << "\n";
                }
                std::cout << "diff rk(D1) = " << rep.rank_D1 << ", rk_D(M) = " << rep.rank_M << "\n";
                if (rep.D1.ctx()->nvars() == 1) {
                    std::cout << "controllability (n=1): "
                              << (rep.torsion_free ? "controllable" : "not controllable") << "\n";
                }
            }
            return rep.torsion_free ? kExitOk : kExitNegative;
        }
        if (cmd_par->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            try {
                if (minimal) {
                    MinimalSearchResult res = minimal_parametrization(A, o.seed);
                    if (o.json) {
                        nlohmann::json j;
                        j["canonical"] = matrix_to_json(res.canonical);
                        j["target_rank"] = res.target_rank;
                        j["truncated"] = res.enumeration_truncated;
                        nlohmann::json found = nlohmann::json::array();
                        for (auto &mp : res.found) {
                            nlohmann::json one;
                            one["columns"] = mp.columns;
                            one["operator"] = matrix_to_json(mp.op);
                            found.push_back(std::move(one));
                        }
                        j["minimal"] = std::move(found);
                        std::cout << j.dump(2) << "\n";
                    } else {
                        std::cout << "canonical parametrization has " << res.canonical.cols()
                                  << " potentials; minimal needs " << res.target_rank << "\n";
                        for (auto &mp : res.found) {
                            std::cout << "columns:";
                            for (int c : mp.columns)
                                std::cout << " " << res.canonical.col_labels.at(c);
                            std::cout << "\n" << doc_from_matrix("minimal", mp.op).print();
                        }
                        if (res.found.empty())
                            std::cout << "no subset-minimal parametrization found\n";
                    }
                    return res.found.empty() ? kExitNegative : kExitOk;
                }
                OpMatrix D = canonical_parametrization(A, o.seed);
                emit_matrix(D, "parametrization", o.json);
                return kExitOk;
            } catch (const TorsionError &e) {
                std::cerr << "torsion module: " << e.what() << "\n";
                for (auto &w : e.witnesses)
                    std::cerr << "  witness: " << row_to_jetexpr(w.row).str(A.col_labels) << "\n";
                return kExitNegative;
            }
        }
        if (cmd_sp->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            GenericPoint pt = pick_generic_point(A);
            SymbolSpace g(A, pt);
            int n = A.ctx()->nvars();
            if (o.json) {
                nlohmann::json j;
                j["schema"] = "spencer-v1";
                j["base_order"] = g.base_order();
                nlohmann::json dims = nlohmann::json::array();
                for (int r = 0; r <= o.r_max; ++r) dims.push_back(g.dim(g.base_order() + r));
                j["symbol_dims"] = dims;
                nlohmann::json table = nlohmann::json::array();
                for (int s = 1; s <= n; ++s) {
                    nlohmann::json row = nlohmann::json::array();
                    for (int r = 0; r <= o.r_max; ++r)
                        row.push_back(spencer_cohomology(g, s, g.base_order() + r));
                    table.push_back(std::move(row));
                }
                j["cohomology"] = std::move(table);
                int vanish = -1;
                j["finite_type"] = g.is_finite_type(o.r_max, &vanish);
                if (vanish >= 0) j["vanishes_at"] = vanish;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << g.dims_table(o.r_max) << "\n";
                std::cout << "dim H^s at order q+r (rows s = 1.." << n << ", columns r = 0.."
                          << o.r_max << ")\n";
                for (int s = 1; s <= n; ++s) {
                    std::cout << "s=" << s << ":";
                    for (int r = 0; r <= o.r_max; ++r)
                        std::cout << " " << spencer_cohomology(g, s, g.base_order() + r);
                    std::cout << "\n";
                }
            }
            return kExitOk;
        }
        if (cmd_fi->parsed()) {
            OpMatrix A = load_system(o.input, o.n, o.metric);
            FiReport rep = fi_criterion(A, o.r_max);
            if (o.json) {
                std::cout << fi_to_json(rep, A.col_labels).dump(2) << "\n";
            } else {
                if (rep.formally_integrable && rep.new_equations.empty()) {
                    std::cout << "formally integrable\n";
                } else if (rep.formally_integrable) {
                    std::cout << "adds new equations, then becomes formally integrable\n";
                } else {
                    std::cout << "adds new equations (budget exhausted)\n";
                }
                int round = 1;
                for (auto &eqs : rep.new_equations) {
                    std::cout << " round " << round++ << ":";
                    for (auto &e : eqs) std::cout << "  " << e.str(A.col_labels);
                    std::cout << "\n";
                }
            }
            return (rep.formally_integrable && rep.new_equations.empty()) ? kExitOk : kExitNegative;
        }
        if (cmd_cat->parsed()) {
            if (catalog_action == "list") {
                for (auto &e : catalog_entries()) {
                    std::cout << e.name;
                    if (e.takes_n) std::cout << " --n N";
                    if (e.takes_metric) std::cout << " [--metric euclidean|minkowski]";
                    std::cout << "  # " << e.description << "\n";
                }
                return kExitOk;
            }
            if (catalog_action == "emit") {
                if (catalog_name.empty()) throw std::runtime_error("catalog emit needs a name");
                OpMatrix A = catalog_build(catalog_name, o.n, o.metric);
                std::string nm = catalog_name;
                for (auto &ch : nm)
                    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                emit_matrix(A, nm, o.json);
                return kExitOk;
            }
            throw std::runtime_error("catalog action must be list or emit");
        }
        if (cmd_ver->parsed()) {
            OpMatrix P = load_system(verify_param, o.n, o.metric);
            OpMatrix S = load_system(verify_system, o.n, o.metric);
            CcCheck chk = check_parametrization(P, S);
            std::string verdict = chk.ok()                                    ? "pass"
                                  : chk.verdict == CcVerdict::ClaimedNotCC    ? "fail: system does not annihilate the parametrization"
                                                                              : "fail: system misses compatibility conditions";
            if (o.json) {
                nlohmann::json j;
                j["pass"] = chk.ok();
                j["detail"] = verdict;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << verdict << "\n";
            }
            return chk.ok() ? kExitOk : kExitNegative;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

} // namespace parametrix
