#include "parametrix/json_io.hpp"

#include "parametrix/dsl.hpp"

namespace parametrix {

using nlohmann::json;

json matrix_to_json(const OpMatrix &A) {
    json j;
    j["schema"] = "opmatrix-v1";
    j["rows"] = A.rows();
    j["cols"] = A.cols();
    j["indep"] = A.ctx()->nvars();
    j["params"] = A.ctx()->params();
    j["row_labels"] = A.row_labels;
    j["col_labels"] = A.col_labels;
    json entries = json::array();
    for (int r = 0; r < A.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < A.cols(); ++c) {
            json terms = json::array();
            for (auto &[mu, coeff] : A.at(r, c).terms()) {
                json t;
                t["mu"] = mu.e;
                t["coeff"] = coeff.str();
                terms.push_back(std::move(t));
            }
            row.push_back(std::move(terms));
        }
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

OpMatrix matrix_from_json(const json &j) {
    int n = j.at("indep").get<int>();
    std::vector<std::string> params = j.value("params", std::vector<std::string>{});
    auto ctx = make_context(n, params);
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    OpMatrix A(ctx, rows, cols);
    if (j.contains("row_labels")) A.row_labels = j.at("row_labels").get<std::vector<std::string>>();
    if (j.contains("col_labels")) A.col_labels = j.at("col_labels").get<std::vector<std::string>>();
    const json &entries = j.at("entries");
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            DiffOp op(ctx);
            for (auto &t : entries.at(r).at(c)) {
                Mono mu(std::vector<uint32_t>(t.at("mu").begin(), t.at("mu").end()));
                op.add_term(mu, parse_ratfunc(ctx, t.at("coeff").get<std::string>()));
            }
            A.at(r, c) = op;
        }
    return A;
}

json board_to_json(const Board &b) {
    json j;
    j["schema"] = "board-v1";
    json rows = json::array();
    for (auto &r : b.rows) {
        json rr;
        rr["comp"] = r.comp;
        rr["mu"] = r.mu.e;
        rr["class"] = r.cls;
        rr["order"] = r.order;
        std::vector<int> mult;
        for (int v = 0; v < b.n; ++v)
            if (r.mult[v]) mult.push_back(v + 1);
        rr["mult"] = mult;
        rows.push_back(std::move(rr));
    }
    j["rows"] = std::move(rows);
    j["text"] = b.render();
    return j;
}

json characters_to_json(const Characters &c) {
    json j;
    j["q"] = c.q;
    j["n"] = c.n;
    j["m"] = c.m;
    j["beta"] = c.beta;
    j["alpha"] = c.alpha;
    j["chain_ok"] = c.chain_ok;
    j["monotone_ok"] = c.monotone_ok;
    return j;
}

json resolution_to_json(const Resolution &r) {
    json j;
    j["schema"] = "resolution-v1";
    j["dims"] = r.dims;
    j["complete"] = r.complete;
    json ops = json::array();
    for (auto &op : r.ops) ops.push_back(matrix_to_json(op));
    j["ops"] = std::move(ops);
    return j;
}

json duality_to_json(const DualityReport &r) {
    json j;
    j["schema"] = "dualreport-v1";
    j["step1_adjoint"] = matrix_to_json(r.adD1);
    j["step2_cc_of_adjoint"] = matrix_to_json(r.adD);
    j["step3_candidate_parametrization"] = matrix_to_json(r.D);
    j["step4_cc_of_candidate"] = matrix_to_json(r.D1prime);
    j["input"] = matrix_to_json(r.D1);
    j["verdict"] = r.torsion_free ? "torsion-free" : "torsion";
    j["rank_input"] = r.rank_D1;
    j["rank_module"] = r.rank_M;
    json ws = json::array();
    for (auto &w : r.witnesses) {
        json jw;
        jw["class"] = row_to_jetexpr(w.row).str(r.D1.col_labels);
        if (w.annihilator) jw["annihilator"] = w.annihilator->str();
        else jw["annihilator"] = nullptr;
        ws.push_back(std::move(jw));
    }
    j["witnesses"] = std::move(ws);
    j["witness_max_order"] = r.witness_max_order;
    return j;
}

json fi_to_json(const FiReport &r, const std::vector<std::string> &deps) {
    json j;
    j["schema"] = "fi-v1";
    j["formally_integrable"] = r.formally_integrable;
    j["symbol_two_acyclic"] = r.symbol_ok;
    j["rounds"] = r.rounds;
    json eqs = json::array();
    for (auto &round : r.new_equations) {
        json rr = json::array();
        for (auto &e : round) rr.push_back(e.str(deps));
        eqs.push_back(std::move(rr));
    }
    j["new_equations"] = std::move(eqs);
    return j;
}

} // namespace parametrix
