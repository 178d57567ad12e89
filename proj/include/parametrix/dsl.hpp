#ifndef PARAMETRIX_DSL_HPP
#define PARAMETRIX_DSL_HPP

#include "parametrix/opmatrix.hpp"

namespace parametrix {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string &msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

// system NAME {
//   indep x1, x2;
//   param a;            (optional)
//   dep u, v;
//   eq d2*u - d1*v + x2*v;          jets also as u[1,2] for d1 d2 u
//   eq u[1,1] = 0;
// }
struct SystemDoc {
    std::string name;
    CtxPtr ctx;
    std::vector<std::string> deps;
    std::vector<JetExpr> equations;

    OpMatrix matrix() const;
    std::string print() const;
};

SystemDoc parse_system(const std::string &text);
SystemDoc doc_from_matrix(const std::string &name, const OpMatrix &A);

// coefficient-only expression (variables and parameters, no jets)
RatFunc parse_ratfunc(CtxPtr ctx, const std::string &text);

// single scalar operator in d1..dn with coefficient expressions
DiffOp parse_diffop(CtxPtr ctx, const std::string &text);

} // namespace parametrix

#endif
