#ifndef PARAMETRIX_CONTEXT_HPP
#define PARAMETRIX_CONTEXT_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace parametrix {

struct ContextError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ambient differential setting: n independent variables x1..xn (each with its
// derivation d_i) plus a list of constant parameters. Parameters have zero
// derivative under every d_i. Total coefficient variables = n + params.
class Context {
  public:
    Context(int n, std::vector<std::string> params = {})
      : n_(n), params_(std::move(params)) {
        if (n < 1) throw ContextError("context needs at least one independent variable");
        for (int i = 1; i <= n_; ++i) var_names_.push_back("x" + std::to_string(i));
        for (const auto &p : params_) var_names_.push_back(p);
    }

    int nvars() const { return n_; }
    int nparams() const { return static_cast<int>(params_.size()); }
    int ncoeffvars() const { return n_ + nparams(); }

    const std::string &coeff_var_name(int i) const { return var_names_.at(i); }
    const std::vector<std::string> &params() const { return params_; }

    // index into coefficient variables, or -1
    int find_coeff_var(const std::string &name) const {
        for (size_t i = 0; i < var_names_.size(); ++i)
            if (var_names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const Context &o) const {
        return n_ == o.n_ && params_ == o.params_;
    }
    bool operator!=(const Context &o) const { return !(*this == o); }

  private:
    int n_;
    std::vector<std::string> params_;
    std::vector<std::string> var_names_;
};

using CtxPtr = std::shared_ptr<const Context>;

inline CtxPtr make_context(int n, std::vector<std::string> params = {}) {
    return std::make_shared<const Context>(n, std::move(params));
}

inline void require_same_context(const CtxPtr &a, const CtxPtr &b) {
    if (a == b) return;
    if (!a || !b || *a != *b) throw ContextError("operands come from different contexts");
}

} // namespace parametrix

#endif
