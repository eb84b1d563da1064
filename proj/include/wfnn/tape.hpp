#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "wfnn/errors.hpp"

namespace wfnn {

class Tape;

// A scalar recorded on a reverse-mode tape over the trainable parameters.
// id < 0 marks a constant that carries no derivative; ids in [0, n_params)
// refer to parameter leaves, larger ids to recorded nodes.
struct TapeScalar {
    static constexpr std::int32_t kConst = -1;

    double value = 0.0;
    std::int32_t id = kConst;
    Tape* tape = nullptr;

    TapeScalar() = default;
    TapeScalar(double v) : value(v) {} // implicit: doubles are constants
    TapeScalar(double v, std::int32_t i, Tape* t) : value(v), id(i), tape(t) {}

    bool is_const() const { return id < 0; }
};

using GradientVector = std::vector<double>;

// Reverse-mode tape. Parameter values are owned by the caller and exposed as
// implicit leaf nodes 0..n_params-1; recorded nodes follow. The tape is meant
// to be reset between independent scalar evaluations (one graph per sample),
// which keeps memory bounded by the cost of a single forward pass.
class Tape {
public:
    Tape(const double* params, std::size_t n_params)
        : params_(params), n_params_(n_params) {}

    explicit Tape(std::span<const double> params)
        : Tape(params.data(), params.size()) {}

    std::size_t n_params() const { return n_params_; }
    std::size_t n_nodes() const { return nodes_.size(); }
    double param_value(std::size_t i) const { return params_[i]; }

    TapeScalar param(std::size_t i) {
        return {params_[i], static_cast<std::int32_t>(i), this};
    }

    static TapeScalar constant(double v) { return {v, TapeScalar::kConst, nullptr}; }

    // Drops all recorded nodes, keeping buffer capacity and parameters.
    void reset() {
        nodes_.clear();
        arg_parent_.clear();
        arg_partial_.clear();
    }

    TapeScalar unary(double value, const TapeScalar& a, double da) {
        if (a.is_const()) return constant(value);
        check_finite(value);
        const auto begin = static_cast<std::uint32_t>(arg_parent_.size());
        arg_parent_.push_back(static_cast<std::uint32_t>(a.id));
        arg_partial_.push_back(da);
        return record(value, begin, 1);
    }

    TapeScalar binary(double value, const TapeScalar& a, double da,
                      const TapeScalar& b, double db) {
        if (a.is_const() && b.is_const()) return constant(value);
        check_finite(value);
        const auto begin = static_cast<std::uint32_t>(arg_parent_.size());
        std::uint32_t n = 0;
        if (!a.is_const()) {
            arg_parent_.push_back(static_cast<std::uint32_t>(a.id));
            arg_partial_.push_back(da);
            ++n;
        }
        if (!b.is_const()) {
            arg_parent_.push_back(static_cast<std::uint32_t>(b.id));
            arg_partial_.push_back(db);
            ++n;
        }
        return record(value, begin, n);
    }

    // Fused y = sum_i w[i] * x[i] (+ bias), with w and bias contiguous
    // parameters starting at w_base. Records one node regardless of fan-in.
    TapeScalar dot_affine(std::size_t w_base, std::span<const TapeScalar> x,
                          std::int64_t bias_id = -1) {
        double value = bias_id >= 0 ? params_[static_cast<std::size_t>(bias_id)] : 0.0;
        const auto begin = static_cast<std::uint32_t>(arg_parent_.size());
        std::uint32_t n = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double w = params_[w_base + i];
            value += w * x[i].value;
            arg_parent_.push_back(static_cast<std::uint32_t>(w_base + i));
            arg_partial_.push_back(x[i].value);
            ++n;
            if (!x[i].is_const()) {
                arg_parent_.push_back(static_cast<std::uint32_t>(x[i].id));
                arg_partial_.push_back(w);
                ++n;
            }
        }
        if (bias_id >= 0) {
            arg_parent_.push_back(static_cast<std::uint32_t>(bias_id));
            arg_partial_.push_back(1.0);
            ++n;
        }
        check_finite(value);
        return record(value, begin, n);
    }

    // Accumulates d(loss)/d(theta) into grad (size n_params). Nodes are
    // visited in reverse creation order exactly once; parameter adjoints go
    // straight into grad so the per-call cost is O(recorded nodes).
    void backward_into(const TapeScalar& loss, std::span<double> grad) {
        if (grad.size() != n_params_)
            throw Error("backward_into: gradient size mismatch");
        if (loss.is_const()) return;
        if (static_cast<std::size_t>(loss.id) < n_params_) {
            grad[static_cast<std::size_t>(loss.id)] += 1.0;
            return;
        }
        const std::size_t top = static_cast<std::size_t>(loss.id) - n_params_;
        adjoint_.assign(top + 1, 0.0);
        adjoint_[top] = 1.0;
        for (std::size_t k = top + 1; k-- > 0;) {
            const double a = adjoint_[k];
            if (a == 0.0) continue;
            if (!std::isfinite(a))
                throw NonFiniteGradient("non-finite adjoint at node " +
                                        std::to_string(k) + " (value " +
                                        std::to_string(nodes_[k].value) + ")");
            const Node& nd = nodes_[k];
            for (std::uint32_t j = nd.arg_begin; j < nd.arg_begin + nd.n_args; ++j) {
                const std::uint32_t p = arg_parent_[j];
                const double contrib = a * arg_partial_[j];
                if (p < n_params_)
                    grad[p] += contrib;
                else
                    adjoint_[p - n_params_] += contrib;
            }
        }
    }

    // Convenience form: returns the full gradient and resets the tape.
    GradientVector backward(const TapeScalar& loss) {
        GradientVector g(n_params_, 0.0);
        backward_into(loss, g);
        reset();
        return g;
    }

private:
    struct Node {
        double value;
        std::uint32_t arg_begin;
        std::uint32_t n_args;
    };

    void check_finite(double v) const {
        if (!std::isfinite(v))
            throw NonFiniteGradient("non-finite value recorded on tape");
    }

    TapeScalar record(double value, std::uint32_t arg_begin, std::uint32_t n_args) {
        const auto id =
            static_cast<std::int32_t>(n_params_ + nodes_.size());
        nodes_.push_back({value, arg_begin, n_args});
        return {value, id, this};
    }

    const double* params_;
    std::size_t n_params_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> arg_parent_;
    std::vector<double> arg_partial_;
    std::vector<double> adjoint_;
};

namespace detail {

inline Tape* pick_tape(const TapeScalar& a, const TapeScalar& b) {
    return a.tape ? a.tape : b.tape;
}

} // namespace detail

// value() lets generic code read the plain double out of either scalar type.
inline double value(double x) { return x; }
inline double value(const TapeScalar& s) { return s.value; }

inline TapeScalar operator+(const TapeScalar& a, const TapeScalar& b) {
    Tape* t = detail::pick_tape(a, b);
    if (!t) return Tape::constant(a.value + b.value);
    return t->binary(a.value + b.value, a, 1.0, b, 1.0);
}

inline TapeScalar operator-(const TapeScalar& a, const TapeScalar& b) {
    Tape* t = detail::pick_tape(a, b);
    if (!t) return Tape::constant(a.value - b.value);
    return t->binary(a.value - b.value, a, 1.0, b, -1.0);
}

inline TapeScalar operator*(const TapeScalar& a, const TapeScalar& b) {
    Tape* t = detail::pick_tape(a, b);
    if (!t) return Tape::constant(a.value * b.value);
    return t->binary(a.value * b.value, a, b.value, b, a.value);
}

inline TapeScalar operator/(const TapeScalar& a, const TapeScalar& b) {
    if (std::abs(b.value) < 1e-300)
        throw DegenerateDivision("division by near-zero value");
    Tape* t = detail::pick_tape(a, b);
    const double inv = 1.0 / b.value;
    if (!t) return Tape::constant(a.value * inv);
    return t->binary(a.value * inv, a, inv, b, -a.value * inv * inv);
}

inline TapeScalar operator-(const TapeScalar& a) {
    if (a.is_const()) return Tape::constant(-a.value);
    return a.tape->unary(-a.value, a, -1.0);
}

inline TapeScalar& operator+=(TapeScalar& a, const TapeScalar& b) { return a = a + b; }
inline TapeScalar& operator-=(TapeScalar& a, const TapeScalar& b) { return a = a - b; }
inline TapeScalar& operator*=(TapeScalar& a, const TapeScalar& b) { return a = a * b; }

inline TapeScalar sin(const TapeScalar& a) {
    if (a.is_const()) return Tape::constant(std::sin(a.value));
    return a.tape->unary(std::sin(a.value), a, std::cos(a.value));
}

inline TapeScalar cos(const TapeScalar& a) {
    if (a.is_const()) return Tape::constant(std::cos(a.value));
    return a.tape->unary(std::cos(a.value), a, -std::sin(a.value));
}

inline TapeScalar tanh(const TapeScalar& a) {
    const double th = std::tanh(a.value);
    if (a.is_const()) return Tape::constant(th);
    return a.tape->unary(th, a, 1.0 - th * th);
}

inline TapeScalar sqrt(const TapeScalar& a) {
    if (a.value < 0.0)
        throw Error("sqrt of negative value");
    const double r = std::sqrt(a.value);
    if (a.is_const()) return Tape::constant(r);
    if (r == 0.0)
        throw DegenerateDivision("sqrt derivative at zero");
    return a.tape->unary(r, a, 0.5 / r);
}

inline TapeScalar log(const TapeScalar& a) {
    if (a.value <= 0.0)
        throw Error("log of non-positive value");
    if (a.is_const()) return Tape::constant(std::log(a.value));
    return a.tape->unary(std::log(a.value), a, 1.0 / a.value);
}

inline TapeScalar abs(const TapeScalar& a) {
    if (a.is_const()) return Tape::constant(std::abs(a.value));
    return a.tape->unary(std::abs(a.value), a, a.value >= 0.0 ? 1.0 : -1.0);
}

// ReLU gate with zero subgradient at the kink, so gated penalties are
// exactly silent (value and gradient) inside the safe band.
inline double relu(double x) { return x > 0.0 ? x : 0.0; }

inline TapeScalar relu(const TapeScalar& a) {
    if (a.is_const()) return Tape::constant(relu(a.value));
    return a.tape->unary(relu(a.value), a, a.value > 0.0 ? 1.0 : 0.0);
}

} // namespace wfnn
