#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "xps/types.hpp"

namespace xps {

/// Counts vector-field work. Bumped exactly once per grad_q, grad_p or
/// field call; reading H through value() is free.
class EvalCounter {
public:
    void bump() noexcept { ++count_; }
    std::uint64_t count() const noexcept { return count_; }
    void reset() noexcept { count_ = 0; }

private:
    std::uint64_t count_ = 0;
};

/// A Hamiltonian H(q, p) with analytic gradients. Implementations are
/// immutable after construction; the embedded counter is the only
/// mutable state, so one system instance belongs to one run.
class HamiltonianSystem {
public:
    virtual ~HamiltonianSystem() = default;

    virtual int dim() const = 0;

    double value(const Vec& q, const Vec& p) const { return do_value(q, p); }

    Vec grad_q(const Vec& q, const Vec& p) const {
        counter_.bump();
        return do_grad_q(q, p);
    }

    Vec grad_p(const Vec& q, const Vec& p) const {
        counter_.bump();
        return do_grad_p(q, p);
    }

    EvalCounter& counter() const { return counter_; }

protected:
    virtual double do_value(const Vec& q, const Vec& p) const = 0;
    virtual Vec do_grad_q(const Vec& q, const Vec& p) const = 0;
    virtual Vec do_grad_p(const Vec& q, const Vec& p) const = 0;

private:
    mutable EvalCounter counter_;
};

/// General first-order system x' = f(x, t), optionally partitioned at
/// index k into an (x, y) block pair.
class FirstOrderSystem {
public:
    virtual ~FirstOrderSystem() = default;

    virtual int dim() const = 0;
    virtual std::optional<int> partition() const { return std::nullopt; }

    Vec field(const Vec& x, double t) const {
        counter_.bump();
        return do_field(x, t);
    }

    EvalCounter& counter() const { return counter_; }

protected:
    virtual Vec do_field(const Vec& x, double t) const = 0;

private:
    mutable EvalCounter counter_;
};

/// First-order system defined by a callable; handy for tests and for
/// wrapping Hamiltonian flows.
class CallbackSystem final : public FirstOrderSystem {
public:
    using Fn = std::function<Vec(const Vec&, double)>;

    CallbackSystem(int dim, Fn fn, std::optional<int> partition = std::nullopt)
        : dim_(dim), fn_(std::move(fn)), partition_(partition) {}

    int dim() const override { return dim_; }
    std::optional<int> partition() const override { return partition_; }

protected:
    Vec do_field(const Vec& x, double t) const override { return fn_(x, t); }

private:
    int dim_;
    Fn fn_;
    std::optional<int> partition_;
};

/// Cloning map: (q, p) -> (q, q, p, p), with tau carried over and both
/// time slots set equal for non-autonomous use.
ExtendedState clone_up(const PhaseState& s);

/// Central-difference consistency check of the analytic gradients.
/// The difference step per coordinate is cbrt(machine epsilon) scaled
/// by the coordinate magnitude. Returns false on mismatch.
bool check_gradients(const HamiltonianSystem& sys, const PhaseState& sample, double rel_tol);

/// Original-space Hamiltonian flow z' = (grad_p H, -grad_q H) as a plain
/// field callable on z = [q; p]. Costs two counter bumps per call.
std::function<Vec(const Vec&, double)> hamiltonian_field(const HamiltonianSystem& sys);

}  // namespace xps
