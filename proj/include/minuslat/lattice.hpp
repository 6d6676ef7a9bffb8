#pragma once

#include <map>
#include <optional>
#include <string>

#include <minuslat/idempotent.hpp>
#include <minuslat/krein_symmetry.hpp>

namespace minuslat {

/// The four equivalent characterizations of P <= Q in the minus order,
/// each evaluated independently (no shortcuts), plus the raw inclusion
/// sub-checks. The equivalence holds between leq, range_incl && kernel_incl,
/// adjoint_leq and complement_leq; range_incl alone can be true for
/// incomparable pairs.
struct OrderReport {
    bool leq = false;             // PQ = QP = P
    bool range_incl = false;      // R(P) subset R(Q)
    bool kernel_incl = false;     // N(Q) subset N(P)
    bool adjoint_leq = false;     // P^* <= Q^*
    bool complement_leq = false;  // (I-Q) <= (I-P)
    std::map<std::string, double> residuals;

    bool equivalent() const {
        const bool incl = range_incl && kernel_incl;
        return leq == incl && leq == adjoint_leq && leq == complement_leq;
    }
};

enum class LatticeVerdict {
    Trivial,      // supremum is I / infimum is 0
    Nontrivial,   // exists, constructed explicitly
    NotExists,
};

const char* verdict_name(LatticeVerdict v) noexcept;

/// Existence verdict plus the constructed operator and its range/kernel
/// witnesses. operator is present iff verdict != NotExists.
struct LatticeResult {
    LatticeVerdict verdict = LatticeVerdict::NotExists;
    std::optional<Idempotent> op;
    std::optional<Subspace> witness_range;
    std::optional<Subspace> witness_kernel;
};

/// Independent evaluations of the four equivalent statements about Q - P
/// when P <= Q: PSD, self-adjoint, orthogonal projection, and
/// Q + Q^* >= P + P^*. They agree for every comparable pair.
struct DiffReport {
    bool psd = false;
    bool selfadjoint = false;
    bool ortho_proj = false;
    bool sum_order = false;
    std::map<std::string, double> residuals;

    bool all_agree() const {
        return psd == selfadjoint && psd == ortho_proj && psd == sum_order;
    }
};

/// The three equivalent conditions for the supremum to exist and be an
/// orthogonal projection different from I.
struct SupOrthogonality {
    bool via_sup = false;      // sup exists, is orthogonal, and != I
    bool via_ranges = false;   // R(PP^* + QQ^*) = R(P^*P + Q^*Q) != C^n
    bool via_kernels = false;  // {0} != N(P) cap N(Q) and both inclusions into N(P^*+P) cap N(Q^*+Q)
    bool all_agree() const { return via_sup == via_ranges && via_sup == via_kernels; }
};

/// P <= Q in the minus order: ||PQ - P|| and ||QP - P|| both within
/// idem_tol * (1 + ||P||_F ||Q||_F).
bool leq_minus(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg = {});

OrderReport order_report(const Idempotent& p, const Idempotent& q,
                         const ToleranceConfig& cfg = {});

/// Supremum of P and Q under the minus order.
/// Trivial (= I) when N(P) cap N(Q) is contained in R(P) + R(Q); Nontrivial
/// when N(P) cap N(Q) != {0} and complements R(P) + R(Q), in which case the
/// operator maps onto R(P) + R(Q) along N(P) cap N(Q); NotExists otherwise
/// (a definitive verdict in finite dimension).
LatticeResult sup_minus(const Idempotent& p, const Idempotent& q,
                        const ToleranceConfig& cfg = {});

/// Infimum, computed directly (onto R(P) cap R(Q) along N(P) + N(Q)) and
/// through the duality I - sup(I-P, I-Q); the two must agree on verdict and
/// operator or FormulaMismatch is thrown.
LatticeResult inf_minus(const Idempotent& p, const Idempotent& q,
                        const ToleranceConfig& cfg = {});

/// The orthogonal-projection join q_over(P) v q_over(Q): projection onto
/// R(q_over(P)) + R(q_over(Q)).
Idempotent sup_orth(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg = {});

SupOrthogonality sup_orthogonality_test(const Idempotent& p, const Idempotent& q,
                                        const ToleranceConfig& cfg = {});

/// Requires leq_minus(p, q); throws NotComparable otherwise.
DiffReport diff_report(const Idempotent& p, const Idempotent& q, const ToleranceConfig& cfg = {});

/// sup_minus for J-commuting inputs. Verifies the result commutes with J and
/// agrees with the blockwise suprema on the two J-eigenspaces whenever it
/// exists; throws NotCommuting if an input does not commute with J.
LatticeResult sup_with_symmetry(const Idempotent& p, const Idempotent& q, const Symmetry& j,
                                const ToleranceConfig& cfg = {});

}  // namespace minuslat
