#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <minuslat/krein.hpp>
#include <minuslat/lattice.hpp>
#include <minuslat/random_gen.hpp>

#include "test_helpers.hpp"

using namespace minuslat;
using namespace minuslat::testing;

namespace {
const double kHalfRoot3 = std::sqrt(3.0) / 2.0;

ComplexMatrix krein_cell() {
    return mat({{cx(1.5), cx(0, kHalfRoot3)}, {cx(0, kHalfRoot3), cx(-0.5)}});
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected an Error");
}
}  // namespace

TEST_CASE("validate_symmetry") {
    Symmetry id = Symmetry::validate(ComplexMatrix::Identity(3, 3));
    CHECK(id.plus_space().dim() == 3);
    CHECK(id.minus_space().dim() == 0);

    Symmetry diag = Symmetry::validate(mat({{1, 0}, {0, -1}}));
    CHECK(diag.plus_space().dim() == 1);
    CHECK(diag.minus_space().dim() == 1);

    Symmetry swap = Symmetry::validate(mat({{0, 1}, {1, 0}}));
    CHECK(swap.plus_space().dim() == 1);
    CHECK(subspace_eq(swap.plus_space(), span({{1, 1}}, 2)));
    CHECK(subspace_eq(swap.minus_space(), span({{1, -1}}, 2)));

    CHECK(code_of([] { Symmetry::validate(mat({{1, 0.5}, {0, 1}})); }) == Errc::NotSymmetry);
    CHECK(code_of([] { Symmetry::validate(2.0 * ComplexMatrix::Identity(2, 2)); }) ==
          Errc::NotSymmetry);

    // -I has an empty plus space.
    Symmetry neg = Symmetry::validate(-ComplexMatrix::Identity(2, 2));
    CHECK(neg.plus_space().dim() == 0);
    CHECK(neg.minus_space().dim() == 2);
}

TEST_CASE("is_j_projection") {
    Symmetry j = Symmetry::validate(mat({{1, 0}, {0, -1}}));
    Idempotent p = Idempotent::validate(mat({{1, 0}, {0, 0}}));
    CHECK(is_j_projection(p, j).holds);

    Idempotent cell = Idempotent::validate(krein_cell());
    JProjectionCertificate cert = is_j_projection(cell, j);
    CHECK(cert.holds);
    CHECK(cert.residual < 1e-12);

    Symmetry id = Symmetry::validate(ComplexMatrix::Identity(2, 2));
    Idempotent shear = Idempotent::validate(mat({{1, 1}, {0, 0}}));
    CHECK_FALSE(is_j_projection(shear, id).holds);
}

TEST_CASE("j_projection_onto") {
    Symmetry j = Symmetry::validate(mat({{1, 0}, {0, -1}}));

    Idempotent axis = j_projection_onto(span({{1, 0}}, 2), j);
    CHECK(dist(axis.matrix(), mat({{1, 0}, {0, 0}})) < 1e-12);

    CHECK(code_of([&] { j_projection_onto(span({{1, 1}}, 2), j); }) == Errc::Degenerate);

    // Range (2,1)/sqrt(5): the idempotent solving E(2,1)=(2,1), E(1,2)=0.
    Idempotent oblique = j_projection_onto(span({{2, 1}}, 2), j);
    CHECK(dist(oblique.matrix(), mat({{cx(4.0 / 3), cx(-2.0 / 3)}, {cx(2.0 / 3), cx(-1.0 / 3)}})) <
          1e-10);
    CHECK_FALSE(oblique.is_orthogonal());
    CHECK(is_j_projection(oblique, j).holds);
}

TEST_CASE("construct_q_over_preimage reproduces the fixed cell") {
    Symmetry j = Symmetry::validate(mat({{1, 0}, {0, -1}}));
    Idempotent p = Idempotent::validate(ComplexMatrix::Identity(2, 2));
    Idempotent q = construct_q_over_preimage(p, j);
    CHECK(dist(q.matrix(), krein_cell()) < 1e-12);
    CHECK(dist(q_over(q).matrix(), p.matrix()) < 1e-10);
}

TEST_CASE("construct_q_over_preimage infeasible branches") {
    Idempotent id2 = Idempotent::validate(ComplexMatrix::Identity(2, 2));

    // J = I: the minus eigenspace is empty.
    CHECK(code_of([&] {
              construct_q_over_preimage(id2, Symmetry::validate(ComplexMatrix::Identity(2, 2)));
          }) == Errc::Infeasible);

    // J = -I: the plus eigenspace is empty.
    CHECK(code_of([&] {
              construct_q_over_preimage(id2, Symmetry::validate(-ComplexMatrix::Identity(2, 2)));
          }) == Errc::Infeasible);

    // Rank-one P.
    Symmetry j4 = Symmetry::validate(mat({{1, 0, 0, 0},
                                          {0, -1, 0, 0},
                                          {0, 0, 1, 0},
                                          {0, 0, 0, -1}}));
    Idempotent rank1 = Idempotent::validate(mat({{1, 0, 0, 0},
                                                 {0, 0, 0, 0},
                                                 {0, 0, 0, 0},
                                                 {0, 0, 0, 0}}));
    CHECK(code_of([&] { construct_q_over_preimage(rank1, j4); }) == Errc::Infeasible);

    // P not commuting with J.
    Symmetry j2 = Symmetry::validate(mat({{1, 0}, {0, -1}}));
    Symmetry j3 = Symmetry::validate(mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}));
    Idempotent skewed = Idempotent::validate(ortho_projection(span({{1, 1, 0}, {0, 0, 1}}, 3)));
    CHECK(code_of([&] { construct_q_over_preimage(skewed, j3); }) == Errc::Infeasible);

    // Non-orthogonal P.
    Idempotent shear = Idempotent::validate(mat({{1, 1}, {0, 0}}));
    CHECK(code_of([&] { construct_q_over_preimage(shear, j2); }) == Errc::Infeasible);
}

TEST_CASE("construct_q_under_preimage") {
    Symmetry j = Symmetry::validate(mat({{1, 0}, {0, -1}}));

    // P = 0: the dual of the fixed cell.
    Idempotent zero = Idempotent::validate(ComplexMatrix::Zero(2, 2));
    Idempotent q = construct_q_under_preimage(zero, j);
    CHECK(dist(q.matrix(), ComplexMatrix::Identity(2, 2) - krein_cell()) < 1e-12);
    CHECK(q_under(q).matrix().norm() < 1e-10);
    CHECK(is_j_projection(q, j).holds);

    // dim R(I - P) = 1 is infeasible.
    Idempotent diag = Idempotent::validate(mat({{1, 0}, {0, 0}}));
    CHECK(code_of([&] { construct_q_under_preimage(diag, j); }) == Errc::Infeasible);

    // Frozen regression: P = diag(1,1,0,0), J = diag(1,1,1,-1) is feasible,
    // the cell lands on span{e3, e4}.
    Symmetry j4 = Symmetry::validate(mat({{1, 0, 0, 0},
                                          {0, 1, 0, 0},
                                          {0, 0, 1, 0},
                                          {0, 0, 0, -1}}));
    Idempotent p4 = Idempotent::validate(mat({{1, 0, 0, 0},
                                              {0, 1, 0, 0},
                                              {0, 0, 0, 0},
                                              {0, 0, 0, 0}}));
    Idempotent q4 = construct_q_under_preimage(p4, j4);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 1) = 1.0;
    expected.block(2, 2, 2, 2) = ComplexMatrix::Identity(2, 2) - krein_cell();
    CHECK(dist(q4.matrix(), expected) < 1e-12);
    CHECK(dist(q_under(q4).matrix(), p4.matrix()) < 1e-10);
    CHECK(is_j_projection(q4, j4).holds);
    CHECK((q4.matrix() - q4.matrix().adjoint()).norm() > 0.5);
}

TEST_CASE("envelope_order_counterexample on the pinned 4x4 input") {
    Idempotent p = Idempotent::validate(mat({{1, 0, 1, 0},
                                             {0, 1, 0, 1},
                                             {0, 0, 0, 0},
                                             {0, 0, 0, 0}}));
    Idempotent q = envelope_order_counterexample(p);

    CHECK(leq_minus(p, q));
    CHECK((p.matrix() - q.matrix()).norm() > 1e-6);

    // The envelope of P is the identity; the floor of Q is the projection
    // onto span{e1, e3}; the first is not below the second.
    CHECK(dist(q_over(p).matrix(), ComplexMatrix::Identity(4, 4)) < 1e-10);
    ComplexMatrix floor = q_under(q).matrix();
    CHECK(dist(floor, mat({{1, 0, 0, 0},
                           {0, 0, 0, 0},
                           {0, 0, 1, 0},
                           {0, 0, 0, 0}})) < 1e-8);
    CHECK_FALSE(leq_minus(q_over(p), q_under(q)));
}

TEST_CASE("envelope_order_counterexample infeasible branches") {
    Idempotent orth = Idempotent::validate(mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    CHECK(code_of([&] { envelope_order_counterexample(orth); }) == Errc::Infeasible);

    Idempotent shear = Idempotent::validate(mat({{1, 1}, {0, 0}}));
    CHECK(code_of([&] { envelope_order_counterexample(shear); }) == Errc::Infeasible);
}

TEST_CASE("envelope_order_counterexample hits the kernel-splitting branch") {
    // Coupling 1x2 block always has a kernel: rank(P) = 1, codim = 2 forces it.
    GenConfig gen;
    gen.dim = 3;
    gen.rank = 1;
    gen.master_seed = 5150;
    for (int t = 0; t < 25; ++t) {
        Idempotent p = random_idempotent(gen, t);
        if (p.is_orthogonal()) continue;
        Idempotent q = envelope_order_counterexample(p);
        CHECK(leq_minus(p, q));
        CHECK_FALSE(leq_minus(q_over(p), q_under(q)));
    }
}

TEST_CASE("sufficiency side: codimension one forces ordered envelopes") {
    // A strict majorant of a corank-one idempotent can only be the identity,
    // whose floor dominates everything.
    GenConfig gen;
    gen.dim = 4;
    gen.rank = 3;
    gen.master_seed = 606;
    for (int t = 0; t < 15; ++t) {
        Idempotent p = random_idempotent(gen, t);
        REQUIRE_FALSE(p.is_orthogonal());
        Idempotent q = Idempotent::validate(ComplexMatrix::Identity(4, 4));
        REQUIRE(leq_minus(p, q));
        CHECK(leq_minus(q_over(p), q_under(q)));
    }
}

TEST_CASE("sufficiency side: orthogonal P keeps envelopes ordered") {
    for (int t = 0; t < 30; ++t) {
        RandomStream rng(31, t, "sufficiency");
        const Index n = 2 + static_cast<Index>(rng.below(5));
        // Random orthogonal P and a comparable Q above it: extend the range.
        const Index k = rng.below(n);  // rank < n so extension is possible
        Subspace base = random_subspace(rng, n, k);
        Idempotent p = Idempotent::validate(ortho_projection(base));

        Subspace extra = complement(base);
        const Index add = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(extra.dim())));
        ComplexMatrix mix = extra.basis() * random_unitary(rng, extra.dim());
        ComplexMatrix big = p.matrix() + mix.leftCols(add) * mix.leftCols(add).adjoint();
        Idempotent q = Idempotent::validate(big);

        REQUIRE(leq_minus(p, q));
        CHECK(leq_minus(q_over(p), q_under(q)));
    }
}

TEST_CASE("random J-projections keep their envelopes commuting with J") {
    for (int t = 0; t < 30; ++t) {
        RandomStream rng(41, t, "sig");
        const Index n = 2 + static_cast<Index>(rng.below(5));
        const Index plus = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
        GenConfig gen;
        gen.dim = n;
        gen.master_seed = 41;
        Symmetry j = random_symmetry(gen, plus, n - plus, t);
        Idempotent q = random_j_projection(gen, j, t);
        REQUIRE(is_j_projection(q, j).holds);

        for (const Idempotent& env : {q_under(q), q_over(q)}) {
            CHECK((env.matrix() * j.matrix() - j.matrix() * env.matrix()).norm() <
                  1e-8 * (1.0 + env.matrix().norm() * j.matrix().norm()));
        }
    }
}
