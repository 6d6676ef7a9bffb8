#include <minuslat/random_gen.hpp>

#include <algorithm>
#include <numeric>

#include <minuslat/krein.hpp>

namespace minuslat {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial) noexcept {
    return splitmix64(master_seed ^ splitmix64(trial));
}

void GenConfig::check() const {
    if (dim <= 0) throw Error(Errc::InvalidMatrix, "generator dimension must be positive");
    if (rank && (*rank < 0 || *rank > dim))
        throw Error(Errc::InvalidMatrix, "generator rank outside [0, dim]");
    if (!(cond_bound > 1.0)) throw Error(Errc::InvalidMatrix, "cond_bound must exceed 1");
    if (max_retries <= 0) throw Error(Errc::InvalidMatrix, "max_retries must be positive");
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t trial,
                           std::string_view purpose)
    : engine_(splitmix64(splitmix64(master_seed ^ splitmix64(trial)) ^ fnv1a(purpose))),
      normal_(0.0, 1.0) {}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
    return dist(engine_);
}

ComplexMatrix RandomStream::gaussian_matrix(Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
}

ComplexMatrix random_unitary(RandomStream& rng, Index n) {
    Eigen::HouseholderQR<ComplexMatrix> qr(rng.gaussian_matrix(n, n));
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

Subspace random_subspace(RandomStream& rng, Index n, Index k, double rank_tol) {
    if (k == 0) return Subspace::zero(n, rank_tol);
    Eigen::HouseholderQR<ComplexMatrix> qr(rng.gaussian_matrix(n, k));
    ComplexMatrix basis = qr.householderQ() * ComplexMatrix::Identity(n, k);
    return Subspace(std::move(basis), n, rank_tol);
}

Idempotent random_idempotent(const GenConfig& gen, std::uint64_t trial,
                             const ToleranceConfig& cfg) {
    gen.check();
    const Index n = gen.dim;
    RandomStream rng(gen.master_seed, trial, "idempotent");
    const Index r = gen.rank ? *gen.rank : static_cast<Index>(rng.below(n + 1));

    if (r == 0) return Idempotent::validate(ComplexMatrix::Zero(n, n), cfg);
    if (r == n) return Idempotent::validate(ComplexMatrix::Identity(n, n), cfg);

    for (int attempt = 0; attempt < gen.max_retries; ++attempt) {
        Subspace range = random_subspace(rng, n, r, cfg.rank_rel_tol);
        Subspace kernel = random_subspace(rng, n, n - r, cfg.rank_rel_tol);
        ComplexMatrix stacked(n, n);
        stacked << range.basis(), kernel.basis();
        if (cond_number(stacked) > gen.cond_bound) continue;
        return Idempotent::validate(idempotent_from_range_kernel(range, kernel, cfg), cfg);
    }
    throw Error(Errc::RetriesExhausted, "no well-conditioned idempotent after " +
                                            std::to_string(gen.max_retries) + " draws");
}

Symmetry random_symmetry(const GenConfig& gen, Index p_dim, Index m_dim, std::uint64_t trial,
                         const ToleranceConfig& cfg) {
    gen.check();
    if (p_dim < 0 || m_dim < 0 || p_dim + m_dim != gen.dim)
        throw Error(Errc::BadSignature, "signature (" + std::to_string(p_dim) + ", " +
                                            std::to_string(m_dim) + ") does not sum to dim " +
                                            std::to_string(gen.dim));
    const Index n = gen.dim;
    RandomStream rng(gen.master_seed, trial, "symmetry");
    ComplexMatrix u = random_unitary(rng, n);
    Eigen::VectorXcd signs(n);
    for (Index i = 0; i < n; ++i) signs(i) = i < p_dim ? 1.0 : -1.0;
    ComplexMatrix j = u * signs.asDiagonal() * u.adjoint();
    j = (j + j.adjoint()) / 2.0;  // strip round-off skew
    return Symmetry::validate(j, cfg);
}

namespace {

// T diag(block, 0) T^{-1} with `block` square of size r in the top corner.
ComplexMatrix similarity_embed(const ComplexMatrix& t, const ComplexMatrix& t_inv,
                               const ComplexMatrix& block, Index n) {
    ComplexMatrix padded = ComplexMatrix::Zero(n, n);
    padded.topLeftCorner(block.rows(), block.cols()) = block;
    return t * padded * t_inv;
}

ComplexMatrix draw_bounded_invertible(RandomStream& rng, Index n, double cond_bound,
                                      int max_retries) {
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        ComplexMatrix t = rng.gaussian_matrix(n, n);
        if (cond_number(t) <= cond_bound) return t;
    }
    throw Error(Errc::RetriesExhausted, "no well-conditioned similarity after " +
                                            std::to_string(max_retries) + " draws");
}

// Random r x r idempotent of rank s through complementary Gaussian subspaces.
ComplexMatrix draw_idempotent_block(RandomStream& rng, Index r, Index s, double cond_bound,
                                    int max_retries, const ToleranceConfig& cfg) {
    if (s == 0) return ComplexMatrix::Zero(r, r);
    if (s == r) return ComplexMatrix::Identity(r, r);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Subspace range = random_subspace(rng, r, s, cfg.rank_rel_tol);
        Subspace kernel = random_subspace(rng, r, r - s, cfg.rank_rel_tol);
        ComplexMatrix stacked(r, r);
        stacked << range.basis(), kernel.basis();
        if (cond_number(stacked) > cond_bound) continue;
        return idempotent_from_range_kernel(range, kernel, cfg);
    }
    throw Error(Errc::RetriesExhausted, "no well-conditioned idempotent block");
}

}  // namespace

std::pair<Idempotent, Idempotent> random_comparable_pair(const GenConfig& gen,
                                                         std::uint64_t trial,
                                                         const ToleranceConfig& cfg) {
    gen.check();
    const Index n = gen.dim;
    RandomStream rng(gen.master_seed, trial, "comparable-pair");
    const Index r = gen.rank ? *gen.rank : static_cast<Index>(rng.below(n + 1));
    const Index sub = r == 0 ? 0 : static_cast<Index>(rng.below(r + 1));

    ComplexMatrix t = draw_bounded_invertible(rng, n, gen.cond_bound, gen.max_retries);
    ComplexMatrix t_inv = t.inverse();

    ComplexMatrix q = similarity_embed(t, t_inv, ComplexMatrix::Identity(r, r), n);
    ComplexMatrix p = similarity_embed(
        t, t_inv, draw_idempotent_block(rng, r, sub, gen.cond_bound, gen.max_retries, cfg), n);
    return {Idempotent::validate(p, cfg), Idempotent::validate(q, cfg)};
}

std::vector<Idempotent> random_chain(const GenConfig& gen, int length, std::uint64_t trial,
                                     const ToleranceConfig& cfg) {
    gen.check();
    const Index n = gen.dim;
    if (length < 1) throw Error(Errc::ChainTooLong, "chain length must be at least 1");
    if (length > n + 1)
        throw Error(Errc::ChainTooLong, "chain length " + std::to_string(length) +
                                            " exceeds dim + 1 = " + std::to_string(n + 1));

    RandomStream rng(gen.master_seed, trial, "chain");

    // Ranks: `length` distinct values from {0, ..., n}, sorted ascending.
    std::vector<Index> ranks(n + 1);
    std::iota(ranks.begin(), ranks.end(), Index{0});
    for (Index i = n; i > 0; --i)
        std::swap(ranks[i], ranks[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    ranks.resize(length);
    std::sort(ranks.begin(), ranks.end());

    ComplexMatrix t = draw_bounded_invertible(rng, n, gen.cond_bound, gen.max_retries);
    ComplexMatrix t_inv = t.inverse();

    std::vector<Idempotent> chain;
    chain.reserve(length);
    for (Index r : ranks)
        chain.push_back(Idempotent::validate(
            similarity_embed(t, t_inv, ComplexMatrix::Identity(r, r), n), cfg));
    return chain;
}

Idempotent random_j_projection(const GenConfig& gen, const Symmetry& j, std::uint64_t trial,
                               const ToleranceConfig& cfg) {
    gen.check();
    const Index n = gen.dim;
    if (j.dim() != n)
        throw Error(Errc::DimensionMismatch, "random_j_projection: symmetry dimension differs");
    RandomStream rng(gen.master_seed, trial, "j-projection");

    for (int attempt = 0; attempt < gen.max_retries; ++attempt) {
        const Index k = gen.rank ? *gen.rank : static_cast<Index>(rng.below(n + 1));
        Subspace m = random_subspace(rng, n, k, cfg.rank_rel_tol);
        if (k > 0 && k < n) {
            Subspace jm(j.matrix() * m.basis(), n, m.rank_tol());
            Subspace kernel = complement(jm);
            ComplexMatrix stacked(n, m.dim() + kernel.dim());
            stacked << m.basis(), kernel.basis();
            if (stacked.cols() != n) continue;  // degenerate split, redraw
            Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
            if (svd.singularValues()(n - 1) < 1e-4) continue;
        }
        return j_projection_onto(m, j, cfg);
    }
    throw Error(Errc::RetriesExhausted, "no J-nondegenerate subspace after " +
                                            std::to_string(gen.max_retries) + " draws");
}

}  // namespace minuslat
