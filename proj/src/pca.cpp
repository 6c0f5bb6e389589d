#include "litclust/pca.hpp"

#include "litclust/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace litclust {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t clamp_components(std::size_t k, std::size_t n, std::size_t dim)
{
    return std::min({k, n == 0 ? 0 : n - 1, dim});
}

PcaModel fit_pca(const EmbeddingSet& set, std::size_t k)
{
    const std::size_t n = set.size();
    const std::size_t dim = set.dim();
    if (n < 2)
        fail("PCA needs at least 2 rows, got " + std::to_string(n));
    const std::size_t kk = clamp_components(k, n, dim);
    if (kk < 1)
        fail("PCA: no components to keep (k=" + std::to_string(k) + ")");

    Eigen::Map<const RowMatrix> x(set.data().data(), static_cast<Eigen::Index>(n),
                                  static_cast<Eigen::Index>(dim));

    PcaModel m;
    m.dim = dim;
    m.k = kk;
    m.mean.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        const auto col = x.col(static_cast<Eigen::Index>(d));
        // Constant columns get their value as the exact mean so they centre to 0.
        if ((col.array() == col(0)).all())
            m.mean[d] = col(0);
        else
            m.mean[d] = col.sum() / static_cast<double>(n);
    }
    Eigen::Map<const Eigen::RowVectorXd> mu(m.mean.data(), static_cast<Eigen::Index>(dim));
    const Eigen::MatrixXd centred = x.rowwise() - mu;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const auto& v = svd.matrixV();

    m.components.resize(kk * dim);
    m.explained_variance.resize(kk);
    for (std::size_t c = 0; c < kk; ++c) {
        const auto col = v.col(static_cast<Eigen::Index>(c));
        Eigen::Index pivot = 0;
        col.cwiseAbs().maxCoeff(&pivot);
        const double sign = col(pivot) < 0.0 ? -1.0 : 1.0;
        for (std::size_t d = 0; d < dim; ++d)
            m.components[c * dim + d] = sign * col(static_cast<Eigen::Index>(d));
        const double s = sv(static_cast<Eigen::Index>(c));
        m.explained_variance[c] = s * s / static_cast<double>(n - 1);
    }
    return m;
}

EmbeddingSet transform_pca(const PcaModel& model, const EmbeddingSet& set)
{
    if (set.dim() != model.dim)
        fail("PCA transform: set has dimension " + std::to_string(set.dim()) +
             ", model expects " + std::to_string(model.dim));
    const std::size_t n = set.size();
    std::vector<double> out(n * model.k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = set.row(i);
        for (std::size_t c = 0; c < model.k; ++c) {
            const auto comp = model.component(c);
            double acc = 0.0;
            for (std::size_t d = 0; d < model.dim; ++d)
                acc += comp[d] * (row[d] - model.mean[d]);
            out[i * model.k + c] = acc;
        }
    }
    return EmbeddingSet(set.ids(), model.k, std::move(out));
}

EmbeddingSet inverse_transform_pca(const PcaModel& model, const EmbeddingSet& reduced)
{
    if (reduced.dim() != model.k)
        fail("PCA inverse: set has dimension " + std::to_string(reduced.dim()) +
             ", model keeps " + std::to_string(model.k));
    const std::size_t n = reduced.size();
    std::vector<double> out(n * model.dim);
    for (std::size_t i = 0; i < n; ++i) {
        const auto y = reduced.row(i);
        for (std::size_t d = 0; d < model.dim; ++d) {
            double acc = model.mean[d];
            for (std::size_t c = 0; c < model.k; ++c)
                acc += y[c] * model.components[c * model.dim + d];
            out[i * model.dim + d] = acc;
        }
    }
    return EmbeddingSet(reduced.ids(), model.dim, std::move(out));
}

} // namespace litclust
